#pragma once

#include <ostream>

namespace qq::reports {

// Regenerates every summary table from live library runs: the measurement
// placements of the three-variable equality tester, both transformed
// algorithm families, the pair-composition probability breakdowns, and the
// deterministic-versus-quantum gap summary.
void write_reports(std::ostream& os);

}  // namespace qq::reports
