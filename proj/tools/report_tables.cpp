#include "report_tables.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <string>
#include <vector>

#include "qq/boolfn.hpp"
#include "qq/catalog.hpp"
#include "qq/composers.hpp"
#include "qq/transforms.hpp"
#include "qq/verifier.hpp"

namespace qq::reports {
namespace {

std::string fraction(double p) {
  const long k = std::lround(p * 16.0);
  if (std::abs(p * 16.0 - static_cast<double>(k)) > 1e-7) {
    return std::to_string(p);
  }
  if (k == 0) return "0";
  if (k == 16) return "1";
  long num = k;
  long den = 16;
  while (num % 2 == 0) {
    num /= 2;
    den /= 2;
  }
  return std::to_string(num) + "/" + std::to_string(den);
}

void write_measurement_variants(std::ostream& os) {
  os << "Measurement placements of the three-variable equality tester\n";
  os << "------------------------------------------------------------\n";
  const QueryAlgorithm base = build_equality3();
  const struct {
    int output;
    const char* formula;
  } rows[] = {
      {1, "NOT(x1 XOR x2) AND NOT(x2 XOR x3)"},
      {2, "(x1 XOR x2) AND NOT(x2 XOR x3)"},
      {3, "(x1 XOR x2) AND (x2 XOR x3)"},
      {4, "NOT(x1 XOR x2) AND (x2 XOR x3)"},
  };
  for (const auto& row : rows) {
    const QueryAlgorithm alg =
        row.output == 1 ? base : move_accept(base, row.output);
    const DerivedTable derived = derive_truth_table(alg);
    os << "  output " << row.output << ": column "
       << derived.table.to_column() << "  decides " << row.formula << "\n";
  }
  os << "\n";
}

void write_family(std::ostream& os, const char* title,
                  const std::vector<QueryAlgorithm>& family) {
  os << title << "\n" << std::string(std::string(title).size(), '-') << "\n";
  for (const QueryAlgorithm& alg : family) {
    const DerivedTable derived = derive_truth_table(alg);
    os << "  " << std::left << std::setw(24) << alg.name << " column "
       << derived.table.to_column()
       << "  D=" << deterministic_complexity(derived.table)
       << "  queries=" << alg.query_count() << "\n";
  }
  os << "\n";
}

void write_pair_probabilities(std::ostream& os) {
  os << "Pair composition of two equality testers: accept probabilities\n";
  os << "---------------------------------------------------------------\n";
  const QueryAlgorithm eq3 = build_equality3();
  const PairComposition pair = compose_and_pair_plan(eq3, eq3);
  const TruthTable f = named_function("EQUALITY3");
  std::map<std::pair<int, int>, double> bucket;
  for (std::uint32_t w = 0; w < (1u << 6); ++w) {
    const int va = f.value(w >> 3);
    const int vb = f.value(w & 7u);
    bucket[{va, vb}] =
        accept_probability(pair.algorithm, Input{6, w});
  }
  for (const auto& [key, p] : bucket) {
    os << "  first=" << key.first << " second=" << key.second
       << "  p(accept)=" << fraction(p) << "\n";
  }
  os << "\n";
}

void write_sign_pair_probabilities(std::ostream& os) {
  os << "Pair composition of two string-equality testers: accept "
        "probabilities by arrival sign\n";
  os << "---------------------------------------------------------------"
        "----------------------\n";
  const QueryAlgorithm se4 = build_string_eq4();
  const PairComposition pair = compose_and_pair_plan(se4, se4);
  const PropertyClass pc = classify(se4);
  const auto sign_of = [&](std::uint32_t w) -> int {
    for (const std::uint32_t a : pc.acc_plus) {
      if (a == w) return 1;
    }
    for (const std::uint32_t a : pc.acc_minus) {
      if (a == w) return -1;
    }
    return 0;
  };
  std::map<std::string, double> bucket;
  for (std::uint32_t w = 0; w < (1u << 8); ++w) {
    const int sa = sign_of(w >> 4);
    const int sb = sign_of(w & 15u);
    std::string key;
    if (sa == 0 && sb == 0) {
      key = "neither accepts";
    } else if (sa == 0 || sb == 0) {
      key = "exactly one accepts";
    } else if (sa == sb) {
      key = "both accept, same sign";
    } else {
      key = "both accept, opposite signs";
    }
    bucket[key] = accept_probability(pair.algorithm, Input{8, w});
  }
  for (const auto& [key, p] : bucket) {
    os << "  " << std::left << std::setw(28) << key
       << " p(accept)=" << fraction(p) << "\n";
  }
  os << "\n";
}

void write_quad_probabilities(std::ostream& os) {
  os << "Quad composition of four equality testers: accept probabilities "
        "by count of accepting blocks\n";
  os << "----------------------------------------------------------------"
        "----------------------------\n";
  const QueryAlgorithm eq3 = build_equality3();
  const QuadComposition quad = compose_quad_plan(eq3, eq3, eq3, eq3);
  const TruthTable f = named_function("EQUALITY3");
  std::map<int, double> bucket;
  for (std::uint32_t w = 0; w < (1u << 12); ++w) {
    int count = 0;
    for (int b = 0; b < 4; ++b) count += f.value((w >> (9 - 3 * b)) & 7u);
    bucket[count] = accept_probability(quad.algorithm, Input{12, w});
  }
  for (const auto& [count, p] : bucket) {
    os << "  " << count << " of 4 accept: p(accept)=" << fraction(p) << "\n";
  }
  os << "\n";
}

void write_gap_summary(std::ostream& os) {
  os << "Deterministic versus quantum query cost\n";
  os << "---------------------------------------\n";
  std::vector<QueryAlgorithm> algs;
  algs.push_back(build_equality3());
  algs.push_back(build_string_eq4());
  for (int n = 2; n <= 4; ++n) algs.push_back(build_t2n_exact(n));
  for (int n = 2; n <= 4; ++n) algs.push_back(build_t2n_bounded(n));
  const QueryAlgorithm eq3 = build_equality3();
  const QueryAlgorithm se4 = build_string_eq4();
  algs.push_back(compose_and_pair(eq3, eq3));
  algs.push_back(compose_and_pair(se4, se4));
  algs.push_back(compose_quad(eq3, eq3, eq3, eq3));
  for (const QueryAlgorithm& alg : algs) {
    const GapReport gap = gap_report(alg);
    os << "  " << std::left << std::setw(52) << alg.name << " " << gap.line
       << "\n";
  }
  os << "\n";
}

}  // namespace

void write_reports(std::ostream& os) {
  write_measurement_variants(os);
  write_family(os, "Transformed three-variable equality algorithms",
               equality3_family());
  write_family(os, "Transformed four-variable string-equality algorithms",
               string_eq4_family());
  write_pair_probabilities(os);
  write_sign_pair_probabilities(os);
  write_quad_probabilities(os);
  write_gap_summary(os);
}

}  // namespace qq::reports
