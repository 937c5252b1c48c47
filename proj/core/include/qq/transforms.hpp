// Structural transformations of query algorithms: reading off the discipline
// of their final amplitudes and rewriting outputs, variables or signs while
// keeping the step structure intact.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qq/state.hpp"

namespace qq {

// Thrown when a transformation's structural precondition fails.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PropertyClass {
  // Every input finishes on a basis state, up to sign.
  bool property1 = false;
  // property3 with arrivals restricted to +1 only, respectively -1 only.
  bool property2plus = false;
  bool property2minus = false;
  // Single accepting output, reached with amplitude -1, 0 or +1 on every
  // input.
  bool property3 = false;
  std::optional<std::size_t> accepting_output;  // 0-based basis index
  std::vector<std::uint32_t> acc_plus;   // inputs accepted at amplitude +1
  std::vector<std::uint32_t> acc_minus;  // inputs accepted at amplitude -1
  std::optional<std::uint32_t> property1_violation;  // first offending input
  // First input whose accepting amplitude falls outside {-1, 0, +1}.
  std::optional<std::uint32_t> amplitude_violation;
};

// Runs every input through the algorithm and reports which amplitude
// disciplines hold. acc_plus/acc_minus are filled only when property3 holds.
PropertyClass classify(const QueryAlgorithm& alg);

// Complements the decision by flipping every measurement bit.
QueryAlgorithm invert_outputs(const QueryAlgorithm& alg);

// Relabels measurement outputs: the new value at basis i is the old value at
// basis sigma(i), with sigma 1-based (sigma[i-1] = sigma(i)). Requires every
// input to finish on a basis state.
QueryAlgorithm permute_outputs(const QueryAlgorithm& alg,
                               std::span<const int> sigma);

// Swaps the single accepting output with the 1-based basis index `to`.
QueryAlgorithm move_accept(const QueryAlgorithm& alg, int to);

// Replaces variable k by sigma(k) in every query, so the result decides
// g(x_1..x_n) = f(x_sigma(1), ..., x_sigma(n)) when the input decided f.
QueryAlgorithm permute_query_variables(const QueryAlgorithm& alg,
                                       std::span<const int> sigma);

// Turns an always-negative accepting amplitude positive by appending a
// diagonal sign flip at the accepting output.
QueryAlgorithm fix_sign(const QueryAlgorithm& alg);

// The eight 3-variable family members: the base equality algorithm, its
// three accepting-output moves, then the inversion of each, in that order.
std::vector<QueryAlgorithm> equality3_family();

// The twelve 4-variable family members: three variable pairings (identity,
// swap of the middle variables, rotation of the first three), each with four
// accepting-output placements.
std::vector<QueryAlgorithm> string_eq4_family();

}  // namespace qq
