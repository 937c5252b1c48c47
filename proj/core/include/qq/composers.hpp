#pragma once

// Combining two or four single-output query algorithms into one algorithm
// that runs them in superposition on disjoint variables and correlates
// their accepting amplitudes with a closing gate.

#include <array>
#include <cstddef>
#include <vector>

#include "qq/boolfn.hpp"
#include "qq/state.hpp"

namespace qq {

// How a composed algorithm was assembled: the normalized sub-algorithms
// (sign-fixed where needed and padded to a common dimension), the block
// size, and where each block keeps its variables and accepting output.
struct CompositionPlan {
  std::vector<QueryAlgorithm> sub_algorithms;
  std::size_t padded_dim = 0;
  int total_vars = 0;
  // Variable v of sub-algorithm i acts on composed variable
  // variable_offsets[i] + v.
  std::vector<int> variable_offsets;
  // Accepting basis index of each sub-algorithm, 0-based within its block.
  std::vector<std::size_t> accepting_indices;
};

struct PairComposition {
  QueryAlgorithm algorithm;
  CompositionPlan plan;
  // True when both inputs accept only at +1, in which case the composed
  // algorithm decides the plain conjunction of the two derived functions.
  // Otherwise it decides "both accept with the same sign".
  bool conjunction = false;
  TruthTable expected_function;
};

struct QuadComposition {
  QueryAlgorithm algorithm;
  CompositionPlan plan;
  // Accepts when at least three of the four derived functions accept.
  TruthTable expected_function;
};

// Direct sum of two same-dimension unitaries: u1 acts on the first block
// of coordinates and u2 on the second.
UnitaryMatrix block_diagonal(const UnitaryMatrix& u1, const UnitaryMatrix& u2);

// 2m-dimensional gate mixing the two accepting coordinates of a pair
// composition: a Hadamard block on coordinates acc1 and m + acc2 (both acc
// arguments are 1-based within their block, 1 <= acc <= m).  Self-inverse.
UnitaryMatrix final_correlation_gate(std::size_t m, std::size_t acc1,
                                     std::size_t acc2);

// 4m-dimensional closing gates for a quad composition.  acc holds the four
// 1-based accepting coordinates, one per block.  build_u_prime pairs the
// accepting coordinates of blocks (1,2) and (3,4); build_u_double_prime
// then pairs blocks 1 and 3.
UnitaryMatrix build_u_prime(std::span<const std::size_t> acc,
                            std::size_t m = 4);
UnitaryMatrix build_u_double_prime(std::span<const std::size_t> acc,
                                   std::size_t m = 4);

// Rewrites an algorithm as U0, Q1, U1, ..., Qt, Ut by multiplying adjacent
// unitaries together and inserting identities between adjacent queries.
// Behavior-preserving; used to align compositions step by step.
std::vector<Step> to_alternating_steps(const QueryAlgorithm& alg);

// Runs a1 and a2 in superposition on disjoint variables (a2's variables are
// renumbered to follow a1's) and accepts when both accept with the same
// sign.  Both inputs must finish every run on a signed basis state with a
// single accepting output and amplitudes in {-1, 0, +1}; an input accepting
// only at -1 is sign-fixed first.  The result keeps the query count of the
// deeper input and accepts expected_function exactly on its accepting
// inputs, with correct probability at least 3/4 elsewhere.
PairComposition compose_and_pair_plan(const QueryAlgorithm& a1,
                                      const QueryAlgorithm& a2);
QueryAlgorithm compose_and_pair(const QueryAlgorithm& a1,
                                const QueryAlgorithm& a2);

// Runs four such algorithms in superposition and accepts when at least
// three of the four accept.  Correct probability at least 9/16.
QuadComposition compose_quad_plan(const QueryAlgorithm& a1,
                                  const QueryAlgorithm& a2,
                                  const QueryAlgorithm& a3,
                                  const QueryAlgorithm& a4);
QueryAlgorithm compose_quad(const QueryAlgorithm& a1, const QueryAlgorithm& a2,
                            const QueryAlgorithm& a3,
                            const QueryAlgorithm& a4);

}  // namespace qq
