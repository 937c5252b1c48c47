#pragma once

// Exhaustive verification: what Boolean function does an algorithm decide,
// with what worst-case probability, and how does its query count compare
// with the deterministic cost of that function.

#include <optional>
#include <string>
#include <vector>

#include "qq/boolfn.hpp"
#include "qq/state.hpp"
#include "qq/transforms.hpp"

namespace qq {

// Per-input probability listings are suppressed above this variable count.
inline constexpr int kPerInputVars = 12;
// Reports fall back to sensitivity bounds above this variable count rather
// than paying for the exact decision-tree search.
inline constexpr int kGapReportExactVars = 8;

enum class Classification { kExact, kBounded, kInvalid };

struct DerivedTable {
  TruthTable table;
  // Worst case over inputs of the probability of the majority outcome.
  // At most 1/2 when some input leaves both outcomes equally likely, in
  // which case the algorithm computes nothing.
  double min_correct = 1.0;
};

struct InputProbability {
  Input input;
  double p1 = 0.0;
};

struct VerificationReport {
  TruthTable derived_table;
  // Worst acceptance probability over the target's accepting inputs and
  // worst rejection probability over its rejecting inputs; 1 when the
  // respective set is empty.
  double min_p_accept = 1.0;
  double min_p_reject = 1.0;
  Classification classification = Classification::kInvalid;
  // Worst case over all inputs of the probability of agreeing with the
  // target, attained at worst_input.
  double min_correct = 1.0;
  Input worst_input;
  PropertyClass property_class;
  int query_count = 0;
  ComplexityFacts complexity;
  // Present only for algorithms on at most kPerInputVars variables.
  std::optional<std::vector<InputProbability>> per_input;
};

// Runs the algorithm on every input and reads off the majority outcome.
DerivedTable derive_truth_table(const QueryAlgorithm& alg);

// Checks the algorithm against a given target function.  The counts of
// variables must agree.  Classification: kExact when every input decides
// correctly with probability at least 1 - 1e-9, kBounded when the worst
// correct probability still exceeds 1/2 by more than 1e-9, kInvalid
// otherwise.
VerificationReport verify_against(const QueryAlgorithm& alg,
                                  const TruthTable& f);

// True when, for every input, the state of the n-query parity-family
// algorithm right after its last query has all amplitude magnitudes 1/2
// and an even number of negative amplitudes (within 1e-9).  n in 2..8.
bool check_lemma1(int n);

struct GapReport {
  // Name from the registry of known functions, or "unrecognized".
  std::string function_name;
  Classification classification;
  double min_correct = 1.0;
  int query_count = 0;
  ComplexityFacts complexity;
  PropertyClass property_class;
  // One-line summary such as "D=3, Q_E=2", "D=8, Q=2, p=3/4" or
  // "D>=9 (s=9), Q=2, p=9/16".
  std::string line;
};

// Derives the algorithm's function, looks it up among the known functions,
// and summarizes the deterministic-versus-query-count gap.
GapReport gap_report(const QueryAlgorithm& alg);

// "EXACT", "BOUNDED(3/4)" (probabilities shown as reduced sixteenths) or
// "INVALID".
std::string classification_label(Classification c, double min_correct);

// The gap summary line used by gap_report, e.g. "D=3, Q_E=2".
std::string gap_line(const ComplexityFacts& facts, Classification c,
                     double min_correct, int query_count);

// Names the function a truth table equals, if any: the named catalog
// functions, their pair/quad compositions, the parity families, and the
// complements of all of these.  Empty string when unknown.
std::string registry_match(const TruthTable& table);

}  // namespace qq
