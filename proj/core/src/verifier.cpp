#include "qq/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qq/catalog.hpp"

namespace qq {
namespace {

// Probabilities that are exact sixteenths print as reduced fractions.
std::string sixteenth(double p) {
  const long k = std::lround(p * 16.0);
  if (k >= 0 && k <= 16 &&
      std::abs(p * 16.0 - static_cast<double>(k)) <= 1e-7) {
    if (k == 0) return "0";
    if (k == 16) return "1";
    const long g = std::gcd(k, 16L);
    return std::to_string(k / g) + "/" + std::to_string(16L / g);
  }
  std::ostringstream oss;
  oss << std::setprecision(6) << p;
  return oss.str();
}

Classification classify_probability(double min_correct) {
  if (min_correct >= 1.0 - kTolerance) return Classification::kExact;
  if (min_correct > 0.5 + kTolerance) return Classification::kBounded;
  return Classification::kInvalid;
}

bool member(const std::vector<std::uint32_t>& sorted, std::uint32_t w) {
  return std::binary_search(sorted.begin(), sorted.end(), w);
}

// The conjunction-of-equalities function the quad composition decides:
// at least three of the four 3-bit blocks are constant.
TruthTable three_of_four_equality3() {
  const TruthTable eq3 = named_function("EQUALITY3");
  std::vector<std::uint8_t> bits(std::size_t{1} << 12, 0);
  for (std::uint32_t w = 0; w < (std::uint32_t{1} << 12); ++w) {
    int count = 0;
    for (int k = 0; k < 4; ++k) {
      if (eq3.value((w >> (9 - 3 * k)) & 7u) == 1) ++count;
    }
    if (count >= 3) bits[w] = 1;
  }
  return TruthTable(12, std::move(bits));
}

// Both 4-bit halves accepted with the same amplitude sign by the pair
// equality tester.  The sign partition comes from the algorithm itself.
TruthTable same_sign_string_eq4() {
  const PropertyClass pc = classify(build_string_eq4());
  std::vector<std::uint8_t> bits(std::size_t{1} << 8, 0);
  for (std::uint32_t w = 0; w < (std::uint32_t{1} << 8); ++w) {
    const std::uint32_t a = w >> 4;
    const std::uint32_t b = w & 15u;
    if ((member(pc.acc_plus, a) && member(pc.acc_plus, b)) ||
        (member(pc.acc_minus, a) && member(pc.acc_minus, b))) {
      bits[w] = 1;
    }
  }
  return TruthTable(8, std::move(bits));
}

std::vector<std::pair<std::string, TruthTable>> known_functions(int n) {
  std::vector<std::pair<std::string, TruthTable>> out;
  static constexpr const char* kNamed[] = {"EQUALITY3", "STRING_EQ4", "T4",
                                           "T6_EXACT", "T6_BOUNDED"};
  for (const char* name : kNamed) {
    TruthTable t = named_function(name);
    if (t.n() == n) out.emplace_back(name, std::move(t));
  }
  if (n == 6) {
    const TruthTable eq3 = named_function("EQUALITY3");
    out.emplace_back("AND(EQUALITY3,EQUALITY3)", and_compose(eq3, eq3));
  }
  if (n == 8) {
    out.emplace_back("SAMESIGN(STRING_EQ4,STRING_EQ4)",
                     same_sign_string_eq4());
  }
  if (n == 12) {
    out.emplace_back("THREEOFFOUR(EQUALITY3,EQUALITY3,EQUALITY3,EQUALITY3)",
                     three_of_four_equality3());
  }
  for (int half = 2; half <= 8; ++half) {
    if (2 * half != n) continue;
    out.emplace_back("T" + std::to_string(2 * half) + "_EXACT",
                     exact_family_function(half));
    out.emplace_back("T" + std::to_string(2 * half) + "_BOUNDED",
                     bounded_family_function(half));
  }
  const std::size_t direct = out.size();
  for (std::size_t i = 0; i < direct; ++i) {
    out.emplace_back("NOT(" + out[i].first + ")", complement(out[i].second));
  }
  return out;
}

}  // namespace

std::string registry_match(const TruthTable& table) {
  for (const auto& [name, known] : known_functions(table.n())) {
    if (known == table) return name;
  }
  return "";
}

DerivedTable derive_truth_table(const QueryAlgorithm& alg) {
  validate_structure(alg);
  const std::uint32_t total = std::uint32_t{1} << alg.num_vars;
  std::vector<std::uint8_t> bits(total, 0);
  double min_correct = 1.0;
  for (std::uint32_t w = 0; w < total; ++w) {
    const OutcomeProbabilities op = outcome_probabilities(
        run(alg, Input{alg.num_vars, w}), alg.measurement);
    bits[w] = op.p1 > op.p0 ? 1 : 0;
    min_correct = std::min(min_correct, std::max(op.p0, op.p1));
  }
  return DerivedTable{TruthTable(alg.num_vars, std::move(bits)), min_correct};
}

VerificationReport verify_against(const QueryAlgorithm& alg,
                                  const TruthTable& f) {
  validate_structure(alg);
  if (alg.num_vars != f.n()) {
    throw std::invalid_argument(
        "algorithm reads " + std::to_string(alg.num_vars) +
        " variables but the function has " + std::to_string(f.n()));
  }
  const std::uint32_t total = std::uint32_t{1} << alg.num_vars;
  std::vector<std::uint8_t> bits(total, 0);
  double min_acc = 1.0;
  double min_rej = 1.0;
  double min_correct = 1.0;
  Input worst{alg.num_vars, 0};
  std::optional<std::vector<InputProbability>> per;
  if (alg.num_vars <= kPerInputVars) per.emplace();
  for (std::uint32_t w = 0; w < total; ++w) {
    const Input in{alg.num_vars, w};
    const OutcomeProbabilities op =
        outcome_probabilities(run(alg, in), alg.measurement);
    bits[w] = op.p1 > op.p0 ? 1 : 0;
    double correct = 0.0;
    if (f.value(w) == 1) {
      correct = op.p1;
      min_acc = std::min(min_acc, op.p1);
    } else {
      correct = op.p0;
      min_rej = std::min(min_rej, op.p0);
    }
    if (correct < min_correct) {
      min_correct = correct;
      worst = in;
    }
    if (per) per->push_back(InputProbability{in, op.p1});
  }
  Classification cls = Classification::kInvalid;
  if (std::min(min_acc, min_rej) >= 1.0 - kTolerance) {
    cls = Classification::kExact;
  } else if (min_correct > 0.5 + kTolerance) {
    cls = Classification::kBounded;
  }
  return VerificationReport{TruthTable(alg.num_vars, std::move(bits)),
                            min_acc,
                            min_rej,
                            cls,
                            min_correct,
                            worst,
                            classify(alg),
                            alg.query_count(),
                            complexity_facts(f, kGapReportExactVars),
                            std::move(per)};
}

bool check_lemma1(int n) {
  if (n < 2 || n > 8) {
    throw std::invalid_argument("check_lemma1 needs a family size in 2..8");
  }
  const QueryAlgorithm alg = build_t2n_exact(n);
  const std::uint32_t total = std::uint32_t{1} << alg.num_vars;
  for (std::uint32_t w = 0; w < total; ++w) {
    const std::vector<StateVector> trace =
        run_trace(alg, Input{alg.num_vars, w});
    const StateVector& after_queries = trace[trace.size() - 2];
    int negatives = 0;
    for (const Amplitude& amp : after_queries.amps) {
      if (std::abs(amp.imag()) > kTolerance) return false;
      if (std::abs(std::abs(amp.real()) - 0.5) > kTolerance) return false;
      if (amp.real() < 0.0) ++negatives;
    }
    if (negatives % 2 != 0) return false;
  }
  return true;
}

GapReport gap_report(const QueryAlgorithm& alg) {
  DerivedTable derived = derive_truth_table(alg);
  const Classification cls = classify_probability(derived.min_correct);
  std::string name = registry_match(derived.table);
  if (name.empty()) name = "unrecognized";
  ComplexityFacts facts = complexity_facts(derived.table, kGapReportExactVars);
  PropertyClass pc = classify(alg);
  const int queries = alg.query_count();
  std::string line = gap_line(facts, cls, derived.min_correct, queries);
  return GapReport{std::move(name), cls,   derived.min_correct, queries,
                   std::move(facts), std::move(pc), std::move(line)};
}

std::string gap_line(const ComplexityFacts& facts, Classification c,
                     double min_correct, int query_count) {
  std::string line;
  if (facts.deterministic_exact) {
    line = "D=" + std::to_string(*facts.deterministic_exact);
  } else {
    line = "D>=" + std::to_string(facts.deterministic_lower) +
           " (s=" + std::to_string(facts.sensitivity) + ")";
  }
  if (c == Classification::kExact) {
    line += ", Q_E=" + std::to_string(query_count);
  } else {
    line += ", Q=" + std::to_string(query_count);
  }
  if (c == Classification::kBounded) {
    line += ", p=" + sixteenth(min_correct);
  } else if (c == Classification::kInvalid) {
    line += ", INVALID";
  }
  return line;
}

std::string classification_label(Classification c, double min_correct) {
  switch (c) {
    case Classification::kExact:
      return "EXACT";
    case Classification::kBounded:
      return "BOUNDED(" + sixteenth(min_correct) + ")";
    case Classification::kInvalid:
      return "INVALID";
  }
  return "INVALID";
}

}  // namespace qq
