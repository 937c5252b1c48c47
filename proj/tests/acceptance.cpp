// End-to-end acceptance gate for the toolkit.  Each criterion prints exactly
// one verdict line,
//
//   criterion NN PASS <summary>
//   criterion NN FAIL <summary> (<first failing check>)
//
// optionally preceded by informational "note:" lines.  The exit status is
// the number of failed criteria; `--only N` runs a single criterion.
//
// Criterion 5 compares the exact decision-tree solver against a frozen
// reference depth row whose final entry is 2 where the solver proves 3; that
// criterion fails by design and its verdict line names the discrepancy.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iterator>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oracles.hpp"
#include "qq/boolfn.hpp"
#include "qq/catalog.hpp"
#include "qq/composers.hpp"
#include "qq/state.hpp"
#include "qq/transforms.hpp"
#include "qq/verifier.hpp"
#include "reference_data.hpp"

using namespace qq;

namespace {

// Probability tolerance shared by every criterion.
constexpr double kTol = 1e-9;

struct CheckFailure {
  std::string message;
};

void check(bool ok, const std::string& message) {
  if (!ok) throw CheckFailure{message};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check_close(double got, double want, const std::string& label) {
  if (std::abs(got - want) > kTol) {
    throw CheckFailure{label + ": got " + fmt(got) + ", want " + fmt(want)};
  }
}

TruthTable table_from_accepts(int n, std::span<const std::uint32_t> accepts) {
  std::vector<std::uint8_t> bits(std::size_t{1} << n, 0);
  for (const std::uint32_t w : accepts) bits[w] = 1;
  return TruthTable(n, std::move(bits));
}

// Requires query count `queries` and certainty on every input against
// `target`.
void check_exact(const QueryAlgorithm& alg, const TruthTable& target,
                 int queries, const std::string& label) {
  check(alg.query_count() == queries,
        label + ": " + std::to_string(alg.query_count()) + " queries, want " +
            std::to_string(queries));
  for (std::uint32_t w = 0; w < target.size(); ++w) {
    const Input in{target.n(), w};
    const double p1 = accept_probability(alg, in);
    if (target.value(w) == 1) {
      check_close(p1, 1.0, label + ": accept probability on " + in.to_string());
    } else {
      check(p1 <= kTol, label + ": input " + in.to_string() +
                            " accepted with probability " + fmt(p1));
    }
  }
}

// Word of sigma.X, where position k of the permuted input reads variable
// sigma(k) of X.  Bits are big-endian like Input.
std::uint32_t permute_word(std::uint32_t bits, std::span<const int> sigma,
                           int n) {
  std::uint32_t out = 0;
  for (int k = 1; k <= n; ++k) {
    const std::uint32_t bit = (bits >> (n - sigma[k - 1])) & 1u;
    out |= bit << (n - k);
  }
  return out;
}

void criterion_equality3() {
  const QueryAlgorithm alg = build_equality3();
  const TruthTable f = named_function("EQUALITY3");
  check_exact(alg, f, 2, "equality3");
  check(sensitivity(f) == 3,
        "sensitivity is " + std::to_string(sensitivity(f)) + ", want 3");
  check(deterministic_complexity(f) == 3,
        "solver depth is " + std::to_string(deterministic_complexity(f)) +
            ", want 3");
  check(oracles::tree_depth(f) == 3,
        "brute-force depth is " + std::to_string(oracles::tree_depth(f)) +
            ", want 3");
  const double reject = accept_probability(alg, Input::from_string("011"));
  check(reject <= kTol, "input 011 accepted with probability " + fmt(reject));
  check_close(accept_probability(alg, Input::from_string("111")), 1.0,
              "accept probability on 111");
}

void criterion_string_eq4() {
  const QueryAlgorithm alg = build_string_eq4();
  const TruthTable f = named_function("STRING_EQ4");
  check_exact(alg, f, 2, "string-eq4");
  check(deterministic_complexity(f) == 4,
        "solver depth is " + std::to_string(deterministic_complexity(f)) +
            ", want 4");
  check(oracles::tree_depth(f) == 4,
        "brute-force depth is " + std::to_string(oracles::tree_depth(f)) +
            ", want 4");
  const PropertyClass cls = classify(alg);
  check(cls.property3, "the classifier does not report a single signed "
                       "accepting output");
  const std::vector<std::uint32_t> plus = {0, 15};
  const std::vector<std::uint32_t> minus = {5, 10};
  check(cls.acc_plus == plus, "positive-arrival accepts are not 0000, 1111");
  check(cls.acc_minus == minus, "negative-arrival accepts are not 0101, 1010");
}

void criterion_exact_family() {
  for (int n = 2; n <= 8; ++n) {
    const QueryAlgorithm alg = build_t2n_exact(n);
    const TruthTable target = exact_family_function(n);
    check_exact(alg, target, n, "n=" + std::to_string(n));
    check(check_lemma1(n),
          "n=" + std::to_string(n) + ": post-query amplitude discipline fails");
  }
  check(exact_family_function(2) == table_from_accepts(4, refdata::kT4Accepts),
        "4-variable table differs from the frozen reference");
  check(exact_family_function(3) ==
            table_from_accepts(6, refdata::kT6ExactAccepts),
        "6-variable table differs from the frozen reference");
}

void criterion_bounded_family() {
  for (int n = 2; n <= 8; ++n) {
    const QueryAlgorithm alg = build_t2n_bounded(n);
    const std::string label = "n=" + std::to_string(n);
    check(alg.query_count() == (n + 1) / 2,
          label + ": " + std::to_string(alg.query_count()) +
              " queries, want " + std::to_string((n + 1) / 2));
    const TruthTable target = bounded_family_function(n);
    double min_reject = 2.0;
    for (std::uint32_t w = 0; w < target.size(); ++w) {
      const Input in{2 * n, w};
      const double p1 = accept_probability(alg, in);
      if (target.value(w) == 1) {
        check_close(p1, 1.0, label + ": accept probability on " +
                                  in.to_string());
      } else {
        const double p0 = 1.0 - p1;
        min_reject = std::min(min_reject, p0);
        check(std::abs(p0 - 0.75) <= kTol || std::abs(p0 - 1.0) <= kTol,
              label + ": input " + in.to_string() +
                  " rejects with probability " + fmt(p0) +
                  ", which is neither 3/4 nor 1");
      }
    }
    check_close(min_reject, 0.75,
                label + ": smallest rejection probability");
  }
  check(bounded_family_function(3) ==
            table_from_accepts(6, refdata::kT6BoundedAccepts),
        "6-variable table differs from the frozen reference");
  // The 3/4 figure is a minimum, not the uniform rejection probability:
  // these rejecting inputs are decided with certainty.
  check(accept_probability(build_t2n_bounded(2), Input::from_string("1100")) <=
            kTol,
        "rejecting input 1100 is not decided with certainty at n=2");
  check(accept_probability(build_t2n_bounded(3),
                           Input::from_string("010000")) <= kTol,
        "rejecting input 010000 is not decided with certainty at n=3");
}

void criterion_equality_family() {
  const std::vector<QueryAlgorithm> family = equality3_family();
  check(family.size() == 8,
        "family has " + std::to_string(family.size()) + " members, want 8");
  for (std::size_t i = 0; i < family.size(); ++i) {
    const std::string label = "entry " + std::to_string(i + 1);
    const DerivedTable derived = derive_truth_table(family[i]);
    check(derived.table.to_column() == refdata::kEqualityFamilyColumns[i],
          label + ": derived column " + derived.table.to_column() +
              " differs from the reference column");
    check(family[i].query_count() == 2, label + ": query count is not 2");
    check(derived.min_correct >= 1.0 - kTol, label + ": not exact");
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    const TruthTable f =
        TruthTable::from_column(3, refdata::kEqualityFamilyColumns[i]);
    const int depth = deterministic_complexity(f);
    check(depth == refdata::kEqualityFamilyReferenceDepths[i],
          "entry " + std::to_string(i + 1) +
              ": exact decision-tree depth is " + std::to_string(depth) +
              " but the reference depth row lists " +
              std::to_string(refdata::kEqualityFamilyReferenceDepths[i]));
  }
}

void criterion_string_family() {
  const std::vector<QueryAlgorithm> family = string_eq4_family();
  check(family.size() == 12,
        "family has " + std::to_string(family.size()) + " members, want 12");
  std::set<std::string> base_columns;
  std::set<std::string> all_columns;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const std::string label = "entry " + std::to_string(i + 1);
    const DerivedTable derived = derive_truth_table(family[i]);
    check(family[i].query_count() == 2, label + ": query count is not 2");
    check(derived.min_correct >= 1.0 - kTol, label + ": not exact");
    base_columns.insert(derived.table.to_column());
    all_columns.insert(derived.table.to_column());

    const QueryAlgorithm inverted = invert_outputs(family[i]);
    check(inverted.query_count() == 2,
          label + ": inversion changed the query count");
    const DerivedTable inv = derive_truth_table(inverted);
    check(inv.table == complement(derived.table),
          label + ": inversion does not complement the table");
    check(inv.min_correct >= 1.0 - kTol, label + ": inversion is not exact");
    all_columns.insert(inv.table.to_column());
  }
  std::set<std::string> reference_columns;
  for (const auto& accepts : refdata::kStringFamilyAcceptSets) {
    reference_columns.insert(table_from_accepts(4, accepts).to_column());
  }
  check(base_columns == reference_columns,
        "the twelve derived tables do not match the reference accept sets");
  check(all_columns.size() == 24,
        "family plus inversions yields " + std::to_string(all_columns.size()) +
            " distinct tables, want 24");
}

void criterion_pair_equality() {
  const QueryAlgorithm eq = build_equality3();
  const QueryAlgorithm pair = compose_and_pair(eq, eq);
  const TruthTable f = named_function("EQUALITY3");
  const TruthTable expected = and_compose(f, f);
  const DerivedTable derived = derive_truth_table(pair);
  check(derived.table == expected,
        "derived table is not the conjunction of the two blocks");
  for (std::uint32_t w = 0; w < 64; ++w) {
    const Input in{6, w};
    const int a = f.value(w >> 3);
    const int b = f.value(w & 7u);
    check_close(accept_probability(pair, in), refdata::kPairAcceptLaw[a][b],
                "accept probability on " + in.to_string());
  }
  check(accepting_sensitivity(expected) == 6,
        "accepting sensitivity is " +
            std::to_string(accepting_sensitivity(expected)) + ", want 6");
  check(deterministic_complexity(expected) == 6,
        "solver depth is " +
            std::to_string(deterministic_complexity(expected)) + ", want 6");
  check(oracles::tree_depth(expected) == 6,
        "brute-force depth is " + std::to_string(oracles::tree_depth(expected)) +
            ", want 6");
}

void criterion_pair_string() {
  const QueryAlgorithm se = build_string_eq4();
  const QueryAlgorithm pair = compose_and_pair(se, se);
  const PropertyClass cls = classify(se);
  check(cls.property3, "the classifier does not report a single signed "
                       "accepting output");

  std::vector<std::uint32_t> same_sign;
  for (const std::uint32_t a : cls.acc_plus) {
    for (const std::uint32_t b : cls.acc_plus) same_sign.push_back(a << 4 | b);
  }
  for (const std::uint32_t a : cls.acc_minus) {
    for (const std::uint32_t b : cls.acc_minus) same_sign.push_back(a << 4 | b);
  }
  const TruthTable expected = table_from_accepts(8, same_sign);
  check(expected == table_from_accepts(8, refdata::kSameSignPairAccepts),
        "same-sign set built from the classifier differs from the frozen "
        "reference");
  const DerivedTable derived = derive_truth_table(pair);
  check(derived.table == expected,
        "derived table is not the same-sign product of the accept sets");
  check(sensitivity(expected) == 8,
        "sensitivity is " + std::to_string(sensitivity(expected)) +
            ", want 8");

  const auto contains = [](const std::vector<std::uint32_t>& v,
                           std::uint32_t w) {
    return std::find(v.begin(), v.end(), w) != v.end();
  };
  for (std::uint32_t w = 0; w < 256; ++w) {
    const Input in{8, w};
    const std::uint32_t hi = w >> 4;
    const std::uint32_t lo = w & 15u;
    const bool hp = contains(cls.acc_plus, hi);
    const bool hm = contains(cls.acc_minus, hi);
    const bool lp = contains(cls.acc_plus, lo);
    const bool lm = contains(cls.acc_minus, lo);
    double want = 0.0;
    if ((hp || hm) != (lp || lm)) {
      want = 0.25;  // exactly one block accepts
    } else if ((hp && lp) || (hm && lm)) {
      want = 1.0;  // both accept with the same sign
    }  // opposite signs or no accepting block: 0
    check_close(accept_probability(pair, in), want,
                "accept probability on " + in.to_string());
  }

  // The reference accept list is compared but not asserted: it repeats one
  // entry and omits another, and the verdict must not hinge on that.
  std::set<std::string> listed;
  for (const std::string_view s : refdata::kSameSignReferenceList) {
    listed.insert(std::string(s));
  }
  std::set<std::string> derived_set;
  for (const std::uint32_t w : refdata::kSameSignPairAccepts) {
    derived_set.insert(Input{8, w}.to_string());
  }
  std::ostringstream note;
  note << "note: the reference accept list has "
       << refdata::kSameSignReferenceList.size() << " entries, "
       << listed.size() << " of them distinct";
  std::vector<std::string> missing;
  std::set_difference(derived_set.begin(), derived_set.end(), listed.begin(),
                      listed.end(), std::back_inserter(missing));
  std::vector<std::string> extra;
  std::set_difference(listed.begin(), listed.end(), derived_set.begin(),
                      derived_set.end(), std::back_inserter(extra));
  if (!missing.empty()) {
    note << "; it omits";
    for (const std::string& s : missing) note << ' ' << s;
  }
  if (!extra.empty()) {
    note << "; it lists non-accepting";
    for (const std::string& s : extra) note << ' ' << s;
  }
  if (missing.empty() && extra.empty()) {
    note << "; it matches the derived accept set";
  }
  std::printf("%s\n", note.str().c_str());
}

void criterion_quad_equality() {
  const QueryAlgorithm eq = build_equality3();
  const QueryAlgorithm quad = compose_quad(eq, eq, eq, eq);
  const TruthTable f = named_function("EQUALITY3");

  TruthTable majority(12, std::vector<std::uint8_t>(4096, 0));
  for (std::uint32_t w = 0; w < 4096; ++w) {
    const int k = f.value(w >> 9) + f.value((w >> 6) & 7u) +
                  f.value((w >> 3) & 7u) + f.value(w & 7u);
    majority.set_value(w, k >= 3 ? 1 : 0);
    const Input in{12, w};
    const double p1 = accept_probability(quad, in);
    const std::string label = "input " + in.to_string() + " with " +
                              std::to_string(k) + " accepting blocks";
    if (k == 4) {
      check_close(p1, 1.0, label);
    } else if (k == 3) {
      check_close(p1, 9.0 / 16.0, label);
    } else if (k == 2) {
      check_close(p1, 0.25, label);
    } else {
      check(p1 <= 0.25 + kTol,
            label + ": accept probability " + fmt(p1) + " exceeds 1/4");
    }
  }
  const DerivedTable derived = derive_truth_table(quad);
  check(derived.table == majority,
        "derived table is not the three-of-four majority of the blocks");
  check(sensitivity(derived.table) == 9,
        "sensitivity is " + std::to_string(sensitivity(derived.table)) +
            ", want 9");
}

void criterion_transformation_laws() {
  const std::vector<QueryAlgorithm> catalog = {
      build_equality3(),      build_string_eq4(),     build_t2n_exact(2),
      build_t2n_exact(3),     build_t2n_bounded(2),   build_t2n_bounded(3),
  };
  for (const QueryAlgorithm& alg : catalog) {
    const DerivedTable base = derive_truth_table(alg);
    const QueryAlgorithm inverted = invert_outputs(alg);
    check(inverted.query_count() == alg.query_count(),
          alg.name + ": inversion changed the query count");
    check(derive_truth_table(inverted).table == complement(base.table),
          alg.name + ": inversion does not complement the derived table");
  }

  // Relabeling the measurement moves the accepting output, so the derived
  // table may change; what must survive is that every input is still decided
  // with certainty.
  const std::vector<int> output_sigma = {2, 1, 4, 3};
  for (const QueryAlgorithm& alg :
       {build_equality3(), build_string_eq4(), build_t2n_exact(2),
        build_t2n_exact(3)}) {
    check(classify(alg).property1,
          alg.name + ": expected every input to finish on a basis state");
    check(derive_truth_table(alg).min_correct >= 1.0 - kTol,
          alg.name + ": not exact before the output permutation");
    const QueryAlgorithm permuted = permute_outputs(alg, output_sigma);
    check(permuted.query_count() == alg.query_count(),
          alg.name + ": output permutation changed the query count");
    check(derive_truth_table(permuted).min_correct >= 1.0 - kTol,
          alg.name + ": output permutation broke exactness");
  }

  for (const QueryAlgorithm& alg :
       {build_equality3(), build_string_eq4(), build_t2n_exact(2),
        build_t2n_bounded(2)}) {
    const int n = alg.num_vars;
    const DerivedTable base = derive_truth_table(alg);
    std::vector<int> sigma(n);
    for (int k = 0; k < n; ++k) sigma[k] = k + 1;
    do {
      const QueryAlgorithm permuted = permute_query_variables(alg, sigma);
      const DerivedTable moved = derive_truth_table(permuted);
      for (std::uint32_t w = 0; w < base.table.size(); ++w) {
        if (moved.table.value(w) != base.table.value(permute_word(w, sigma, n))) {
          std::string perm;
          for (const int s : sigma) perm += std::to_string(s) + " ";
          throw CheckFailure{alg.name + ": variable permutation " + perm +
                             "fails at input " + Input{n, w}.to_string()};
        }
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
}

void criterion_depth_solver() {
  for (std::uint32_t word = 0; word < 256; ++word) {
    std::vector<std::uint8_t> bits(8);
    for (int i = 0; i < 8; ++i) bits[i] = (word >> i) & 1u;
    const TruthTable f(3, std::move(bits));
    const int solver = deterministic_complexity(f);
    const int brute = oracles::tree_depth(f);
    check(solver == brute, "column " + f.to_column() + ": solver says " +
                               std::to_string(solver) +
                               ", brute force says " + std::to_string(brute));
  }
}

struct Criterion {
  int id;
  const char* summary;
  void (*body)();
};

const Criterion kCriteria[] = {
    {1, "three-variable equality tester is exact with two queries and depth 3",
     criterion_equality3},
    {2, "four-variable string-equality tester is exact and splits accepts by "
        "sign",
     criterion_string_eq4},
    {3, "exact paired-parity testers use n queries and match the frozen "
        "tables",
     criterion_exact_family},
    {4, "bounded paired-parity testers halve the queries with one-sided "
        "error 1/4",
     criterion_bounded_family},
    {5, "equality family reproduces the reference columns and depth row",
     criterion_equality_family},
    {6, "string-equality family yields 24 distinct exact tables",
     criterion_string_family},
    {7, "pair of equality testers decides their conjunction with the "
        "quarter-probability law",
     criterion_pair_equality},
    {8, "pair of string-equality testers accepts exactly the same-sign pairs",
     criterion_pair_string},
    {9, "quad of equality testers follows the squared-count law and majority "
        "table",
     criterion_quad_equality},
    {10, "inversion and permutation laws hold across the catalog",
     criterion_transformation_laws},
    {11, "depth solver matches brute-force recursion on all three-variable "
         "functions",
     criterion_depth_solver},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc == 3 && std::string_view(argv[1]) == "--only") {
    only = std::atoi(argv[2]);
    const bool known =
        std::any_of(std::begin(kCriteria), std::end(kCriteria),
                    [only](const Criterion& c) { return c.id == only; });
    if (!known) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[2]);
      return 64;
    }
  } else if (argc != 1) {
    std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
    return 64;
  }

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    try {
      c.body();
      std::printf("criterion %02d PASS %s\n", c.id, c.summary);
    } catch (const CheckFailure& f) {
      ++failures;
      std::printf("criterion %02d FAIL %s (%s)\n", c.id, c.summary,
                  f.message.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("criterion %02d FAIL %s (unexpected error: %s)\n", c.id,
                  c.summary, e.what());
    }
    std::fflush(stdout);
  }
  return failures;
}
