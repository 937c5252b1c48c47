#include "qq/composers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "qq/catalog.hpp"
#include "qq/transforms.hpp"

namespace qq {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct NormalizedSub {
  QueryAlgorithm alg;
  PropertyClass cls;
};

std::string word(const QueryAlgorithm& alg, std::uint32_t w) {
  return Input{alg.num_vars, w}.to_string();
}

[[noreturn]] void reject_sub(const QueryAlgorithm& alg, const char* label,
                             const std::string& why) {
  throw PreconditionError(std::string(label) + " algorithm '" + alg.name +
                          "' " + why);
}

// Checks the entry discipline a sub-algorithm must obey and flips a
// minus-one accepter to plus-one.  single_sign additionally forbids mixed
// accepting signs (required by the quad construction).
NormalizedSub normalize_sub(const QueryAlgorithm& alg, const char* label,
                            bool single_sign) {
  PropertyClass pc = classify(alg);
  if (!pc.property1) {
    reject_sub(alg, label,
               "must finish every run on a signed basis state; input " +
                   word(alg, *pc.property1_violation) + " does not");
  }
  if (!pc.accepting_output) {
    reject_sub(alg, label, "must accept at exactly one basis state");
  }
  if (!pc.property3) {
    reject_sub(alg, label,
               "must reach its accepting output with amplitude in "
               "{-1, 0, +1}; input " +
                   word(alg, *pc.amplitude_violation) + " does not");
  }
  if (single_sign && !pc.acc_plus.empty() && !pc.acc_minus.empty()) {
    reject_sub(alg, label,
               "must accept at a single sign; input " +
                   word(alg, pc.acc_plus.front()) + " arrives at +1 but " +
                   word(alg, pc.acc_minus.front()) + " at -1");
  }
  if (pc.property2minus && !pc.property2plus) {
    QueryAlgorithm fixed = fix_sign(alg);
    PropertyClass fixed_cls = classify(fixed);
    return NormalizedSub{std::move(fixed), std::move(fixed_cls)};
  }
  return NormalizedSub{alg, std::move(pc)};
}

// Zero-pads an algorithm onto the first coordinates of an m-dimensional
// space: unitaries act as identity on the new coordinates, queries leave
// them alone, the measurement maps them to 0.
QueryAlgorithm embed_to(const QueryAlgorithm& alg, std::size_t m) {
  if (alg.dim() == m) return alg;
  QueryAlgorithm out;
  out.name = alg.name;
  out.num_vars = alg.num_vars;
  out.initial.amps = alg.initial.amps;
  out.initial.amps.resize(m, Amplitude{});
  for (const Step& step : alg.steps) {
    if (const auto* u = std::get_if<UnitaryMatrix>(&step)) {
      std::vector<Amplitude> entries(m * m, Amplitude{});
      for (std::size_t i = 0; i < m; ++i) entries[i * m + i] = 1.0;
      for (std::size_t r = 0; r < u->dim(); ++r) {
        for (std::size_t c = 0; c < u->dim(); ++c) {
          entries[r * m + c] = (*u)(r, c);
        }
      }
      out.steps.emplace_back(UnitaryMatrix(m, std::move(entries)));
    } else {
      QuerySpec q = std::get<QuerySpec>(step);
      q.vars.resize(m, std::nullopt);
      out.steps.emplace_back(std::move(q));
    }
  }
  out.measurement.values = alg.measurement.values;
  out.measurement.values.resize(m, 0);
  validate_structure(out);
  return out;
}

struct AltForm {
  std::vector<UnitaryMatrix> unitaries;  // queries.size() + 1 of them
  std::vector<QuerySpec> queries;
};

AltForm alternating_form(const QueryAlgorithm& alg) {
  AltForm form;
  UnitaryMatrix current = UnitaryMatrix::identity(alg.dim());
  for (const Step& step : alg.steps) {
    if (const auto* u = std::get_if<UnitaryMatrix>(&step)) {
      current = *u * current;
    } else {
      form.queries.push_back(std::get<QuerySpec>(step));
      form.unitaries.push_back(std::move(current));
      current = UnitaryMatrix::identity(alg.dim());
    }
  }
  form.unitaries.push_back(std::move(current));
  return form;
}

// Right-pads with queries that touch nothing followed by identity gates.
void pad_to_queries(AltForm& form, std::size_t dim, std::size_t count) {
  while (form.queries.size() < count) {
    QuerySpec none;
    none.vars.assign(dim, std::nullopt);
    form.queries.push_back(std::move(none));
    form.unitaries.push_back(UnitaryMatrix::identity(dim));
  }
}

struct Assembly {
  QueryAlgorithm alg;  // closing gates and measurement still missing
  CompositionPlan plan;
};

int checked_total_vars(const std::vector<NormalizedSub>& subs) {
  int total = 0;
  for (const NormalizedSub& s : subs) total += s.alg.num_vars;
  if (total > 20) {
    throw std::invalid_argument("composition would use " +
                                std::to_string(total) +
                                " variables; the limit is 20");
  }
  return total;
}

// Shared skeleton of both compositions: pad every sub-algorithm to the
// largest block dimension, align their query sequences, and stack them
// block-diagonally over disjoint variables.
Assembly assemble_blocks(std::vector<NormalizedSub> subs, std::string name) {
  const std::size_t k = subs.size();
  const int total_vars = checked_total_vars(subs);
  std::size_t m = 0;
  for (const NormalizedSub& s : subs) m = std::max(m, s.alg.dim());

  Assembly out;
  out.plan.padded_dim = m;
  out.plan.total_vars = total_vars;
  std::vector<AltForm> forms;
  forms.reserve(k);
  std::size_t depth = 0;
  int offset = 0;
  for (NormalizedSub& s : subs) {
    QueryAlgorithm padded = embed_to(s.alg, m);
    forms.push_back(alternating_form(padded));
    depth = std::max(depth, forms.back().queries.size());
    out.plan.variable_offsets.push_back(offset);
    offset += padded.num_vars;
    out.plan.accepting_indices.push_back(*s.cls.accepting_output);
    out.plan.sub_algorithms.push_back(std::move(padded));
  }
  for (AltForm& form : forms) pad_to_queries(form, m, depth);

  QueryAlgorithm& alg = out.alg;
  alg.name = std::move(name);
  alg.num_vars = total_vars;
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  alg.initial.amps.assign(k * m, Amplitude{});
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t i = 0; i < m; ++i) {
      alg.initial.amps[b * m + i] =
          scale * out.plan.sub_algorithms[b].initial.amps[i];
    }
  }

  const auto stacked_unitary = [&](std::size_t idx) -> UnitaryMatrix {
    if (k == 2) {
      return block_diagonal(forms[0].unitaries[idx], forms[1].unitaries[idx]);
    }
    return block_diagonal(
        block_diagonal(forms[0].unitaries[idx], forms[1].unitaries[idx]),
        block_diagonal(forms[2].unitaries[idx], forms[3].unitaries[idx]));
  };
  const auto stacked_query = [&](std::size_t idx) {
    QuerySpec q;
    q.vars.reserve(k * m);
    for (std::size_t b = 0; b < k; ++b) {
      const int shift = out.plan.variable_offsets[b];
      for (const std::optional<int>& v : forms[b].queries[idx].vars) {
        q.vars.push_back(v ? std::optional<int>(*v + shift) : std::nullopt);
      }
    }
    return q;
  };

  alg.steps.emplace_back(stacked_unitary(0));
  for (std::size_t i = 0; i < depth; ++i) {
    alg.steps.emplace_back(stacked_query(i));
    alg.steps.emplace_back(stacked_unitary(i + 1));
  }
  alg.measurement.values.assign(k * m, 0);
  return out;
}

bool accepts(const std::vector<std::uint32_t>& sorted, std::uint32_t w) {
  return std::binary_search(sorted.begin(), sorted.end(), w);
}

TruthTable pair_expected(const PropertyClass& c1, int n1,
                         const PropertyClass& c2, int n2) {
  std::vector<std::uint8_t> bits(std::size_t{1} << (n1 + n2), 0);
  for (std::uint32_t w1 = 0; w1 < (std::uint32_t{1} << n1); ++w1) {
    const bool plus = accepts(c1.acc_plus, w1);
    const bool minus = accepts(c1.acc_minus, w1);
    if (!plus && !minus) continue;
    for (std::uint32_t w2 = 0; w2 < (std::uint32_t{1} << n2); ++w2) {
      const auto& side = plus ? c2.acc_plus : c2.acc_minus;
      if (accepts(side, w2)) {
        bits[(std::size_t{w1} << n2) | w2] = 1;
      }
    }
  }
  return TruthTable(n1 + n2, std::move(bits));
}

TruthTable quad_expected(const std::vector<NormalizedSub>& subs,
                         int total_vars) {
  std::vector<std::uint8_t> bits(std::size_t{1} << total_vars, 0);
  for (std::uint32_t w = 0; w < (std::uint32_t{1} << total_vars); ++w) {
    int count = 0;
    int shift = total_vars;
    for (const NormalizedSub& s : subs) {
      shift -= s.alg.num_vars;
      const std::uint32_t part =
          (w >> shift) & ((std::uint32_t{1} << s.alg.num_vars) - 1);
      if (accepts(s.cls.acc_plus, part)) ++count;
    }
    if (count >= 3) bits[w] = 1;
  }
  return TruthTable(total_vars, std::move(bits));
}

void put_hadamard_block(std::vector<Amplitude>& entries, std::size_t dim,
                        std::size_t i, std::size_t j) {
  entries[i * dim + i] = kInvSqrt2;
  entries[i * dim + j] = kInvSqrt2;
  entries[j * dim + i] = kInvSqrt2;
  entries[j * dim + j] = -kInvSqrt2;
}

void check_accepting_coordinate(std::size_t acc, std::size_t m) {
  if (acc < 1 || acc > m) {
    throw std::invalid_argument("accepting coordinate must be in 1.." +
                                std::to_string(m));
  }
}

}  // namespace

UnitaryMatrix block_diagonal(const UnitaryMatrix& u1, const UnitaryMatrix& u2) {
  if (u1.dim() != u2.dim()) {
    throw std::invalid_argument(
        "block_diagonal needs two matrices of the same dimension");
  }
  const std::size_t m = u1.dim();
  const std::size_t dim = 2 * m;
  std::vector<Amplitude> entries(dim * dim, Amplitude{});
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      entries[r * dim + c] = u1(r, c);
      entries[(m + r) * dim + (m + c)] = u2(r, c);
    }
  }
  return UnitaryMatrix(dim, std::move(entries));
}

UnitaryMatrix final_correlation_gate(std::size_t m, std::size_t acc1,
                                     std::size_t acc2) {
  check_accepting_coordinate(acc1, m);
  check_accepting_coordinate(acc2, m);
  return two_level_hadamard(2 * m, acc1 - 1, m + acc2 - 1);
}

UnitaryMatrix build_u_prime(std::span<const std::size_t> acc, std::size_t m) {
  if (acc.size() != 4) {
    throw std::invalid_argument(
        "build_u_prime needs four accepting coordinates");
  }
  for (const std::size_t a : acc) check_accepting_coordinate(a, m);
  const std::size_t dim = 4 * m;
  std::vector<Amplitude> entries(dim * dim, Amplitude{});
  for (std::size_t i = 0; i < dim; ++i) entries[i * dim + i] = 1.0;
  put_hadamard_block(entries, dim, acc[0] - 1, m + acc[1] - 1);
  put_hadamard_block(entries, dim, 2 * m + acc[2] - 1, 3 * m + acc[3] - 1);
  return UnitaryMatrix(dim, std::move(entries));
}

UnitaryMatrix build_u_double_prime(std::span<const std::size_t> acc,
                                   std::size_t m) {
  if (acc.size() != 4) {
    throw std::invalid_argument(
        "build_u_double_prime needs four accepting coordinates");
  }
  for (const std::size_t a : acc) check_accepting_coordinate(a, m);
  const std::size_t dim = 4 * m;
  std::vector<Amplitude> entries(dim * dim, Amplitude{});
  for (std::size_t i = 0; i < dim; ++i) entries[i * dim + i] = 1.0;
  put_hadamard_block(entries, dim, acc[0] - 1, 2 * m + acc[2] - 1);
  return UnitaryMatrix(dim, std::move(entries));
}

std::vector<Step> to_alternating_steps(const QueryAlgorithm& alg) {
  validate_structure(alg);
  AltForm form = alternating_form(alg);
  std::vector<Step> steps;
  steps.reserve(2 * form.queries.size() + 1);
  steps.emplace_back(std::move(form.unitaries[0]));
  for (std::size_t i = 0; i < form.queries.size(); ++i) {
    steps.emplace_back(std::move(form.queries[i]));
    steps.emplace_back(std::move(form.unitaries[i + 1]));
  }
  return steps;
}

PairComposition compose_and_pair_plan(const QueryAlgorithm& a1,
                                      const QueryAlgorithm& a2) {
  NormalizedSub s1 = normalize_sub(a1, "first", false);
  NormalizedSub s2 = normalize_sub(a2, "second", false);
  if (a1.num_vars + a2.num_vars > 20) {
    throw std::invalid_argument("composition would use " +
                                std::to_string(a1.num_vars + a2.num_vars) +
                                " variables; the limit is 20");
  }
  const bool conjunction = s1.cls.property2plus && s2.cls.property2plus;
  TruthTable expected =
      pair_expected(s1.cls, a1.num_vars, s2.cls, a2.num_vars);
  std::string name = (conjunction ? std::string("AND(")
                                  : std::string("SAMESIGN(")) +
                     a1.name + "," + a2.name + ")";

  std::vector<NormalizedSub> subs;
  subs.reserve(2);
  subs.push_back(std::move(s1));
  subs.push_back(std::move(s2));
  Assembly built = assemble_blocks(std::move(subs), std::move(name));
  built.alg.steps.emplace_back(final_correlation_gate(
      built.plan.padded_dim, built.plan.accepting_indices[0] + 1,
      built.plan.accepting_indices[1] + 1));
  built.alg.measurement.values[built.plan.accepting_indices[0]] = 1;
  validate_structure(built.alg);
  return PairComposition{std::move(built.alg), std::move(built.plan),
                         conjunction, std::move(expected)};
}

QueryAlgorithm compose_and_pair(const QueryAlgorithm& a1,
                                const QueryAlgorithm& a2) {
  return compose_and_pair_plan(a1, a2).algorithm;
}

QuadComposition compose_quad_plan(const QueryAlgorithm& a1,
                                  const QueryAlgorithm& a2,
                                  const QueryAlgorithm& a3,
                                  const QueryAlgorithm& a4) {
  std::vector<NormalizedSub> subs;
  subs.reserve(4);
  subs.push_back(normalize_sub(a1, "first", true));
  subs.push_back(normalize_sub(a2, "second", true));
  subs.push_back(normalize_sub(a3, "third", true));
  subs.push_back(normalize_sub(a4, "fourth", true));
  std::string name = "THREEOFFOUR(" + a1.name + "," + a2.name + "," +
                     a3.name + "," + a4.name + ")";

  const int total_vars = checked_total_vars(subs);
  TruthTable expected = quad_expected(subs, total_vars);

  Assembly built = assemble_blocks(std::move(subs), std::move(name));
  std::array<std::size_t, 4> acc{};
  for (std::size_t i = 0; i < 4; ++i) {
    acc[i] = built.plan.accepting_indices[i] + 1;
  }
  built.alg.steps.emplace_back(build_u_prime(acc, built.plan.padded_dim));
  built.alg.steps.emplace_back(
      build_u_double_prime(acc, built.plan.padded_dim));
  built.alg.measurement.values[built.plan.accepting_indices[0]] = 1;
  validate_structure(built.alg);
  return QuadComposition{std::move(built.alg), std::move(built.plan),
                         std::move(expected)};
}

QueryAlgorithm compose_quad(const QueryAlgorithm& a1, const QueryAlgorithm& a2,
                            const QueryAlgorithm& a3,
                            const QueryAlgorithm& a4) {
  return compose_quad_plan(a1, a2, a3, a4).algorithm;
}

}  // namespace qq
