#include "qq/catalog.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace qq {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector basis_state(std::size_t dim, std::size_t index) {
  StateVector s;
  s.amps.assign(dim, Amplitude{0.0, 0.0});
  s.amps[index] = Amplitude{1.0, 0.0};
  return s;
}

StateVector apply_step(const StateVector& state, const Step& step,
                       const Input& input) {
  if (const auto* u = std::get_if<UnitaryMatrix>(&step)) {
    return apply_unitary(state, *u);
  }
  return apply_query(state, std::get<QuerySpec>(step), input);
}

StateVector run_steps(std::span<const Step> steps, const StateVector& initial,
                      const Input& input) {
  StateVector s = initial;
  for (const Step& step : steps) s = apply_step(s, step, input);
  return s;
}

bool close(const Amplitude& a, double re) {
  return std::abs(a.real() - re) <= kTolerance &&
         std::abs(a.imag()) <= kTolerance;
}

bool state_matches(const StateVector& s, std::span<const double> expected) {
  if (s.dim() != expected.size()) return false;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (!close(s.amps[i], expected[i])) return false;
  }
  return true;
}

// Lexicographic enumeration of 4-tuples over {lo, .., lo + base - 1}.
std::array<int, 4> tuple_at(int index, int base, int lo) {
  std::array<int, 4> t{};
  for (int k = 3; k >= 0; --k) {
    t[k] = lo + index % base;
    index /= base;
  }
  return t;
}

QuerySpec spec_of(const std::array<int, 4>& t) {
  QuerySpec q;
  q.vars = {t[0], t[1], t[2], t[3]};
  return q;
}

QueryAlgorithm assemble(std::string name, int num_vars, StateVector initial,
                        std::vector<Step> steps, MeasurementAssignment m) {
  QueryAlgorithm alg;
  alg.name = std::move(name);
  alg.num_vars = num_vars;
  alg.initial = std::move(initial);
  alg.steps = std::move(steps);
  alg.measurement = std::move(m);
  validate_structure(alg);
  return alg;
}

// Completes a step prefix into a full algorithm: builds the gate whose rows
// send each class of inputs to its own output basis state. Class c lands on
// basis c; inputs listed in `required_signs` must arrive with that sign,
// while every unconstrained representative arrives with sign -1. Returns
// nothing when the prefix fails to keep classes parallel and orthogonal.
std::optional<UnitaryMatrix> solve_final_gate(
    std::span<const Step> prefix, const StateVector& initial, int n,
    std::span<const std::vector<std::uint32_t>> classes,
    const std::map<std::uint32_t, double>& required_signs) {
  const std::size_t dim = initial.dim();
  std::vector<StateVector> after(std::size_t{1} << n);
  for (std::uint32_t w = 0; w < after.size(); ++w) {
    after[w] = run_steps(prefix, initial, Input{n, w});
  }

  std::vector<std::vector<Amplitude>> targets(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const std::vector<std::uint32_t>& members = classes[c];
    const std::uint32_t rep = members.front();
    const auto rep_it = required_signs.find(rep);
    const double rep_sign =
        rep_it != required_signs.end() ? rep_it->second : -1.0;
    std::vector<Amplitude> w_c(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      w_c[k] = rep_sign * after[rep].amps[k];
    }
    for (const std::uint32_t x : members) {
      const auto sign_it = required_signs.find(x);
      if (sign_it != required_signs.end()) {
        const double s = sign_it->second;
        for (std::size_t k = 0; k < dim; ++k) {
          if (std::abs(after[x].amps[k] - s * w_c[k]) > kTolerance) {
            return std::nullopt;
          }
        }
      } else {
        bool plus = true;
        bool minus = true;
        for (std::size_t k = 0; k < dim; ++k) {
          if (std::abs(after[x].amps[k] - w_c[k]) > kTolerance) plus = false;
          if (std::abs(after[x].amps[k] + w_c[k]) > kTolerance) minus = false;
        }
        if (!plus && !minus) return std::nullopt;
      }
    }
    targets[c] = std::move(w_c);
  }

  for (std::size_t c = 0; c + 1 < targets.size(); ++c) {
    for (std::size_t d = c + 1; d < targets.size(); ++d) {
      Amplitude inner{0.0, 0.0};
      for (std::size_t k = 0; k < dim; ++k) {
        inner += std::conj(targets[c][k]) * targets[d][k];
      }
      if (std::abs(inner) > kTolerance) return std::nullopt;
    }
  }

  std::vector<Amplitude> entries(dim * dim, Amplitude{0.0, 0.0});
  for (std::size_t c = 0; c < targets.size(); ++c) {
    for (std::size_t k = 0; k < dim; ++k) {
      entries[c * dim + k] = std::conj(targets[c][k]);
    }
  }
  if (!check_unitary(dim, entries)) return std::nullopt;
  return UnitaryMatrix(dim, std::move(entries));
}

// Exhaustive acceptance check for a reconstructed algorithm: every input must
// end on a single basis state, the amplitude reaching `accepting_output` must
// stay in {0, +1} (or {-1, 0, +1} when negatives are allowed), and the
// decision must match `target` with certainty.
bool reconstruction_valid(const QueryAlgorithm& alg, const TruthTable& target,
                          std::size_t accepting_output, bool allow_negative) {
  for (std::uint32_t w = 0; w < target.size(); ++w) {
    const Input x{alg.num_vars, w};
    const StateVector fin = run(alg, x);
    int units = 0;
    for (const Amplitude& amp : fin.amps) {
      const double mag = std::abs(amp);
      if (std::abs(mag - 1.0) <= kTolerance) {
        ++units;
      } else if (mag > kTolerance) {
        return false;
      }
    }
    if (units != 1) return false;
    const Amplitude a = fin.amps[accepting_output];
    const bool ok = std::abs(a) <= kTolerance || close(a, 1.0) ||
                    (allow_negative && close(a, -1.0));
    if (!ok) return false;
    const double p1 = outcome_probabilities(fin, alg.measurement).p1;
    const double correct = target.value(w) == 1 ? p1 : 1.0 - p1;
    if (correct < 1.0 - kTolerance) return false;
  }
  return true;
}

void check_family_size(int n) {
  if (n < 1 || n > 10) {
    throw std::invalid_argument(
        "family size n must be in 1..10 (2..20 variables), got " +
        std::to_string(n));
  }
}

TruthTable family_function(const QueryMatrix& q) {
  const int nvars = q.num_vars;
  std::array<std::uint32_t, 4> masks{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (const int var : q.rows[r]) {
      masks[r] |= std::uint32_t{1} << (nvars - var);
    }
  }
  std::vector<std::uint8_t> bits(std::size_t{1} << nvars);
  for (std::uint32_t w = 0; w < bits.size(); ++w) {
    const int p0 = std::popcount(w & masks[0]) & 1;
    bits[w] = (p0 == (std::popcount(w & masks[1]) & 1) &&
               p0 == (std::popcount(w & masks[2]) & 1) &&
               p0 == (std::popcount(w & masks[3]) & 1))
                  ? 1
                  : 0;
  }
  return TruthTable(nvars, std::move(bits));
}

std::vector<Step> family_steps(const QueryMatrix& qm) {
  std::vector<Step> steps;
  steps.reserve(static_cast<std::size_t>(qm.query_count()) + 2);
  steps.emplace_back(hadamard_tensor(2));
  for (int c = 0; c < qm.query_count(); ++c) steps.emplace_back(qm.column(c));
  steps.emplace_back(hadamard_tensor(2));
  return steps;
}

}  // namespace

UnitaryMatrix hadamard_tensor(int k) {
  if (k < 1 || k > 10) {
    throw std::invalid_argument("hadamard_tensor expects k in 1..10, got " +
                                std::to_string(k));
  }
  const std::size_t dim = std::size_t{1} << k;
  const double scale = std::pow(0.5, 0.5 * k);
  std::vector<Amplitude> entries(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const int sign = std::popcount(i & j) % 2 == 0 ? 1 : -1;
      entries[i * dim + j] = Amplitude{sign * scale, 0.0};
    }
  }
  return UnitaryMatrix(dim, std::move(entries));
}

UnitaryMatrix two_level_hadamard(std::size_t dim, std::size_t i,
                                 std::size_t j) {
  if (i >= j || j >= dim) {
    throw std::invalid_argument(
        "two_level_hadamard expects indices i < j < dim");
  }
  std::vector<Amplitude> entries(dim * dim, Amplitude{0.0, 0.0});
  for (std::size_t k = 0; k < dim; ++k) {
    entries[k * dim + k] = Amplitude{1.0, 0.0};
  }
  entries[i * dim + i] = Amplitude{kInvSqrt2, 0.0};
  entries[i * dim + j] = Amplitude{kInvSqrt2, 0.0};
  entries[j * dim + i] = Amplitude{kInvSqrt2, 0.0};
  entries[j * dim + j] = Amplitude{-kInvSqrt2, 0.0};
  return UnitaryMatrix(dim, std::move(entries));
}

int QueryMatrix::query_count() const {
  return static_cast<int>(rows[0].size());
}

QuerySpec QueryMatrix::column(int c) const {
  if (c < 0 || c >= query_count()) {
    throw std::invalid_argument("query column out of range: " +
                                std::to_string(c));
  }
  QuerySpec spec;
  spec.vars.reserve(4);
  for (const std::vector<int>& row : rows) {
    spec.vars.push_back(row[static_cast<std::size_t>(c)]);
  }
  return spec;
}

QueryMatrix exact_family_queries(int n) {
  check_family_size(n);
  QueryMatrix q;
  q.num_vars = 2 * n;
  auto xs = [](std::vector<int>& row, int lo, int hi) {
    for (int i = lo; i <= hi; ++i) row.push_back(i);
  };
  auto ys = [n](std::vector<int>& row, int lo, int hi) {
    for (int i = lo; i <= hi; ++i) row.push_back(n + i);
  };
  const int h = n / 2;
  if (n % 2 == 0) {
    xs(q.rows[0], 1, h);
    ys(q.rows[0], 1, h);
    xs(q.rows[1], h + 1, n);
    ys(q.rows[1], h + 1, n);
    ys(q.rows[2], 1, h);
    xs(q.rows[2], 1, h);
    ys(q.rows[3], h + 1, n);
    xs(q.rows[3], h + 1, n);
  } else {
    xs(q.rows[0], 1, h + 1);
    ys(q.rows[0], 1, h);
    xs(q.rows[1], h + 1, n);
    ys(q.rows[1], h + 2, n);
    ys(q.rows[2], 1, h + 1);
    xs(q.rows[2], 1, h);
    ys(q.rows[3], h + 1, n);
    xs(q.rows[3], h + 2, n);
  }
  return q;
}

QueryMatrix bounded_family_queries(int n) {
  check_family_size(n);
  QueryMatrix q;
  q.num_vars = 2 * n;
  auto xs = [](std::vector<int>& row, int lo, int hi) {
    for (int i = lo; i <= hi; ++i) row.push_back(i);
  };
  auto ys = [n](std::vector<int>& row, int lo, int hi) {
    for (int i = lo; i <= hi; ++i) row.push_back(n + i);
  };
  const int h = (n + 1) / 2;
  if (n % 2 == 0) {
    xs(q.rows[0], 1, h);
    xs(q.rows[1], h + 1, n);
    ys(q.rows[2], 1, h);
    ys(q.rows[3], h + 1, n);
  } else {
    // Odd sizes share the middle variable between the two rows of a block.
    xs(q.rows[0], 1, h);
    xs(q.rows[1], h, n);
    ys(q.rows[2], 1, h);
    ys(q.rows[3], h, n);
  }
  return q;
}

TruthTable exact_family_function(int n) {
  return family_function(exact_family_queries(n));
}

TruthTable bounded_family_function(int n) {
  return family_function(bounded_family_queries(n));
}

QueryAlgorithm build_equality3() {
  const int n = 3;
  const UnitaryMatrix u0 = hadamard_tensor(2);
  const StateVector initial = basis_state(4, 0);
  const TruthTable target = named_function("EQUALITY3");
  const Input probe_a = Input::from_string("011");
  const Input probe_b = Input::from_string("111");
  const double r = kInvSqrt2;
  // Checkpoint states for the two probes after each early step; they pin the
  // search to a single lexicographically-first answer.
  const std::array<double, 4> a_q0{0.5, -0.5, 0.5, -0.5};
  const std::array<double, 4> b_q0{-0.5, -0.5, -0.5, -0.5};
  const std::array<double, 4> a_u1{0.5, 0.0, -r, -0.5};
  const std::array<double, 4> b_u1{-0.5, -r, 0.0, -0.5};
  const std::array<double, 4> a_q1{-0.5, 0.0, r, 0.5};

  // Inputs grouped by the pair (x1 xor x2, x2 xor x3); the all-equal class
  // comes first and must arrive with sign +1.
  const std::vector<std::vector<std::uint32_t>> classes{
      {0b000, 0b111}, {0b011, 0b100}, {0b010, 0b101}, {0b001, 0b110}};
  const std::map<std::uint32_t, double> signs{{0b000, 1.0}, {0b111, 1.0}};

  const StateVector spread = apply_unitary(initial, u0);
  for (int i0 = 0; i0 < 81; ++i0) {
    const QuerySpec q0 = spec_of(tuple_at(i0, 3, 1));
    const StateVector a0 = apply_query(spread, q0, probe_a);
    if (!state_matches(a0, a_q0)) continue;
    const StateVector b0 = apply_query(spread, q0, probe_b);
    if (!state_matches(b0, b_q0)) continue;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        const UnitaryMatrix u1 = two_level_hadamard(4, i, j);
        const StateVector a1 = apply_unitary(a0, u1);
        if (!state_matches(a1, a_u1)) continue;
        if (!state_matches(apply_unitary(b0, u1), b_u1)) continue;
        for (int i1 = 0; i1 < 81; ++i1) {
          const QuerySpec q1 = spec_of(tuple_at(i1, 3, 1));
          if (!state_matches(apply_query(a1, q1, probe_a), a_q1)) continue;
          const std::vector<Step> prefix{u0, q0, u1, q1};
          const auto gate = solve_final_gate(prefix, initial, n, classes,
                                             signs);
          if (!gate) continue;
          std::vector<Step> steps = prefix;
          steps.emplace_back(*gate);
          QueryAlgorithm alg =
              assemble("EQUALITY3", n, initial, std::move(steps),
                       MeasurementAssignment{{1, 0, 0, 0}});
          if (!reconstruction_valid(alg, target, 0, false)) continue;
          return alg;
        }
      }
    }
  }
  throw std::logic_error("equality3 reconstruction search exhausted");
}

QueryAlgorithm build_string_eq4() {
  const int n = 4;
  const UnitaryMatrix u0 = hadamard_tensor(2);
  const StateVector initial = basis_state(4, 0);
  const TruthTable target = named_function("STRING_EQ4");
  // Inputs grouped by the pair (x1 xor x3, x2 xor x4); the accepting class
  // splits into +1 arrivals (0000, 1111) and -1 arrivals (0101, 1010).
  const std::vector<std::vector<std::uint32_t>> classes{
      {0b0000, 0b0101, 0b1010, 0b1111},
      {0b0001, 0b0100, 0b1011, 0b1110},
      {0b0010, 0b0111, 0b1000, 0b1101},
      {0b0011, 0b0110, 0b1001, 0b1100}};
  const std::map<std::uint32_t, double> signs{
      {0b0000, 1.0}, {0b0101, -1.0}, {0b1010, -1.0}, {0b1111, 1.0}};

  for (int ia = 0; ia < 256; ++ia) {
    const QuerySpec qa = spec_of(tuple_at(ia, 4, 1));
    for (int ib = 0; ib < 256; ++ib) {
      const QuerySpec qb = spec_of(tuple_at(ib, 4, 1));
      const std::vector<Step> prefix{u0, qa, qb};
      const auto gate = solve_final_gate(prefix, initial, n, classes, signs);
      if (!gate) continue;
      std::vector<Step> steps = prefix;
      steps.emplace_back(*gate);
      QueryAlgorithm alg =
          assemble("STRING_EQ4", n, initial, std::move(steps),
                   MeasurementAssignment{{1, 0, 0, 0}});
      if (!reconstruction_valid(alg, target, 0, true)) continue;
      return alg;
    }
  }
  throw std::logic_error("string-eq4 reconstruction search exhausted");
}

QueryAlgorithm build_t2n_exact(int n) {
  const QueryMatrix qm = exact_family_queries(n);
  std::vector<Step> steps = family_steps(qm);
  const StateVector initial = basis_state(4, 0);
  // The all-zeros input is accepted and always lands on one basis vector;
  // that vector fixes the measurement.
  const StateVector landing = run_steps(steps, initial, Input{2 * n, 0});
  MeasurementAssignment m;
  m.values.assign(4, 0);
  std::size_t idx = landing.dim();
  for (std::size_t k = 0; k < landing.dim(); ++k) {
    if (std::abs(std::abs(landing.amps[k]) - 1.0) <= kTolerance) idx = k;
  }
  if (idx == landing.dim()) {
    throw std::logic_error("family landing state is not a basis vector");
  }
  m.values[idx] = 1;
  return assemble("T" + std::to_string(2 * n) + "_EXACT", 2 * n, initial,
                  std::move(steps), std::move(m));
}

QueryAlgorithm build_t2n_bounded(int n) {
  const QueryMatrix qm = bounded_family_queries(n);
  std::vector<Step> steps = family_steps(qm);
  return assemble("T" + std::to_string(2 * n) + "_BOUNDED", 2 * n,
                  basis_state(4, 0), std::move(steps),
                  MeasurementAssignment{{1, 0, 0, 0}});
}

std::vector<CatalogEntry> catalog_entries() {
  return {
      {"equality3", "3-bit equality; 2 queries; exact", false},
      {"string-eq4", "equality of two 2-bit strings; 2 queries; exact",
       false},
      {"t2n-exact:N",
       "four-row parity agreement on N paired variables; N/2 queries; exact",
       true},
      {"t2n-bounded:N",
       "four-row parity agreement on N paired variables; ceil(N/4) queries; "
       "one-sided error, rejects with probability >= 3/4",
       true},
  };
}

QueryAlgorithm catalog_build(std::string_view ref) {
  std::string_view name = ref;
  std::optional<int> param;
  if (const auto pos = ref.find(':'); pos != std::string_view::npos) {
    name = ref.substr(0, pos);
    const std::string_view num = ref.substr(pos + 1);
    int value = 0;
    const auto [end, ec] =
        std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc{} || end != num.data() + num.size()) {
      throw std::invalid_argument("malformed catalog parameter in '" +
                                  std::string(ref) + "'");
    }
    param = value;
  }
  const auto no_param = [&] {
    if (param) {
      throw std::invalid_argument(std::string(name) +
                                  " takes no parameter");
    }
  };
  const auto family_n = [&] {
    if (!param) {
      throw std::invalid_argument(
          std::string(name) + " needs a total variable count, e.g. " +
          std::string(name) + ":6");
    }
    if (*param < 2 || *param > 20 || *param % 2 != 0) {
      throw std::invalid_argument(
          "total variable count must be even and within 2..20, got " +
          std::to_string(*param));
    }
    return *param / 2;
  };
  if (name == "equality3") {
    no_param();
    return build_equality3();
  }
  if (name == "string-eq4") {
    no_param();
    return build_string_eq4();
  }
  if (name == "t2n-exact") return build_t2n_exact(family_n());
  if (name == "t2n-bounded") return build_t2n_bounded(family_n());
  throw std::invalid_argument("unknown catalog entry: " + std::string(ref));
}

}  // namespace qq
