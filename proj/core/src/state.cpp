#include "qq/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qq {

int Input::bit(int var) const {
  if (var < 1 || var > n) {
    throw std::invalid_argument("variable index " + std::to_string(var) +
                                " out of range 1.." + std::to_string(n));
  }
  return static_cast<int>((bits >> (n - var)) & 1u);
}

Input Input::from_string(std::string_view s) {
  if (s.empty() || s.size() > 20) {
    throw std::invalid_argument("input string must have 1..20 characters");
  }
  Input in;
  in.n = static_cast<int>(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("input string must consist of 0s and 1s");
    }
    in.bits = (in.bits << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return in;
}

std::string Input::to_string() const {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int var = 1; var <= n; ++var) {
    s[static_cast<std::size_t>(var - 1)] = static_cast<char>('0' + bit(var));
  }
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const Amplitude& a : amps) sum += std::norm(a);
  return std::sqrt(sum);
}

bool check_unitary(std::size_t dim, std::span<const Amplitude> entries,
                double tol) {
  if (entries.size() != dim * dim) return false;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      // (U†U)_{ij} = sum_k conj(U_{ki}) U_{kj}
      Amplitude acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        acc += std::conj(entries[k * dim + i]) * entries[k * dim + j];
      }
      const Amplitude expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(acc - expect) > tol) return false;
    }
  }
  return true;
}

UnitaryMatrix::UnitaryMatrix(std::size_t dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0) {
    throw std::invalid_argument("matrix dimension must be positive");
  }
  if (entries_.size() != dim_ * dim_) {
    throw std::invalid_argument("matrix entry count does not match dimension");
  }
  if (!check_unitary(dim_, entries_)) {
    throw std::invalid_argument("matrix is not unitary");
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  std::vector<Amplitude> entries(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) entries[i * dim + i] = 1.0;
  return UnitaryMatrix(dim, std::move(entries));
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("matrix dimensions do not match");
  }
  const std::size_t dim = a.dim();
  std::vector<Amplitude> entries(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      const Amplitude aik = a(i, k);
      if (aik == Amplitude{0.0}) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        entries[i * dim + j] += aik * b(k, j);
      }
    }
  }
  return UnitaryMatrix(dim, std::move(entries));
}

int QueryAlgorithm::query_count() const {
  int count = 0;
  for (const Step& step : steps) {
    if (std::holds_alternative<QuerySpec>(step)) ++count;
  }
  return count;
}

void validate_structure(const QueryAlgorithm& alg) {
  if (alg.num_vars < 1 || alg.num_vars > 20) {
    throw std::invalid_argument("number of variables must be in 1..20");
  }
  const std::size_t dim = alg.dim();
  if (dim == 0) {
    throw std::invalid_argument("initial state must be non-empty");
  }
  if (std::abs(alg.initial.norm() - 1.0) > kTolerance) {
    throw std::invalid_argument("initial state is not normalized");
  }
  for (const Step& step : alg.steps) {
    if (const auto* u = std::get_if<UnitaryMatrix>(&step)) {
      if (u->dim() != dim) {
        throw std::invalid_argument("unitary dimension does not match state");
      }
    } else {
      const auto& spec = std::get<QuerySpec>(step);
      if (spec.size() != dim) {
        throw std::invalid_argument("query length does not match state");
      }
      for (const auto& var : spec.vars) {
        if (var && (*var < 1 || *var > alg.num_vars)) {
          throw std::invalid_argument("query variable index out of range");
        }
      }
    }
  }
  if (alg.measurement.size() != dim) {
    throw std::invalid_argument("measurement length does not match state");
  }
  for (std::uint8_t v : alg.measurement.values) {
    if (v > 1) {
      throw std::invalid_argument("measurement values must be 0 or 1");
    }
  }
}

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u) {
  if (state.dim() != u.dim()) {
    throw std::invalid_argument("unitary dimension does not match state");
  }
  const std::size_t dim = state.dim();
  StateVector out;
  out.amps.assign(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    Amplitude acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) acc += u(i, j) * state.amps[j];
    out.amps[i] = acc;
  }
  return out;
}

StateVector apply_query(const StateVector& state, const QuerySpec& spec,
                        const Input& input) {
  if (state.dim() != spec.size()) {
    throw std::invalid_argument("query length does not match state");
  }
  StateVector out = state;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& var = spec.vars[i];
    if (var && input.bit(*var) == 1) out.amps[i] = -out.amps[i];
  }
  return out;
}

StateVector run(const QueryAlgorithm& alg, const Input& input) {
  if (input.n != alg.num_vars) {
    throw std::invalid_argument("input length does not match algorithm");
  }
  StateVector state = alg.initial;
  for (const Step& step : alg.steps) {
    if (const auto* u = std::get_if<UnitaryMatrix>(&step)) {
      state = apply_unitary(state, *u);
    } else {
      state = apply_query(state, std::get<QuerySpec>(step), input);
    }
  }
  return state;
}

std::vector<StateVector> run_trace(const QueryAlgorithm& alg,
                                   const Input& input) {
  if (input.n != alg.num_vars) {
    throw std::invalid_argument("input length does not match algorithm");
  }
  std::vector<StateVector> trace;
  trace.reserve(alg.steps.size() + 1);
  trace.push_back(alg.initial);
  for (const Step& step : alg.steps) {
    if (const auto* u = std::get_if<UnitaryMatrix>(&step)) {
      trace.push_back(apply_unitary(trace.back(), *u));
    } else {
      trace.push_back(apply_query(trace.back(), std::get<QuerySpec>(step), input));
    }
  }
  return trace;
}

OutcomeProbabilities outcome_probabilities(const StateVector& state,
                                           const MeasurementAssignment& m) {
  if (state.dim() != m.size()) {
    throw std::invalid_argument("measurement length does not match state");
  }
  OutcomeProbabilities probs;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double p = std::norm(state.amps[i]);
    if (m.values[i] == 1) {
      probs.p1 += p;
    } else {
      probs.p0 += p;
    }
  }
  return probs;
}

double accept_probability(const QueryAlgorithm& alg, const Input& input) {
  return outcome_probabilities(run(alg, input), alg.measurement).p1;
}

}  // namespace qq
