#include "qq/transforms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qq/catalog.hpp"

namespace qq {
namespace {

bool close(const Amplitude& a, double re) {
  return std::abs(a.real() - re) <= kTolerance &&
         std::abs(a.imag()) <= kTolerance;
}

void check_permutation(std::span<const int> sigma, std::size_t size,
                       const char* what) {
  if (sigma.size() != size) {
    throw std::invalid_argument(std::string(what) + " permutation must have " +
                                std::to_string(size) + " entries");
  }
  std::vector<bool> seen(size, false);
  for (const int v : sigma) {
    if (v < 1 || static_cast<std::size_t>(v) > size ||
        seen[static_cast<std::size_t>(v) - 1]) {
      throw std::invalid_argument(std::string(what) +
                                  " permutation must map 1.." +
                                  std::to_string(size) + " bijectively");
    }
    seen[static_cast<std::size_t>(v) - 1] = true;
  }
}

std::string join(std::span<const int> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

PropertyClass classify(const QueryAlgorithm& alg) {
  validate_structure(alg);
  PropertyClass pc;
  std::size_t ones = 0;
  std::size_t acc = 0;
  for (std::size_t i = 0; i < alg.measurement.size(); ++i) {
    if (alg.measurement.values[i] == 1) {
      ++ones;
      acc = i;
    }
  }
  if (ones == 1) pc.accepting_output = acc;

  pc.property1 = true;
  bool amps_clean = true;
  std::vector<std::uint32_t> plus;
  std::vector<std::uint32_t> minus;
  const std::uint32_t total = std::uint32_t{1} << alg.num_vars;
  for (std::uint32_t w = 0; w < total; ++w) {
    const StateVector fin = run(alg, Input{alg.num_vars, w});
    int units = 0;
    bool rest_zero = true;
    for (const Amplitude& amp : fin.amps) {
      const double mag = std::abs(amp);
      if (std::abs(mag - 1.0) <= kTolerance) {
        ++units;
      } else if (mag > kTolerance) {
        rest_zero = false;
      }
    }
    if (units != 1 || !rest_zero) {
      pc.property1 = false;
      pc.property1_violation = w;
      break;
    }
    if (pc.accepting_output) {
      const Amplitude a = fin.amps[*pc.accepting_output];
      if (close(a, 1.0)) {
        plus.push_back(w);
      } else if (close(a, -1.0)) {
        minus.push_back(w);
      } else if (std::abs(a) > kTolerance) {
        if (amps_clean) pc.amplitude_violation = w;
        amps_clean = false;
      }
    }
  }
  if (pc.property1 && pc.accepting_output && amps_clean) {
    pc.property3 = true;
    pc.acc_plus = std::move(plus);
    pc.acc_minus = std::move(minus);
    pc.property2plus = pc.acc_minus.empty();
    pc.property2minus = pc.acc_plus.empty();
  }
  return pc;
}

QueryAlgorithm invert_outputs(const QueryAlgorithm& alg) {
  validate_structure(alg);
  QueryAlgorithm out = alg;
  for (std::uint8_t& v : out.measurement.values) v = v == 0 ? 1 : 0;
  out.name = "NOT(" + alg.name + ")";
  return out;
}

QueryAlgorithm permute_outputs(const QueryAlgorithm& alg,
                               std::span<const int> sigma) {
  check_permutation(sigma, alg.dim(), "output");
  const PropertyClass pc = classify(alg);
  if (!pc.property1) {
    throw PreconditionError(
        "output permutation needs every input to finish on a basis state; "
        "input " +
        Input{alg.num_vars, *pc.property1_violation}.to_string() +
        " does not");
  }
  QueryAlgorithm out = alg;
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    out.measurement.values[i] =
        alg.measurement.values[static_cast<std::size_t>(sigma[i]) - 1];
  }
  out.name = alg.name + "@perm(" + join(sigma) + ")";
  return out;
}

QueryAlgorithm move_accept(const QueryAlgorithm& alg, int to) {
  validate_structure(alg);
  const std::size_t dim = alg.dim();
  if (to < 1 || static_cast<std::size_t>(to) > dim) {
    throw std::invalid_argument("target output must be in 1.." +
                                std::to_string(dim));
  }
  std::size_t ones = 0;
  std::size_t acc = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    if (alg.measurement.values[i] == 1) {
      ++ones;
      acc = i;
    }
  }
  if (ones != 1) {
    throw PreconditionError(
        "moving the accepting output needs exactly one accepting basis "
        "state, found " +
        std::to_string(ones));
  }
  std::vector<int> sigma(dim);
  for (std::size_t i = 0; i < dim; ++i) sigma[i] = static_cast<int>(i) + 1;
  std::swap(sigma[acc], sigma[static_cast<std::size_t>(to) - 1]);
  QueryAlgorithm out = permute_outputs(alg, sigma);
  out.name = alg.name + "@" + std::to_string(to);
  return out;
}

QueryAlgorithm permute_query_variables(const QueryAlgorithm& alg,
                                       std::span<const int> sigma) {
  validate_structure(alg);
  check_permutation(sigma, static_cast<std::size_t>(alg.num_vars),
                    "variable");
  QueryAlgorithm out = alg;
  for (Step& step : out.steps) {
    if (auto* q = std::get_if<QuerySpec>(&step)) {
      for (std::optional<int>& var : q->vars) {
        if (var) var = sigma[static_cast<std::size_t>(*var) - 1];
      }
    }
  }
  out.name = alg.name + "[" + join(sigma) + "]";
  return out;
}

QueryAlgorithm fix_sign(const QueryAlgorithm& alg) {
  const PropertyClass pc = classify(alg);
  if (!pc.property2minus) {
    throw PreconditionError(
        "sign fix needs an algorithm whose accepting amplitude always "
        "arrives at -1");
  }
  const std::size_t dim = alg.dim();
  std::vector<Amplitude> entries(dim * dim, Amplitude{0.0, 0.0});
  for (std::size_t k = 0; k < dim; ++k) {
    entries[k * dim + k] = Amplitude{1.0, 0.0};
  }
  entries[*pc.accepting_output * dim + *pc.accepting_output] =
      Amplitude{-1.0, 0.0};
  QueryAlgorithm out = alg;
  out.steps.emplace_back(UnitaryMatrix(dim, std::move(entries)));
  out.name = alg.name + "+";
  return out;
}

std::vector<QueryAlgorithm> equality3_family() {
  const QueryAlgorithm base = build_equality3();
  std::vector<QueryAlgorithm> family;
  family.reserve(8);
  family.push_back(base);
  for (int j = 2; j <= 4; ++j) family.push_back(move_accept(base, j));
  for (int i = 0; i < 4; ++i) family.push_back(invert_outputs(family[i]));
  return family;
}

std::vector<QueryAlgorithm> string_eq4_family() {
  const QueryAlgorithm base = build_string_eq4();
  std::vector<QueryAlgorithm> family;
  family.reserve(12);
  const auto add_placements = [&family](const QueryAlgorithm& a) {
    family.push_back(a);
    for (int j = 2; j <= 4; ++j) family.push_back(move_accept(a, j));
  };
  add_placements(base);
  const std::array<int, 4> swap_mid{1, 3, 2, 4};
  const std::array<int, 4> rotate{3, 1, 2, 4};
  add_placements(permute_query_variables(base, swap_mid));
  add_placements(permute_query_variables(base, rotate));
  return family;
}

}  // namespace qq
