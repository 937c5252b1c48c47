// Quantum query model: finite-dimensional complex state vectors evolved by
// unitary layers and sign queries, measured by a per-amplitude 0/1 assignment.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qq {

using Amplitude = std::complex<double>;

// Tolerance for unitarity, normalization and probability comparisons.
inline constexpr double kTolerance = 1e-9;

// Assignment to the input variables x_1..x_n, packed big-endian: x_1 is the
// most significant bit of `bits`.
struct Input {
  int n = 0;
  std::uint32_t bits = 0;

  // Value of x_var for var in 1..n.
  int bit(int var) const;

  static Input from_string(std::string_view s);
  std::string to_string() const;

  friend bool operator==(const Input&, const Input&) = default;
};

struct StateVector {
  std::vector<Amplitude> amps;

  std::size_t dim() const { return amps.size(); }
  double norm() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;
};

// True when `entries` (row-major, dim x dim) satisfies U†U = I entrywise
// within `tol`. Accepts arbitrary square grids, unlike UnitaryMatrix.
bool check_unitary(std::size_t dim, std::span<const Amplitude> entries,
                   double tol = kTolerance);

// Dense square matrix; unitarity is checked on construction.
class UnitaryMatrix {
 public:
  UnitaryMatrix(std::size_t dim, std::vector<Amplitude> entries);

  static UnitaryMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Amplitude& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  std::span<const Amplitude> entries() const { return entries_; }

  friend bool operator==(const UnitaryMatrix&, const UnitaryMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Amplitude> entries_;
};

// Matrix product; (a * b) applied to a state equals applying b, then a.
UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

// One query layer: a 1-based variable index per amplitude, or nullopt for
// amplitudes whose sign this layer never touches.
struct QuerySpec {
  std::vector<std::optional<int>> vars;

  std::size_t size() const { return vars.size(); }

  friend bool operator==(const QuerySpec&, const QuerySpec&) = default;
};

// Output bit assigned to each basis state by the final measurement.
struct MeasurementAssignment {
  std::vector<std::uint8_t> values;

  std::size_t size() const { return values.size(); }

  friend bool operator==(const MeasurementAssignment&,
                         const MeasurementAssignment&) = default;
};

using Step = std::variant<UnitaryMatrix, QuerySpec>;

struct QueryAlgorithm {
  std::string name;
  int num_vars = 0;
  StateVector initial;
  std::vector<Step> steps;
  MeasurementAssignment measurement;

  std::size_t dim() const { return initial.dim(); }
  int query_count() const;
};

// Throws std::invalid_argument when dimensions, lengths or variable indices
// are inconsistent.
void validate_structure(const QueryAlgorithm& alg);

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u);

// Flips the sign of amplitude i when its assigned variable reads 1.
StateVector apply_query(const StateVector& state, const QuerySpec& spec,
                        const Input& input);

// Pushes the initial state through every step; returns the pre-measurement
// state.
StateVector run(const QueryAlgorithm& alg, const Input& input);

// State after every step; element 0 is the initial state, element k the state
// after step k-1.
std::vector<StateVector> run_trace(const QueryAlgorithm& alg,
                                   const Input& input);

struct OutcomeProbabilities {
  double p0 = 0.0;
  double p1 = 0.0;
};

OutcomeProbabilities outcome_probabilities(const StateVector& state,
                                           const MeasurementAssignment& m);

// Probability that the algorithm outputs 1 on `input`.
double accept_probability(const QueryAlgorithm& alg, const Input& input);

}  // namespace qq
