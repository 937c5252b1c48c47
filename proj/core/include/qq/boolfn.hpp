// Boolean functions as explicit truth tables, plus the classical complexity
// measures used to judge query algorithms against them.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qq/state.hpp"

namespace qq {

// Exact decision-tree depth is computed by exhausting all partial assignments;
// beyond this many variables only bounds are reported.
inline constexpr int kMaxExactComplexityVars = 12;

// Total Boolean function on n variables, stored as one value per input word.
// Words are big-endian like Input: x_1 is the most significant bit.
class TruthTable {
 public:
  TruthTable(int n, std::vector<std::uint8_t> bits);

  // Column string of length 2^n listing f(00..0), f(00..1), ..., f(11..1).
  static TruthTable from_column(int n, std::string_view column);
  // All-zero table except the listed accepting inputs.
  static TruthTable from_accepting(int n,
                                   std::span<const std::string_view> accepted);

  int n() const { return n_; }
  std::size_t size() const { return bits_.size(); }
  int value(std::uint32_t word) const;
  int value(const Input& input) const;
  void set_value(std::uint32_t word, int v);
  std::size_t count_accepting() const;
  std::string to_column() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Maximum over inputs of the number of single-bit flips that change f.
int sensitivity(const TruthTable& f);

// Same maximum restricted to accepting inputs; 0 when f has none.
int accepting_sensitivity(const TruthTable& f);

// Exact deterministic decision-tree depth D(f). Throws for n above
// kMaxExactComplexityVars.
int deterministic_complexity(const TruthTable& f);

TruthTable complement(const TruthTable& f);

// h(x, y) = f(x) AND g(y) on n_f + n_g variables, f's block first.
TruthTable and_compose(const TruthTable& f, const TruthTable& g);

// g(x_1..x_n) = f(x_sigma(1), ..., x_sigma(n)) for a permutation sigma of
// 1..n given as sigma[i-1] = sigma(i).
TruthTable permute_variables(const TruthTable& f, std::span<const int> sigma);

struct ComplexityFacts {
  int sensitivity = 0;
  int accepting_sensitivity = 0;
  // Exact depth when n is small enough, otherwise bounds only.
  std::optional<int> deterministic_exact;
  int deterministic_lower = 0;
  int deterministic_upper = 0;
};

// `max_exact_vars` caps the exhaustive depth computation; above it only the
// [sensitivity, n] bounds are filled in.
ComplexityFacts complexity_facts(const TruthTable& f,
                                 int max_exact_vars = kMaxExactComplexityVars);

// Catalog of named functions: EQUALITY3, STRING_EQ4, T4, T6_EXACT,
// T6_BOUNDED. Throws std::invalid_argument for unknown names.
TruthTable named_function(std::string_view name);

}  // namespace qq
