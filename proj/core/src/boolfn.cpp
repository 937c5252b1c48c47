#include "qq/boolfn.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace qq {
namespace {

constexpr std::array<std::uint32_t, 13> kPow3 = {
    1,     3,     9,     27,     81,     243,   729,
    2187,  6561,  19683, 59049,  177147, 531441};

void check_vars(int n) {
  if (n < 1 || n > 20) {
    throw std::invalid_argument("number of variables must be in 1..20");
  }
}

// Exact decision-tree depth by minimax over partial assignments. A partial
// assignment is a base-3 code; digit k is 0 when variable k+1 is free, 1 when
// fixed to 0 and 2 when fixed to 1.
class DepthSolver {
 public:
  explicit DepthSolver(const TruthTable& f)
      : f_(f),
        n_(f.n()),
        constant_(kPow3[static_cast<std::size_t>(n_)], kUnknown),
        depth_(kPow3[static_cast<std::size_t>(n_)], kUnknown) {}

  int solve() { return depth(0); }

 private:
  static constexpr std::int8_t kUnknown = -2;
  static constexpr std::int8_t kNotConstant = -1;

  int digit(std::uint32_t code, int k) const {
    return static_cast<int>((code / kPow3[static_cast<std::size_t>(k)]) % 3);
  }

  // Value of f when the assignment is total, i.e. no digit is 0.
  int leaf_value(std::uint32_t code) const {
    std::uint32_t word = 0;
    for (int k = 0; k < n_; ++k) {
      if (digit(code, k) == 2) word |= 1u << (n_ - 1 - k);
    }
    return f_.value(word);
  }

  // The constant value of f restricted to `code`, or kNotConstant.
  std::int8_t constant_value(std::uint32_t code) {
    std::int8_t& memo = constant_[code];
    if (memo != kUnknown) return memo;
    int free_var = -1;
    for (int k = 0; k < n_; ++k) {
      if (digit(code, k) == 0) {
        free_var = k;
        break;
      }
    }
    if (free_var < 0) {
      memo = static_cast<std::int8_t>(leaf_value(code));
      return memo;
    }
    const std::uint32_t step = kPow3[static_cast<std::size_t>(free_var)];
    const std::int8_t c0 = constant_value(code + step);
    const std::int8_t c1 = constant_value(code + 2 * step);
    memo = (c0 != kNotConstant && c0 == c1) ? c0 : kNotConstant;
    return memo;
  }

  int depth(std::uint32_t code) {
    std::int8_t& memo = depth_[code];
    if (memo != kUnknown) return memo;
    if (constant_value(code) != kNotConstant) {
      memo = 0;
      return memo;
    }
    int best = n_;
    for (int k = 0; k < n_; ++k) {
      if (digit(code, k) != 0) continue;
      const std::uint32_t step = kPow3[static_cast<std::size_t>(k)];
      const int d =
          1 + std::max(depth(code + step), depth(code + 2 * step));
      best = std::min(best, d);
    }
    memo = static_cast<std::int8_t>(best);
    return memo;
  }

  const TruthTable& f_;
  int n_;
  std::vector<std::int8_t> constant_;
  std::vector<std::int8_t> depth_;
};

TruthTable make_table(int n, bool (*pred)(std::uint32_t, int)) {
  std::vector<std::uint8_t> bits(std::size_t{1} << n, 0);
  for (std::uint32_t w = 0; w < bits.size(); ++w) {
    bits[w] = pred(w, n) ? 1 : 0;
  }
  return TruthTable(n, std::move(bits));
}

int word_bit(std::uint32_t w, int n, int var) {
  return static_cast<int>((w >> (n - var)) & 1u);
}

}  // namespace

TruthTable::TruthTable(int n, std::vector<std::uint8_t> bits)
    : n_(n), bits_(std::move(bits)) {
  check_vars(n_);
  if (bits_.size() != (std::size_t{1} << n_)) {
    throw std::invalid_argument("truth table size does not match 2^n");
  }
  for (std::uint8_t b : bits_) {
    if (b > 1) throw std::invalid_argument("truth table values must be 0 or 1");
  }
}

TruthTable TruthTable::from_column(int n, std::string_view column) {
  check_vars(n);
  if (column.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("column length does not match 2^n");
  }
  std::vector<std::uint8_t> bits(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (column[i] != '0' && column[i] != '1') {
      throw std::invalid_argument("column must consist of 0s and 1s");
    }
    bits[i] = static_cast<std::uint8_t>(column[i] - '0');
  }
  return TruthTable(n, std::move(bits));
}

TruthTable TruthTable::from_accepting(
    int n, std::span<const std::string_view> accepted) {
  check_vars(n);
  std::vector<std::uint8_t> bits(std::size_t{1} << n, 0);
  TruthTable table(n, std::move(bits));
  for (std::string_view s : accepted) {
    const Input in = Input::from_string(s);
    if (in.n != n) {
      throw std::invalid_argument("accepting input length does not match n");
    }
    table.set_value(in.bits, 1);
  }
  return table;
}

int TruthTable::value(std::uint32_t word) const {
  if (word >= bits_.size()) {
    throw std::invalid_argument("input word out of range");
  }
  return bits_[word];
}

int TruthTable::value(const Input& input) const {
  if (input.n != n_) {
    throw std::invalid_argument("input length does not match function");
  }
  return value(input.bits);
}

void TruthTable::set_value(std::uint32_t word, int v) {
  if (word >= bits_.size()) {
    throw std::invalid_argument("input word out of range");
  }
  if (v != 0 && v != 1) {
    throw std::invalid_argument("truth table values must be 0 or 1");
  }
  bits_[word] = static_cast<std::uint8_t>(v);
}

std::size_t TruthTable::count_accepting() const {
  std::size_t count = 0;
  for (std::uint8_t b : bits_) count += b;
  return count;
}

std::string TruthTable::to_column() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    s[i] = static_cast<char>('0' + bits_[i]);
  }
  return s;
}

int sensitivity(const TruthTable& f) {
  const int n = f.n();
  int best = 0;
  for (std::uint32_t w = 0; w < (std::uint32_t{1} << n); ++w) {
    int count = 0;
    for (int k = 0; k < n; ++k) {
      if (f.value(w) != f.value(w ^ (1u << (n - 1 - k)))) ++count;
    }
    best = std::max(best, count);
  }
  return best;
}

int accepting_sensitivity(const TruthTable& f) {
  const int n = f.n();
  int best = 0;
  for (std::uint32_t w = 0; w < (std::uint32_t{1} << n); ++w) {
    if (f.value(w) != 1) continue;
    int count = 0;
    for (int k = 0; k < n; ++k) {
      if (f.value(w ^ (1u << (n - 1 - k))) != 1) ++count;
    }
    best = std::max(best, count);
  }
  return best;
}

int deterministic_complexity(const TruthTable& f) {
  if (f.n() > kMaxExactComplexityVars) {
    throw std::invalid_argument(
        "exact decision-tree depth is limited to " +
        std::to_string(kMaxExactComplexityVars) + " variables");
  }
  return DepthSolver(f).solve();
}

TruthTable complement(const TruthTable& f) {
  TruthTable g = f;
  for (std::uint32_t w = 0; w < (std::uint32_t{1} << f.n()); ++w) {
    g.set_value(w, 1 - f.value(w));
  }
  return g;
}

TruthTable and_compose(const TruthTable& f, const TruthTable& g) {
  const int n = f.n() + g.n();
  check_vars(n);
  std::vector<std::uint8_t> bits(std::size_t{1} << n, 0);
  for (std::uint32_t wf = 0; wf < (std::uint32_t{1} << f.n()); ++wf) {
    for (std::uint32_t wg = 0; wg < (std::uint32_t{1} << g.n()); ++wg) {
      bits[(wf << g.n()) | wg] =
          static_cast<std::uint8_t>(f.value(wf) & g.value(wg));
    }
  }
  return TruthTable(n, std::move(bits));
}

TruthTable permute_variables(const TruthTable& f, std::span<const int> sigma) {
  const int n = f.n();
  if (sigma.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("permutation length does not match n");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : sigma) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) {
      throw std::invalid_argument("sigma is not a permutation of 1..n");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  // g(x_1..x_n) = f(x_sigma(1), ..., x_sigma(n)): argument k of f reads the
  // bit at position sigma(k) of the word.
  std::vector<std::uint8_t> bits(std::size_t{1} << n, 0);
  for (std::uint32_t w = 0; w < bits.size(); ++w) {
    std::uint32_t y = 0;
    for (int k = 1; k <= n; ++k) {
      if (word_bit(w, n, sigma[static_cast<std::size_t>(k - 1)])) {
        y |= 1u << (n - k);
      }
    }
    bits[w] = static_cast<std::uint8_t>(f.value(y));
  }
  return TruthTable(n, std::move(bits));
}

ComplexityFacts complexity_facts(const TruthTable& f, int max_exact_vars) {
  ComplexityFacts facts;
  facts.sensitivity = sensitivity(f);
  facts.accepting_sensitivity = accepting_sensitivity(f);
  if (f.n() <= std::min(max_exact_vars, kMaxExactComplexityVars)) {
    facts.deterministic_exact = deterministic_complexity(f);
    facts.deterministic_lower = *facts.deterministic_exact;
    facts.deterministic_upper = *facts.deterministic_exact;
  } else {
    facts.deterministic_lower = facts.sensitivity;
    facts.deterministic_upper = f.n();
  }
  return facts;
}

TruthTable named_function(std::string_view name) {
  if (name == "EQUALITY3") {
    // All three bits equal.
    return make_table(3, [](std::uint32_t w, int n) {
      return word_bit(w, n, 1) == word_bit(w, n, 2) &&
             word_bit(w, n, 2) == word_bit(w, n, 3);
    });
  }
  if (name == "STRING_EQ4") {
    // (x1, x2) equals (x3, x4) as two-bit strings.
    return make_table(4, [](std::uint32_t w, int n) {
      return word_bit(w, n, 1) == word_bit(w, n, 3) &&
             word_bit(w, n, 2) == word_bit(w, n, 4);
    });
  }
  if (name == "T4") {
    // Halves (x1, x2) and (x3, x4) with equal parity.
    return make_table(4, [](std::uint32_t w, int n) {
      return (word_bit(w, n, 1) ^ word_bit(w, n, 2) ^ word_bit(w, n, 3) ^
              word_bit(w, n, 4)) == 0;
    });
  }
  if (name == "T6_EXACT") {
    // On (x1..x3, y1..y3): middle bits equal and the outer four have even
    // parity.
    return make_table(6, [](std::uint32_t w, int n) {
      return word_bit(w, n, 2) == word_bit(w, n, 5) &&
             (word_bit(w, n, 1) ^ word_bit(w, n, 3) ^ word_bit(w, n, 4) ^
              word_bit(w, n, 6)) == 0;
    });
  }
  if (name == "T6_BOUNDED") {
    // On (x1..x3, y1..y3): both halves constant-or-alternating with matching
    // neighbor-flip pattern.
    return make_table(6, [](std::uint32_t w, int n) {
      const int p1 = word_bit(w, n, 1) ^ word_bit(w, n, 2);
      const int p2 = word_bit(w, n, 2) ^ word_bit(w, n, 3);
      const int p3 = word_bit(w, n, 4) ^ word_bit(w, n, 5);
      const int p4 = word_bit(w, n, 5) ^ word_bit(w, n, 6);
      return p1 == p2 && p2 == p3 && p3 == p4;
    });
  }
  throw std::invalid_argument("unknown function name: " + std::string(name));
}

}  // namespace qq
