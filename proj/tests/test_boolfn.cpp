#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qq/boolfn.hpp"
#include "reference_data.hpp"

using namespace qq;

namespace {

TruthTable random_table(std::mt19937& rng, int n) {
  std::vector<std::uint8_t> bits(std::size_t{1} << n);
  for (std::uint8_t& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
  return TruthTable(n, std::move(bits));
}

TruthTable table_from_words(int n, std::span<const std::uint32_t> accepts) {
  std::vector<std::uint8_t> bits(std::size_t{1} << n, 0);
  for (const std::uint32_t w : accepts) bits[w] = 1;
  return TruthTable(n, std::move(bits));
}

}  // namespace

TEST_SUITE("boolfn") {

TEST_CASE("truth tables round-trip through columns") {
  const TruthTable f = TruthTable::from_column(3, "10000001");
  CHECK(f.n() == 3);
  CHECK(f.size() == 8);
  CHECK(f.value(0u) == 1);
  CHECK(f.value(7u) == 1);
  CHECK(f.value(3u) == 0);
  CHECK(f.value(Input::from_string("111")) == 1);
  CHECK(f.to_column() == "10000001");
  CHECK(f.count_accepting() == 2);

  std::mt19937 rng(20260825);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const TruthTable g = random_table(rng, n);
    CHECK(TruthTable::from_column(n, g.to_column()) == g);
  }
}

TEST_CASE("truth table constructors validate") {
  CHECK_THROWS_AS(TruthTable(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(TruthTable(2, {0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(TruthTable(1, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(TruthTable::from_column(2, "011"), std::invalid_argument);
  CHECK_THROWS_AS(TruthTable::from_column(2, "01x1"), std::invalid_argument);
  const TruthTable f = TruthTable::from_column(2, "0110");
  CHECK_THROWS_AS(f.value(4u), std::invalid_argument);
  CHECK_THROWS_AS(f.value(Input::from_string("011")), std::invalid_argument);
}

TEST_CASE("from_accepting matches the column form") {
  const std::vector<std::string_view> accepted{"0000", "0011", "0101", "0110",
                                               "1001", "1010", "1100", "1111"};
  const TruthTable f = TruthTable::from_accepting(4, accepted);
  CHECK(f == named_function("T4"));
  const std::vector<std::string_view> wrong{"000"};
  CHECK_THROWS_AS(TruthTable::from_accepting(4, wrong), std::invalid_argument);
}

TEST_CASE("sensitivity on known functions") {
  CHECK(sensitivity(named_function("EQUALITY3")) == 3);
  CHECK(sensitivity(named_function("STRING_EQ4")) == 4);
  CHECK(sensitivity(named_function("T4")) == 4);
  CHECK(sensitivity(TruthTable::from_column(2, "0000")) == 0);
  // Parity is fully sensitive everywhere.
  CHECK(sensitivity(TruthTable::from_column(3, "01101001")) == 3);
}

TEST_CASE("accepting sensitivity restricts the maximum to accepting inputs") {
  CHECK(accepting_sensitivity(named_function("EQUALITY3")) == 3);
  CHECK(accepting_sensitivity(TruthTable::from_column(2, "0000")) == 0);
  // f = x1 OR x2: the all-ones input is insensitive, 01 and 10 flip once.
  CHECK(accepting_sensitivity(TruthTable::from_column(2, "0111")) == 1);
  CHECK(sensitivity(TruthTable::from_column(2, "0111")) == 2);
}

TEST_CASE("exact depth on known functions") {
  CHECK(deterministic_complexity(named_function("EQUALITY3")) == 3);
  CHECK(deterministic_complexity(named_function("STRING_EQ4")) == 4);
  CHECK(deterministic_complexity(named_function("T4")) == 4);
  CHECK(deterministic_complexity(named_function("T6_EXACT")) == 6);
  CHECK(deterministic_complexity(named_function("T6_BOUNDED")) == 6);
  CHECK(deterministic_complexity(TruthTable::from_column(2, "1111")) == 0);
  // Dictator function: only x1 matters.
  CHECK(deterministic_complexity(TruthTable::from_column(2, "0011")) == 1);
}

TEST_CASE("exact depth agrees with the naive recursion") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const TruthTable f = random_table(rng, n);
    CHECK(deterministic_complexity(f) == oracles::tree_depth(f));
  }
}

TEST_CASE("exact depth refuses oversized tables") {
  const TruthTable big(13,
                       std::vector<std::uint8_t>(std::size_t{1} << 13, 0));
  CHECK_THROWS_AS(deterministic_complexity(big), std::invalid_argument);
}

TEST_CASE("complement is an involution and flips every value") {
  std::mt19937 rng(5);
  const TruthTable f = random_table(rng, 4);
  const TruthTable g = complement(f);
  for (std::uint32_t w = 0; w < 16; ++w) CHECK(g.value(w) == 1 - f.value(w));
  CHECK(complement(g) == f);
}

TEST_CASE("and_compose puts the first block in the high bits") {
  const TruthTable f = TruthTable::from_column(1, "01");  // f(x) = x
  const TruthTable g = TruthTable::from_column(2, "0001");
  const TruthTable h = and_compose(f, g);
  CHECK(h.n() == 3);
  for (std::uint32_t wf = 0; wf < 2; ++wf) {
    for (std::uint32_t wg = 0; wg < 4; ++wg) {
      CHECK(h.value((wf << 2) | wg) == (f.value(wf) & g.value(wg)));
    }
  }
  const TruthTable big(12, std::vector<std::uint8_t>(1u << 12, 0));
  CHECK_THROWS_AS(and_compose(big, big), std::invalid_argument);
}

TEST_CASE("permute_variables relabels arguments") {
  const TruthTable f = named_function("STRING_EQ4");
  const std::vector<int> identity{1, 2, 3, 4};
  CHECK(permute_variables(f, identity) == f);

  const std::vector<int> sigma{2, 4, 1, 3};
  const TruthTable g = permute_variables(f, sigma);
  // g(x) = f(x2, x4, x1, x3), checked entrywise.
  for (std::uint32_t w = 0; w < 16; ++w) {
    const Input x{4, w};
    std::uint32_t y = 0;
    for (int k = 1; k <= 4; ++k) {
      y = (y << 1) |
          static_cast<std::uint32_t>(x.bit(sigma[static_cast<std::size_t>(k - 1)]));
    }
    CHECK(g.value(w) == f.value(y));
  }

  const std::vector<int> not_perm{1, 1, 3, 4};
  CHECK_THROWS_AS(permute_variables(f, not_perm), std::invalid_argument);
  const std::vector<int> short_perm{1, 2, 3};
  CHECK_THROWS_AS(permute_variables(f, short_perm), std::invalid_argument);
}

TEST_CASE("permuting twice composes") {
  std::mt19937 rng(17);
  const TruthTable f = random_table(rng, 4);
  const std::vector<int> a{2, 3, 4, 1};
  const std::vector<int> b{4, 3, 2, 1};
  // Applying b then a reads argument k from position a(b(k))... composed
  // directly below.
  const TruthTable lhs = permute_variables(permute_variables(f, a), b);
  std::vector<int> ab(4);
  for (int k = 1; k <= 4; ++k) {
    ab[static_cast<std::size_t>(k - 1)] =
        b[static_cast<std::size_t>(a[static_cast<std::size_t>(k - 1)] - 1)];
  }
  CHECK(lhs == permute_variables(f, ab));
}

TEST_CASE("complexity facts fill bounds above the exact cap") {
  const ComplexityFacts small = complexity_facts(named_function("EQUALITY3"));
  REQUIRE(small.deterministic_exact.has_value());
  CHECK(*small.deterministic_exact == 3);
  CHECK(small.deterministic_lower == 3);
  CHECK(small.deterministic_upper == 3);
  CHECK(small.sensitivity == 3);
  CHECK(small.accepting_sensitivity == 3);

  const TruthTable t6 = named_function("T6_EXACT");
  const ComplexityFacts capped = complexity_facts(t6, 4);
  CHECK_FALSE(capped.deterministic_exact.has_value());
  CHECK(capped.deterministic_lower == sensitivity(t6));
  CHECK(capped.deterministic_upper == 6);
}

TEST_CASE("named functions match their frozen accept sets") {
  CHECK(named_function("T4") == table_from_words(4, refdata::kT4Accepts));
  CHECK(named_function("T6_EXACT") ==
        table_from_words(6, refdata::kT6ExactAccepts));
  CHECK(named_function("T6_BOUNDED") ==
        table_from_words(6, refdata::kT6BoundedAccepts));
  CHECK(named_function("EQUALITY3").to_column() ==
        refdata::kEqualityFamilyColumns[0]);
  CHECK_THROWS_AS(named_function("NO_SUCH_FN"), std::invalid_argument);
}

}  // TEST_SUITE
