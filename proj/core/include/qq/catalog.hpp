// Built-in query algorithms: two small examples recovered by a deterministic
// constraint search, and two parameterized families over paired variable
// strings. All of them act on a 4-dimensional state.
#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qq/boolfn.hpp"
#include "qq/state.hpp"

namespace qq {

// k-fold tensor power of the 2x2 Hadamard gate (dimension 2^k).
UnitaryMatrix hadamard_tensor(int k);

// Identity except for a Hadamard block mixing amplitudes i and j (0-based,
// i < j).
UnitaryMatrix two_level_hadamard(std::size_t dim, std::size_t i,
                                 std::size_t j);

// Four parallel rows of 1-based variable indices; column c lists the four
// variables asked simultaneously by query step c.
struct QueryMatrix {
  int num_vars = 0;
  std::array<std::vector<int>, 4> rows;

  int query_count() const;
  QuerySpec column(int c) const;
};

// Query schedules for the two families on 2n variables; the variables pair up
// as x_1..x_n, y_1..y_n with y_i stored at index n + i.
QueryMatrix exact_family_queries(int n);
QueryMatrix bounded_family_queries(int n);

// The Boolean function each schedule decides: accept exactly when the four
// row parities agree.
TruthTable exact_family_function(int n);
TruthTable bounded_family_function(int n);

// 3-bit equality with two queries and certainty. Rebuilt on every call by a
// lexicographic constraint search, so repeated calls agree bit for bit.
QueryAlgorithm build_equality3();

// Equality of two 2-bit strings (x1 x2 versus x3 x4) with two queries and
// certainty. Rebuilt deterministically like build_equality3.
QueryAlgorithm build_string_eq4();

// Family member on 2n variables deciding exact_family_function(n) with n
// queries and certainty.
QueryAlgorithm build_t2n_exact(int n);

// Family member on 2n variables deciding bounded_family_function(n) with
// ceil(n/2) queries; accepts with certainty, rejects with probability >= 3/4.
QueryAlgorithm build_t2n_bounded(int n);

struct CatalogEntry {
  std::string name;  // reference accepted by catalog_build
  std::string summary;
  bool parameterized = false;
};

std::vector<CatalogEntry> catalog_entries();

// Builds "equality3", "string-eq4", "t2n-exact:N" or "t2n-bounded:N", where N
// is the even total variable count (2..20). Throws std::invalid_argument for
// malformed references.
QueryAlgorithm catalog_build(std::string_view ref);

}  // namespace qq
