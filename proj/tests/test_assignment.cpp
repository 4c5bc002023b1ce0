#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "halcece/assignment.hpp"

using namespace halcece;

namespace {

// Exhaustive minimum over all n! permutations.
double brute_minimum(const CostMatrix& cost) {
  std::vector<std::size_t> perm(cost.n);
  std::iota(perm.begin(), perm.end(), 0u);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < cost.n; ++i) total += cost.at(i, perm[i]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool is_permutation_of_columns(const Assignment& a, std::size_t n) {
  std::vector<char> seen(n, 0);
  if (a.column_of_row.size() != n) return false;
  for (auto j : a.column_of_row) {
    if (j >= n || seen[j]) return false;
    seen[j] = 1;
  }
  return true;
}

}  // namespace

TEST_CASE("degenerate and tiny matrices") {
  CHECK(solve_assignment(CostMatrix(0)).total == 0.0);
  CHECK(solve_assignment(CostMatrix(0)).column_of_row.empty());

  CostMatrix one(1);
  one.at(0, 0) = 7.5;
  const auto a = solve_assignment(one);
  CHECK(a.total == 7.5);
  CHECK(a.column_of_row == std::vector<std::size_t>{0});

  CostMatrix two(2);
  two.at(0, 0) = 4; two.at(0, 1) = 1;
  two.at(1, 0) = 2; two.at(1, 1) = 8;
  const auto b = solve_assignment(two);
  CHECK(b.total == 3.0);
  CHECK(b.column_of_row == std::vector<std::size_t>{1, 0});
}

TEST_CASE("hand-solved 3x3 with a unique optimum") {
  CostMatrix m(3);
  const double rows[3][3] = {{8, 4, 7}, {5, 2, 3}, {9, 4, 8}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = rows[i][j];
  // 8+3+4 = 15 is the unique minimum (row0->col0, row1->col2, row2->col1).
  const auto a = solve_assignment(m);
  CHECK(a.total == 15.0);
  CHECK(a.column_of_row == std::vector<std::size_t>{0, 2, 1});
}

TEST_CASE("rejects malformed input") {
  CostMatrix bad(2);
  bad.at(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(solve_assignment(bad), std::invalid_argument);
  bad.at(0, 0) = std::nan("");
  CHECK_THROWS_AS(solve_assignment(bad), std::invalid_argument);
  CostMatrix skewed(2);
  skewed.cells.pop_back();
  CHECK_THROWS_AS(solve_assignment(skewed), std::invalid_argument);
}

TEST_CASE("random matrices match the brute-force minimum") {
  std::mt19937 rng(41920210);
  std::uniform_real_distribution<double> cell(0.0, 20.0);
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = dim(rng);
    CostMatrix m(n);
    for (auto& c : m.cells) c = cell(rng);
    const auto a = solve_assignment(m);
    CHECK(is_permutation_of_columns(a, n));
    double resum = 0.0;
    for (std::size_t i = 0; i < n; ++i) resum += m.at(i, a.column_of_row[i]);
    CHECK(a.total == doctest::Approx(resum).epsilon(1e-12));
    CHECK(a.total == doctest::Approx(brute_minimum(m)).epsilon(1e-9));
  }
}

TEST_CASE("integer costs stay exact and ties resolve deterministically") {
  std::mt19937 rng(777001);
  std::uniform_int_distribution<int> cell(0, 9);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = dim(rng);
    CostMatrix m(n);
    for (auto& c : m.cells) c = cell(rng);
    const auto first = solve_assignment(m);
    const auto second = solve_assignment(m);
    CHECK(first.column_of_row == second.column_of_row);
    CHECK(first.total == brute_minimum(m));  // exact: small integer sums
  }
}

TEST_CASE("large uniform matrix is handled and any permutation is optimal") {
  CostMatrix m(40, 3.0);
  const auto a = solve_assignment(m);
  CHECK(is_permutation_of_columns(a, 40));
  CHECK(a.total == 120.0);
}
