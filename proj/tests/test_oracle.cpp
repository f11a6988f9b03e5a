#include <doctest.h>

#include <algorithm>

#include "iblt/bounds.hpp"
#include "iblt/error.hpp"
#include "iblt/oracle.hpp"
#include "support.hpp"

using namespace iblt;

TEST_CASE("peel_fixpoint basics") {
  SplitMix64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const unsigned k = 1 + static_cast<unsigned>(rng() % 4);
    const StateMatrix b = test::random_state_matrix(rng, k, 1 + rng() % 6, 1);
    CHECK(peel_fixpoint(b).empty());
    CHECK_FALSE(contains_stopping_submatrix(b));
  }
  const StateMatrix same_row(1, 3, 2, {1, 1});
  CHECK(peel_fixpoint(same_row) == std::vector<std::size_t>{0, 1});
  CHECK(contains_stopping_submatrix(StateMatrix(1, 1, 2)));
}

TEST_CASE("two of the four 2 x 2 single-block matrices hold a stopping set") {
  int hits = 0;
  test::for_each_state_matrix(1, 2, 2, [&](const StateMatrix& b) { hits += contains_stopping_submatrix(b); });
  CHECK(hits == 2);
}

TEST_CASE("residual is the largest stopping set") {
  // The residual columns form a stopping matrix in every block, and no
  // column outside it belongs to any stopping set.
  SplitMix64 rng(77);
  for (int round = 0; round < 300; ++round) {
    const unsigned k = 1 + static_cast<unsigned>(rng() % 3);
    const std::size_t ell = 1 + rng() % 4;
    const std::size_t n = 1 + rng() % 7;
    const StateMatrix b = test::random_state_matrix(rng, k, ell, n);
    const std::vector<std::size_t> residual = peel_fixpoint(b);

    auto is_stopping_set = [&](std::size_t mask) {
      for (unsigned i = 0; i < k; ++i) {
        std::vector<std::size_t> weight(ell, 0);
        for (std::size_t j = 0; j < n; ++j) {
          if (mask >> j & 1) ++weight[b.row(i, j)];
        }
        if (std::count(weight.begin(), weight.end(), std::size_t{1}) != 0) return false;
      }
      return true;
    };
    std::size_t residual_mask = 0;
    for (std::size_t j : residual) residual_mask |= std::size_t{1} << j;
    CHECK(is_stopping_set(residual_mask));
    std::size_t union_of_sets = 0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      if (is_stopping_set(mask)) union_of_sets |= mask;
    }
    CHECK(union_of_sets == residual_mask);
  }
}

TEST_CASE("exact failure probability small cases") {
  CHECK(exact_failure_probability(1, 2, 1).probability == 1);
  CHECK(exact_failure_probability(2, 2, 1).probability == mpq_class(1, 2));
  const ExactFailure e = exact_failure_probability(2, 2, 2);
  CHECK(e.probability == mpq_class(1, 4));
  CHECK(e.failing == 4);
  CHECK(e.total == 16);
  CHECK(exact_failure_probability(5, 1, 3).probability == 0);
}

TEST_CASE("worker count does not change the count") {
  const ExactFailure one = exact_failure_probability(3, 4, 2, 10'000'000, 1);
  const ExactFailure many = exact_failure_probability(3, 4, 2, 10'000'000, 3);
  CHECK(one.failing == many.failing);
  CHECK(one.probability == many.probability);
}

TEST_CASE("enumeration agrees with an independent recursive walk") {
  for (auto [ell, n, k] : {std::tuple{3u, 3u, 2u}, {2u, 5u, 2u}, {4u, 3u, 2u}, {2u, 4u, 3u}}) {
    std::uint64_t failing = 0;
    test::for_each_state_matrix(k, ell, n, [&](const StateMatrix& b) { failing += contains_stopping_submatrix(b); });
    CHECK(exact_failure_probability(ell, n, k).failing == failing);
  }
}

TEST_CASE("exact probability never exceeds the union bound") {
  ZTable table;
  for (std::size_t ell = 1; ell <= 4; ++ell) {
    for (std::size_t n = 1; n <= 5; ++n) {
      for (unsigned k = 1; k <= 3; ++k) {
        mpz_class space;
        mpz_ui_pow_ui(space.get_mpz_t(), ell, n * k);
        if (space > 2'000'000) continue;
        INFO("ell = " << ell << ", n = " << n << ", k = " << k);
        const mpq_class exact = exact_failure_probability(ell, n, k).probability;
        CHECK(exact <= union_bound_exact(table, ell, n, k));
        CHECK(exact.get_d() <= union_bound(table, ell, n, k).total_clamped);
      }
    }
  }
}

TEST_CASE("guard") {
  CHECK_THROWS_AS(exact_failure_probability(10, 4, 2), ResourceError);
  CHECK(exact_failure_probability(10, 3, 2).total == 1'000'000);
}
