#include <doctest.h>

#include <cmath>

#include "iblt/bounds.hpp"
#include "iblt/oracle.hpp"
#include "iblt/simulate.hpp"

using namespace iblt;

namespace {

TrialConfig config(std::size_t n, std::uint64_t m, unsigned k, std::uint64_t trials, std::uint64_t seed = 1) {
  TrialConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.k = k;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

bool same(const SimReport& a, const SimReport& b) {
  return a.failures == b.failures && a.trials == b.trials && a.size2_collision_failures == b.size2_collision_failures &&
         a.p_hat == b.p_hat && a.ci_low == b.ci_low && a.ci_high == b.ci_high && a.bound == b.bound && a.p2 == b.p2;
}

}  // namespace

TEST_CASE("wilson interval") {
  SplitMix64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const std::uint64_t trials = 1 + rng() % 100000;
    const std::uint64_t hits = rng() % (trials + 1);
    const Interval ci = wilson_interval(hits, trials);
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    CHECK(0.0 <= ci.low);
    CHECK(ci.low <= p);
    CHECK(p <= ci.high);
    CHECK(ci.high <= 1.0);
  }
  // 10 of 100: textbook Wilson 95% interval (0.05523, 0.17437).
  const Interval ci = wilson_interval(10, 100);
  CHECK(ci.low == doctest::Approx(0.05523).epsilon(1e-3));
  CHECK(ci.high == doctest::Approx(0.17437).epsilon(1e-3));
  CHECK(wilson_interval(0, 50).low == 0.0);
  CHECK(wilson_interval(50, 50).high == 1.0);
}

TEST_CASE("a single entry always lists") {
  ZTable table;
  for (unsigned k : {1u, 3u, 5u}) {
    const SimReport r = run_trials(config(1, 10 * k, k, 2000), table);
    CHECK(r.failures == 0);
    CHECK(r.p_hat == 0.0);
  }
}

TEST_CASE("estimate matches the exact oracle value at (2,2,2)") {
  ZTable table;
  TrialConfig cfg = config(2, 4, 2, 100'000, 11);
  cfg.b = 64;
  const SimReport r = run_trials(cfg, table);
  const double exact = exact_failure_probability(2, 2, 2).probability.get_d();
  CHECK(exact == 0.25);
  CHECK(r.ci_low <= exact);
  CHECK(exact <= r.ci_high);
  CHECK(r.bound == 0.25);
}

TEST_CASE("confidence intervals cover the exact value in most seeded runs") {
  ZTable table;
  struct Instance {
    std::size_t ell, n;
    unsigned k;
  };
  for (Instance inst : {Instance{3, 3, 2}, Instance{4, 4, 2}, Instance{3, 4, 3}}) {
    const double exact = exact_failure_probability(inst.ell, inst.n, inst.k).probability.get_d();
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      TrialConfig cfg = config(inst.n, inst.ell * inst.k, inst.k, 4000, seed);
      cfg.b = 64;
      const SimReport r = run_trials(cfg, table);
      covered += r.ci_low <= exact && exact <= r.ci_high;
    }
    INFO("ell = " << inst.ell << ", n = " << inst.n << ", k = " << inst.k << ", covered " << covered << "/20");
    CHECK(covered >= 18);
  }
}

TEST_CASE("report does not depend on the worker count") {
  ZTable table;
  const TrialConfig cfg = config(60, 120, 3, 3000, 5);
  const SimReport one = run_trials(cfg, table, 1);
  for (unsigned w : {2u, 3u, 8u}) CHECK(same(one, run_trials(cfg, table, w)));
}

TEST_CASE("sweeps are reproducible and match single-point runs") {
  ZTable table;
  const TrialConfig base = config(40, 0, 3, 2000, 9);
  const std::vector<std::uint64_t> grid = {60, 90, 120, 150};
  const auto a = sweep(base, grid, table, 1);
  const auto b = sweep(base, grid, table, 4);
  REQUIRE(a.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(same(a[i], b[i]));
    CHECK(a[i].config.m == grid[i]);
    CHECK(a[i].config.seed == base.seed);
    TrialConfig single = base;
    single.m = grid[i];
    single.seed = point_seed(base.seed, grid[i]);
    CHECK(same(a[i], run_trials(single, table)));
  }
  // Different seeds give different failure counts somewhere on the grid.
  TrialConfig other = base;
  other.seed = 10;
  const auto c = sweep(other, grid, table);
  bool differs = false;
  for (std::size_t i = 0; i < grid.size(); ++i) differs |= c[i].failures != a[i].failures;
  CHECK(differs);
}

TEST_CASE("estimates respect the union bound") {
  ZTable table;
  const TrialConfig base = config(50, 0, 3, 4000, 3);
  std::vector<std::uint64_t> grid;
  for (std::uint64_t m = 60; m <= 300; m += 30) grid.push_back(m);
  for (const SimReport& r : sweep(base, grid, table)) {
    const double half = 0.5 * (r.ci_high - r.ci_low);
    INFO("m = " << r.config.m << ", p_hat = " << r.p_hat << ", bound = " << r.bound);
    CHECK(r.p_hat <= r.bound + 3 * half);
  }
}

TEST_CASE("ss-avoiding removes size-2 collisions") {
  ZTable table;
  // ell = 16, so full tuple collisions are frequent under uniform hashing.
  TrialConfig uniform = config(20, 48, 3, 20'000, 4);
  uniform.b = 32;
  uniform.key_model = KeyModel::DistinctUniform;
  const SimReport u = run_trials(uniform, table);
  CHECK(u.size2_collision_failures > 0);

  TrialConfig ss = uniform;
  ss.scheme = HashKind::SsAvoiding;
  ss.b = 0;
  const SimReport s = run_trials(ss, table);
  CHECK(s.config.b == 12);
  CHECK(s.size2_collision_failures == 0);
  CHECK(s.failures < u.failures);
}

TEST_CASE("configuration errors") {
  ZTable table;
  CHECK_THROWS_AS(run_trials(config(10, 100, 3, 10), table), std::invalid_argument);
  CHECK_THROWS_AS(run_trials(config(0, 99, 3, 10), table), std::invalid_argument);

  TrialConfig ss = config(10, 48, 3, 10);
  ss.scheme = HashKind::SsAvoiding;
  ss.b = 0;
  CHECK_THROWS_AS(run_trials(ss, table), std::invalid_argument);  // iid keys
  ss.key_model = KeyModel::DistinctUniform;
  CHECK_NOTHROW(run_trials(ss, table));
  ss.b = 13;
  CHECK_THROWS_AS(run_trials(ss, table), std::invalid_argument);
  ss.b = 0;
  ss.m = 60;  // ell = 20 is not a power of two
  CHECK_THROWS_AS(run_trials(ss, table), std::invalid_argument);

  TrialConfig tiny = config(10, 30, 3, 10);
  tiny.b = 3;
  tiny.key_model = KeyModel::DistinctUniform;
  CHECK_THROWS_AS(run_trials(tiny, table), std::invalid_argument);
}
