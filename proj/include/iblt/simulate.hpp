#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "iblt/enumeration.hpp"
#include "iblt/hashing.hpp"

namespace iblt {

enum class KeyModel { IidUniform, DistinctUniform };

std::string_view to_string(KeyModel model);

/// SplitMix64 stream. Trial t of a run seeded with s draws from the stream
/// whose initial state is trial_stream_state(s, t); this rule is fixed.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

constexpr std::uint64_t trial_stream_state(std::uint64_t seed, std::uint64_t trial) {
  return mix64(seed) ^ mix64(trial ^ 0x7472696131ULL);
}

/// Seed used for the sweep point at `m`; a single-point run uses the same
/// rule, so a point reproduces identically inside or outside a sweep.
constexpr std::uint64_t point_seed(std::uint64_t seed, std::uint64_t m) {
  return mix64(seed ^ mix64(m + 0x6d5f706f696e74ULL));
}

struct TrialConfig {
  std::size_t n = 210;
  std::uint64_t m = 840;
  unsigned k = 3;
  /// Key and value width. For the SS-avoiding scheme, 0 means k*log2(m/k).
  unsigned b = 32;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 0;
  HashKind scheme = HashKind::PartitionedUniform;
  KeyModel key_model = KeyModel::IidUniform;

  std::uint64_t ell() const { return m / k; }
};

/// Checks divisibility, scheme shape and key-model constraints; returns the
/// config with b resolved. Throws std::invalid_argument with the reason.
TrialConfig validated(TrialConfig cfg);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// 95% Wilson score interval for `successes` out of `trials`.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct SimReport {
  TrialConfig config;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  /// Failures whose unrecovered entries are exactly two keys sharing a hash tuple.
  std::uint64_t size2_collision_failures = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double bound = 0.0;  // union bound, clamped to 1
  double p2 = 0.0;
};

/// Runs cfg.trials independent insert-then-list trials. Each trial's keys,
/// values and outcome depend only on (cfg, trial index), so the report is
/// identical for any `workers` count.
SimReport run_trials(const TrialConfig& cfg, ZTable& table, unsigned workers = 1);

/// One run_trials per m, each with seed point_seed(base.seed, m). Reports
/// come back in the order of `m_values`.
std::vector<SimReport> sweep(const TrialConfig& base, std::span<const std::uint64_t> m_values, ZTable& table,
                             unsigned workers = 1);

}  // namespace iblt
