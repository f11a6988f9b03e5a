#include "iblt/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

#include "iblt/bounds.hpp"
#include "iblt/table.hpp"

namespace iblt {

std::string_view to_string(KeyModel model) {
  switch (model) {
    case KeyModel::IidUniform: return "iid";
    case KeyModel::DistinctUniform: return "distinct";
  }
  return "unknown";
}

TrialConfig validated(TrialConfig cfg) {
  if (cfg.k == 0) throw std::invalid_argument("k must be positive");
  if (cfg.m == 0 || cfg.m % cfg.k != 0) {
    throw std::invalid_argument("m = " + std::to_string(cfg.m) + " must be a positive multiple of k = " +
                                std::to_string(cfg.k));
  }
  if (cfg.n == 0) throw std::invalid_argument("n must be positive");
  switch (cfg.scheme) {
    case HashKind::PartitionedUniform:
      break;
    case HashKind::SsAvoiding: {
      const std::uint64_t ell = cfg.ell();
      if (!std::has_single_bit(ell)) {
        throw std::invalid_argument("ss-avoiding: m/k = " + std::to_string(ell) +
                                    " must be a power of two (m = k * 2^s)");
      }
      const unsigned s = static_cast<unsigned>(std::countr_zero(ell));
      const unsigned want = s * cfg.k;
      if (cfg.b == 0) cfg.b = want;
      if (cfg.b != want) {
        throw std::invalid_argument("ss-avoiding: b must equal k * log2(m/k) = " + std::to_string(want) +
                                    ", got " + std::to_string(cfg.b));
      }
      if (cfg.key_model != KeyModel::DistinctUniform) {
        throw std::invalid_argument("ss-avoiding: requires distinct keys (--key-model distinct)");
      }
      break;
    }
    case HashKind::Custom:
      throw std::invalid_argument("simulation supports the uniform and ss-avoiding schemes only");
  }
  if (cfg.b == 0 || cfg.b > 64) throw std::invalid_argument("b must lie in [1, 64], got " + std::to_string(cfg.b));
  if (cfg.key_model == KeyModel::DistinctUniform && cfg.b < 64 &&
      static_cast<std::uint64_t>(cfg.n) > (std::uint64_t{1} << cfg.b)) {
    throw std::invalid_argument("distinct keys: n exceeds 2^b");
  }
  return cfg;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (p + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) ci.low = 0.0;
  if (successes == trials) ci.high = 1.0;
  ci.low = std::min(ci.low, p);
  ci.high = std::max(ci.high, p);
  return ci;
}

namespace {

HashScheme make_scheme(const TrialConfig& cfg) {
  HashParams params{cfg.k, cfg.ell(), cfg.b, mix64(cfg.seed ^ 0x68617368ULL), cfg.scheme};
  if (cfg.scheme == HashKind::SsAvoiding) return HashScheme::ss_avoiding(params);
  return HashScheme::partitioned_uniform(params);
}

struct Tally {
  std::uint64_t failures = 0;
  std::uint64_t size2_collisions = 0;
};

class TrialRunner {
 public:
  TrialRunner(const TrialConfig& cfg, const HashScheme& scheme) : cfg_(cfg), table_(scheme) {
    inserted_.reserve(cfg.n);
  }

  void run(std::uint64_t trial, Tally& tally) {
    SplitMix64 rng(trial_stream_state(cfg_.seed, trial));
    const std::uint64_t mask = low_mask(cfg_.b);
    inserted_.clear();
    if (cfg_.key_model == KeyModel::DistinctUniform) {
      seen_.clear();
      while (inserted_.size() < cfg_.n) {
        const Key x = rng() & mask;
        if (!seen_.insert(x).second) continue;
        inserted_.emplace_back(x, rng() & mask);
      }
    } else {
      for (std::size_t j = 0; j < cfg_.n; ++j) {
        const Key x = rng() & mask;
        inserted_.emplace_back(x, rng() & mask);
      }
    }

    Iblt table = table_;
    for (const auto& [x, y] : inserted_) table.insert(x, y);
    ListingResult listing = table.list_entries_in_place();

    std::sort(inserted_.begin(), inserted_.end());
    std::sort(listing.entries.begin(), listing.entries.end());
    if (listing.complete() && listing.entries == inserted_) return;

    ++tally.failures;
    std::vector<Entry> missing;
    std::set_difference(inserted_.begin(), inserted_.end(), listing.entries.begin(), listing.entries.end(),
                        std::back_inserter(missing));
    if (missing.size() == 2 && missing[0].first != missing[1].first &&
        table.scheme()(missing[0].first) == table.scheme()(missing[1].first)) {
      ++tally.size2_collisions;
    }
  }

 private:
  const TrialConfig& cfg_;
  const Iblt table_;
  std::vector<Entry> inserted_;
  std::unordered_set<Key> seen_;
};

}  // namespace

SimReport run_trials(const TrialConfig& raw, ZTable& ztable, unsigned workers) {
  const TrialConfig cfg = validated(raw);
  const HashScheme scheme = make_scheme(cfg);

  workers = std::max(1u, workers);
  if (cfg.trials < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(1, cfg.trials));
  std::vector<Tally> tallies(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        TrialRunner runner(cfg, scheme);
        for (std::uint64_t t = w; t < cfg.trials; t += workers) runner.run(t, tallies[w]);
      });
    }
  }

  SimReport report;
  report.config = cfg;
  report.trials = cfg.trials;
  for (const Tally& t : tallies) {
    report.failures += t.failures;
    report.size2_collision_failures += t.size2_collisions;
  }
  report.p_hat = cfg.trials ? static_cast<double>(report.failures) / static_cast<double>(cfg.trials) : 0.0;
  const Interval ci = wilson_interval(report.failures, cfg.trials);
  report.ci_low = ci.low;
  report.ci_high = ci.high;
  report.bound = union_bound(ztable, cfg.ell(), cfg.n, cfg.k).total_clamped;
  report.p2 = p2_asymptote(cfg.ell(), cfg.n, cfg.k);
  return report;
}

std::vector<SimReport> sweep(const TrialConfig& base, std::span<const std::uint64_t> m_values, ZTable& table,
                             unsigned workers) {
  std::vector<TrialConfig> points;
  points.reserve(m_values.size());
  for (std::uint64_t m : m_values) {
    TrialConfig cfg = base;
    cfg.m = m;
    cfg.seed = point_seed(base.seed, m);
    points.push_back(validated(cfg));
  }
  std::vector<SimReport> reports;
  reports.reserve(points.size());
  for (const TrialConfig& cfg : points) {
    SimReport r = run_trials(cfg, table, workers);
    r.config.seed = base.seed;
    reports.push_back(r);
  }
  return reports;
}

}  // namespace iblt
