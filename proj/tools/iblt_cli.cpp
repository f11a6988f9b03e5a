// iblt_cli: exact stopping-set census, union bounds, exhaustive oracle and
// Monte Carlo listing experiments for invertible Bloom lookup tables.
//
// stdout carries CSV; stderr carries diagnostics.
// Exit codes: 0 success, 1 usage error, 2 resource guard, 3 internal error.

#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "iblt/commands.hpp"
#include "iblt/error.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kResourceError = 2;
constexpr int kInternalError = 3;

unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IBLT listing-failure analysis toolkit"};
  app.require_subcommand(1);

  std::size_t lmax = 10;
  std::size_t nmax = 10;
  std::string cache_path;
  auto* zt = app.add_subcommand("ztable", "Exact stopping-matrix counts z(ell, n)");
  zt->add_option("lmax,--lmax", lmax, "Largest ell")->required()->check(CLI::PositiveNumber);
  zt->add_option("nmax,--nmax", nmax, "Largest n")->required()->check(CLI::PositiveNumber);
  zt->add_option("--cache", cache_path, "Memo cache file (read if present, then rewritten)");

  std::size_t ell = 0;
  std::uint64_t m = 0;
  std::size_t n = 0;
  unsigned k = 3;
  bool breakdown = false;
  auto* bd = app.add_subcommand("bound", "Union bound on the listing failure probability");
  auto* bd_ell = bd->add_option("--ell", ell, "Cells per subtable")->check(CLI::PositiveNumber);
  auto* bd_m = bd->add_option("--m", m, "Total cells (must be a multiple of k)")->check(CLI::PositiveNumber);
  bd_ell->excludes(bd_m);
  bd->add_option("--n", n, "Stored entries")->required()->check(CLI::PositiveNumber);
  bd->add_option("--k", k, "Hash functions")->check(CLI::PositiveNumber);
  bd->add_flag("--breakdown", breakdown, "One row per stopping-set size");

  iblt::TrialConfig sim;
  std::optional<unsigned> sim_b;
  std::string scheme = "uniform";
  std::string key_model;
  std::string sweep_spec;
  unsigned workers = default_workers();
  auto* sm = app.add_subcommand("simulate", "Monte Carlo listing failure rate");
  sm->add_option("--n", sim.n, "Stored entries per trial")->required()->check(CLI::PositiveNumber);
  auto* sm_m = sm->add_option("--m", sim.m, "Total cells")->check(CLI::PositiveNumber);
  auto* sm_sweep = sm->add_option("--sweep", sweep_spec, "Grid m1:m2:step (inclusive)");
  sm_m->excludes(sm_sweep);
  sm->add_option("--k", sim.k, "Hash functions")->check(CLI::PositiveNumber);
  sm->add_option("--b", sim_b, "Key/value width in bits (default 32; ss-avoiding derives k*log2(m/k))")
      ->check(CLI::Range(1, 64));
  sm->add_option("--trials", sim.trials, "Trials per grid point");
  sm->add_option("--seed", sim.seed, "Base seed");
  sm->add_option("--scheme", scheme, "Hash scheme")->check(CLI::IsMember({"uniform", "ss-avoiding"}));
  sm->add_option("--key-model", key_model, "Key sampling (default: iid for uniform, distinct for ss-avoiding)")
      ->check(CLI::IsMember({"iid", "distinct"}));
  sm->add_option("--workers", workers, "Worker threads (output does not depend on this)")
      ->check(CLI::PositiveNumber);

  std::uint64_t guard = 10'000'000;
  auto* orc = app.add_subcommand("oracle", "Exact failure probability by exhaustive enumeration");
  orc->add_option("--ell", ell, "Cells per subtable")->required()->check(CLI::PositiveNumber);
  orc->add_option("--n", n, "Stored entries")->required()->check(CLI::PositiveNumber);
  orc->add_option("--k", k, "Hash functions")->check(CLI::PositiveNumber);
  orc->add_option("--guard", guard, "Maximum number of state matrices to visit");
  orc->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (*zt) {
      std::optional<std::filesystem::path> cache;
      if (!cache_path.empty()) cache = cache_path;
      iblt::cli::ztable(std::cout, lmax, nmax, cache);
    } else if (*bd) {
      if (*bd_m) {
        if (m % k != 0) throw std::invalid_argument("--m " + std::to_string(m) + " is not a multiple of --k " + std::to_string(k));
        ell = m / k;
      } else if (!*bd_ell) {
        throw std::invalid_argument("bound: one of --ell or --m is required");
      }
      iblt::cli::bound(std::cout, ell, n, k, breakdown);
    } else if (*sm) {
      if (!*sm_m && !*sm_sweep) throw std::invalid_argument("simulate: one of --m or --sweep is required");
      sim.scheme = scheme == "ss-avoiding" ? iblt::HashKind::SsAvoiding : iblt::HashKind::PartitionedUniform;
      if (key_model.empty()) key_model = sim.scheme == iblt::HashKind::SsAvoiding ? "distinct" : "iid";
      sim.key_model = key_model == "distinct" ? iblt::KeyModel::DistinctUniform : iblt::KeyModel::IidUniform;
      sim.b = sim_b ? *sim_b : (sim.scheme == iblt::HashKind::SsAvoiding ? 0 : 32);
      const std::vector<std::uint64_t> grid =
          *sm_sweep ? iblt::cli::parse_sweep(sweep_spec) : std::vector<std::uint64_t>{sim.m};
      iblt::cli::simulate(std::cout, sim, grid, workers);
    } else if (*orc) {
      iblt::cli::oracle(std::cout, ell, n, k, guard, workers);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const iblt::ResourceError& e) {
    std::cerr << "resource guard: " << e.what() << '\n';
    return kResourceError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return 0;
}
