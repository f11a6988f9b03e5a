#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "iblt/simulate.hpp"

namespace iblt::cli {

/// Shortest decimal form that reads back to the same double (17 digits max).
std::string format_real(double v);

/// Parses "m1:m2:step" into the inclusive grid m1, m1+step, ... <= m2.
std::vector<std::uint64_t> parse_sweep(std::string_view spec);

/// Columns: ell,n,z for the rectangle [1,lmax] x [1,nmax]. With a cache path
/// the memo is loaded from it when present and written back afterwards.
void ztable(std::ostream& out, std::size_t lmax, std::size_t nmax,
            const std::optional<std::filesystem::path>& cache = std::nullopt);

/// Columns: ell,n,k,bound_raw,bound_clamped,p2. With `breakdown`, adds
/// columns i,term and emits one row per stopping-set size i in [2, n].
void bound(std::ostream& out, std::size_t ell, std::size_t n, unsigned k, bool breakdown);

/// Columns: m,ell,n,k,b,scheme,trials,failures,p_hat,ci_low,ci_high,
/// bound_clamped,p2,seed. One row per grid point, in grid order.
void simulate(std::ostream& out, const TrialConfig& base, const std::vector<std::uint64_t>& m_values,
              unsigned workers);

/// Columns: ell,n,k,exact_num,exact_den,exact_float,bound_clamped.
void oracle(std::ostream& out, std::size_t ell, std::size_t n, unsigned k, std::uint64_t guard,
            unsigned workers);

}  // namespace iblt::cli
