#include "iblt/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "iblt/bounds.hpp"
#include "iblt/enumeration.hpp"
#include "iblt/error.hpp"
#include "iblt/oracle.hpp"

namespace iblt::cli {

namespace {
constexpr double kMaxMemoBytes = 4e9;
}  // namespace

std::string format_real(double v) {
  char buf[64];
  for (int precision = 12; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::vector<std::uint64_t> parse_sweep(std::string_view spec) {
  std::uint64_t parts[3] = {0, 0, 0};
  std::size_t field = 0;
  const char* p = spec.data();
  const char* end = spec.data() + spec.size();
  while (field < 3) {
    auto [next, ec] = std::from_chars(p, end, parts[field]);
    if (ec != std::errc{}) throw std::invalid_argument("--sweep: expected m1:m2:step, got '" + std::string(spec) + "'");
    p = next;
    ++field;
    if (field < 3) {
      if (p == end || *p != ':') throw std::invalid_argument("--sweep: expected m1:m2:step, got '" + std::string(spec) + "'");
      ++p;
    }
  }
  if (p != end) throw std::invalid_argument("--sweep: trailing characters in '" + std::string(spec) + "'");
  if (parts[2] == 0) throw std::invalid_argument("--sweep: step must be positive");
  if (parts[1] < parts[0]) throw std::invalid_argument("--sweep: m2 must not be below m1");
  std::vector<std::uint64_t> grid;
  for (std::uint64_t m = parts[0]; m <= parts[1]; m += parts[2]) grid.push_back(m);
  return grid;
}

void ztable(std::ostream& out, std::size_t lmax, std::size_t nmax,
            const std::optional<std::filesystem::path>& cache) {
  if (lmax == 0 || nmax == 0) throw std::invalid_argument("ztable: lmax and nmax must be positive");
  // z(ell, n) <= ell^n, so the memo needs about sum_n n log2(lmax) bits per row.
  const double memo_bytes = static_cast<double>(lmax + 1) * static_cast<double>(nmax) * static_cast<double>(nmax + 1) /
                            2.0 * std::log2(static_cast<double>(lmax) + 1.0) / 8.0;
  if (memo_bytes > kMaxMemoBytes) {
    throw ResourceError("ztable: (ell, n) = (" + std::to_string(lmax) + ", " + std::to_string(nmax) +
                        ") needs roughly " + std::to_string(static_cast<long long>(memo_bytes / 1e6)) +
                        " MB of exact integers");
  }
  ZTable table = cache && std::filesystem::exists(*cache) ? ZTable::load(*cache) : ZTable{};
  table.reserve(lmax, nmax);
  out << "ell,n,z\n";
  for (std::size_t ell = 1; ell <= lmax; ++ell) {
    for (std::size_t n = 1; n <= nmax; ++n) out << ell << ',' << n << ',' << table.at(ell, n).get_str() << '\n';
  }
  if (cache) table.save(*cache);
}

void bound(std::ostream& out, std::size_t ell, std::size_t n, unsigned k, bool breakdown) {
  ZTable table;
  const BoundBreakdown b = union_bound(table, ell, n, k);
  const std::string head = std::to_string(ell) + ',' + std::to_string(n) + ',' + std::to_string(k) + ',' +
                           format_real(b.total) + ',' + format_real(b.total_clamped) + ',' +
                           format_real(p2_asymptote(ell, n, k));
  if (!breakdown) {
    out << "ell,n,k,bound_raw,bound_clamped,p2\n" << head << '\n';
    return;
  }
  out << "ell,n,k,bound_raw,bound_clamped,p2,i,term\n";
  if (b.terms.empty()) out << head << ",,\n";
  for (const BoundTerm& t : b.terms) out << head << ',' << t.size << ',' << format_real(t.value) << '\n';
}

void simulate(std::ostream& out, const TrialConfig& base, const std::vector<std::uint64_t>& m_values,
              unsigned workers) {
  ZTable table;
  const std::vector<SimReport> reports = sweep(base, m_values, table, workers);
  out << "m,ell,n,k,b,scheme,trials,failures,p_hat,ci_low,ci_high,bound_clamped,p2,seed\n";
  for (const SimReport& r : reports) {
    const TrialConfig& c = r.config;
    out << c.m << ',' << c.ell() << ',' << c.n << ',' << c.k << ',' << c.b << ',' << to_string(c.scheme) << ','
        << r.trials << ',' << r.failures << ',' << format_real(r.p_hat) << ',' << format_real(r.ci_low) << ','
        << format_real(r.ci_high) << ',' << format_real(r.bound) << ',' << format_real(r.p2) << ',' << c.seed
        << '\n';
  }
}

void oracle(std::ostream& out, std::size_t ell, std::size_t n, unsigned k, std::uint64_t guard,
            unsigned workers) {
  const ExactFailure exact = exact_failure_probability(ell, n, k, guard, workers);
  ZTable table;
  const double clamped = union_bound(table, ell, n, k).total_clamped;
  out << "ell,n,k,exact_num,exact_den,exact_float,bound_clamped\n";
  out << ell << ',' << n << ',' << k << ',' << exact.probability.get_num().get_str() << ','
      << exact.probability.get_den().get_str() << ',' << format_real(exact.probability.get_d()) << ','
      << format_real(clamped) << '\n';
}

}  // namespace iblt::cli
