#include "iblt/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace iblt {

namespace {

void check_params(std::size_t ell, std::size_t n, unsigned k) {
  if (ell == 0 || n == 0 || k == 0) throw std::invalid_argument("bound: ell, n and k must be positive");
}

mpz_class binomial(std::size_t n, std::size_t i) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, i);
  return out;
}

mpz_class power(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

mpz_class power(std::size_t base, unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

// Numerator and denominator of C(n,i) z^k / ell^(ik), uncanonicalized.
std::pair<mpz_class, mpz_class> term_ratio(ZTable& table, std::size_t ell, std::size_t n, std::size_t i,
                                           unsigned k) {
  mpz_class num = binomial(n, i) * power(table.z(ell, i), k);
  return {std::move(num), power(ell, static_cast<unsigned long>(i) * k)};
}

}  // namespace

double ratio_to_double(const mpz_class& num, const mpz_class& den) {
  mpq_class q;
  mpz_set(mpq_numref(q.get_mpq_t()), num.get_mpz_t());
  mpz_set(mpq_denref(q.get_mpq_t()), den.get_mpz_t());
  q.canonicalize();
  return mpq_get_d(q.get_mpq_t());
}

BoundBreakdown union_bound(ZTable& table, std::size_t ell, std::size_t n, unsigned k) {
  check_params(ell, n, k);
  table.reserve(ell, n);
  BoundBreakdown out{ell, n, k, {}, 0.0, 0.0};
  out.terms.reserve(n > 1 ? n - 1 : 0);
  for (std::size_t i = 2; i <= n; ++i) {
    const auto [num, den] = term_ratio(table, ell, n, i, k);
    out.terms.push_back({i, ratio_to_double(num, den)});
  }
  std::vector<double> sorted;
  sorted.reserve(out.terms.size());
  for (const auto& t : out.terms) sorted.push_back(t.value);
  std::sort(sorted.begin(), sorted.end());
  long double acc = 0.0L;
  for (double v : sorted) acc += v;
  out.total = static_cast<double>(acc);
  out.total_clamped = std::min(out.total, 1.0);
  return out;
}

mpq_class union_bound_exact(ZTable& table, std::size_t ell, std::size_t n, unsigned k) {
  check_params(ell, n, k);
  table.reserve(ell, n);
  mpq_class sum = 0;
  for (std::size_t i = 2; i <= n; ++i) {
    auto [num, den] = term_ratio(table, ell, n, i, k);
    mpq_class term(num, den);
    term.canonicalize();
    sum += term;
  }
  return sum;
}

double p2_asymptote(std::size_t ell, std::size_t n, unsigned k) {
  check_params(ell, n, k);
  if (n < 2) return 0.0;
  return ratio_to_double(binomial(n, 2), power(ell, k));
}

mpq_class stopping_set_probability_exact(ZTable& table, std::size_t ell, std::size_t i, unsigned k) {
  if (ell == 0 || i == 0 || k == 0) {
    throw std::invalid_argument("stopping_set_probability: ell, i and k must be positive");
  }
  mpq_class p(power(table.z(ell, i), k), power(ell, static_cast<unsigned long>(i) * k));
  p.canonicalize();
  return p;
}

double stopping_set_probability(ZTable& table, std::size_t ell, std::size_t i, unsigned k) {
  const mpq_class p = stopping_set_probability_exact(table, ell, i, k);
  return p.get_d();
}

}  // namespace iblt
