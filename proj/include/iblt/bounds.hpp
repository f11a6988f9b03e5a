#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "iblt/enumeration.hpp"

namespace iblt {

struct BoundTerm {
  std::size_t size = 0;  // stopping-set size i
  double value = 0.0;    // C(n,i) (z(ell,i) / ell^i)^k
};

struct BoundBreakdown {
  std::size_t ell = 0;
  std::size_t n = 0;
  unsigned k = 0;
  std::vector<BoundTerm> terms;  // i = 2..n in increasing order
  double total = 0.0;
  double total_clamped = 0.0;
};

/// Union bound on the listing failure probability under k uniform hashes
/// into subtables of ell cells with n stored entries:
///
///   P_f <= sum_{i=2}^{n} C(n,i) (z(ell,i) / ell^i)^k
///
/// Each term is formed as an exact rational and rounded to double once, so
/// the i = 2 term equals p2_asymptote() bit for bit. Terms are accumulated
/// smallest first in long double.
BoundBreakdown union_bound(ZTable& table, std::size_t ell, std::size_t n, unsigned k);

/// The same sum as an exact rational.
mpq_class union_bound_exact(ZTable& table, std::size_t ell, std::size_t n, unsigned k);

/// Size-2 stopping-set asymptote C(n,2) / ell^k, the error-floor level.
double p2_asymptote(std::size_t ell, std::size_t n, unsigned k);

/// Probability that a fixed set of i entries forms a stopping set,
/// (z(ell,i) / ell^i)^k.
double stopping_set_probability(ZTable& table, std::size_t ell, std::size_t i, unsigned k);
mpq_class stopping_set_probability_exact(ZTable& table, std::size_t ell, std::size_t i, unsigned k);

/// num/den reduced to lowest terms, then truncated to double. Equal
/// rationals map to the same double whatever their representation.
double ratio_to_double(const mpz_class& num, const mpz_class& den);

}  // namespace iblt
