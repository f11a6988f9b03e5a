#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "iblt/hashing.hpp"
#include "iblt/oracle.hpp"
#include "iblt/simulate.hpp"

namespace iblt::test {

/// Scheme under which key j + 1 lands in row b.row(i, j) of every subtable i.
inline HashScheme scheme_for(const StateMatrix& b, unsigned bits = 32) {
  return HashScheme::custom(b.k(), b.ell(), bits, [b](Key x, std::span<std::size_t> out) {
    const std::size_t j = static_cast<std::size_t>(x - 1);
    for (unsigned i = 0; i < b.k(); ++i) out[i] = i * b.ell() + b.row(i, j);
  });
}

/// Calls fn on every k-block state matrix of shape ell x n, by recursion.
inline void for_each_state_matrix(unsigned k, std::size_t ell, std::size_t n,
                                  const std::function<void(const StateMatrix&)>& fn) {
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(k) * n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t d) {
    if (d == rows.size()) {
      fn(StateMatrix(k, ell, n, rows));
      return;
    }
    for (std::uint32_t r = 0; r < ell; ++r) {
      rows[d] = r;
      rec(d + 1);
    }
  };
  rec(0);
}

inline StateMatrix random_state_matrix(SplitMix64& rng, unsigned k, std::size_t ell, std::size_t n) {
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(k) * n);
  for (auto& r : rows) r = static_cast<std::uint32_t>(rng() % ell);
  return StateMatrix(k, ell, n, rows);
}

}  // namespace iblt::test
