#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "iblt/enumeration.hpp"

namespace iblt {

/// Incidence of n entries to k subtables of ell cells: entry j sits in row
/// `row(i, j)` of block i. Each block is a member of S^(ell, n).
class StateMatrix {
 public:
  StateMatrix(unsigned k, std::size_t ell, std::size_t n);
  StateMatrix(unsigned k, std::size_t ell, std::size_t n, std::vector<std::uint32_t> rows);

  unsigned k() const { return k_; }
  std::size_t ell() const { return ell_; }
  std::size_t n() const { return n_; }

  std::uint32_t row(unsigned block, std::size_t entry) const { return rows_[block * n_ + entry]; }
  void set_row(unsigned block, std::size_t entry, std::uint32_t r);
  BinaryMatrix block(unsigned i) const;

 private:
  unsigned k_;
  std::size_t ell_;
  std::size_t n_;
  std::vector<std::uint32_t> rows_;
};

/// Columns left after repeatedly deleting any column that is the only one
/// in some row of the stacked (k*ell) x n matrix. Sorted ascending.
std::vector<std::size_t> peel_fixpoint(const StateMatrix& b);

bool contains_stopping_submatrix(const StateMatrix& b);

struct ExactFailure {
  std::uint64_t failing = 0;  // state matrices containing a stopping matrix
  std::uint64_t total = 0;    // ell^(n k)
  mpq_class probability;      // failing / total in lowest terms
};

/// Exact listing failure probability by visiting every state matrix.
/// Throws ResourceError when ell^(n k) exceeds `guard`. The space is split
/// by the leading digit across `workers` threads.
ExactFailure exact_failure_probability(std::size_t ell, std::size_t n, unsigned k,
                                       std::uint64_t guard = 10'000'000, unsigned workers = 1);

}  // namespace iblt
