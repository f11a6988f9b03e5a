#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace iblt {

/// Dense 0/1 matrix, row-major.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

  /// Member of S^(rows, n): column j has its single 1 in row `column_rows[j]`.
  static BinaryMatrix from_column_rows(std::size_t rows, std::span<const std::uint32_t> column_rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool operator()(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c] != 0; }
  void set(std::size_t r, std::size_t c, bool bit) { bits_[r * cols_ + c] = bit ? 1 : 0; }

  std::size_t row_weight(std::size_t r) const;
  std::size_t col_weight(std::size_t c) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

using PivotSet = std::vector<std::pair<std::size_t, std::size_t>>;

/// True iff no row of `m` has Hamming weight exactly one.
bool is_stopping_matrix(const BinaryMatrix& m);

/// All (row, col) with m(row, col) = 1 and weight(row) = 1, sorted.
PivotSet pivots(const BinaryMatrix& m);

/// Memoized census z(ell, n) of stopping matrices among the ell^n binary
/// ell x n matrices of column weight one.
///
/// z(ell, n) = ell^n - sum_{c=1}^{min(ell,n)} c! C(ell,c) C(n,c) z(ell-c, n-c)
///
/// The c-th term counts matrices with exactly c pivot rows. Entries are exact
/// integers; the memo is the rectangle [0, L] x [0, N], grown on demand in
/// increasing (ell, n) order so every dependency is already present.
class ZTable {
 public:
  ZTable() = default;

  /// z(ell, n), extending the memo rectangle if needed.
  const mpz_class& z(std::size_t ell, std::size_t n);
  /// z(ell, n) from an already-filled memo; throws std::out_of_range otherwise.
  const mpz_class& at(std::size_t ell, std::size_t n) const;

  void reserve(std::size_t max_ell, std::size_t max_n);
  bool contains(std::size_t ell, std::size_t n) const {
    return ell < rows_.size() && n < rows_[ell].size();
  }
  std::size_t max_ell() const { return rows_.empty() ? 0 : rows_.size() - 1; }
  std::size_t max_n() const { return rows_.empty() ? 0 : rows_.front().size() - 1; }

  /// Text cache: a `ztable v1` header line, then one `ell n z` line per entry.
  void save(const std::filesystem::path& path) const;
  /// Loads a cache written by save() and re-derives every entry from the
  /// recursion to reject stale or corrupted files.
  static ZTable load(const std::filesystem::path& path);

 private:
  mpz_class compute(std::size_t ell, std::size_t n) const;

  std::vector<std::vector<mpz_class>> rows_;
};

/// Counts stopping matrices by visiting all ell^n members of S^(ell, n).
/// Throws ResourceError when ell^n exceeds `guard`.
mpz_class enumerate_z_bruteforce(std::size_t ell, std::size_t n, std::uint64_t guard = 10'000'000);

/// Natural log of a positive big integer, relative error near 1e-16.
double log_big(const mpz_class& v);

/// ln(z(ell, i) / ell^i); -infinity when z(ell, i) = 0.
double stopping_ratio_log(ZTable& table, std::size_t ell, std::size_t i);

}  // namespace iblt
