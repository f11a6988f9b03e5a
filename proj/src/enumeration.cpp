#include "iblt/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "iblt/error.hpp"

namespace iblt {

BinaryMatrix BinaryMatrix::from_column_rows(std::size_t rows, std::span<const std::uint32_t> column_rows) {
  BinaryMatrix m(rows, column_rows.size());
  for (std::size_t j = 0; j < column_rows.size(); ++j) {
    if (column_rows[j] >= rows) throw std::out_of_range("from_column_rows: row index out of range");
    m.set(column_rows[j], j, true);
  }
  return m;
}

std::size_t BinaryMatrix::row_weight(std::size_t r) const {
  return static_cast<std::size_t>(std::count(bits_.begin() + r * cols_, bits_.begin() + (r + 1) * cols_, 1));
}

std::size_t BinaryMatrix::col_weight(std::size_t c) const {
  std::size_t w = 0;
  for (std::size_t r = 0; r < rows_; ++r) w += bits_[r * cols_ + c];
  return w;
}

bool is_stopping_matrix(const BinaryMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row_weight(r) == 1) return false;
  }
  return true;
}

PivotSet pivots(const BinaryMatrix& m) {
  PivotSet out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row_weight(r) != 1) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c)) out.emplace_back(r, c);
    }
  }
  return out;
}

mpz_class ZTable::compute(std::size_t ell, std::size_t n) const {
  if (ell == 0) return n == 0 ? 1 : 0;
  if (n == 1) return 0;
  mpz_class acc;
  mpz_ui_pow_ui(acc.get_mpz_t(), ell, n);
  // coef = c! C(ell,c) C(n,c) = ell(ell-1)...(ell-c+1) * C(n,c)
  mpz_class coef = 1;
  mpz_class term;
  const std::size_t cmax = std::min(ell, n);
  for (std::size_t c = 1; c <= cmax; ++c) {
    coef *= static_cast<unsigned long>(n - c + 1);
    mpz_divexact_ui(coef.get_mpz_t(), coef.get_mpz_t(), c);
    coef *= static_cast<unsigned long>(ell - c + 1);
    const mpz_class& rest = rows_[ell - c][n - c];
    if (sgn(rest) == 0) continue;
    mpz_mul(term.get_mpz_t(), coef.get_mpz_t(), rest.get_mpz_t());
    acc -= term;
  }
  return acc;
}

void ZTable::reserve(std::size_t max_ell, std::size_t max_n) {
  const std::size_t new_l = std::max(max_ell, rows_.empty() ? 0 : rows_.size() - 1);
  const std::size_t new_n = std::max(max_n, rows_.empty() ? 0 : rows_.front().size() - 1);
  if (!rows_.empty() && new_l + 1 == rows_.size() && new_n + 1 == rows_.front().size()) return;
  rows_.resize(new_l + 1);
  for (std::size_t ell = 0; ell <= new_l; ++ell) {
    auto& row = rows_[ell];
    row.reserve(new_n + 1);
    while (row.size() <= new_n) row.push_back(compute(ell, row.size()));
  }
}

const mpz_class& ZTable::z(std::size_t ell, std::size_t n) {
  if (!contains(ell, n)) reserve(ell, n);
  return rows_[ell][n];
}

const mpz_class& ZTable::at(std::size_t ell, std::size_t n) const {
  if (!contains(ell, n)) {
    throw std::out_of_range("ZTable::at: (" + std::to_string(ell) + ", " + std::to_string(n) +
                            ") not filled");
  }
  return rows_[ell][n];
}

void ZTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("ZTable::save: cannot open " + path.string());
  out << "ztable v1\n";
  for (std::size_t ell = 0; ell < rows_.size(); ++ell) {
    for (std::size_t n = 0; n < rows_[ell].size(); ++n) {
      out << ell << ' ' << n << ' ' << rows_[ell][n].get_str() << '\n';
    }
  }
  if (!out) throw std::runtime_error("ZTable::save: write failed for " + path.string());
}

ZTable ZTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ZTable::load: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "ztable v1") {
    throw std::runtime_error("ZTable::load: missing 'ztable v1' header in " + path.string());
  }
  struct Triple {
    std::size_t ell;
    std::size_t n;
    mpz_class z;
  };
  std::vector<Triple> triples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    Triple t{};
    std::string digits;
    if (!(fields >> t.ell >> t.n >> digits)) throw std::runtime_error("ZTable::load: malformed line: " + line);
    t.z.set_str(digits, 10);
    triples.push_back(std::move(t));
  }

  ZTable table;
  if (triples.empty()) return table;
  const std::size_t width = static_cast<std::size_t>(
      std::count_if(triples.begin(), triples.end(), [](const Triple& t) { return t.ell == 0; }));
  if (width == 0 || triples.size() % width != 0) throw std::runtime_error("ZTable::load: ragged table");
  table.rows_.resize(triples.size() / width);
  for (std::size_t idx = 0; idx < triples.size(); ++idx) {
    const Triple& t = triples[idx];
    if (t.ell != idx / width || t.n != idx % width) {
      throw std::runtime_error("ZTable::load: entry (" + std::to_string(t.ell) + ", " + std::to_string(t.n) +
                               ") out of order");
    }
    if (table.compute(t.ell, t.n) != t.z) {
      throw std::runtime_error("ZTable::load: value mismatch at (" + std::to_string(t.ell) + ", " +
                               std::to_string(t.n) + ")");
    }
    table.rows_[t.ell].push_back(t.z);
  }
  return table;
}

mpz_class enumerate_z_bruteforce(std::size_t ell, std::size_t n, std::uint64_t guard) {
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), ell, n);
  if (total > mpz_class(std::to_string(guard))) {
    throw ResourceError("enumerate_z_bruteforce: " + std::to_string(ell) + "^" + std::to_string(n) +
                        " matrices exceeds guard " + std::to_string(guard));
  }
  if (n == 0) return 1;
  if (ell == 0) return 0;

  std::vector<std::size_t> digit(n, 0);
  std::vector<std::size_t> weight(ell, 0);
  weight[0] = n;
  std::size_t weight_one_rows = n == 1 ? 1 : 0;

  auto move_column = [&](std::size_t from, std::size_t to) {
    if (weight[from] == 1) --weight_one_rows;
    if (--weight[from] == 1) ++weight_one_rows;
    if (weight[to] == 1) --weight_one_rows;
    if (++weight[to] == 1) ++weight_one_rows;
  };

  std::uint64_t stopping = 0;
  for (;;) {
    if (weight_one_rows == 0) ++stopping;
    std::size_t j = 0;
    while (j < n && digit[j] + 1 == ell) {
      move_column(digit[j], 0);
      digit[j] = 0;
      ++j;
    }
    if (j == n) break;
    move_column(digit[j], digit[j] + 1);
    ++digit[j];
  }
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof stopping, 0, 0, &stopping);
  return out;
}

double log_big(const mpz_class& v) {
  if (sgn(v) <= 0) throw std::domain_error("log_big: argument must be positive");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, v.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

double stopping_ratio_log(ZTable& table, std::size_t ell, std::size_t i) {
  if (ell == 0 || i == 0) throw std::invalid_argument("stopping_ratio_log: ell and i must be positive");
  const mpz_class& z = table.z(ell, i);
  if (sgn(z) == 0) return -std::numeric_limits<double>::infinity();
  return log_big(z) - static_cast<double>(i) * std::log(static_cast<double>(ell));
}

}  // namespace iblt
