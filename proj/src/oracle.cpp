#include "iblt/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>

#include "iblt/error.hpp"

namespace iblt {

StateMatrix::StateMatrix(unsigned k, std::size_t ell, std::size_t n)
    : StateMatrix(k, ell, n, std::vector<std::uint32_t>(static_cast<std::size_t>(k) * n, 0)) {}

StateMatrix::StateMatrix(unsigned k, std::size_t ell, std::size_t n, std::vector<std::uint32_t> rows)
    : k_(k), ell_(ell), n_(n), rows_(std::move(rows)) {
  if (k_ == 0 || ell_ == 0) throw std::invalid_argument("StateMatrix: k and ell must be positive");
  if (rows_.size() != static_cast<std::size_t>(k_) * n_) {
    throw std::invalid_argument("StateMatrix: expected k*n row indices");
  }
  for (std::uint32_t r : rows_) {
    if (r >= ell_) throw std::out_of_range("StateMatrix: row index out of range");
  }
}

void StateMatrix::set_row(unsigned block, std::size_t entry, std::uint32_t r) {
  if (r >= ell_) throw std::out_of_range("StateMatrix: row index out of range");
  rows_[block * n_ + entry] = r;
}

BinaryMatrix StateMatrix::block(unsigned i) const {
  return BinaryMatrix::from_column_rows(ell_, std::span<const std::uint32_t>(rows_).subspan(i * n_, n_));
}

std::vector<std::size_t> peel_fixpoint(const StateMatrix& b) {
  const unsigned k = b.k();
  const std::size_t ell = b.ell();
  const std::size_t n = b.n();
  std::vector<std::size_t> weight(k * ell, 0);
  for (unsigned i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) ++weight[i * ell + b.row(i, j)];
  }
  std::vector<bool> alive(n, true);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (!alive[j]) continue;
      bool resolvable = false;
      for (unsigned i = 0; i < k && !resolvable; ++i) resolvable = weight[i * ell + b.row(i, j)] == 1;
      if (!resolvable) continue;
      alive[j] = false;
      for (unsigned i = 0; i < k; ++i) --weight[i * ell + b.row(i, j)];
      progress = true;
    }
  }
  std::vector<std::size_t> residual;
  for (std::size_t j = 0; j < n; ++j) {
    if (alive[j]) residual.push_back(j);
  }
  return residual;
}

bool contains_stopping_submatrix(const StateMatrix& b) { return !peel_fixpoint(b).empty(); }

ExactFailure exact_failure_probability(std::size_t ell, std::size_t n, unsigned k, std::uint64_t guard,
                                       unsigned workers) {
  if (ell == 0 || k == 0) throw std::invalid_argument("exact_failure_probability: ell and k must be positive");
  const std::size_t digits = static_cast<std::size_t>(k) * n;
  mpz_class space;
  mpz_ui_pow_ui(space.get_mpz_t(), ell, digits);
  if (space > mpz_class(std::to_string(guard))) {
    throw ResourceError("exact_failure_probability: " + std::to_string(ell) + "^" + std::to_string(digits) +
                        " state matrices exceeds guard " + std::to_string(guard));
  }
  ExactFailure out;
  out.total = space.get_ui();
  if (digits == 0) {
    out.probability = 0;
    return out;
  }

  // Digit d of the mixed-radix counter is (block d / n, entry d % n); the
  // last digit is the leading one and is fixed per worker.
  auto count_slice = [&](std::uint32_t lead) {
    std::vector<std::uint32_t> rows(digits, 0);
    rows[digits - 1] = lead;
    StateMatrix b(k, ell, n, rows);
    std::uint64_t failing = 0;
    for (;;) {
      if (contains_stopping_submatrix(b)) ++failing;
      std::size_t d = 0;
      while (d + 1 < digits && b.row(static_cast<unsigned>(d / n), d % n) + 1 == ell) {
        b.set_row(static_cast<unsigned>(d / n), d % n, 0);
        ++d;
      }
      if (d + 1 == digits) break;
      const unsigned blk = static_cast<unsigned>(d / n);
      b.set_row(blk, d % n, b.row(blk, d % n) + 1);
    }
    return failing;
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(ell)));
  std::vector<std::uint64_t> partial(workers, 0);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t lead = w; lead < ell; lead += workers) {
          partial[w] += count_slice(static_cast<std::uint32_t>(lead));
        }
      });
    }
  }
  for (std::uint64_t f : partial) out.failing += f;
  out.probability = mpq_class(mpz_class(std::to_string(out.failing)), space);
  out.probability.canonicalize();
  return out;
}

}  // namespace iblt
