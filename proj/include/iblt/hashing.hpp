#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace iblt {

using Key = std::uint64_t;
using Value = std::uint64_t;

enum class HashKind { PartitionedUniform, SsAvoiding, Custom };

std::string_view to_string(HashKind kind);

/// Shape of the hash family. Subtable i in [0, k) owns the global cell
/// indices [i * ell, (i + 1) * ell). The 1-based convention used in the
/// IBLT literature is recovered by adding one to every index.
struct HashParams {
  unsigned k = 3;
  std::uint64_t ell = 1;
  unsigned b = 32;
  std::uint64_t seed = 0;
  HashKind kind = HashKind::PartitionedUniform;

  std::uint64_t cells() const { return static_cast<std::uint64_t>(k) * ell; }
};

/// Mask selecting the low `bits` bits of a 64-bit word.
constexpr std::uint64_t low_mask(unsigned bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// SplitMix64 output function. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Keyed 64-bit hash used by the partitioned-uniform scheme. Two rounds of
/// the SplitMix64 finalizer with the subtable key injected before each.
constexpr std::uint64_t keyed_hash(std::uint64_t key, std::uint64_t x) {
  return mix64(mix64(x ^ key) + (key >> 7 | key << 57));
}

/// A permutation of b-bit strings together with its inverse.
struct Bijection {
  unsigned bits = 64;
  std::function<std::uint64_t(std::uint64_t)> forward;
  std::function<std::uint64_t(std::uint64_t)> inverse;

  static Bijection identity(unsigned bits);
  /// Seeded invertible mixer (xorshift, odd multiply, xorshift) on b bits.
  static Bijection mixer(unsigned bits, std::uint64_t seed);
};

using HashTuple = std::vector<std::size_t>;

/// Maps a key to k global cell indices, one per subtable. Immutable once
/// built; evaluation is a pure function of (scheme, key).
class HashScheme {
 public:
  using IndexFn = std::function<void(Key, std::span<std::size_t>)>;

  static HashScheme partitioned_uniform(const HashParams& params);
  static HashScheme ss_avoiding(const HashParams& params);
  static HashScheme ss_avoiding(const HashParams& params, Bijection bijection);
  /// Arbitrary index assignment, e.g. to realize a chosen state matrix.
  /// `fn` receives a span of k slots; indices are range-checked.
  static HashScheme custom(unsigned k, std::uint64_t ell, unsigned b,
                           IndexFn fn);

  const HashParams& params() const { return params_; }
  unsigned k() const { return params_.k; }
  std::uint64_t ell() const { return params_.ell; }
  std::uint64_t cells() const { return params_.cells(); }

  /// Writes the k indices of `x` into `out` (size k).
  void indices(Key x, std::span<std::size_t> out) const;
  HashTuple operator()(Key x) const;

 private:
  explicit HashScheme(HashParams params) : params_(params) {}

  HashParams params_;
  std::vector<std::uint64_t> subtable_keys_;
  unsigned field_bits_ = 0;
  Bijection bijection_;
  IndexFn custom_;
};

}  // namespace iblt
