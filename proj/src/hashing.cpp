#include "iblt/hashing.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace iblt {

namespace {

void check_shape(unsigned k, std::uint64_t ell, unsigned b) {
  if (k == 0) throw std::invalid_argument("hash: k must be positive");
  if (ell == 0) throw std::invalid_argument("hash: ell must be positive");
  if (b == 0 || b > 64) {
    throw std::invalid_argument("hash: b must lie in [1, 64], got " +
                                std::to_string(b));
  }
}

std::uint64_t xorshift_inverse(std::uint64_t y, unsigned shift, unsigned bits) {
  std::uint64_t x = y;
  for (unsigned done = shift; done < bits; done += shift) x = y ^ (x >> shift);
  return x;
}

std::uint64_t odd_inverse(std::uint64_t a) {
  std::uint64_t inv = a;
  for (int i = 0; i < 6; ++i) inv *= 2 - a * inv;
  return inv;
}

}  // namespace

std::string_view to_string(HashKind kind) {
  switch (kind) {
    case HashKind::PartitionedUniform: return "uniform";
    case HashKind::SsAvoiding: return "ss-avoiding";
    case HashKind::Custom: return "custom";
  }
  return "unknown";
}

Bijection Bijection::identity(unsigned bits) {
  const std::uint64_t mask = low_mask(bits);
  return {bits, [mask](std::uint64_t x) { return x & mask; },
          [mask](std::uint64_t x) { return x & mask; }};
}

Bijection Bijection::mixer(unsigned bits, std::uint64_t seed) {
  if (bits == 0 || bits > 64) throw std::invalid_argument("bijection: bits must lie in [1, 64]");
  const std::uint64_t mask = low_mask(bits);
  const unsigned shift = (bits + 1) / 2;
  const std::uint64_t a = mix64(seed) | 1;
  const std::uint64_t a_inv = odd_inverse(a);
  auto fwd = [=](std::uint64_t x) {
    x &= mask;
    x ^= x >> shift;
    x = (x * a) & mask;
    return x ^ (x >> shift);
  };
  auto inv = [=](std::uint64_t y) {
    y = xorshift_inverse(y & mask, shift, bits);
    y = (y * a_inv) & mask;
    return xorshift_inverse(y, shift, bits);
  };
  return {bits, fwd, inv};
}

HashScheme HashScheme::partitioned_uniform(const HashParams& params) {
  if (params.kind != HashKind::PartitionedUniform) {
    throw std::invalid_argument("partitioned_uniform: params.kind must be PartitionedUniform");
  }
  check_shape(params.k, params.ell, params.b);
  HashScheme scheme(params);
  scheme.subtable_keys_.reserve(params.k);
  for (unsigned i = 0; i < params.k; ++i) {
    scheme.subtable_keys_.push_back(mix64(params.seed ^ mix64(0x51ab1e000000ULL + i)));
  }
  return scheme;
}

HashScheme HashScheme::ss_avoiding(const HashParams& params) {
  return ss_avoiding(params, Bijection::identity(params.b));
}

HashScheme HashScheme::ss_avoiding(const HashParams& params, Bijection bijection) {
  if (params.kind != HashKind::SsAvoiding) {
    throw std::invalid_argument("ss_avoiding: params.kind must be SsAvoiding");
  }
  check_shape(params.k, params.ell, params.b);
  if (params.b % params.k != 0) {
    throw std::invalid_argument("ss_avoiding: b = " + std::to_string(params.b) +
                                " is not a multiple of k = " + std::to_string(params.k));
  }
  const unsigned s = params.b / params.k;
  if (s >= 64 || params.ell != (std::uint64_t{1} << s)) {
    throw std::invalid_argument("ss_avoiding: ell must equal 2^(b/k) = 2^" +
                                std::to_string(s) + ", got " + std::to_string(params.ell));
  }
  if (bijection.bits != params.b || !bijection.forward || !bijection.inverse) {
    throw std::invalid_argument("ss_avoiding: bijection must act on b-bit strings");
  }
  const std::uint64_t mask = low_mask(params.b);
  std::uint64_t probe = params.seed;
  for (int i = 0; i < 64; ++i) {
    probe = mix64(probe);
    const std::uint64_t x = probe & mask;
    const std::uint64_t y = bijection.forward(x);
    if ((y & ~mask) != 0 || bijection.inverse(y) != x) {
      throw std::invalid_argument("ss_avoiding: bijection failed the invertibility spot-check");
    }
  }
  HashScheme scheme(params);
  scheme.field_bits_ = s;
  scheme.bijection_ = std::move(bijection);
  return scheme;
}

HashScheme HashScheme::custom(unsigned k, std::uint64_t ell, unsigned b, IndexFn fn) {
  check_shape(k, ell, b);
  if (!fn) throw std::invalid_argument("custom: empty index function");
  HashScheme scheme(HashParams{k, ell, b, 0, HashKind::Custom});
  scheme.custom_ = std::move(fn);
  return scheme;
}

void HashScheme::indices(Key x, std::span<std::size_t> out) const {
  const unsigned k = params_.k;
  const std::uint64_t ell = params_.ell;
  switch (params_.kind) {
    case HashKind::PartitionedUniform:
      for (unsigned i = 0; i < k; ++i) {
        out[i] = static_cast<std::size_t>(i * ell + keyed_hash(subtable_keys_[i], x) % ell);
      }
      return;
    case HashKind::SsAvoiding: {
      // Most-significant s-bit field goes to subtable 0.
      const std::uint64_t y = bijection_.forward(x & low_mask(params_.b));
      const std::uint64_t field_mask = low_mask(field_bits_);
      for (unsigned i = 0; i < k; ++i) {
        const unsigned shift = (k - 1 - i) * field_bits_;
        out[i] = static_cast<std::size_t>(i * ell + ((y >> shift) & field_mask));
      }
      return;
    }
    case HashKind::Custom:
      custom_(x, out);
      for (unsigned i = 0; i < k; ++i) {
        if (out[i] < i * ell || out[i] >= (i + 1) * ell) {
          throw std::out_of_range("custom hash: index " + std::to_string(out[i]) +
                                  " outside subtable " + std::to_string(i));
        }
      }
      return;
  }
}

HashTuple HashScheme::operator()(Key x) const {
  HashTuple tuple(params_.k);
  indices(x, tuple);
  return tuple;
}

}  // namespace iblt
