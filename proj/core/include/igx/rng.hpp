#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

#include "igx/errors.hpp"

namespace igx {

// xoshiro256++ seeded through splitmix64. The standard <random>
// distributions are implementation-defined, so every sampler here is
// spelled out explicitly and produces the same stream everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller. The sibling value is discarded so draws do not depend on
  // call history.
  double normal(double mean, double stddev) {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
  }

  double lognormal(double log_median, double sigma_log) {
    return std::exp(normal(log_median, sigma_log));
  }

  // Rejection sampling, strict interior of (lo, hi).
  double trunc_normal(double mean, double stddev, double lo, double hi) {
    if (!(lo < hi)) throw ArgumentError("trunc_normal: lo must be < hi");
    for (int i = 0; i < 100000; ++i) {
      const double v = normal(mean, stddev);
      if (v > lo && v < hi) return v;
    }
    // Window far in the tail; fall back to a uniform interior draw.
    return uniform(lo, hi);
  }

  std::uint32_t below(std::uint32_t n) {
    // Lemire's unbiased bounded generation on the top 32 bits.
    std::uint64_t x = next_u64() >> 32;
    std::uint64_t m = x * n;
    std::uint32_t l = static_cast<std::uint32_t>(m);
    if (l < n) {
      const std::uint32_t t = (-n) % n;
      while (l < t) {
        x = next_u64() >> 32;
        m = x * n;
        l = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = below(static_cast<std::uint32_t>(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices out of [0, n), in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k) {
    if (k > n) throw ArgumentError("sample_without_replacement: k > n");
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + below(static_cast<std::uint32_t>(n - i));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Stable stream derivation: mixes a base seed with string/integer salt so
// independent pipeline stages never share a stream.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view salt) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (const char c : salt) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return Rng::splitmix64(h);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t h = seed ^ (0x9e3779b97f4a7c15ULL + salt);
  return Rng::splitmix64(h);
}

}  // namespace igx
