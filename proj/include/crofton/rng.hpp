#pragma once

#include <cstdint>
#include <cmath>

#include "crofton/numeric.hpp"

namespace crofton::rng {

/// splitmix64; used to derive independent block substreams from (seed, index).
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** with hand-rolled Gaussian sampling, so streams are portable
/// across standard libraries.
class Stream {
 public:
  Stream(uint64_t seed, uint64_t substream) {
    uint64_t sm = seed ^ (0x9e3779b97f4a7c15ULL * (substream + 1));
    for (auto& w : s_) w = splitmix64(sm);
    have_gauss_ = false;
  }

  uint64_t next_u64() {
    auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal (Box-Muller, cached pair).
  double gauss() {
    if (have_gauss_) {
      have_gauss_ = false;
      return cached_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * kPi * u2);
    have_gauss_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  uint64_t s_[4];
  double cached_ = 0.0;
  bool have_gauss_ = false;
};

}  // namespace crofton::rng
