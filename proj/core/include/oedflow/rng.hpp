#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace oedflow {

/// Purpose tags for derived random streams. Each consumer draws from its own
/// sub-stream so adding one never perturbs another's sequence.
enum class RngPurpose : std::uint64_t {
  kSampling = 1,
  kNoise = 2,
  kSigmaInit = 3,
  kRepeat = 4,
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Deterministic random stream. Draws are generated from mt19937_64 with
/// hand-rolled uniform/normal transforms so sequences are bit-stable across
/// standard library implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller; two uniforms per draw, no cached spare.
  double normal() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  std::uint64_t next_raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

/// Derive the sub-stream for (seed, purpose). `index` distinguishes repeated
/// consumers of the same purpose, e.g. per-repeat seeds.
inline RngStream substream(std::uint64_t seed, RngPurpose purpose,
                           std::uint64_t index = 0) {
  std::uint64_t s = detail::splitmix64(seed);
  s = detail::splitmix64(s ^ (0x9E3779B97F4A7C15ULL *
                              (static_cast<std::uint64_t>(purpose) + 1)));
  s = detail::splitmix64(s ^ (0xD1B54A32D192ED03ULL * (index + 1)));
  return RngStream(s);
}

/// Derived scalar seed for nested consumers (e.g. one repeat of a run).
inline std::uint64_t derive_seed(std::uint64_t seed, RngPurpose purpose,
                                 std::uint64_t index = 0) {
  std::uint64_t s = detail::splitmix64(seed);
  s = detail::splitmix64(s ^ (0x9E3779B97F4A7C15ULL *
                              (static_cast<std::uint64_t>(purpose) + 1)));
  return detail::splitmix64(s ^ (0xD1B54A32D192ED03ULL * (index + 1)));
}

}  // namespace oedflow
