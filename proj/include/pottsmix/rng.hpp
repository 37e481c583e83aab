#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace pottsmix {

// Deterministic random stream built on mt19937_64 with explicit value-level
// transforms, so that every draw sequence is reproducible from a seed across
// platforms and standard-library versions (std::uniform_real_distribution et
// al. are not portable).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1) with 53-bit resolution; consumes one raw draw.
  double uniform_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_unit();
  }

  // Uniform on {0, ..., bound-1} by rejection; unbiased for any bound.
  std::uint64_t uniform_int(std::uint64_t bound);

  // Standard normal via Box-Muller; consumes exactly two raw draws per call
  // (no caching, so consumption per call is fixed).
  double normal();

  // Uniform on the unit sphere in R^d: normalized i.i.d. standard normals.
  Eigen::VectorXd unit_vector(int d);

 private:
  std::mt19937_64 eng_;
};

// Stateless seed derivation for independent substreams, splitmix64-based.
// (seed, a, b) -> child seed; distinct (a, b) give decorrelated streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

// Registry of substream tags used across the library, so that independent
// consumers of the same user-facing seed never collide.
inline constexpr std::uint64_t kStreamRounding = 1;  // per-rounding-iteration
inline constexpr std::uint64_t kStreamUniformPhase = 2;  // estimator phase 2
inline constexpr std::uint64_t kStreamTrial = 3;         // harness trials
inline constexpr std::uint64_t kStreamAisChain = 4;      // AIS chains
inline constexpr std::uint64_t kStreamRestart = 5;       // solver restarts

}  // namespace pottsmix
