#include "pottsmix/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pottsmix {

std::uint64_t RandomStream::uniform_int(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_int: bound must be positive");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (max % bound + 1) % bound;
  const std::uint64_t top = max - rem;  // accept x <= top
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x <= top) return x % bound;
  }
}

double RandomStream::normal() {
  // u1 in (0, 1] so the log is finite; u2 in [0, 1).
  const double u1 = 1.0 - uniform_unit();
  const double u2 = uniform_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(2.0 * M_PI * u2);
}

Eigen::VectorXd RandomStream::unit_vector(int d) {
  if (d < 1) throw std::invalid_argument("unit_vector: d must be positive");
  Eigen::VectorXd v(d);
  for (;;) {
    for (int i = 0; i < d; ++i) v[i] = normal();
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(seed ^ 0x243f6a8885a308d3ull);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return h;
}

}  // namespace pottsmix
