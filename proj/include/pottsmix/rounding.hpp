#pragma once

#include <cstdint>
#include <vector>

#include "pottsmix/mrf.hpp"
#include "pottsmix/rng.hpp"

namespace pottsmix {

struct RoundingBatch {
  std::vector<Config> samples;
  Config best;
  double best_value = 0.0;
  std::vector<Config> unique_set;  // deduplicated, lexicographically sorted
};

// First-pass labels: x_i = argmax_l v_i . m_l with m_draws column l-1 = m_l.
// Ties break toward the lowest label.
Config round_pass1(const Eigen::MatrixXd& v, const Eigen::MatrixXd& m_draws);

// Both passes with caller-provided direction draws: assign by nearest random
// direction, then remap each used direction to its nearest label vector.
Config round_once_with_draws(const Eigen::MatrixXd& v, const SimplexFrame& frame,
                             const Eigen::MatrixXd& m_draws);

// Draws the k directions i.i.d. uniform on the sphere from rng (k calls to
// unit_vector), then applies both passes.
Config round_once(const Eigen::MatrixXd& v, const SimplexFrame& frame,
                  RandomStream& rng);

// Reusable buffers for rounding the same solution many times; round_into
// produces exactly the configuration round_once would for the same rng state
// without allocating per draw.
class RoundingScratch {
 public:
  RoundingScratch(int d, int k, int n);
  void round_into(const Eigen::MatrixXd& v, const SimplexFrame& frame,
                  RandomStream& rng, Config& x_out);

 private:
  Eigen::MatrixXd m_draws_;  // d x k
  Eigen::MatrixXd scores_;   // k x n
  Eigen::MatrixXd align_;    // k x k
  std::vector<int> remap_;
};

// iters independent roundings; iteration t uses the substream
// derive_seed(seed, kStreamRounding, t), so prefixes are nested across
// different iters values. Keeps the first configuration attaining the best
// objective.
RoundingBatch round_batch(const MrfInstance& inst, const Eigen::MatrixXd& v,
                          const SimplexFrame& frame, int iters,
                          std::uint64_t seed);

}  // namespace pottsmix
