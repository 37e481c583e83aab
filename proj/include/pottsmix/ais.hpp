#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pottsmix/mrf.hpp"
#include "pottsmix/rng.hpp"

namespace pottsmix {

struct AisConfig {
  int K = 25;           // temperature count; beta_j = j/K
  int num_cycles = 1;   // Gibbs sweeps per temperature
  int num_samples = 100;  // independent chains
  std::uint64_t seed = 0;
};

struct AisCheckpoint {
  double t_sec = 0.0;
  double best_f = 0.0;
  double log_z_partial = 0.0;  // estimate over the chains completed so far
};

struct AisResult {
  double log_z_hat = 0.0;
  Config best_config;
  double best_value = 0.0;
  double wall_time_sec = 0.0;
  std::vector<AisCheckpoint> checkpoints;  // one per completed chain
  // (elapsed seconds, best f) recorded each time a completed chain's final
  // configuration improves on the best so far.
  std::vector<std::pair<double, double>> improvements;
};

// cycles full Gibbs sweeps at inverse temperature beta: coordinates 1..n in
// order, each resampled from p(x_i = l | x_-i) proportional to
// exp(beta * [2 sum_{j != i} A_ij d(l, x_j) + sum_l' H_il' d(l, l')]).
// Consumes exactly one uniform draw per coordinate.
Config gibbs_sweep(const MrfInstance& inst, Config x, double beta, int cycles,
                   RandomStream& rng);

// Annealed importance sampling along the linear temperature ladder: each
// chain starts uniform, accumulates log w += (beta_j - beta_{j-1}) *
// (f(x) + n log k) before the Gibbs moves at beta_j, and the estimate is the
// log of the mean weight. Chain s uses derive_seed(seed, kStreamAisChain, s).
// Each chain contributes one sample configuration (its final state); the best
// of these is tracked with its exact objective value.
AisResult ais_estimate(const MrfInstance& inst, const AisConfig& cfg);

}  // namespace pottsmix
