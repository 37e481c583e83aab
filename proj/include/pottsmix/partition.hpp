#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pottsmix/exact.hpp"
#include "pottsmix/mrf.hpp"

namespace pottsmix {

struct PartitionEstimate {
  double log_z_hat = 0.0;
  std::uint64_t cluster_size = 0;       // |X_pv|
  double cluster_log_mass = 0.0;        // log sum_{X_pv} e^f
  double uniform_phase_log_mass = 0.0;  // -inf when the phase is skipped
  std::uint64_t R = 0;
  double q_log = 0.0;  // log of the complement-uniform density; 0 if unused
  bool full_support = false;
  // Filled only when PartitionOptions::collect_samples is set.
  std::vector<Config> cluster_configs;  // sorted
  std::vector<Config> uniform_samples;  // in draw order
};

struct PartitionOptions {
  // Overrides the number of phase-1 roundings (default: R). Zero forces an
  // empty cluster, turning the estimator into plain uniform importance
  // sampling; useful for tests.
  std::optional<std::uint64_t> phase1_iters;
  bool collect_samples = false;
};

// Two-phase estimate of the partition function. Phase 1 rounds the relaxed
// solution R times (the same substream as round_batch, so the cluster grows
// by inclusion as R increases) and sums the unique configurations' mass
// exactly, in sorted order so identical clusters always produce bit-identical
// sums. Phase 2 importance-samples the complement uniformly by rejection and
// adds an unbiased estimate of the remaining mass; it is skipped when the
// cluster already covers all k^n configurations, making the estimate exact.
// All mass arithmetic stays in log-domain. Requires k^n to fit in 128 bits;
// throws if rejection exceeds 1e6 * R attempts in total.
PartitionEstimate estimate_z(const MrfInstance& inst, const Eigen::MatrixXd& v,
                             const SimplexFrame& frame, std::uint64_t R,
                             std::uint64_t seed,
                             const PartitionOptions& options = {});

struct HarnessResult {
  double log_mean_z_hat = 0.0;  // log of the linear-domain mean of Z-hat
  double exact_log_z = 0.0;
  double z_score = 0.0;  // standardized deviation of mean Z-hat from exact Z
  std::vector<double> trial_log_z_hat;
};

// Runs trials independent estimates (trial t reseeds with
// derive_seed(seed, kStreamTrial, t)) against the exact oracle. The z-score
// is computed from the ratio statistics u_t = exp(log_z_hat_t - log Z); a
// zero sample deviation (degenerate exact estimates) yields z_score = 0.
HarnessResult unbiasedness_harness(const MrfInstance& inst,
                                   const Eigen::MatrixXd& v,
                                   const SimplexFrame& frame, std::uint64_t R,
                                   int trials, std::uint64_t seed,
                                   std::uint64_t cap = kDefaultEnumCap);

}  // namespace pottsmix
