#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "pottsmix/mrf.hpp"

namespace pottsmix {

struct SolverConfig {
  int max_iters = 300;      // full sweeps
  double rel_tol = 1e-8;    // relative objective change per sweep
  std::uint64_t seed = 0;
  std::optional<int> d_override;  // working dimension; default rank_bound(n,k)
  // Independent coordinate-ascent runs; the best converged objective wins.
  // Start 0 draws from seed itself (so restarts = 1 reproduces a single run);
  // start r > 0 draws from derive_seed(seed, kStreamRestart, r).
  int restarts = 1;
};

struct VectorSolution {
  int d = 0;
  Eigen::MatrixXd v;  // d x n, unit columns
  double objective_value = 0.0;
  int iterations_used = 0;
  bool converged = false;
};

// Smallest dimension guaranteed to contain an optimal solution of the
// relaxation: max(k-1, ceil(sqrt(2(n + k(k+1)/2)))). The k-1 floor keeps the
// simplex frame embeddable.
int rank_bound(int n, int k);

// sum_{i,j} A_ij v_i.v_j + sum_i v_i . (sum_l H_il r_l), over all ordered
// pairs; the diagonal contributes sum_i A_ii since the columns are unit.
// Requires unit columns within 1e-6.
double relaxed_objective(const MrfInstance& inst, const SimplexFrame& frame,
                         const Eigen::MatrixXd& v);

// Called after each coordinate update with the sweep number (1-based), the
// coordinate just updated (1-based), the live vector buffer (read-only), and
// the incrementally tracked objective.
using UpdateObserver = std::function<void(int sweep, int coord,
                                          const Eigen::MatrixXd& v,
                                          double objective)>;

struct M4Result {
  VectorSolution solution;
  SimplexFrame frame;
};

// Coordinate ascent on the unit-vector relaxation: each step replaces v_i by
// the normalized gradient g_i = 2 sum_{j != i} A_ij v_j + sum_l H_il r_l,
// which maximizes the objective over the sphere with the other coordinates
// held fixed, so the objective never decreases. Zero-gradient coordinates are
// skipped. Deterministic given cfg.seed (columns initialized uniformly on the
// sphere, fixed 1..n sweep order). With cfg.restarts > 1 the observer sees
// every run in sequence; the objective is monotone within a run, not across
// run boundaries.
M4Result solve_m4(const MrfInstance& inst, const SolverConfig& cfg,
                  const UpdateObserver& observer = nullptr);

}  // namespace pottsmix
