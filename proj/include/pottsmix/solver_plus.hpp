#pragma once

#include <functional>

#include "pottsmix/mrf.hpp"
#include "pottsmix/solver.hpp"

namespace pottsmix {

// The block parameterization: each label owns a block of m coordinates in
// d = m*k, and unit vectors are produced as v = S z with z nonnegative.
// C = (k/(k-1)) * P with P = I - (1/k)(1_{kxk} (x) I_m) an orthogonal
// projector, and S = sqrt(k/(k-1)) * P, so S^T S = C exactly.
struct BlockProjector {
  int k = 0;
  int m = 0;
  int d = 0;            // m * k
  double scale = 0.0;   // k/(k-1)
  Eigen::MatrixXd S;    // d x d

  // C p in O(d) via per-within-index block means.
  Eigen::VectorXd apply_c(const Eigen::VectorXd& p) const;
  Eigen::MatrixXd apply_c_cols(const Eigen::MatrixXd& p) const;

  // The label directions r_l = S e_{(l-1)m+1}; they satisfy the simplex Gram
  // condition exactly by C's structure.
  SimplexFrame frame() const;
};

BlockProjector build_projector(int k, int m);

struct BlockUpdateResult {
  Eigen::VectorXd z;
  double lambda = 0.0;
  bool degenerate = false;  // all candidate entries nonpositive; z unusable
};

// Exact solution of the per-coordinate subproblem max g.z over the feasible
// block set: for each within-block index j keep only the largest block entry
// (lowest block on ties), clamp it at zero, then normalize the survivor
// vector. Signals degenerate when everything clamps to zero.
BlockUpdateResult block_update(const Eigen::VectorXd& g, int k, int m);

struct BlockSolution {
  int d = 0;
  int m = 0;
  Eigen::MatrixXd z;  // d x n, nonnegative columns
  Eigen::MatrixXd v;  // d x n, v = S z
  double objective_value = 0.0;
  int iterations_used = 0;
  bool converged = false;
};

using BlockObserver = std::function<void(int sweep, int coord,
                                         const Eigen::MatrixXd& z,
                                         double objective)>;
using SweepObserver = std::function<void(int sweep, const Eigen::MatrixXd& z)>;

struct M4PlusResult {
  BlockSolution solution;
  BlockProjector projector;
};

// Coordinate ascent in the block parameterization: per coordinate the
// gradient g = 2 sum_{j != i} A_ij C z_j + S^T sum_l H_il r_l is fed through
// block_update; degenerate updates keep the previous z_i. m = 0 selects the
// default ceil(rank_bound(n,k)/k). Initialization puts each coordinate's mass
// on one uniformly chosen block (normalized nonnegative uniform entries).
M4PlusResult solve_m4_plus(const MrfInstance& inst, const SolverConfig& cfg,
                           int m = 0, const BlockObserver& observer = nullptr,
                           const SweepObserver& sweep_observer = nullptr);

}  // namespace pottsmix
