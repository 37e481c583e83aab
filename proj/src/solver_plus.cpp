#include "pottsmix/solver_plus.hpp"

#include <cmath>
#include <stdexcept>

#include "pottsmix/rng.hpp"

namespace pottsmix {

Eigen::VectorXd BlockProjector::apply_c(const Eigen::VectorXd& p) const {
  if (p.size() != d) throw std::invalid_argument("apply_c: wrong dimension");
  // Blocks are contiguous segments of length m, so a column-major m x k view
  // has one block per column.
  Eigen::Map<const Eigen::MatrixXd> blocks(p.data(), m, k);
  const Eigen::VectorXd mean = blocks.rowwise().mean();
  Eigen::VectorXd out(d);
  Eigen::Map<Eigen::MatrixXd> oblocks(out.data(), m, k);
  oblocks = scale * (blocks.colwise() - mean);
  return out;
}

Eigen::MatrixXd BlockProjector::apply_c_cols(const Eigen::MatrixXd& p) const {
  Eigen::MatrixXd out(p.rows(), p.cols());
  for (int i = 0; i < p.cols(); ++i) out.col(i) = apply_c(p.col(i));
  return out;
}

SimplexFrame BlockProjector::frame() const {
  SimplexFrame f;
  f.k = k;
  f.d = d;
  f.r.resize(d, k);
  for (int l = 0; l < k; ++l) f.r.col(l) = S.col(l * m);
  return f;
}

BlockProjector build_projector(int k, int m) {
  if (k < 2) throw std::invalid_argument("build_projector: k must be >= 2");
  if (m < 1) throw std::invalid_argument("build_projector: m must be >= 1");
  BlockProjector proj;
  proj.k = k;
  proj.m = m;
  proj.d = m * k;
  proj.scale = static_cast<double>(k) / (k - 1);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(proj.d, proj.d);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      p.block(a * m, b * m, m, m) -=
          Eigen::MatrixXd::Identity(m, m) / static_cast<double>(k);
  proj.S = std::sqrt(proj.scale) * p;
  return proj;
}

BlockUpdateResult block_update(const Eigen::VectorXd& g, int k, int m) {
  if (g.size() != static_cast<Eigen::Index>(k) * m)
    throw std::invalid_argument("block_update: wrong gradient dimension");
  if (!g.allFinite())
    throw std::invalid_argument("block_update: non-finite gradient");
  BlockUpdateResult out;
  out.z = Eigen::VectorXd::Zero(g.size());
  for (int j = 0; j < m; ++j) {
    int best_b = 0;
    double best = g[j];
    for (int b = 1; b < k; ++b) {
      const double val = g[b * m + j];
      if (val > best) {
        best = val;
        best_b = b;
      }
    }
    if (best > 0.0) out.z[best_b * m + j] = best;
  }
  out.lambda = out.z.norm();
  if (out.lambda == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.z /= out.lambda;
  return out;
}

namespace {
double block_objective(const MrfInstance& inst, const BlockProjector& proj,
                       const Eigen::MatrixXd& z, const Eigen::MatrixXd& bias) {
  const Eigen::MatrixXd cz = proj.apply_c_cols(z);
  return (inst.A.cwiseProduct(z.transpose() * cz)).sum() +
         (z.cwiseProduct(bias)).sum();
}
}  // namespace

namespace {

BlockSolution ascend_blocks(const MrfInstance& inst, const SolverConfig& cfg,
                            const BlockProjector& proj,
                            const Eigen::MatrixXd& bias, int m,
                            std::uint64_t seed, const BlockObserver& observer,
                            const SweepObserver& sweep_observer) {
  const int n = inst.n;
  const int k = inst.k;
  const int d = proj.d;
  RandomStream rng(seed);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(d, n);
  for (int i = 0; i < n; ++i) {
    const int b = static_cast<int>(rng.uniform_int(k));
    Eigen::VectorXd u(m);
    double norm = 0.0;
    do {
      for (int j = 0; j < m; ++j) u[j] = rng.uniform_unit();
      norm = u.norm();
    } while (norm == 0.0);
    z.col(i).segment(b * m, m) = u / norm;
  }

  Eigen::MatrixXd cz = proj.apply_c_cols(z);
  double obj = (inst.A.cwiseProduct(z.transpose() * cz)).sum() +
               (z.cwiseProduct(bias)).sum();
  int sweeps = 0;
  bool converged = false;
  for (int sweep = 1; sweep <= cfg.max_iters; ++sweep) {
    const double prev = obj;
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd g =
          2.0 * (cz * inst.A.col(i) - inst.A(i, i) * cz.col(i)) + bias.col(i);
      BlockUpdateResult upd = block_update(g, k, m);
      if (!upd.degenerate) {
        const Eigen::VectorXd cz_new = proj.apply_c(upd.z);
        // Cross terms are linear in z_i with coefficient g; the diagonal term
        // A_ii z_i^T C z_i moves with z_i and needs its own correction.
        obj += g.dot(upd.z - z.col(i)) +
               inst.A(i, i) *
                   (upd.z.dot(cz_new) - z.col(i).dot(cz.col(i)));
        z.col(i) = upd.z;
        cz.col(i) = cz_new;
      }
      if (observer) observer(sweep, i + 1, z, obj);
    }
    sweeps = sweep;
    if (sweep_observer) sweep_observer(sweep, z);
    if (std::abs(obj - prev) / std::max(1.0, std::abs(obj)) < cfg.rel_tol) {
      converged = true;
      break;
    }
  }

  BlockSolution out;
  out.d = d;
  out.m = m;
  out.z = std::move(z);
  out.v = proj.S * out.z;
  out.objective_value = block_objective(inst, proj, out.z, bias);
  out.iterations_used = sweeps;
  out.converged = converged;
  return out;
}

}  // namespace

M4PlusResult solve_m4_plus(const MrfInstance& inst, const SolverConfig& cfg,
                           int m, const BlockObserver& observer,
                           const SweepObserver& sweep_observer) {
  if (cfg.max_iters < 1)
    throw std::invalid_argument("solve_m4_plus: max_iters must be positive");
  if (!(cfg.rel_tol > 0.0))
    throw std::invalid_argument("solve_m4_plus: rel_tol must be positive");
  if (cfg.restarts < 1)
    throw std::invalid_argument("solve_m4_plus: restarts must be positive");
  if (m < 0) throw std::invalid_argument("solve_m4_plus: m must be >= 0");
  const int n = inst.n;
  const int k = inst.k;
  if (m == 0) m = (rank_bound(n, k) + k - 1) / k;

  M4PlusResult out;
  out.projector = build_projector(k, m);

  // S^T sum_l H_il r_l = sum_l H_il C e_{(l-1)m+1}: build the block basis
  // image once per coordinate.
  Eigen::MatrixXd he = Eigen::MatrixXd::Zero(out.projector.d, n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) he(l * m, i) = inst.H(i, l);
  const Eigen::MatrixXd bias = out.projector.apply_c_cols(he);

  for (int r = 0; r < cfg.restarts; ++r) {
    const std::uint64_t seed =
        r == 0 ? cfg.seed : derive_seed(cfg.seed, kStreamRestart, r);
    BlockSolution run = ascend_blocks(inst, cfg, out.projector, bias, m, seed,
                                      observer, sweep_observer);
    if (r == 0 || run.objective_value > out.solution.objective_value)
      out.solution = std::move(run);
  }
  return out;
}

}  // namespace pottsmix
