#include "pottsmix/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "pottsmix/rng.hpp"

namespace pottsmix {

int rank_bound(int n, int k) {
  if (n < 1 || k < 2) throw std::invalid_argument("rank_bound: invalid n or k");
  const std::uint64_t t =
      2 * (static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(k) * (k + 1) / 2);
  std::uint64_t s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(t)));
  while (s * s < t) ++s;
  while (s > 0 && (s - 1) * (s - 1) >= t) --s;
  return std::max(k - 1, static_cast<int>(s));
}

double relaxed_objective(const MrfInstance& inst, const SimplexFrame& frame,
                         const Eigen::MatrixXd& v) {
  if (v.cols() != inst.n || v.rows() != frame.d || frame.k != inst.k)
    throw std::invalid_argument("relaxed_objective: dimension mismatch");
  for (int i = 0; i < inst.n; ++i)
    if (std::abs(v.col(i).norm() - 1.0) > 1e-6)
      throw std::invalid_argument("relaxed_objective: columns must be unit");
  const double pair = (inst.A.cwiseProduct(v.transpose() * v)).sum();
  const Eigen::MatrixXd bias = frame.r * inst.H.transpose();  // d x n
  return pair + (v.cwiseProduct(bias)).sum();
}

namespace {

VectorSolution ascend_m4(const MrfInstance& inst, const SolverConfig& cfg,
                         const SimplexFrame& frame, const Eigen::MatrixXd& bias,
                         std::uint64_t seed, const UpdateObserver& observer) {
  const int n = inst.n;
  const int d = frame.d;
  RandomStream rng(seed);
  Eigen::MatrixXd v(d, n);
  for (int i = 0; i < n; ++i) {
    // same draw-and-renormalize loop as RandomStream::unit_vector
    for (;;) {
      for (int r = 0; r < d; ++r) v(r, i) = rng.normal();
      const double norm = v.col(i).norm();
      if (norm > 1e-12) {
        v.col(i) /= norm;
        break;
      }
    }
  }

  double obj = (v.cwiseProduct(bias)).sum();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) obj += inst.A(i, j) * v.col(i).dot(v.col(j));
  int sweeps = 0;
  bool converged = false;
  Eigen::VectorXd g(d);
  for (int sweep = 1; sweep <= cfg.max_iters; ++sweep) {
    const double prev = obj;
    for (int i = 0; i < n; ++i) {
      g.noalias() = v * inst.A.col(i);
      g = 2.0 * (g - inst.A(i, i) * v.col(i)) + bias.col(i);
      const double norm = g.norm();
      if (norm > 0.0) {
        // Exact objective delta: the diagonal term is invariant (unit norm),
        // every cross term is linear in v_i with coefficient vector g.
        obj += norm - g.dot(v.col(i));
        v.col(i) = g / norm;
      }
      if (observer) observer(sweep, i + 1, v, obj);
    }
    sweeps = sweep;
    if (std::abs(obj - prev) / std::max(1.0, std::abs(obj)) < cfg.rel_tol) {
      converged = true;
      break;
    }
  }

  VectorSolution out;
  out.d = d;
  out.v = std::move(v);
  out.objective_value = relaxed_objective(inst, frame, out.v);
  out.iterations_used = sweeps;
  out.converged = converged;
  return out;
}

}  // namespace

M4Result solve_m4(const MrfInstance& inst, const SolverConfig& cfg,
                  const UpdateObserver& observer) {
  if (cfg.max_iters < 1)
    throw std::invalid_argument("solve_m4: max_iters must be positive");
  if (!(cfg.rel_tol > 0.0))
    throw std::invalid_argument("solve_m4: rel_tol must be positive");
  if (cfg.restarts < 1)
    throw std::invalid_argument("solve_m4: restarts must be positive");
  const int n = inst.n;
  const int d = cfg.d_override.value_or(rank_bound(n, inst.k));
  if (d < inst.k - 1)
    throw std::invalid_argument("solve_m4: d_override below k-1");

  M4Result out;
  out.frame = simplex_frame(inst.k, d);
  const Eigen::MatrixXd bias = out.frame.r * inst.H.transpose();  // d x n
  for (int r = 0; r < cfg.restarts; ++r) {
    const std::uint64_t seed =
        r == 0 ? cfg.seed : derive_seed(cfg.seed, kStreamRestart, r);
    VectorSolution run = ascend_m4(inst, cfg, out.frame, bias, seed, observer);
    if (r == 0 || run.objective_value > out.solution.objective_value)
      out.solution = std::move(run);
  }
  return out;
}

}  // namespace pottsmix
