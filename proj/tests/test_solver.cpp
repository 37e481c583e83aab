#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pottsmix/exact.hpp"
#include "pottsmix/generator.hpp"
#include "pottsmix/solver.hpp"

using namespace pottsmix;

TEST_CASE("rank_bound frozen values") {
  CHECK(rank_bound(20, 2) == 7);
  CHECK(rank_bound(7, 5) == 7);
  CHECK(rank_bound(1, 5) == 6);
  CHECK(rank_bound(2, 2) == 4);
}

TEST_CASE("rank_bound never falls below the simplex dimension") {
  for (int k = 2; k <= 10; ++k)
    for (int n = 1; n <= 30; n += 7) CHECK(rank_bound(n, k) >= k - 1);
}

TEST_CASE("embedded configurations obey the affine identity") {
  // relaxed value at an embedded labeling = a f(x) + b with
  // a = k/(2(k-1)) and b = (k-2)/(2(k-1)) (sum A + sum H)
  for (int k : {2, 3, 5}) {
    GenSpec spec;
    spec.n = 4;
    spec.k = k;
    spec.target_cs = 1.5;
    spec.seed = 10 + k;
    const MrfInstance inst = generate(spec);
    const SimplexFrame frame = simplex_frame(k, rank_bound(inst.n, k));
    const double a = k / (2.0 * (k - 1));
    const double b =
        (k - 2.0) / (2.0 * (k - 1)) * (inst.A.sum() + inst.H.sum());
    enumerate_table(inst, 1 << 12, [&](const Config& x, double) {
      const double fx = objective(inst, x);
      const double relaxed =
          relaxed_objective(inst, frame, embed_config(frame, x));
      CHECK(relaxed == doctest::Approx(a * fx + b).epsilon(1e-9));
    });
  }
}

TEST_CASE("relaxed_objective insists on unit columns") {
  const MrfInstance inst = symmetrize_and_validate(
      Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2), 2);
  const SimplexFrame frame = simplex_frame(2, 3);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 2);
  v(0, 0) = 2.0;  // not unit
  v(0, 1) = 1.0;
  CHECK_THROWS(relaxed_objective(inst, frame, v));
}

TEST_CASE("coordinate updates never decrease the tracked objective") {
  GenSpec spec;
  spec.n = 10;
  spec.k = 3;
  spec.target_cs = 2.0;
  spec.seed = 4;
  const MrfInstance inst = generate(spec);
  SolverConfig cfg;
  cfg.seed = 4;
  cfg.max_iters = 2000;
  double prev = -1e300;
  int calls = 0;
  const M4Result res = solve_m4(
      inst, cfg, [&](int, int coord, const Eigen::MatrixXd& v, double obj) {
        CHECK(obj >= prev - 1e-10);
        CHECK(coord >= 1);
        CHECK(coord <= 10);
        CHECK(std::abs(v.col(coord - 1).norm() - 1.0) <= 1e-9);
        prev = obj;
        ++calls;
      });
  CHECK(calls == 10 * res.solution.iterations_used);
  CHECK(res.solution.converged);
}

TEST_CASE("the tracked objective matches a from-scratch recompute") {
  GenSpec spec;
  spec.n = 8;
  spec.k = 4;
  spec.target_cs = 1.0;
  spec.seed = 12;
  const MrfInstance inst = generate(spec);
  SolverConfig cfg;
  cfg.seed = 12;
  const M4Result res = solve_m4(inst, cfg);
  CHECK(res.solution.objective_value ==
        doctest::Approx(relaxed_objective(inst, res.frame, res.solution.v))
            .epsilon(1e-9));
  for (int i = 0; i < inst.n; ++i)
    CHECK(std::abs(res.solution.v.col(i).norm() - 1.0) <= 1e-9);
}

TEST_CASE("solve_m4 is deterministic in the seed") {
  GenSpec spec;
  spec.n = 6;
  spec.k = 3;
  spec.seed = 7;
  const MrfInstance inst = generate(spec);
  SolverConfig cfg;
  cfg.seed = 31;
  const M4Result a = solve_m4(inst, cfg);
  const M4Result b = solve_m4(inst, cfg);
  CHECK((a.solution.v - b.solution.v).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.solution.objective_value == b.solution.objective_value);
}

TEST_CASE("a single biased site aligns with its field direction") {
  Eigen::MatrixXd h(1, 3);
  h << 2, -1, 0;
  const MrfInstance inst =
      symmetrize_and_validate(Eigen::MatrixXd::Zero(1, 1), h, 3);
  SolverConfig cfg;
  cfg.seed = 1;
  const M4Result res = solve_m4(inst, cfg);
  // optimum is ||2 r_1 - r_2|| = sqrt(4 + 1 - 4 (-1/2)) = sqrt(7)
  CHECK(res.solution.objective_value ==
        doctest::Approx(std::sqrt(7.0)).epsilon(1e-10));
  const Eigen::VectorXd g = 2.0 * res.frame.r.col(0) - res.frame.r.col(1);
  CHECK(res.solution.v.col(0).dot(g.normalized()) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("the two-site ferromagnet relaxation reaches its optimum") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  const MrfInstance inst =
      symmetrize_and_validate(a, Eigen::MatrixXd::Zero(2, 2), 2);
  SolverConfig cfg;
  cfg.seed = 5;
  const M4Result res = solve_m4(inst, cfg);
  CHECK(res.solution.objective_value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(res.solution.v.col(0).dot(res.solution.v.col(1)) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("d_override narrows the working dimension") {
  GenSpec spec;
  spec.n = 6;
  spec.k = 3;
  spec.seed = 2;
  const MrfInstance inst = generate(spec);
  SolverConfig cfg;
  cfg.seed = 2;
  cfg.d_override = 2;
  const M4Result res = solve_m4(inst, cfg);
  CHECK(res.solution.d == 2);
  CHECK(res.solution.v.rows() == 2);
  CHECK(res.frame.d == 2);
  cfg.d_override = 1;  // below k-1: the frame cannot be embedded
  CHECK_THROWS(solve_m4(inst, cfg));
}

TEST_CASE("the relaxation upper-bounds every embedded configuration") {
  for (int k : {2, 3, 5}) {
    GenSpec spec;
    spec.n = 6;
    spec.k = k;
    spec.target_cs = 2.0;
    spec.seed = 40 + k;
    const MrfInstance inst = generate(spec);
    SolverConfig cfg;
    cfg.seed = 40 + k;
    cfg.rel_tol = 1e-12;
    cfg.max_iters = 2000;
    const M4Result res = solve_m4(inst, cfg);
    const ExactSummary ex = enumerate_exact(inst);
    const double embedded = relaxed_objective(
        inst, res.frame, embed_config(res.frame, ex.mode_config));
    CHECK(res.solution.objective_value >=
          embedded - 1e-6 * std::max(1.0, std::abs(embedded)));
  }
}
