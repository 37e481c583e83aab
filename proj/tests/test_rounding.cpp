#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pottsmix/generator.hpp"
#include "pottsmix/rounding.hpp"
#include "pottsmix/solver.hpp"

using namespace pottsmix;

TEST_CASE("embedded configurations round back to themselves") {
  const SimplexFrame frame = simplex_frame(4, 3);
  const Config x = {2, 4, 1, 3, 2};
  const Eigen::MatrixXd v = embed_config(frame, x);
  // with the label directions themselves as draws both passes are identity
  CHECK(round_pass1(v, frame.r) == x);
  CHECK(round_once_with_draws(v, frame, frame.r) == x);
}

TEST_CASE("scores tied across all directions pick the lowest label") {
  Eigen::MatrixXd draws = Eigen::MatrixXd::Zero(3, 2);
  draws(0, 0) = 1.0;
  draws(1, 1) = 1.0;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 1);
  v(2, 0) = 1.0;  // orthogonal to both draws
  CHECK(round_pass1(v, draws) == Config{1});
}

TEST_CASE("rounding is invariant to a global rotation") {
  GenSpec spec;
  spec.n = 6;
  spec.k = 3;
  spec.seed = 11;
  const MrfInstance inst = generate(spec);
  SolverConfig cfg;
  cfg.seed = 11;
  const M4Result res = solve_m4(inst, cfg);
  RandomStream rng(101);
  const int d = res.solution.d;
  Eigen::MatrixXd raw(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) raw(i, j) = rng.normal();
  const Eigen::MatrixXd q =
      Eigen::HouseholderQR<Eigen::MatrixXd>(raw).householderQ();
  Eigen::MatrixXd draws(d, inst.k);
  for (int l = 0; l < inst.k; ++l) draws.col(l) = rng.unit_vector(d);
  CHECK(round_pass1(q * res.solution.v, q * draws) ==
        round_pass1(res.solution.v, draws));
}

TEST_CASE("round_batch is deterministic and nests across batch sizes") {
  GenSpec spec;
  spec.n = 7;
  spec.k = 4;
  spec.target_cs = 1.0;
  spec.seed = 19;
  const MrfInstance inst = generate(spec);
  SolverConfig cfg;
  cfg.seed = 19;
  const M4Result res = solve_m4(inst, cfg);
  const RoundingBatch a =
      round_batch(inst, res.solution.v, res.frame, 50, 123);
  const RoundingBatch b =
      round_batch(inst, res.solution.v, res.frame, 50, 123);
  CHECK(a.samples == b.samples);
  CHECK(a.best == b.best);
  const RoundingBatch prefix =
      round_batch(inst, res.solution.v, res.frame, 10, 123);
  for (int t = 0; t < 10; ++t) CHECK(prefix.samples[t] == a.samples[t]);
}

TEST_CASE("round_batch reports the first best and a sorted unique set") {
  GenSpec spec;
  spec.n = 5;
  spec.k = 3;
  spec.target_cs = 2.0;
  spec.seed = 23;
  const MrfInstance inst = generate(spec);
  SolverConfig cfg;
  cfg.seed = 23;
  const M4Result res = solve_m4(inst, cfg);
  const RoundingBatch batch =
      round_batch(inst, res.solution.v, res.frame, 40, 7);
  REQUIRE(batch.samples.size() == 40);
  double best = -1e300;
  Config first_best;
  for (const Config& x : batch.samples) {
    const double f = objective(inst, x);
    if (f > best) {
      best = f;
      first_best = x;
    }
  }
  CHECK(batch.best_value == doctest::Approx(best));
  CHECK(batch.best == first_best);
  CHECK(std::is_sorted(batch.unique_set.begin(), batch.unique_set.end()));
  CHECK(std::adjacent_find(batch.unique_set.begin(), batch.unique_set.end()) ==
        batch.unique_set.end());
  for (const Config& x : batch.unique_set)
    CHECK(std::find(batch.samples.begin(), batch.samples.end(), x) !=
          batch.samples.end());
}

TEST_CASE("aligned ferromagnet vectors always round to agreement") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  const MrfInstance inst =
      symmetrize_and_validate(a, Eigen::MatrixXd::Zero(2, 2), 2);
  SolverConfig cfg;
  cfg.seed = 3;
  const M4Result res = solve_m4(inst, cfg);
  const RoundingBatch batch =
      round_batch(inst, res.solution.v, res.frame, 100, 9);
  for (const Config& x : batch.samples) CHECK(x[0] == x[1]);
  CHECK(batch.best_value == doctest::Approx(2.0));
}

TEST_CASE("rounded labels are always in range") {
  GenSpec spec;
  spec.n = 9;
  spec.k = 6;
  spec.seed = 29;
  const MrfInstance inst = generate(spec);
  SolverConfig cfg;
  cfg.seed = 29;
  const M4Result res = solve_m4(inst, cfg);
  RandomStream rng(5);
  for (int t = 0; t < 50; ++t) {
    const Config x = round_once(res.solution.v, res.frame, rng);
    REQUIRE(x.size() == 9);
    for (int xi : x) {
      CHECK(xi >= 1);
      CHECK(xi <= 6);
    }
  }
}
