#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pottsmix/exact.hpp"
#include "pottsmix/generator.hpp"
#include "pottsmix/logspace.hpp"

using namespace pottsmix;

namespace {

MrfInstance two_site_ferro() {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  return symmetrize_and_validate(a, Eigen::MatrixXd::Zero(2, 2), 2);
}

}  // namespace

TEST_CASE("config_count_checked computes k^n under a cap") {
  CHECK(config_count_checked(3, 4, 1000) == 64);
  CHECK(config_count_checked(1, 2, 2) == 2);
  CHECK_THROWS(config_count_checked(10, 3, 100));
}

TEST_CASE("enumeration visits k^n configurations with x_1 fastest") {
  const MrfInstance inst = two_site_ferro();
  std::vector<Config> order;
  std::vector<double> fs;
  enumerate_table(inst, 100, [&](const Config& x, double f) {
    order.push_back(x);
    fs.push_back(f);
  });
  REQUIRE(order.size() == 4);
  CHECK(order[0] == Config{1, 1});
  CHECK(order[1] == Config{2, 1});
  CHECK(order[2] == Config{1, 2});
  CHECK(order[3] == Config{2, 2});
  CHECK(fs[0] == doctest::Approx(2.0));
  CHECK(fs[1] == doctest::Approx(-2.0));
}

TEST_CASE("incremental objective tracking matches direct evaluation") {
  GenSpec spec;
  spec.n = 5;
  spec.k = 3;
  spec.target_cs = 2.0;
  spec.seed = 21;
  const MrfInstance inst = generate(spec);
  enumerate_table(inst, 1 << 10, [&](const Config& x, double f) {
    CHECK(f == doctest::Approx(objective(inst, x)).epsilon(1e-9));
  });
}

TEST_CASE("log Z of the two-site ferromagnet") {
  const ExactSummary ex = enumerate_exact(two_site_ferro());
  const double expected = std::log(2 * std::exp(2.0) + 2 * std::exp(-2.0));
  CHECK(ex.log_z == doctest::Approx(expected).epsilon(1e-12));
  CHECK(ex.mode_value == doctest::Approx(2.0));
  CHECK(ex.mode_config == Config{1, 1});  // lex-lowest of the two maximizers
}

TEST_CASE("log Z of a single biased site") {
  Eigen::MatrixXd h(1, 3);
  h << 2, -1, 0;
  const MrfInstance inst =
      symmetrize_and_validate(Eigen::MatrixXd::Zero(1, 1), h, 3);
  const ExactSummary ex = enumerate_exact(inst);
  const double expected =
      std::log(std::exp(3.0) + std::exp(-3.0) + std::exp(-1.0));
  CHECK(ex.log_z == doctest::Approx(expected).epsilon(1e-12));
  CHECK(ex.mode_config == Config{1});
  CHECK(ex.mode_value == doctest::Approx(3.0));
}

TEST_CASE("flat landscapes break mode ties toward the lowest configuration") {
  const MrfInstance inst = symmetrize_and_validate(
      Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXd::Zero(3, 2), 2);
  const ExactSummary ex = enumerate_exact(inst);
  CHECK(ex.mode_config == Config{1, 1, 1});
  CHECK(ex.mode_value == doctest::Approx(0.0));
  CHECK(ex.log_z == doctest::Approx(3 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("mode agrees with a direct scan") {
  GenSpec spec;
  spec.n = 9;
  spec.k = 2;
  spec.target_cs = 2.5;
  spec.seed = 33;
  const MrfInstance inst = generate(spec);
  const ExactSummary ex = enumerate_exact(inst);
  double best = -1e300;
  Config best_x;
  enumerate_table(inst, 1 << 12, [&](const Config& x, double) {
    const double fe = objective(inst, x);
    if (fe > best) {
      best = fe;
      best_x = x;
    }
  });
  CHECK(ex.mode_value == doctest::Approx(best).epsilon(1e-12));
  CHECK(objective(inst, ex.mode_config) == ex.mode_value);
  CHECK(ex.mode_config == best_x);
}

TEST_CASE("log Z agrees with a naive high-precision sum") {
  GenSpec spec;
  spec.n = 8;
  spec.k = 2;
  spec.target_cs = 2.0;
  spec.seed = 99;
  const MrfInstance inst = generate(spec);
  std::vector<double> fs;
  enumerate_table(inst, 1 << 10,
                  [&](const Config& x, double) { fs.push_back(objective(inst, x)); });
  const ExactSummary ex = enumerate_exact(inst);
  CHECK(ex.log_z == doctest::Approx(logsumexp(fs)).epsilon(1e-12));
}

TEST_CASE("the optional table is materialized under its own cap") {
  const MrfInstance inst = two_site_ferro();
  CHECK(enumerate_exact(inst, 100, 0).table.empty());
  const ExactSummary ex = enumerate_exact(inst, 100, 100);
  REQUIRE(ex.table.size() == 4);
  CHECK(ex.table[0].first == Config{1, 1});
  CHECK(ex.table[0].second == doctest::Approx(2.0));
}

TEST_CASE("enumeration refuses oversized state spaces") {
  const MrfInstance inst = symmetrize_and_validate(
      Eigen::MatrixXd::Zero(30, 30), Eigen::MatrixXd::Zero(30, 3), 3);
  CHECK_THROWS(enumerate_exact(inst, 1 << 20));
}

TEST_CASE("mass buckets partition the probability into sorted shares") {
  const MrfInstance inst = two_site_ferro();
  const std::vector<MassBucket> buckets = mass_buckets(inst, 2);
  REQUIRE(buckets.size() == 2);
  double total = 0.0;
  for (const auto& b : buckets) {
    CHECK(b.mass >= 0.0);
    CHECK(b.f_lo <= b.f_hi);
    total += b.mass;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(buckets[0].mass <= buckets[1].mass);
  const double z = 2 * std::exp(2.0) + 2 * std::exp(-2.0);
  CHECK(buckets[0].mass ==
        doctest::Approx(2 * std::exp(-2.0) / z).epsilon(1e-12));
  CHECK(buckets[1].mass ==
        doctest::Approx(2 * std::exp(2.0) / z).epsilon(1e-12));
}

TEST_CASE("a flat landscape collapses into one bucket") {
  const MrfInstance inst = symmetrize_and_validate(
      Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2), 2);
  const std::vector<MassBucket> buckets = mass_buckets(inst, 4);
  double total = 0.0, biggest = 0.0;
  for (const auto& b : buckets) {
    total += b.mass;
    biggest = std::max(biggest, b.mass);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(biggest == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bucket masses sum to one on random instances") {
  GenSpec spec;
  spec.n = 7;
  spec.k = 3;
  spec.target_cs = 2.5;
  spec.seed = 6;
  const MrfInstance inst = generate(spec);
  const std::vector<MassBucket> buckets = mass_buckets(inst, 20);
  double total = 0.0;
  for (const auto& b : buckets) total += b.mass;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < buckets.size(); ++i)
    CHECK(buckets[i - 1].mass <= buckets[i].mass);
}

TEST_CASE("mass_covered integrates the named configurations once") {
  const MrfInstance inst = two_site_ferro();
  const double z = 2 * std::exp(2.0) + 2 * std::exp(-2.0);
  CHECK(mass_covered(inst, {{1, 1}}) ==
        doctest::Approx(std::exp(2.0) / z).epsilon(1e-12));
  CHECK(mass_covered(inst, {{1, 1}, {1, 1}}) ==
        doctest::Approx(std::exp(2.0) / z).epsilon(1e-12));
  CHECK(mass_covered(inst, {{1, 1}, {2, 2}}) ==
        doctest::Approx(2 * std::exp(2.0) / z).epsilon(1e-12));
  CHECK(mass_covered(inst, {{1, 1}, {2, 2}, {1, 2}, {2, 1}}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mass_covered(inst, {}) == 0.0);
}
