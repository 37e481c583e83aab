#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "pottsmix/rng.hpp"

using namespace pottsmix;

TEST_CASE("same seed reproduces the full draw sequence") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 200; ++i) CHECK(a.next_u64() == b.next_u64());
  RandomStream c(42), d(42);
  for (int i = 0; i < 50; ++i) {
    CHECK(c.uniform_unit() == d.uniform_unit());
    CHECK(c.normal() == d.normal());
    CHECK(c.uniform_int(7) == d.uniform_int(7));
  }
}

TEST_CASE("different seeds give different sequences") {
  RandomStream a(1), b(2);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += (a.next_u64() == b.next_u64());
  CHECK(same == 0);
}

TEST_CASE("uniform_unit lies in [0, 1)") {
  RandomStream rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_real respects its interval") {
  RandomStream rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform_real(-2.5, 4.0);
    CHECK(u >= -2.5);
    CHECK(u < 4.0);
  }
}

TEST_CASE("uniform_int stays under the bound and hits every value") {
  RandomStream rng(11);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 5000; ++i) {
    const std::uint64_t x = rng.uniform_int(5);
    CHECK(x < 5);
    seen.insert(x);
  }
  CHECK(seen.size() == 5);
  for (int i = 0; i < 100; ++i) CHECK(rng.uniform_int(1) == 0);
}

TEST_CASE("uniform_int is close to uniform") {
  RandomStream rng(13);
  const int bound = 6, draws = 60000;
  std::vector<int> counts(bound, 0);
  for (int i = 0; i < draws; ++i) ++counts[rng.uniform_int(bound)];
  // 5 sigma around the expected count per cell
  const double expect = static_cast<double>(draws) / bound;
  const double sigma = std::sqrt(expect * (1.0 - 1.0 / bound));
  for (int c : counts) CHECK(std::abs(c - expect) < 5 * sigma);
}

TEST_CASE("normal consumes exactly two raw draws") {
  RandomStream a(99), b(99);
  (void)a.normal();
  (void)b.next_u64();
  (void)b.next_u64();
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("normal has roughly standard moments") {
  RandomStream rng(5);
  const int draws = 50000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = rng.normal();
    sum += x;
    sumsq += x * x;
  }
  CHECK(std::abs(sum / draws) < 0.02);
  CHECK(std::abs(sumsq / draws - 1.0) < 0.03);
}

TEST_CASE("unit_vector has unit norm in every dimension") {
  RandomStream rng(17);
  for (int d = 1; d <= 12; ++d) {
    const Eigen::VectorXd v = rng.unit_vector(d);
    CHECK(v.size() == d);
    CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("unit_vector directions average out") {
  RandomStream rng(23);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(3);
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) mean += rng.unit_vector(3);
  mean /= draws;
  CHECK(mean.norm() < 0.02);
}

TEST_CASE("derive_seed separates substreams") {
  std::set<std::uint64_t> seeds;
  seeds.insert(123);
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b) seeds.insert(derive_seed(123, a, b));
  CHECK(seeds.size() == 17);  // all distinct, none equal to the parent
  CHECK(derive_seed(123, 1, 2) != derive_seed(123, 2, 1));
  CHECK(derive_seed(123, 1, 2) == derive_seed(123, 1, 2));
  CHECK(derive_seed(123, 1, 2) != derive_seed(124, 1, 2));
}

TEST_CASE("derived streams are decorrelated from the parent") {
  RandomStream parent(77);
  RandomStream child(derive_seed(77, kStreamRounding, 0));
  int same = 0;
  for (int i = 0; i < 64; ++i) same += (parent.next_u64() == child.next_u64());
  CHECK(same == 0);
}
