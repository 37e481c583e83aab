#include "pottsmix/generator.hpp"

#include <stdexcept>

#include "pottsmix/rng.hpp"

namespace pottsmix {

MrfInstance generate(const GenSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("generate: n must be positive");
  if (spec.k < 2) throw std::invalid_argument("generate: k must be at least 2");
  if (spec.edge_prob < 0.0 || spec.edge_prob > 1.0)
    throw std::invalid_argument("generate: edge_prob must lie in [0, 1]");
  if (spec.target_cs < 0.0)
    throw std::invalid_argument("generate: target_cs must be nonnegative");

  const int n = spec.n;
  RandomStream rng(spec.seed);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  bool any_edge = false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool include = true;
      if (spec.graph == GraphKind::ErdosRenyi)
        include = rng.uniform_unit() < spec.edge_prob;
      if (!include) continue;
      const double w = rng.uniform_real(-1.0, 1.0);
      A(i, j) = w;
      A(j, i) = w;
      any_edge = true;
    }
  }

  if (spec.target_cs > 0.0) {
    if (!any_edge)
      throw std::runtime_error(
          "generate: sampled graph has no edges, cannot rescale to target "
          "coupling strength; use a different seed");
    const double cs = coupling_strength(A);
    if (cs == 0.0)
      throw std::runtime_error(
          "generate: sampled couplings are all zero, cannot rescale; use a "
          "different seed");
    A *= spec.target_cs / cs;
  } else {
    A.setZero();
  }

  Eigen::MatrixXd H(n, spec.k);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < spec.k; ++l) H(i, l) = rng.uniform_real(-1.0, 1.0);

  MrfInstance inst;
  inst.n = n;
  inst.k = spec.k;
  inst.A = std::move(A);
  inst.H = std::move(H);
  return inst;
}

}  // namespace pottsmix
