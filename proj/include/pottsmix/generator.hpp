#pragma once

#include <cstdint>

#include "pottsmix/mrf.hpp"

namespace pottsmix {

enum class GraphKind { Complete, ErdosRenyi };

struct GenSpec {
  int n = 2;
  int k = 2;
  GraphKind graph = GraphKind::Complete;
  double edge_prob = 0.5;  // used only for ErdosRenyi
  double target_cs = 1.0;  // mean absolute off-diagonal coupling after rescale
  std::uint64_t seed = 0;
};

// Synthetic benchmark instance: selected off-diagonal couplings drawn
// uniformly from [-1, 1], then the whole matrix rescaled so the coupling
// strength equals target_cs exactly; diagonal zero; biases uniform [-1, 1].
//
// The draw order is fixed so instances are reproducible from the seed alone:
// pairs (i, j), i < j, row-major -- for Erdos-Renyi one inclusion draw per
// pair, then one weight draw when included -- followed by bias entries
// H(i, l) row-major.
//
// Throws when target_cs > 0 but the sampled graph has no edges (rescaling is
// impossible; reseed).
MrfInstance generate(const GenSpec& spec);

}  // namespace pottsmix
