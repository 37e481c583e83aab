#include "pottsmix/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "pottsmix/logspace.hpp"
#include "pottsmix/rng.hpp"
#include "pottsmix/rounding.hpp"

namespace pottsmix {

namespace {

using U128 = unsigned __int128;

U128 total_configs_u128(int n, int k) {
  U128 total = 1;
  const U128 limit = ~static_cast<U128>(0);
  for (int i = 0; i < n; ++i) {
    if (total > limit / static_cast<unsigned>(k))
      throw std::runtime_error(
          "estimate_z: k^n does not fit in 128-bit arithmetic");
    total *= static_cast<unsigned>(k);
  }
  return total;
}

// Mixed-radix packing with x_1 the highest digit, so code order matches the
// lexicographic order of configurations.
U128 pack_config(const Config& x, int k) {
  U128 code = 0;
  for (int xi : x)
    code = code * static_cast<unsigned>(k) + static_cast<unsigned>(xi - 1);
  return code;
}

Config unpack_config(U128 code, int n, int k) {
  Config x(n);
  for (int i = n - 1; i >= 0; --i) {
    x[i] = static_cast<int>(code % static_cast<unsigned>(k)) + 1;
    code /= static_cast<unsigned>(k);
  }
  return x;
}

double log_u128(U128 v) {
  return std::log(static_cast<long double>(v));
}

}  // namespace

PartitionEstimate estimate_z(const MrfInstance& inst, const Eigen::MatrixXd& v,
                             const SimplexFrame& frame, std::uint64_t R,
                             std::uint64_t seed,
                             const PartitionOptions& options) {
  if (R < 1) throw std::invalid_argument("estimate_z: R must be positive");
  const int n = inst.n;
  const int k = inst.k;
  const U128 total = total_configs_u128(n, k);

  PartitionEstimate out;
  out.R = R;

  // Phase 1: rounded mode-cluster, deduplicated, mass summed in sorted order.
  const std::uint64_t phase1 = options.phase1_iters.value_or(R);
  std::map<U128, double> cluster;  // code -> f, ordered
  for (std::uint64_t t = 0; t < phase1; ++t) {
    RandomStream rng(derive_seed(seed, kStreamRounding, t));
    Config x = round_once(v, frame, rng);
    const U128 code = pack_config(x, k);
    if (cluster.find(code) == cluster.end())
      cluster.emplace(code, objective(inst, x));
  }
  out.cluster_size = cluster.size();
  StreamingLogSumExp cluster_lse;
  for (const auto& [code, f] : cluster) {
    cluster_lse.add(f);
    if (options.collect_samples)
      out.cluster_configs.push_back(unpack_config(code, n, k));
  }
  out.cluster_log_mass = cluster_lse.value();

  if (static_cast<U128>(out.cluster_size) == total) {
    // Full support: the cluster sum is already the whole partition function.
    out.full_support = true;
    out.uniform_phase_log_mass = kNegInf;
    out.q_log = 0.0;
    out.log_z_hat = out.cluster_log_mass;
    return out;
  }

  // Phase 2: uniform importance sampling on the complement, by rejection.
  const U128 remaining = total - static_cast<U128>(out.cluster_size);
  out.q_log = -log_u128(remaining);
  RandomStream rng(derive_seed(seed, kStreamUniformPhase, 0));
  const std::uint64_t max_attempts =
      (R > (~std::uint64_t{0}) / 1000000) ? ~std::uint64_t{0} : 1000000 * R;
  std::uint64_t attempts = 0;
  StreamingLogSumExp phase2_lse;
  Config x(n);
  for (std::uint64_t t = 0; t < R; ++t) {
    for (;;) {
      if (++attempts > max_attempts)
        throw std::runtime_error(
            "estimate_z: rejection sampling exceeded the attempt budget; the "
            "cluster covers nearly all configurations");
      for (int i = 0; i < n; ++i)
        x[i] = static_cast<int>(rng.uniform_int(k)) + 1;
      if (cluster.find(pack_config(x, k)) == cluster.end()) break;
    }
    phase2_lse.add(objective(inst, x));
    if (options.collect_samples) out.uniform_samples.push_back(x);
  }
  // (1/R) sum e^{f(x)} / q  ->  logsumexp(f) - log R - log q
  out.uniform_phase_log_mass =
      phase2_lse.value() - std::log(static_cast<double>(R)) - out.q_log;
  out.log_z_hat = logaddexp(out.cluster_log_mass, out.uniform_phase_log_mass);
  return out;
}

HarnessResult unbiasedness_harness(const MrfInstance& inst,
                                   const Eigen::MatrixXd& v,
                                   const SimplexFrame& frame, std::uint64_t R,
                                   int trials, std::uint64_t seed,
                                   std::uint64_t cap) {
  if (trials < 1)
    throw std::invalid_argument("unbiasedness_harness: trials must be positive");
  HarnessResult out;
  out.exact_log_z = enumerate_exact(inst, cap).log_z;
  out.trial_log_z_hat.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    const PartitionEstimate est =
        estimate_z(inst, v, frame, R, derive_seed(seed, kStreamTrial, t));
    out.trial_log_z_hat.push_back(est.log_z_hat);
  }
  out.log_mean_z_hat =
      logsumexp(out.trial_log_z_hat) - std::log(static_cast<double>(trials));

  // Bit-identical trials (e.g. every run reached full support) have zero
  // spread by construction even when the mean rounds away by an ulp.
  const auto [mn, mx] = std::minmax_element(out.trial_log_z_hat.begin(),
                                            out.trial_log_z_hat.end());
  if (*mn == *mx) {
    out.z_score = 0.0;
    return out;
  }

  // Standardize through the ratios u_t = Z-hat_t / Z so the scale cancels.
  const int t_count = trials;
  std::vector<double> u(t_count);
  double mean_u = 0.0;
  for (int t = 0; t < t_count; ++t) {
    u[t] = std::exp(out.trial_log_z_hat[t] - out.exact_log_z);
    mean_u += u[t];
  }
  mean_u /= t_count;
  double var = 0.0;
  for (double ut : u) var += (ut - mean_u) * (ut - mean_u);
  var = t_count > 1 ? var / (t_count - 1) : 0.0;
  const double sd = std::sqrt(var);
  out.z_score =
      sd > 0.0 ? (mean_u - 1.0) / (sd / std::sqrt(static_cast<double>(t_count)))
               : 0.0;
  return out;
}

}  // namespace pottsmix
