#include "pottsmix/exact.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "pottsmix/logspace.hpp"

namespace pottsmix {

std::uint64_t config_count_checked(int n, int k, std::uint64_t cap) {
  unsigned __int128 total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<unsigned>(k);
    if (total > cap)
      throw std::runtime_error(
          "exact enumeration: k^n exceeds the configuration cap");
  }
  return static_cast<std::uint64_t>(total);
}

namespace {

// Digits at or above this index trigger a from-scratch refresh of the
// incremental objective when they change, bounding drift to O(k^8) updates.
constexpr int kRefreshDigit = 8;

template <typename Visit>
void enumerate_impl(const MrfInstance& inst, std::uint64_t total,
                    Visit&& visit) {
  const int n = inst.n;
  const int k = inst.k;
  Config x(n, 1);
  double f = objective(inst, x);
  visit(static_cast<const Config&>(x), f);

  // Moves coordinate i from its current label to b, updating f in O(n).
  const auto apply_change = [&](int i, int b) {
    const int a = x[i];
    double sa = 0.0, sb = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (x[j] == a)
        sa += inst.A(i, j);
      else if (x[j] == b)
        sb += inst.A(i, j);
    }
    f += 4.0 * (sb - sa) + 2.0 * (inst.H(i, b - 1) - inst.H(i, a - 1));
    x[i] = b;
  };

  for (std::uint64_t count = 1; count < total; ++count) {
    int i = 0;
    while (x[i] == k) {
      apply_change(i, 1);
      ++i;
    }
    apply_change(i, x[i] + 1);
    if (i >= kRefreshDigit) f = objective(inst, x);
    visit(static_cast<const Config&>(x), f);
  }
}

}  // namespace

void enumerate_table(const MrfInstance& inst, std::uint64_t cap,
                     const std::function<void(const Config&, double)>& visit) {
  const std::uint64_t total = config_count_checked(inst.n, inst.k, cap);
  enumerate_impl(inst, total, visit);
}

ExactSummary enumerate_exact(const MrfInstance& inst, std::uint64_t cap,
                             std::uint64_t table_cap) {
  const std::uint64_t total = config_count_checked(inst.n, inst.k, cap);
  const bool keep_table = table_cap > 0 && total <= table_cap;

  ExactSummary out;
  StreamingLogSumExp lse;
  bool have_best = false;
  double best_f = kNegInf;  // exact objective() value of the current mode

  enumerate_impl(inst, total, [&](const Config& x, double f) {
    lse.add(f);
    if (keep_table) out.table.emplace_back(x, f);
    // Rescore near-maximal candidates exactly so the mode decision carries no
    // incremental-update error and ties break lexicographically.
    const double margin = 1e-6 * std::max(1.0, std::abs(best_f));
    if (!have_best || f >= best_f - margin) {
      const double fe = objective(inst, x);
      if (!have_best || fe > best_f ||
          (fe == best_f && std::lexicographical_compare(
                               x.begin(), x.end(), out.mode_config.begin(),
                               out.mode_config.end()))) {
        best_f = fe;
        out.mode_config = x;
        have_best = true;
      }
    }
  });

  out.log_z = lse.value();
  out.mode_value = best_f;
  return out;
}

std::vector<MassBucket> mass_buckets(const MrfInstance& inst, int bucket_count,
                                     std::uint64_t cap) {
  if (bucket_count < 1)
    throw std::invalid_argument("mass_buckets: bucket_count must be positive");
  const std::uint64_t total = config_count_checked(inst.n, inst.k, cap);

  // Pass 1: range of f and the normalizer, in one sweep.
  double f_min = 0.0, f_max = 0.0, shift = kNegInf;
  bool first = true;
  StreamingLogSumExp lse;
  enumerate_impl(inst, total, [&](const Config&, double f) {
    lse.add(f);
    if (first) {
      f_min = f_max = f;
      first = false;
    } else {
      f_min = std::min(f_min, f);
      f_max = std::max(f_max, f);
    }
  });
  const double log_z = lse.value();
  shift = f_max;

  // Pass 2: accumulate exp(f - shift) per bucket (compensated), normalize by
  // exp(log_z - shift) at the end so the masses sum to 1 to near machine
  // precision.
  const int nb = bucket_count;
  const double width = (f_max - f_min) / nb;
  std::vector<KahanSum> acc(nb);
  enumerate_impl(inst, total, [&](const Config&, double f) {
    int idx = 0;
    if (width > 0.0)
      idx = std::min(nb - 1, static_cast<int>((f - f_min) / width));
    acc[idx].add(std::exp(f - shift));
  });

  const double denom = std::exp(log_z - shift);
  std::vector<MassBucket> buckets(nb);
  for (int b = 0; b < nb; ++b) {
    buckets[b].f_lo = f_min + b * width;
    buckets[b].f_hi = (b == nb - 1) ? f_max : f_min + (b + 1) * width;
    buckets[b].mass = acc[b].value() / denom;
  }
  std::sort(buckets.begin(), buckets.end(),
            [](const MassBucket& a, const MassBucket& b) {
              if (a.mass != b.mass) return a.mass < b.mass;
              return a.f_lo < b.f_lo;
            });
  return buckets;
}

double mass_covered(const MrfInstance& inst, const std::vector<Config>& samples,
                    std::uint64_t cap) {
  const double log_z = enumerate_exact(inst, cap).log_z;
  std::set<Config> unique(samples.begin(), samples.end());
  KahanSum mass;
  for (const Config& x : unique) mass.add(std::exp(objective(inst, x) - log_z));
  return mass.value();
}

}  // namespace pottsmix
