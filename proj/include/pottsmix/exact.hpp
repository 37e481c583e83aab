#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pottsmix/mrf.hpp"

namespace pottsmix {

inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t{1} << 24;

struct ExactSummary {
  double log_z = 0.0;
  Config mode_config;
  double mode_value = 0.0;  // the exact discrete optimum of f
  // (configuration, f) rows in enumeration order; filled only when
  // table_cap > 0 and the configuration count fits under it.
  std::vector<std::pair<Config, double>> table;
};

struct MassBucket {
  double f_lo = 0.0;
  double f_hi = 0.0;
  double mass = 0.0;
};

// k^n as a checked count; throws when it exceeds cap.
std::uint64_t config_count_checked(int n, int k, std::uint64_t cap);

// Visits every configuration once in mixed-radix order with x_1 fastest,
// passing f(x) maintained incrementally (periodically refreshed from scratch
// to pin accumulation error). The visited Config reference is reused between
// calls; copy it if it must outlive the callback.
void enumerate_table(const MrfInstance& inst, std::uint64_t cap,
                     const std::function<void(const Config&, double)>& visit);

// Brute-force ground truth: exact log Z via streaming logsumexp and the exact
// argmax. Near-maximal candidates are rescored with objective() before being
// compared, so the reported mode and mode_value carry no accumulation error;
// ties are broken toward the lexicographically lowest configuration.
ExactSummary enumerate_exact(const MrfInstance& inst,
                             std::uint64_t cap = kDefaultEnumCap,
                             std::uint64_t table_cap = 0);

// Partitions [min f, max f] into bucket_count equal-width ranges and returns
// the normalized probability mass per bucket, sorted by increasing mass.
std::vector<MassBucket> mass_buckets(const MrfInstance& inst, int bucket_count,
                                     std::uint64_t cap = kDefaultEnumCap);

// Total probability mass of the distinct configurations in samples:
// sum_x exp(f(x) - log Z). Duplicates are counted once.
double mass_covered(const MrfInstance& inst, const std::vector<Config>& samples,
                    std::uint64_t cap = kDefaultEnumCap);

}  // namespace pottsmix
