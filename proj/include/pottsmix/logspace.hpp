#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pottsmix {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b), safe for either argument being -inf.
inline double logaddexp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// Two-pass max-then-sum logsumexp over a materialized list.
inline double logsumexp(const std::vector<double>& xs) {
  if (xs.empty()) return kNegInf;
  const double m = *std::max_element(xs.begin(), xs.end());
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// Compensated (Kahan) accumulator for long sums of small positive terms.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }
  void scale(double f) {
    s_ *= f;
    c_ *= f;
  }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// Streaming logsumexp: feed values one at a time, read the total at the end.
// Rescales its compensated accumulator whenever a new maximum arrives, so it
// matches the two-pass computation to near machine precision.
class StreamingLogSumExp {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x > m_) {
      if (m_ != kNegInf) acc_.scale(std::exp(m_ - x));
      m_ = x;
    }
    acc_.add(std::exp(x - m_));
  }
  double value() const {
    if (m_ == kNegInf) return kNegInf;
    return m_ + std::log(acc_.value());
  }

 private:
  double m_ = kNegInf;
  KahanSum acc_;
};

}  // namespace pottsmix
