#include "pottsmix/rounding.hpp"

#include <algorithm>
#include <stdexcept>

namespace pottsmix {

namespace {
int argmax_lowest(const Eigen::VectorXd& scores) {
  int best = 0;
  for (int l = 1; l < scores.size(); ++l)
    if (scores[l] > scores[best]) best = l;
  return best;
}
}  // namespace

Config round_pass1(const Eigen::MatrixXd& v, const Eigen::MatrixXd& m_draws) {
  if (m_draws.rows() != v.rows())
    throw std::invalid_argument("round_pass1: dimension mismatch");
  const Eigen::MatrixXd scores = m_draws.transpose() * v;  // k x n
  Config x(v.cols());
  for (int i = 0; i < v.cols(); ++i)
    x[i] = 1 + argmax_lowest(scores.col(i));
  return x;
}

Config round_once_with_draws(const Eigen::MatrixXd& v, const SimplexFrame& frame,
                             const Eigen::MatrixXd& m_draws) {
  if (m_draws.cols() != frame.k || m_draws.rows() != frame.d)
    throw std::invalid_argument("round_once: draws must be d x k");
  Config x = round_pass1(v, m_draws);
  // Remap each random direction to its nearest label vector so output labels
  // are aligned with the frame rather than the arbitrary draw order.
  const Eigen::MatrixXd align = m_draws.transpose() * frame.r;  // k x k
  std::vector<int> remap(frame.k);
  for (int l = 0; l < frame.k; ++l)
    remap[l] = 1 + argmax_lowest(align.row(l).transpose());
  for (int& xi : x) xi = remap[xi - 1];
  return x;
}

Config round_once(const Eigen::MatrixXd& v, const SimplexFrame& frame,
                  RandomStream& rng) {
  RoundingScratch scratch(frame.d, frame.k, static_cast<int>(v.cols()));
  Config x;
  scratch.round_into(v, frame, rng, x);
  return x;
}

RoundingScratch::RoundingScratch(int d, int k, int n)
    : m_draws_(d, k), scores_(k, n), align_(k, k), remap_(k) {}

void RoundingScratch::round_into(const Eigen::MatrixXd& v,
                                 const SimplexFrame& frame, RandomStream& rng,
                                 Config& x_out) {
  const int d = static_cast<int>(m_draws_.rows());
  const int k = static_cast<int>(m_draws_.cols());
  const int n = static_cast<int>(scores_.cols());
  if (frame.d != d || frame.k != k || v.rows() != d || v.cols() != n)
    throw std::invalid_argument("round_into: dimension mismatch");
  for (int l = 0; l < k; ++l) {
    // same draw-and-renormalize loop as RandomStream::unit_vector
    for (;;) {
      for (int r = 0; r < d; ++r) m_draws_(r, l) = rng.normal();
      const double norm = m_draws_.col(l).norm();
      if (norm > 1e-12) {
        m_draws_.col(l) /= norm;
        break;
      }
    }
  }
  // Explicit column dots: the products are k x n and k x k with tiny inner
  // dimension, where the general matrix-product path costs more in dispatch
  // than in arithmetic.
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) scores_(l, i) = m_draws_.col(l).dot(v.col(i));
  x_out.resize(n);
  for (int i = 0; i < n; ++i) {
    int best = 0;
    for (int l = 1; l < k; ++l)
      if (scores_(l, i) > scores_(best, i)) best = l;
    x_out[i] = 1 + best;
  }
  for (int t = 0; t < k; ++t)
    for (int l = 0; l < k; ++l)
      align_(l, t) = m_draws_.col(l).dot(frame.r.col(t));
  for (int l = 0; l < k; ++l) {
    int best = 0;
    for (int t = 1; t < k; ++t)
      if (align_(l, t) > align_(l, best)) best = t;
    remap_[l] = 1 + best;
  }
  for (int& xi : x_out) xi = remap_[xi - 1];
}

RoundingBatch round_batch(const MrfInstance& inst, const Eigen::MatrixXd& v,
                          const SimplexFrame& frame, int iters,
                          std::uint64_t seed) {
  if (iters < 1)
    throw std::invalid_argument("round_batch: iters must be positive");
  RoundingScratch scratch(frame.d, frame.k, static_cast<int>(v.cols()));
  RoundingBatch batch;
  batch.samples.reserve(iters);
  double best_f = 0.0;
  Config x;
  for (int t = 0; t < iters; ++t) {
    RandomStream rng(derive_seed(seed, kStreamRounding, t));
    scratch.round_into(v, frame, rng, x);
    const double f = objective(inst, x);
    if (t == 0 || f > best_f) {
      best_f = f;
      batch.best = x;
    }
    batch.samples.push_back(x);
  }
  batch.best_value = best_f;
  std::vector<Config> uniq(batch.samples);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  batch.unique_set = std::move(uniq);
  return batch;
}

}  // namespace pottsmix
