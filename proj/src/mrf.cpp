#include "pottsmix/mrf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pottsmix {

MrfInstance symmetrize_and_validate(const Eigen::MatrixXd& raw,
                                    const Eigen::MatrixXd& H, int k) {
  if (k < 2) throw std::invalid_argument("instance: k must be at least 2");
  const int n = static_cast<int>(raw.rows());
  if (n < 1) throw std::invalid_argument("instance: n must be at least 1");
  if (raw.cols() != n)
    throw std::invalid_argument("instance: coupling matrix must be square");
  if (H.rows() != n || H.cols() != k)
    throw std::invalid_argument("instance: bias matrix must be n x k");
  if (!raw.allFinite() || !H.allFinite())
    throw std::invalid_argument("instance: non-finite entry");
  MrfInstance inst;
  inst.n = n;
  inst.k = k;
  inst.A = 0.5 * (raw + raw.transpose());
  inst.H = H;
  return inst;
}

void validate_config(const MrfInstance& inst, const Config& x) {
  if (static_cast<int>(x.size()) != inst.n)
    throw std::invalid_argument("configuration: wrong length");
  for (int xi : x)
    if (xi < 1 || xi > inst.k)
      throw std::invalid_argument("configuration: label out of range [1, k]");
}

double objective(const MrfInstance& inst, const Config& x) {
  validate_config(inst, x);
  const int n = inst.n;
  double f = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f += inst.A(i, j) * delta_hat(x[i], x[j]);
  // sum_l H_il d(x_i, l) = 2 H_i,x_i - sum_l H_il
  for (int i = 0; i < n; ++i)
    f += 2.0 * inst.H(i, x[i] - 1) - inst.H.row(i).sum();
  return f;
}

MrfInstance binary_to_multiclass(const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& h) {
  const int n = static_cast<int>(A.rows());
  if (h.size() != n)
    throw std::invalid_argument("binary_to_multiclass: bias length mismatch");
  Eigen::MatrixXd H(n, 2);
  H.col(0) = 0.5 * h;
  H.col(1) = -0.5 * h;
  return symmetrize_and_validate(A, H, 2);
}

double coupling_strength(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n)
    throw std::invalid_argument("coupling_strength: matrix must be square");
  if (n < 2)
    throw std::invalid_argument("coupling_strength: requires n >= 2");
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::abs(A(i, j));
  return s / (static_cast<double>(n) * (n - 1));
}

namespace {
// Rows of the result are the k simplex vertices in R^{k-1}.
Eigen::MatrixXd simplex_rows(int k) {
  if (k == 2) {
    Eigen::MatrixXd s(2, 1);
    s << 1.0, -1.0;
    return s;
  }
  const Eigen::MatrixXd sub = simplex_rows(k - 1);  // (k-1) x (k-2)
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(k, k - 1);
  s(0, 0) = 1.0;
  const double c = -1.0 / (k - 1);
  const double scale = std::sqrt(1.0 - c * c);
  for (int l = 1; l < k; ++l) {
    s(l, 0) = c;
    s.row(l).segment(1, k - 2) = scale * sub.row(l - 1);
  }
  return s;
}
}  // namespace

SimplexFrame simplex_frame(int k, int d) {
  if (k < 2) throw std::invalid_argument("simplex_frame: k must be at least 2");
  if (d < k - 1)
    throw std::invalid_argument("simplex_frame: requires d >= k-1, got d=" +
                                std::to_string(d));
  const Eigen::MatrixXd rows = simplex_rows(k);
  SimplexFrame frame;
  frame.k = k;
  frame.d = d;
  frame.r = Eigen::MatrixXd::Zero(d, k);
  frame.r.topRows(k - 1) = rows.transpose();
  return frame;
}

double bijection_check(int k, const SimplexFrame& frame, int a, int b) {
  if (frame.k != k)
    throw std::invalid_argument("bijection_check: frame class count mismatch");
  if (a < 1 || a > k || b < 1 || b > k)
    throw std::invalid_argument("bijection_check: label out of range");
  const double dot = frame.r.col(a - 1).dot(frame.r.col(b - 1));
  return (2.0 / k) * ((k - 1) * dot + 1.0) - 1.0;
}

Eigen::MatrixXd embed_config(const SimplexFrame& frame, const Config& x) {
  Eigen::MatrixXd v(frame.d, static_cast<int>(x.size()));
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    if (x[i] < 1 || x[i] > frame.k)
      throw std::invalid_argument("embed_config: label out of range");
    v.col(i) = frame.r.col(x[i] - 1);
  }
  return v;
}

}  // namespace pottsmix
