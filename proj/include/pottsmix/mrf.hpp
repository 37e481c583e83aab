#pragma once

#include <vector>

#include <Eigen/Dense>

namespace pottsmix {

// Labels are 1-based: every entry lies in {1, ..., k}.
using Config = std::vector<int>;

// A pairwise k-class MRF: unnormalized log-density
//   f(x) = sum_{i,j} A_ij d(x_i, x_j) + sum_i sum_l H_il d(x_i, l)
// where d is the +/-1 agreement indicator (delta_hat below) and the double
// sum runs over all ordered pairs including i = j, so the diagonal of A
// contributes the constant sum_i A_ii.
struct MrfInstance {
  int n = 0;
  int k = 0;
  Eigen::MatrixXd A;  // n x n, symmetric
  Eigen::MatrixXd H;  // n x k, H(i, l-1) holds the bias toward label l
};

// k unit vectors with pairwise inner product -1/(k-1), embedded in R^d.
// Column l-1 of r is the direction assigned to label l.
struct SimplexFrame {
  int k = 0;
  int d = 0;
  Eigen::MatrixXd r;  // d x k
};

// +1 if the labels agree, -1 otherwise.
inline double delta_hat(int a, int b) { return a == b ? 1.0 : -1.0; }

// Builds an instance from possibly asymmetric couplings: A = (raw + raw^T)/2.
// Rejects non-finite entries and shape mismatches.
MrfInstance symmetrize_and_validate(const Eigen::MatrixXd& raw,
                                    const Eigen::MatrixXd& H, int k);

// Throws unless x has length n with every label in [1, k].
void validate_config(const MrfInstance& inst, const Config& x);

// The unnormalized log-density f(x) defined above.
double objective(const MrfInstance& inst, const Config& x);

// Lifts a binary model x^T A x + h^T x over x in {-1,+1}^n to the two-class
// form, using the symmetric bias split H = [h/2, -h/2] (class 1 <-> spin +1).
// The two objectives agree on every configuration.
MrfInstance binary_to_multiclass(const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& h);

// Mean absolute off-diagonal coupling: (1/(n(n-1))) sum_{i != j} |A_ij|.
double coupling_strength(const Eigen::MatrixXd& A);

// Deterministic recursive regular-simplex construction; the k vectors are
// nonzero only in their first k-1 coordinates. Requires d >= k-1.
SimplexFrame simplex_frame(int k, int d);

// (2/k)((k-1) r_a . r_b + 1) - 1; equals delta_hat(a, b) up to fp roundoff.
double bijection_check(int k, const SimplexFrame& frame, int a, int b);

// Columns of the result are r_{x_1}, ..., r_{x_n}: the discrete configuration
// embedded as unit vectors.
Eigen::MatrixXd embed_config(const SimplexFrame& frame, const Config& x);

}  // namespace pottsmix
