#pragma once

#include <cstdint>
#include <memory>

#include "pottsmix/image_io.hpp"
#include "pottsmix/mrf.hpp"

namespace pottsmix {

struct KernelParams {
  double w_app = 1.0;
  double theta_alpha = 40.0;  // position bandwidth, appearance kernel
  double theta_beta = 13.0;   // color bandwidth
  double w_smooth = 1.0;
  double theta_gamma = 3.0;  // position bandwidth, smoothness kernel
};

// Per-pixel features: integer pixel positions and 0..255 colors, held as
// doubles. Scaling by the bandwidths happens inside the kernel.
struct PixelFeatures {
  int width = 0;
  int height = 0;
  Eigen::MatrixXd pos;    // 2 x n, (x, y)
  Eigen::MatrixXd color;  // 3 x n, (r, g, b)

  int size() const { return width * height; }
};

using FeatureVec = Eigen::Matrix<double, 5, 1>;  // (x, y, r, g, b)

PixelFeatures build_features(const ImageRgb& image);
FeatureVec feature_vec(const PixelFeatures& features, int i);

// Pairs farther apart than this in position contribute exactly zero.
double truncation_radius(const KernelParams& params);

// w_app exp(-|dpos|^2/(2 ta^2) - |dcolor|^2/(2 tb^2))
//   + w_smooth exp(-|dpos|^2/(2 tg^2)), truncated to 0 beyond the radius.
double kernel(const FeatureVec& fi, const FeatureVec& fj,
              const KernelParams& params);

struct UnaryPrior {
  Eigen::MatrixXd p;   // n x k, rows sum to 1, entries strictly positive
  double theta = 1.0;  // weight of the unary term in the objective
};

// Annotated pixel with label l: p_il = confidence, the rest share the
// remainder equally; unannotated pixels get the uniform row.
UnaryPrior build_unary(const LabelMap& annotation, int k, double confidence,
                       double theta = 1.0);

struct SegmentationOptions {
  int d = 0;  // working dimension; 0 selects k-1 (the simplex's own span)
  double alpha = 0.1;  // initial ascent step; halved whenever a step regresses
  double rel_tol = 1e-6;
  int max_iters = 200;
  int rounding_iters = 8;
  std::uint64_t seed = 0;
  int pixel_cap = 16384;
};

struct SegmentationResult {
  LabelMap labels;  // values in {1, ..., k}
  double relaxed_value = 0.0;
  double rounded_value = 0.0;  // objective of the emitted labeling
  int iterations_used = 0;
  bool converged = false;
};

// Maximizes sum_{i<j} K(f_i, f_j) v_i.v_j + theta sum_i sum_l log(p_il)
// v_i.r_l over unit vectors by simultaneous normalized ascent
// v_i <- normalize(v_i + alpha G_i), then rounds the best of a batch.
// Deterministic given the seed. When the color palette is small and the
// truncation radius covers the whole image, pairwise sums run as per-color
// separable Gaussian convolutions; otherwise a direct table-driven pair loop
// is used. Both evaluate the same dense kernel sums.
SegmentationResult segment(const PixelFeatures& features,
                           const UnaryPrior& prior, const KernelParams& params,
                           const SegmentationOptions& options);

// 50/50 blend of the image with a fixed per-label color table.
ImageRgb overlay_labels(const ImageRgb& image, const LabelMap& labels);

// Exposed for tests: dense pairwise sums G_i = sum_{j != i} K(f_i, f_j) v_j.
class PairwiseEngine {
 public:
  PairwiseEngine(const PixelFeatures& features, const KernelParams& params);
  ~PairwiseEngine();
  PairwiseEngine(const PairwiseEngine&) = delete;
  PairwiseEngine& operator=(const PairwiseEngine&) = delete;

  void apply(const Eigen::MatrixXd& v, Eigen::MatrixXd& g_out) const;
  bool fast_path() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pottsmix
