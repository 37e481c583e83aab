#include "pottsmix/segmentation.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "pottsmix/rng.hpp"
#include "pottsmix/rounding.hpp"

namespace pottsmix {

PixelFeatures build_features(const ImageRgb& image) {
  PixelFeatures f;
  f.width = image.width;
  f.height = image.height;
  const int n = image.size();
  f.pos.resize(2, n);
  f.color.resize(3, n);
  for (int y = 0; y < image.height; ++y)
    for (int x = 0; x < image.width; ++x) {
      const int i = y * image.width + x;
      f.pos(0, i) = x;
      f.pos(1, i) = y;
      for (int c = 0; c < 3; ++c) f.color(c, i) = image.pixels[i][c];
    }
  return f;
}

FeatureVec feature_vec(const PixelFeatures& features, int i) {
  FeatureVec v;
  v << features.pos(0, i), features.pos(1, i), features.color(0, i),
      features.color(1, i), features.color(2, i);
  return v;
}

double truncation_radius(const KernelParams& params) {
  return 6.0 * std::max(params.theta_alpha, params.theta_gamma);
}

double kernel(const FeatureVec& fi, const FeatureVec& fj,
              const KernelParams& params) {
  const double dp2 = (fi.head<2>() - fj.head<2>()).squaredNorm();
  const double radius = truncation_radius(params);
  if (dp2 > radius * radius) return 0.0;
  const double dc2 = (fi.tail<3>() - fj.tail<3>()).squaredNorm();
  const double app =
      std::exp(-dp2 / (2.0 * params.theta_alpha * params.theta_alpha) -
               dc2 / (2.0 * params.theta_beta * params.theta_beta));
  const double smooth =
      std::exp(-dp2 / (2.0 * params.theta_gamma * params.theta_gamma));
  return params.w_app * app + params.w_smooth * smooth;
}

UnaryPrior build_unary(const LabelMap& annotation, int k, double confidence,
                       double theta) {
  if (k < 2) throw std::invalid_argument("build_unary: k must be >= 2");
  if (!(confidence > 1.0 / k && confidence < 1.0))
    throw std::invalid_argument("build_unary: confidence must lie in (1/k, 1)");
  if (theta < 0.0)
    throw std::invalid_argument("build_unary: theta must be nonnegative");
  const int n = annotation.size();
  UnaryPrior prior;
  prior.theta = theta;
  prior.p.resize(n, k);
  const double rest = (1.0 - confidence) / (k - 1);
  for (int i = 0; i < n; ++i) {
    const int label = annotation.labels[i];
    if (label < 0 || label > k)
      throw std::invalid_argument("build_unary: annotation label out of range");
    if (label == 0) {
      prior.p.row(i).setConstant(1.0 / k);
    } else {
      prior.p.row(i).setConstant(rest);
      prior.p(i, label - 1) = confidence;
    }
  }
  return prior;
}

// ---------------------------------------------------------------------------
// Pairwise engine

struct PairwiseEngine::Impl {
  int width = 0;
  int height = 0;
  int n = 0;
  KernelParams params;
  PixelFeatures features;

  bool fast = false;
  // Fast path: palette index per pixel, palette-to-palette color affinity,
  // and per-axis Gaussian taps for both position bandwidths.
  std::vector<int> palette_of;
  Eigen::MatrixXd color_aff;  // palette x palette
  std::vector<double> taps_app;     // exp(-t^2/(2 ta^2)), t = 0..span
  std::vector<double> taps_smooth;  // exp(-t^2/(2 tg^2)), t = 0..span
  // Direct path: lookup tables over integer squared distances (only when the
  // features are integer-valued and the tables stay small).
  bool tables = false;
  std::vector<double> pos_app;     // by squared position distance
  std::vector<double> pos_smooth;  // by squared position distance
  int radius2 = 0;

  static constexpr int kMaxPalette = 40;
  static constexpr int kMaxTable = 1 << 22;

  Impl(const PixelFeatures& f, const KernelParams& p)
      : width(f.width), height(f.height), n(f.size()), params(p), features(f) {
    const double radius = truncation_radius(p);
    const double diag2 = static_cast<double>(width - 1) * (width - 1) +
                         static_cast<double>(height - 1) * (height - 1);

    // Palette detection on exact 0..255 colors.
    std::map<std::array<int, 3>, int> palette;
    palette_of.resize(n);
    bool integer_colors = true;
    for (int i = 0; i < n && integer_colors; ++i) {
      std::array<int, 3> c;
      for (int ch = 0; ch < 3; ++ch) {
        const double val = features.color(ch, i);
        c[ch] = static_cast<int>(val);
        if (val != c[ch] || val < 0 || val > 255) integer_colors = false;
      }
      if (!integer_colors) break;
      auto [it, inserted] = palette.emplace(c, static_cast<int>(palette.size()));
      palette_of[i] = it->second;
      if (palette.size() > kMaxPalette) break;
    }

    fast = integer_colors && palette.size() <= kMaxPalette &&
           radius * radius >= diag2 && n > 1;
    if (fast) {
      const int pc = static_cast<int>(palette.size());
      color_aff.resize(pc, pc);
      std::vector<std::array<int, 3>> colors(pc);
      for (const auto& [c, idx] : palette) colors[idx] = c;
      for (int a = 0; a < pc; ++a)
        for (int b = 0; b < pc; ++b) {
          double dc2 = 0.0;
          for (int ch = 0; ch < 3; ++ch) {
            const double dd = colors[a][ch] - colors[b][ch];
            dc2 += dd * dd;
          }
          color_aff(a, b) =
              std::exp(-dc2 / (2.0 * p.theta_beta * p.theta_beta));
        }
      const int span = std::max(width, height);
      taps_app.resize(span);
      taps_smooth.resize(span);
      for (int t = 0; t < span; ++t) {
        taps_app[t] = std::exp(-static_cast<double>(t) * t /
                               (2.0 * p.theta_alpha * p.theta_alpha));
        taps_smooth[t] = std::exp(-static_cast<double>(t) * t /
                                  (2.0 * p.theta_gamma * p.theta_gamma));
      }
    } else {
      bool integer_positions = true;
      for (int i = 0; i < n && integer_positions; ++i)
        for (int ch = 0; ch < 2; ++ch) {
          const double val = features.pos(ch, i);
          if (val != std::floor(val)) integer_positions = false;
        }
      const double bound = std::min(radius * radius, diag2);
      tables = integer_positions && bound < kMaxTable;
      if (tables) {
        // Integer-distance tables cover all achievable squared distances
        // inside the truncation radius.
        radius2 = static_cast<int>(bound);
        pos_app.resize(radius2 + 1);
        pos_smooth.resize(radius2 + 1);
        for (int t = 0; t <= radius2; ++t) {
          pos_app[t] = std::exp(-t / (2.0 * p.theta_alpha * p.theta_alpha));
          pos_smooth[t] = std::exp(-t / (2.0 * p.theta_gamma * p.theta_gamma));
        }
      }
    }
  }

  // Unnormalized separable Gaussian blur of a d x n pixel field, in place.
  void blur(Eigen::MatrixXd& field, const std::vector<double>& taps,
            Eigen::MatrixXd& scratch) const {
    const int d = static_cast<int>(field.rows());
    scratch.setZero(d, n);
    // Horizontal pass.
    for (int y = 0; y < height; ++y) {
      const int row = y * width;
      for (int x = 0; x < width; ++x) {
        const auto src = field.col(row + x);
        for (int t = -x; t < width - x; ++t)
          scratch.col(row + x + t) += taps[std::abs(t)] * src;
      }
    }
    // Vertical pass.
    field.setZero();
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const auto src = scratch.col(y * width + x);
        for (int t = -y; t < height - y; ++t)
          field.col((y + t) * width + x) += taps[std::abs(t)] * src;
      }
    }
  }

  void apply_fast(const Eigen::MatrixXd& v, Eigen::MatrixXd& g) const {
    const int d = static_cast<int>(v.rows());
    const int pc = static_cast<int>(color_aff.rows());
    g.setZero(d, n);
    Eigen::MatrixXd field(d, n), scratch(d, n);
    // Appearance: one blurred field per palette color, mixed through the
    // color affinity table.
    for (int c = 0; c < pc; ++c) {
      field.setZero(d, n);
      for (int i = 0; i < n; ++i)
        if (palette_of[i] == c) field.col(i) = v.col(i);
      blur(field, taps_app, scratch);
      for (int i = 0; i < n; ++i)
        g.col(i) += (params.w_app * color_aff(palette_of[i], c)) * field.col(i);
    }
    // Smoothness: a single blurred field, color-blind.
    field = v;
    blur(field, taps_smooth, scratch);
    g += params.w_smooth * field;
    // Both blurs included j = i at weight w_app + w_smooth; remove it.
    g -= (params.w_app + params.w_smooth) * v;
  }

  void apply_direct(const Eigen::MatrixXd& v, Eigen::MatrixXd& g) const {
    const int d = static_cast<int>(v.rows());
    g.setZero(d, n);
    if (tables) {
      for (int i = 0; i < n; ++i) {
        const int xi = static_cast<int>(features.pos(0, i));
        const int yi = static_cast<int>(features.pos(1, i));
        for (int j = i + 1; j < n; ++j) {
          const int dx = xi - static_cast<int>(features.pos(0, j));
          const int dy = yi - static_cast<int>(features.pos(1, j));
          const int dp2 = dx * dx + dy * dy;
          if (dp2 > radius2) continue;
          double dc2 = 0.0;
          for (int ch = 0; ch < 3; ++ch) {
            const double dd = features.color(ch, i) - features.color(ch, j);
            dc2 += dd * dd;
          }
          const double w =
              params.w_app * pos_app[dp2] *
                  std::exp(-dc2 /
                           (2.0 * params.theta_beta * params.theta_beta)) +
              params.w_smooth * pos_smooth[dp2];
          g.col(i) += w * v.col(j);
          g.col(j) += w * v.col(i);
        }
      }
      return;
    }
    // Fully generic fallback for non-integer features.
    for (int i = 0; i < n; ++i) {
      const FeatureVec fi = feature_vec(features, i);
      for (int j = i + 1; j < n; ++j) {
        const double w = kernel(fi, feature_vec(features, j), params);
        if (w == 0.0) continue;
        g.col(i) += w * v.col(j);
        g.col(j) += w * v.col(i);
      }
    }
  }
};

PairwiseEngine::PairwiseEngine(const PixelFeatures& features,
                               const KernelParams& params)
    : impl_(std::make_unique<Impl>(features, params)) {}

PairwiseEngine::~PairwiseEngine() = default;

bool PairwiseEngine::fast_path() const { return impl_->fast; }

void PairwiseEngine::apply(const Eigen::MatrixXd& v,
                           Eigen::MatrixXd& g_out) const {
  if (v.cols() != impl_->n)
    throw std::invalid_argument("pairwise apply: wrong pixel count");
  if (impl_->fast)
    impl_->apply_fast(v, g_out);
  else
    impl_->apply_direct(v, g_out);
}

// ---------------------------------------------------------------------------
// Optimizer

namespace {

double seg_objective(const Eigen::MatrixXd& v, const Eigen::MatrixXd& g_pair,
                     const Eigen::MatrixXd& unary, double theta) {
  return 0.5 * (v.cwiseProduct(g_pair)).sum() +
         theta * (v.cwiseProduct(unary)).sum();
}

}  // namespace

SegmentationResult segment(const PixelFeatures& features,
                           const UnaryPrior& prior, const KernelParams& params,
                           const SegmentationOptions& options) {
  const int n = features.size();
  const int k = static_cast<int>(prior.p.cols());
  if (prior.p.rows() != n)
    throw std::invalid_argument("segment: prior size mismatch");
  if (n > options.pixel_cap)
    throw std::invalid_argument(
        "segment: pixel count exceeds the cap; crop the image or raise the "
        "cap");
  if (!(options.alpha > 0.0))
    throw std::invalid_argument("segment: alpha must be positive");
  if ((prior.p.array() <= 0.0).any())
    throw std::invalid_argument("segment: prior must be strictly positive");

  const int d = options.d > 0 ? options.d : std::max(1, k - 1);
  const SimplexFrame frame = simplex_frame(k, d);
  // theta * sum_l log(p_il) r_l per pixel.
  const Eigen::MatrixXd unary =
      frame.r * prior.p.array().log().matrix().transpose();

  RandomStream rng(options.seed);
  Eigen::MatrixXd v(d, n);
  for (int i = 0; i < n; ++i) v.col(i) = rng.unit_vector(d);

  const PairwiseEngine engine(features, params);
  Eigen::MatrixXd g_pair(d, n), g_cand(d, n);
  engine.apply(v, g_pair);
  double obj = seg_objective(v, g_pair, unary, prior.theta);

  double alpha = options.alpha;
  int iters = 0;
  bool converged = false;
  Eigen::MatrixXd cand(d, n);
  for (int iter = 1; iter <= options.max_iters; ++iter) {
    iters = iter;
    cand = v + alpha * (g_pair + prior.theta * unary);
    for (int i = 0; i < n; ++i) {
      const double norm = cand.col(i).norm();
      if (norm > 0.0)
        cand.col(i) /= norm;
      else
        cand.col(i) = v.col(i);
    }
    engine.apply(cand, g_cand);
    const double obj_cand = seg_objective(cand, g_cand, unary, prior.theta);
    if (obj_cand >= obj) {
      const double delta = obj_cand - obj;
      v.swap(cand);
      g_pair.swap(g_cand);
      obj = obj_cand;
      if (delta / std::max(1.0, std::abs(obj)) < options.rel_tol) {
        converged = true;
        break;
      }
    } else {
      alpha *= 0.5;
      if (alpha < 1e-12) break;
    }
  }

  // Round the best of a batch, scoring candidates by the same objective at
  // the embedded label vectors (which is the discrete criterion value).
  SegmentationResult out;
  Config best;
  double best_score = 0.0;
  const int batch = std::max(1, options.rounding_iters);
  for (int t = 0; t < batch; ++t) {
    RandomStream rround(derive_seed(options.seed, kStreamRounding, t));
    const Config x = round_once(v, frame, rround);
    const Eigen::MatrixXd embedded = embed_config(frame, x);
    engine.apply(embedded, g_cand);
    const double score = seg_objective(embedded, g_cand, unary, prior.theta);
    if (t == 0 || score > best_score) {
      best_score = score;
      best = x;
    }
  }

  out.labels.width = features.width;
  out.labels.height = features.height;
  out.labels.labels.resize(n);
  for (int i = 0; i < n; ++i)
    out.labels.labels[i] = static_cast<std::uint8_t>(best[i]);
  out.relaxed_value = obj;
  out.rounded_value = best_score;
  out.iterations_used = iters;
  out.converged = converged;
  return out;
}

ImageRgb overlay_labels(const ImageRgb& image, const LabelMap& labels) {
  if (image.width != labels.width || image.height != labels.height)
    throw std::invalid_argument("overlay: size mismatch");
  static constexpr std::array<std::array<std::uint8_t, 3>, 8> kColors = {{
      {220, 50, 47},
      {133, 153, 0},
      {38, 139, 210},
      {181, 137, 0},
      {211, 54, 130},
      {42, 161, 152},
      {203, 75, 22},
      {108, 113, 196},
  }};
  ImageRgb out = image;
  for (int i = 0; i < image.size(); ++i) {
    const auto& c = kColors[(labels.labels[i] - 1) % kColors.size()];
    for (int ch = 0; ch < 3; ++ch)
      out.pixels[i][ch] =
          static_cast<std::uint8_t>((image.pixels[i][ch] + c[ch]) / 2);
  }
  return out;
}

}  // namespace pottsmix
