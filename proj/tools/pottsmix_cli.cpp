// Command-line front end: instance generation, mode estimation, partition
// function estimation, baselines, the exact oracle, mass diagnostics, image
// segmentation, and benchmark presets emitting machine-readable results.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pottsmix/ais.hpp"
#include "pottsmix/exact.hpp"
#include "pottsmix/generator.hpp"
#include "pottsmix/image_io.hpp"
#include "pottsmix/instance_io.hpp"
#include "pottsmix/partition.hpp"
#include "pottsmix/rounding.hpp"
#include "pottsmix/segmentation.hpp"
#include "pottsmix/solver.hpp"
#include "pottsmix/solver_plus.hpp"

namespace pm = pottsmix;
using nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void emit(const ordered_json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    pm::atomic_write_file(out_path, text);
}

using Config = pm::Config;

ordered_json config_json(const Config& x) {
  return ordered_json(x);
}

std::string config_string(const Config& x, int k) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (k > 9 && i > 0) s += '-';
    s += std::to_string(x[i]);
  }
  return s;
}

pm::GenSpec parse_graph(pm::GenSpec spec, const std::string& graph) {
  if (graph == "complete") {
    spec.graph = pm::GraphKind::Complete;
  } else if (graph.rfind("er:", 0) == 0) {
    spec.graph = pm::GraphKind::ErdosRenyi;
    spec.edge_prob = std::stod(graph.substr(3));
  } else {
    throw CLI::ValidationError("--graph", "expected 'complete' or 'er:<p>'");
  }
  return spec;
}

// Relative mode error (f* - f_hat)/|f*|; falls back to the absolute gap when
// the optimum is zero.
double relative_error(double f_star, double f_hat) {
  const double denom = std::abs(f_star);
  return denom > 0.0 ? (f_star - f_hat) / denom : f_star - f_hat;
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double var = 0.0;
    for (double x : xs) var += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(var / static_cast<double>(xs.size() - 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// mode

struct ModeArgs {
  std::string method = "m4";
  std::string instance;
  std::string out;
  int rounding_iters = 1000;
  int max_iters = 300;
  double rel_tol = 1e-8;
  std::uint64_t seed = 0;
  int d = 0;
  int m = 0;
  int K = 3;
  int cycles = 1;
  int samples = 100;
  bool exact = false;
  bool dump_solution = false;
};

ordered_json solution_json(int d, double objective, int iterations,
                           bool converged, const Eigen::MatrixXd& v) {
  ordered_json j;
  j["d"] = d;
  j["objective"] = objective;
  j["iterations"] = iterations;
  j["converged"] = converged;
  ordered_json cols = ordered_json::array();
  for (int i = 0; i < v.cols(); ++i) {
    ordered_json col = ordered_json::array();
    for (int r = 0; r < v.rows(); ++r) col.push_back(v(r, i));
    cols.push_back(std::move(col));
  }
  j["v"] = std::move(cols);
  return j;
}

int run_mode(const ModeArgs& args) {
  const pm::MrfInstance inst = pm::load_instance(args.instance);
  ordered_json j;
  j["task"] = "mode";
  j["method"] = args.method;
  ordered_json cfg;
  cfg["instance"] = args.instance;
  cfg["seed"] = args.seed;

  Config best;
  double best_value = 0.0;
  double wall = 0.0;

  if (args.method == "m4" || args.method == "m4plus") {
    pm::SolverConfig scfg;
    scfg.max_iters = args.max_iters;
    scfg.rel_tol = args.rel_tol;
    scfg.seed = args.seed;
    if (args.d > 0) scfg.d_override = args.d;
    cfg["rounding_iters"] = args.rounding_iters;
    cfg["max_iters"] = args.max_iters;
    cfg["rel_tol"] = args.rel_tol;

    const auto t0 = Clock::now();
    Eigen::MatrixXd v;
    pm::SimplexFrame frame;
    if (args.method == "m4") {
      pm::M4Result res = pm::solve_m4(inst, scfg);
      v = std::move(res.solution.v);
      frame = std::move(res.frame);
      j["relaxed_objective"] = res.solution.objective_value;
      j["solver"] = {{"d", res.solution.d},
                     {"iterations", res.solution.iterations_used},
                     {"converged", res.solution.converged}};
      if (args.dump_solution)
        j["solution"] =
            solution_json(res.solution.d, res.solution.objective_value,
                          res.solution.iterations_used,
                          res.solution.converged, v);
    } else {
      cfg["m"] = args.m;
      pm::M4PlusResult res = pm::solve_m4_plus(inst, scfg, args.m);
      v = std::move(res.solution.v);
      frame = res.projector.frame();
      j["relaxed_objective"] = res.solution.objective_value;
      j["solver"] = {{"d", res.solution.d},
                     {"m", res.solution.m},
                     {"iterations", res.solution.iterations_used},
                     {"converged", res.solution.converged}};
      if (args.dump_solution) {
        j["solution"] =
            solution_json(res.solution.d, res.solution.objective_value,
                          res.solution.iterations_used,
                          res.solution.converged, v);
        ordered_json zc = ordered_json::array();
        for (int i = 0; i < res.solution.z.cols(); ++i) {
          ordered_json col = ordered_json::array();
          for (int r = 0; r < res.solution.z.rows(); ++r)
            col.push_back(res.solution.z(r, i));
          zc.push_back(std::move(col));
        }
        j["solution"]["z"] = std::move(zc);
      }
    }
    const pm::RoundingBatch batch =
        pm::round_batch(inst, v, frame, args.rounding_iters, args.seed);
    wall = seconds_since(t0);
    best = batch.best;
    best_value = batch.best_value;
    j["unique_samples"] = batch.unique_set.size();
  } else if (args.method == "ais") {
    pm::AisConfig acfg;
    acfg.K = args.K;
    acfg.num_cycles = args.cycles;
    acfg.num_samples = args.samples;
    acfg.seed = args.seed;
    cfg["K"] = args.K;
    cfg["cycles"] = args.cycles;
    cfg["samples"] = args.samples;
    const pm::AisResult res = pm::ais_estimate(inst, acfg);
    best = res.best_config;
    best_value = res.best_value;
    wall = res.wall_time_sec;
    j["log_z_hat"] = res.log_z_hat;
  } else {
    throw CLI::ValidationError("--method", "expected m4, m4plus, or ais");
  }

  j["config"] = std::move(cfg);
  j["best_value"] = best_value;
  j["best_config"] = config_json(best);
  if (args.exact) {
    const pm::ExactSummary ex = pm::enumerate_exact(inst);
    j["exact_mode_value"] = ex.mode_value;
    j["exact_mode_config"] = config_json(ex.mode_config);
    j["relative_error"] = relative_error(ex.mode_value, best_value);
  }
  j["wall_time_sec"] = wall;
  emit(j, args.out);
  return 0;
}

// ---------------------------------------------------------------------------
// partition

struct PartitionArgs {
  std::string instance;
  std::string out;
  std::string method = "m4";
  int rounding_iters = 1000;
  int max_iters = 300;
  double rel_tol = 1e-8;
  std::uint64_t seed = 0;
  bool exact = false;
};

int run_partition(const PartitionArgs& args) {
  const pm::MrfInstance inst = pm::load_instance(args.instance);
  pm::SolverConfig scfg;
  scfg.max_iters = args.max_iters;
  scfg.rel_tol = args.rel_tol;
  scfg.seed = args.seed;

  const auto t0 = Clock::now();
  Eigen::MatrixXd v;
  pm::SimplexFrame frame;
  if (args.method == "m4") {
    pm::M4Result res = pm::solve_m4(inst, scfg);
    v = std::move(res.solution.v);
    frame = std::move(res.frame);
  } else if (args.method == "m4plus") {
    pm::M4PlusResult res = pm::solve_m4_plus(inst, scfg);
    v = std::move(res.solution.v);
    frame = res.projector.frame();
  } else {
    throw CLI::ValidationError("--method", "expected m4 or m4plus");
  }

  const pm::PartitionEstimate est = pm::estimate_z(
      inst, v, frame, static_cast<std::uint64_t>(args.rounding_iters),
      args.seed);
  const double wall = seconds_since(t0);

  ordered_json j;
  j["task"] = "partition";
  j["log_z_hat"] = est.log_z_hat;
  j["cluster_size"] = est.cluster_size;
  j["R"] = est.R;
  j["full_support"] = est.full_support;
  j["cluster_log_mass"] = est.cluster_log_mass;
  if (args.exact) {
    const pm::ExactSummary ex = pm::enumerate_exact(inst);
    j["exact_log_z"] = ex.log_z;
    j["abs_log_error"] = std::abs(ex.log_z - est.log_z_hat);
  }
  j["config"] = {{"instance", args.instance}, {"method", args.method},
                 {"rounding_iters", args.rounding_iters}, {"seed", args.seed}};
  j["wall_time_sec"] = wall;
  emit(j, args.out);
  return 0;
}

// ---------------------------------------------------------------------------
// ais

struct AisArgs {
  std::string instance;
  std::string out;
  std::string trace;
  int K = 25;
  int cycles = 1;
  int samples = 100;
  std::uint64_t seed = 0;
  bool exact = false;
};

int run_ais(const AisArgs& args) {
  const pm::MrfInstance inst = pm::load_instance(args.instance);
  pm::AisConfig cfg;
  cfg.K = args.K;
  cfg.num_cycles = args.cycles;
  cfg.num_samples = args.samples;
  cfg.seed = args.seed;
  const pm::AisResult res = pm::ais_estimate(inst, cfg);

  ordered_json j;
  j["task"] = "ais";
  j["log_z_hat"] = res.log_z_hat;
  j["best_value"] = res.best_value;
  j["best_config"] = config_json(res.best_config);
  if (args.exact) {
    const pm::ExactSummary ex = pm::enumerate_exact(inst);
    j["exact_log_z"] = ex.log_z;
    j["abs_log_error"] = std::abs(ex.log_z - res.log_z_hat);
  }
  j["config"] = {{"instance", args.instance}, {"K", args.K},
                 {"cycles", args.cycles}, {"samples", args.samples},
                 {"seed", args.seed}};
  j["wall_time_sec"] = res.wall_time_sec;
  emit(j, args.out);

  if (!args.trace.empty()) {
    std::ostringstream csv;
    csv << "time_sec,best_f,log_z_partial\n";
    for (const auto& cp : res.checkpoints)
      csv << cp.t_sec << "," << cp.best_f << "," << cp.log_z_partial << "\n";
    pm::atomic_write_file(args.trace, csv.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// exact / mass

struct ExactArgs {
  std::string instance;
  std::string out;
  std::string full_table;
  std::uint64_t cap = pm::kDefaultEnumCap;
};

int run_exact(const ExactArgs& args) {
  const pm::MrfInstance inst = pm::load_instance(args.instance);
  const pm::ExactSummary ex = pm::enumerate_exact(inst, args.cap);
  ordered_json j;
  j["task"] = "exact";
  j["log_z"] = ex.log_z;
  j["mode_config"] = config_json(ex.mode_config);
  j["mode_value"] = ex.mode_value;
  j["config"] = {{"instance", args.instance}, {"cap", args.cap}};
  emit(j, args.out);

  if (!args.full_table.empty()) {
    std::ostringstream csv;
    csv << "config,f\n";
    pm::enumerate_table(inst, args.cap,
                        [&](const Config& x, double f) {
                          csv << config_string(x, inst.k) << "," << f << "\n";
                        });
    pm::atomic_write_file(args.full_table, csv.str());
  }
  return 0;
}

struct MassArgs {
  std::string instance;
  std::string out;
  std::string method = "m4";
  int rounding_iters = 1000;
  int buckets = 20;
  std::uint64_t seed = 0;
};

int run_mass(const MassArgs& args) {
  const pm::MrfInstance inst = pm::load_instance(args.instance);
  pm::SolverConfig scfg;
  scfg.seed = args.seed;

  Eigen::MatrixXd v;
  pm::SimplexFrame frame;
  if (args.method == "m4") {
    pm::M4Result res = pm::solve_m4(inst, scfg);
    v = std::move(res.solution.v);
    frame = std::move(res.frame);
  } else if (args.method == "m4plus") {
    pm::M4PlusResult res = pm::solve_m4_plus(inst, scfg);
    v = std::move(res.solution.v);
    frame = res.projector.frame();
  } else {
    throw CLI::ValidationError("--method", "expected m4 or m4plus");
  }
  const pm::RoundingBatch batch =
      pm::round_batch(inst, v, frame, args.rounding_iters, args.seed);
  const double coverage = pm::mass_covered(inst, batch.unique_set);
  const std::vector<pm::MassBucket> buckets =
      pm::mass_buckets(inst, args.buckets);

  ordered_json j;
  j["task"] = "mass";
  j["coverage"] = coverage;
  j["unique_samples"] = batch.unique_set.size();
  ordered_json rows = ordered_json::array();
  for (const auto& b : buckets)
    rows.push_back({{"f_lo", b.f_lo}, {"f_hi", b.f_hi}, {"mass", b.mass}});
  j["buckets"] = std::move(rows);
  j["config"] = {{"instance", args.instance}, {"method", args.method},
                 {"rounding_iters", args.rounding_iters},
                 {"buckets", args.buckets}, {"seed", args.seed}};
  emit(j, args.out);
  return 0;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  int n = 10;
  int k = 2;
  std::string graph = "complete";
  double cs = 1.0;
  int seeds = 1;
  std::uint64_t seed0 = 0;
  std::string out;
};

int run_gen(const GenArgs& args) {
  std::filesystem::create_directories(args.out);
  pm::GenSpec base;
  base.n = args.n;
  base.k = args.k;
  base.target_cs = args.cs;
  base = parse_graph(base, args.graph);
  ordered_json files = ordered_json::array();
  for (int s = 0; s < args.seeds; ++s) {
    pm::GenSpec spec = base;
    spec.seed = args.seed0 + static_cast<std::uint64_t>(s);
    const pm::MrfInstance inst = pm::generate(spec);
    const std::string path =
        args.out + "/instance_" + std::to_string(spec.seed) + ".json";
    pm::save_instance(inst, path);
    files.push_back(path);
  }
  ordered_json j;
  j["task"] = "gen";
  j["written"] = files.size();
  j["files"] = std::move(files);
  emit(j, "");
  return 0;
}

// ---------------------------------------------------------------------------
// segment

struct SegmentArgs {
  std::string image;
  std::string annotation;
  std::string out;
  std::string overlay;
  std::string json;
  int k = 0;
  double confidence = 0.95;
  double theta = 1.0;
  pm::KernelParams kernel;
  int d = 0;
  double alpha = 0.1;
  int max_iters = 200;
  int rounding_iters = 8;
  std::uint64_t seed = 0;
  int pixel_cap = 16384;
};

int run_segment(const SegmentArgs& args) {
  const pm::ImageRgb image = pm::load_ppm(args.image);
  const pm::LabelMap annotation = pm::load_pgm(args.annotation);
  if (annotation.width != image.width || annotation.height != image.height)
    throw std::runtime_error("segment: annotation size differs from image");
  int k = args.k;
  if (k == 0) {
    for (std::uint8_t l : annotation.labels) k = std::max(k, static_cast<int>(l));
    if (k < 2)
      throw std::runtime_error(
          "segment: annotation uses fewer than 2 labels; pass --k");
  }

  const pm::PixelFeatures features = pm::build_features(image);
  const pm::UnaryPrior prior =
      pm::build_unary(annotation, k, args.confidence, args.theta);
  pm::SegmentationOptions opts;
  opts.d = args.d;
  opts.alpha = args.alpha;
  opts.max_iters = args.max_iters;
  opts.rounding_iters = args.rounding_iters;
  opts.seed = args.seed;
  opts.pixel_cap = args.pixel_cap;

  const auto t0 = Clock::now();
  const pm::SegmentationResult res =
      pm::segment(features, prior, args.kernel, opts);
  const double wall = seconds_since(t0);
  pm::save_pgm(res.labels, args.out);
  if (!args.overlay.empty())
    pm::save_ppm(pm::overlay_labels(image, res.labels), args.overlay);

  int annotated = 0, agree = 0;
  for (int i = 0; i < annotation.size(); ++i) {
    if (annotation.labels[i] == 0) continue;
    ++annotated;
    if (annotation.labels[i] == res.labels.labels[i]) ++agree;
  }

  ordered_json j;
  j["task"] = "segment";
  j["labels"] = args.out;
  j["relaxed_value"] = res.relaxed_value;
  j["rounded_value"] = res.rounded_value;
  j["iterations"] = res.iterations_used;
  j["converged"] = res.converged;
  j["annotated_pixels"] = annotated;
  j["annotation_agreement"] =
      annotated > 0 ? static_cast<double>(agree) / annotated : 1.0;
  j["config"] = {{"image", args.image},
                 {"annotation", args.annotation},
                 {"k", k},
                 {"confidence", args.confidence},
                 {"theta", args.theta},
                 {"w_app", args.kernel.w_app},
                 {"theta_alpha", args.kernel.theta_alpha},
                 {"theta_beta", args.kernel.theta_beta},
                 {"w_smooth", args.kernel.w_smooth},
                 {"theta_gamma", args.kernel.theta_gamma},
                 {"d", opts.d},
                 {"alpha", opts.alpha},
                 {"max_iters", opts.max_iters},
                 {"rounding_iters", opts.rounding_iters},
                 {"seed", opts.seed}};
  j["wall_time_sec"] = wall;
  emit(j, args.json);
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string preset;
  std::string out;
  int seeds = 0;  // 0 -> preset default
};

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ostringstream csv;
  csv << header << "\n";
  for (const auto& r : rows) csv << r << "\n";
  pm::atomic_write_file(path, csv.str());
}

pm::MrfInstance bench_instance(int n, int k, double c, std::uint64_t seed) {
  pm::GenSpec spec;
  spec.n = n;
  spec.k = k;
  spec.graph = pm::GraphKind::Complete;
  spec.target_cs = c;
  spec.seed = seed;
  return pm::generate(spec);
}

int run_bench_fig3a(const std::string& dir, int seeds) {
  const std::vector<double> cs = {0.5, 1.0, 1.5, 2.0, 2.5};
  std::vector<std::string> rows;
  for (double c : cs) {
    std::vector<double> errs_m4, errs_m4p, times_m4, times_m4p;
    for (int s = 0; s < seeds; ++s) {
      const pm::MrfInstance inst = bench_instance(7, 5, c, s);
      const pm::ExactSummary ex = pm::enumerate_exact(inst);
      pm::SolverConfig scfg;
      scfg.seed = s;

      for (const std::string method : {"m4", "m4plus"}) {
        const auto t0 = Clock::now();
        Eigen::MatrixXd v;
        pm::SimplexFrame frame;
        if (method == "m4") {
          pm::M4Result res = pm::solve_m4(inst, scfg);
          v = std::move(res.solution.v);
          frame = std::move(res.frame);
        } else {
          pm::M4PlusResult res = pm::solve_m4_plus(inst, scfg);
          v = std::move(res.solution.v);
          frame = res.projector.frame();
        }
        const pm::RoundingBatch batch =
            pm::round_batch(inst, v, frame, 1000, s);
        const double wall = seconds_since(t0);
        const double err = relative_error(ex.mode_value, batch.best_value);
        (method == "m4" ? errs_m4 : errs_m4p).push_back(err);
        (method == "m4" ? times_m4 : times_m4p).push_back(wall);

        ordered_json j;
        j["coupling_strength"] = c;
        j["seed"] = s;
        j["method"] = method;
        j["best_value"] = batch.best_value;
        j["exact_mode_value"] = ex.mode_value;
        j["relative_error"] = err;
        j["wall_time_sec"] = wall;
        std::ostringstream name;
        name << dir << "/c" << c << "_s" << s << "_" << method << ".json";
        pm::atomic_write_file(name.str(), j.dump(2) + "\n");
      }
    }
    const MeanStd m4 = mean_std(errs_m4), m4t = mean_std(times_m4);
    const MeanStd m4p = mean_std(errs_m4p), m4pt = mean_std(times_m4p);
    std::ostringstream r1, r2;
    r1 << c << ",m4," << m4.mean << "," << m4.std << "," << m4t.mean;
    r2 << c << ",m4plus," << m4p.mean << "," << m4p.std << "," << m4pt.mean;
    rows.push_back(r1.str());
    rows.push_back(r2.str());
  }
  write_csv(dir + "/fig3a.csv",
            "coupling_strength,method,mean_metric,std,mean_wall_time", rows);
  return 0;
}

// Per-instance race: wall time until the best rounded configuration reaches
// relative error <= 0.02, for the solve+rounding pipeline vs AIS.
int run_bench_fig3b(const std::string& dir, int seeds) {
  int wins = 0, m4_reached = 0, ais_reached = 0;
  std::vector<double> t_m4s, t_aiss;
  std::vector<std::string> rows;
  for (int s = 0; s < seeds; ++s) {
    const pm::MrfInstance inst = bench_instance(7, 5, 2.5, s);
    const pm::ExactSummary ex = pm::enumerate_exact(inst);
    const double threshold =
        ex.mode_value - 0.02 * std::abs(ex.mode_value);

    pm::SolverConfig scfg;
    scfg.seed = s;
    const auto t0 = Clock::now();
    const pm::M4Result res = pm::solve_m4(inst, scfg);
    double t_m4 = std::numeric_limits<double>::infinity();
    double best = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < 1000; ++t) {
      pm::RandomStream rng(pm::derive_seed(s, pm::kStreamRounding, t));
      const Config x = pm::round_once(res.solution.v, res.frame, rng);
      const double f = pm::objective(inst, x);
      if (f > best) {
        best = f;
        if (best >= threshold) {
          t_m4 = seconds_since(t0);
          break;
        }
      }
    }

    pm::AisConfig acfg;
    acfg.K = 3;
    acfg.num_cycles = 1;
    acfg.num_samples = 100;
    acfg.seed = s;
    const pm::AisResult ares = pm::ais_estimate(inst, acfg);
    double t_ais = std::numeric_limits<double>::infinity();
    for (const auto& [t, f] : ares.improvements)
      if (f >= threshold) {
        t_ais = t;
        break;
      }

    if (std::isfinite(t_m4)) {
      ++m4_reached;
      t_m4s.push_back(t_m4);
    }
    if (std::isfinite(t_ais)) {
      ++ais_reached;
      t_aiss.push_back(t_ais);
    }
    if (t_m4 < t_ais) ++wins;

    ordered_json j;
    j["seed"] = s;
    j["threshold"] = threshold;
    j["t_m4_sec"] = std::isfinite(t_m4) ? ordered_json(t_m4) : ordered_json();
    j["t_ais_sec"] =
        std::isfinite(t_ais) ? ordered_json(t_ais) : ordered_json();
    pm::atomic_write_file(dir + "/race_s" + std::to_string(s) + ".json",
                          j.dump(2) + "\n");
  }
  const MeanStd m4 = mean_std(t_m4s), ais = mean_std(t_aiss);
  rows.push_back("2.5,m4_pipeline," + std::to_string(m4.mean) + "," +
                 std::to_string(m4.std) + "," + std::to_string(m4.mean));
  rows.push_back("2.5,ais," + std::to_string(ais.mean) + "," +
                 std::to_string(ais.std) + "," + std::to_string(ais.mean));
  write_csv(dir + "/fig3b.csv",
            "coupling_strength,method,mean_metric,std,mean_wall_time", rows);
  ordered_json j;
  j["wins_m4"] = wins;
  j["seeds"] = seeds;
  j["m4_reached"] = m4_reached;
  j["ais_reached"] = ais_reached;
  pm::atomic_write_file(dir + "/fig3b_summary.json", j.dump(2) + "\n");
  return 0;
}

int run_bench_fig3c(const std::string& dir, int /*seeds*/) {
  const pm::MrfInstance inst = bench_instance(7, 5, 2.5, 0);
  pm::SolverConfig scfg;
  const pm::M4Result res = pm::solve_m4(inst, scfg);
  const pm::RoundingBatch batch =
      pm::round_batch(inst, res.solution.v, res.frame, 1000, 0);
  const double coverage = pm::mass_covered(inst, batch.unique_set);
  const std::vector<pm::MassBucket> buckets = pm::mass_buckets(inst, 20);
  std::vector<std::string> rows;
  for (const auto& b : buckets) {
    std::ostringstream r;
    r << b.f_lo << "," << b.f_hi << "," << b.mass;
    rows.push_back(r.str());
  }
  write_csv(dir + "/fig3c.csv", "f_lo,f_hi,mass", rows);
  ordered_json j;
  j["coverage"] = coverage;
  j["unique_samples"] = batch.unique_set.size();
  pm::atomic_write_file(dir + "/fig3c_summary.json", j.dump(2) + "\n");
  return 0;
}

int run_bench_fig4(const std::string& dir, int seeds) {
  const std::vector<std::uint64_t> r_values = {10, 100, 1000};
  std::vector<std::string> rows;
  std::vector<double> ais_errs, ais_times;
  std::vector<std::vector<double>> est_errs(r_values.size()),
      est_times(r_values.size());
  for (int s = 0; s < seeds; ++s) {
    const pm::MrfInstance inst = bench_instance(10, 2, 2.5, s);
    const pm::ExactSummary ex = pm::enumerate_exact(inst);
    pm::SolverConfig scfg;
    scfg.seed = s;
    const pm::M4Result res = pm::solve_m4(inst, scfg);
    for (std::size_t ri = 0; ri < r_values.size(); ++ri) {
      const auto t0 = Clock::now();
      const pm::PartitionEstimate est =
          pm::estimate_z(inst, res.solution.v, res.frame, r_values[ri], s);
      est_times[ri].push_back(seconds_since(t0));
      est_errs[ri].push_back(std::abs(est.log_z_hat - ex.log_z));
    }
    pm::AisConfig acfg;
    acfg.K = 25;
    acfg.num_cycles = 1;
    acfg.num_samples = 100;
    acfg.seed = s;
    const pm::AisResult ares = pm::ais_estimate(inst, acfg);
    ais_errs.push_back(std::abs(ares.log_z_hat - ex.log_z));
    ais_times.push_back(ares.wall_time_sec);
  }
  for (std::size_t ri = 0; ri < r_values.size(); ++ri) {
    const MeanStd e = mean_std(est_errs[ri]), t = mean_std(est_times[ri]);
    std::ostringstream r;
    r << r_values[ri] << ",estimate," << e.mean << "," << e.std << ","
      << t.mean;
    rows.push_back(r.str());
  }
  const MeanStd ae = mean_std(ais_errs), at = mean_std(ais_times);
  std::ostringstream r;
  r << "-,ais_k25," << ae.mean << "," << ae.std << "," << at.mean;
  rows.push_back(r.str());
  write_csv(dir + "/fig4.csv", "R,method,mean_metric,std,mean_wall_time",
            rows);
  return 0;
}

int run_bench(const BenchArgs& args) {
  std::filesystem::create_directories(args.out);
  if (args.preset == "fig3a")
    return run_bench_fig3a(args.out, args.seeds > 0 ? args.seeds : 100);
  if (args.preset == "fig3b")
    return run_bench_fig3b(args.out, args.seeds > 0 ? args.seeds : 100);
  if (args.preset == "fig3c") return run_bench_fig3c(args.out, 1);
  if (args.preset == "fig4")
    return run_bench_fig4(args.out, args.seeds > 0 ? args.seeds : 20);
  throw CLI::ValidationError("--preset",
                             "expected fig3a, fig3b, fig3c, or fig4");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate inference toolkit for pairwise k-class MRFs"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* cgen = app.add_subcommand("gen", "Generate benchmark instances");
  cgen->add_option("--n", gen.n, "Variable count")->required();
  cgen->add_option("--k", gen.k, "Class count")->required();
  cgen->add_option("--graph", gen.graph, "complete or er:<p>");
  cgen->add_option("--cs", gen.cs, "Target coupling strength");
  cgen->add_option("--seeds", gen.seeds, "Number of instances");
  cgen->add_option("--seed0", gen.seed0, "First seed");
  cgen->add_option("--out", gen.out, "Output directory")->required();

  ModeArgs mode;
  auto* cmode = app.add_subcommand("mode", "Mode (MAP) estimation");
  cmode->add_option("--method", mode.method, "m4, m4plus, or ais");
  cmode->add_option("--instance", mode.instance, "Instance file")->required();
  cmode->add_option("--rounding-iters", mode.rounding_iters, "Roundings");
  cmode->add_option("--max-iters", mode.max_iters, "Solver sweep cap");
  cmode->add_option("--rel-tol", mode.rel_tol, "Solver tolerance");
  cmode->add_option("--seed", mode.seed, "Seed");
  cmode->add_option("--d", mode.d, "Working dimension override");
  cmode->add_option("--m", mode.m, "Block size (m4plus)");
  cmode->add_option("--K", mode.K, "AIS temperatures");
  cmode->add_option("--cycles", mode.cycles, "AIS Gibbs cycles");
  cmode->add_option("--samples", mode.samples, "AIS chains");
  cmode->add_flag("--exact", mode.exact, "Compare against the exact oracle");
  cmode->add_flag("--dump-solution", mode.dump_solution,
                  "Embed the solution vectors");
  cmode->add_option("--out", mode.out, "Output JSON (stdout if omitted)");

  PartitionArgs part;
  auto* cpart = app.add_subcommand("partition", "Partition function estimate");
  cpart->add_option("--instance", part.instance, "Instance file")->required();
  cpart->add_option("--method", part.method, "m4 or m4plus");
  cpart->add_option("--rounding-iters", part.rounding_iters,
                    "R (both phases)");
  cpart->add_option("--max-iters", part.max_iters, "Solver sweep cap");
  cpart->add_option("--rel-tol", part.rel_tol, "Solver tolerance");
  cpart->add_option("--seed", part.seed, "Seed");
  cpart->add_flag("--exact", part.exact, "Compare against the exact oracle");
  cpart->add_option("--out", part.out, "Output JSON (stdout if omitted)");

  AisArgs ais;
  auto* cais = app.add_subcommand("ais", "Annealed importance sampling");
  cais->add_option("--instance", ais.instance, "Instance file")->required();
  cais->add_option("--K", ais.K, "Temperature count");
  cais->add_option("--cycles", ais.cycles, "Gibbs cycles per temperature");
  cais->add_option("--samples", ais.samples, "Chains");
  cais->add_option("--seed", ais.seed, "Seed");
  cais->add_flag("--exact", ais.exact, "Compare against the exact oracle");
  cais->add_option("--trace", ais.trace, "Per-chain checkpoint CSV");
  cais->add_option("--out", ais.out, "Output JSON (stdout if omitted)");

  ExactArgs exact;
  auto* cexact = app.add_subcommand("exact", "Brute-force oracle");
  cexact->add_option("--instance", exact.instance, "Instance file")
      ->required();
  cexact->add_option("--cap", exact.cap, "Configuration cap");
  cexact->add_option("--full-table", exact.full_table,
                     "Write the (config, f) table CSV here");
  cexact->add_option("--out", exact.out, "Output JSON (stdout if omitted)");

  MassArgs mass;
  auto* cmass = app.add_subcommand("mass", "Mass coverage and buckets");
  cmass->add_option("--instance", mass.instance, "Instance file")->required();
  cmass->add_option("--method", mass.method, "m4 or m4plus");
  cmass->add_option("--rounding-iters", mass.rounding_iters, "Roundings");
  cmass->add_option("--buckets", mass.buckets, "Bucket count");
  cmass->add_option("--seed", mass.seed, "Seed");
  cmass->add_option("--out", mass.out, "Output JSON (stdout if omitted)");

  SegmentArgs seg;
  auto* cseg = app.add_subcommand("segment", "Dense-CRF image segmentation");
  cseg->add_option("--image", seg.image, "Input PPM (P6)")->required();
  cseg->add_option("--annotation", seg.annotation, "Annotation PGM (P5)")
      ->required();
  cseg->add_option("--out", seg.out, "Output label PGM")->required();
  cseg->add_option("--overlay", seg.overlay, "Colorized overlay PPM");
  cseg->add_option("--json", seg.json, "Metadata JSON (stdout if omitted)");
  cseg->add_option("--k", seg.k, "Class count (default: max annotation label)");
  cseg->add_option("--confidence", seg.confidence, "Annotation confidence");
  cseg->add_option("--theta", seg.theta, "Unary weight");
  cseg->add_option("--w-app", seg.kernel.w_app, "Appearance kernel weight");
  cseg->add_option("--theta-alpha", seg.kernel.theta_alpha,
                   "Appearance position bandwidth");
  cseg->add_option("--theta-beta", seg.kernel.theta_beta, "Color bandwidth");
  cseg->add_option("--w-smooth", seg.kernel.w_smooth,
                   "Smoothness kernel weight");
  cseg->add_option("--theta-gamma", seg.kernel.theta_gamma,
                   "Smoothness position bandwidth");
  cseg->add_option("--d", seg.d, "Working dimension (default k-1)");
  cseg->add_option("--alpha", seg.alpha, "Initial step size");
  cseg->add_option("--max-iters", seg.max_iters, "Iteration cap");
  cseg->add_option("--rounding-iters", seg.rounding_iters, "Rounding batch");
  cseg->add_option("--seed", seg.seed, "Seed");
  cseg->add_option("--pixel-cap", seg.pixel_cap, "Maximum pixel count");

  BenchArgs bench;
  auto* cbench = app.add_subcommand("bench", "Benchmark presets");
  cbench->add_option("--preset", bench.preset, "fig3a, fig3b, fig3c, or fig4")
      ->required();
  cbench->add_option("--out", bench.out, "Output directory")->required();
  cbench->add_option("--seeds", bench.seeds, "Override the seed count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cgen->parsed()) return run_gen(gen);
    if (cmode->parsed()) return run_mode(mode);
    if (cpart->parsed()) return run_partition(part);
    if (cais->parsed()) return run_ais(ais);
    if (cexact->parsed()) return run_exact(exact);
    if (cmass->parsed()) return run_mass(mass);
    if (cseg->parsed()) return run_segment(seg);
    if (cbench->parsed()) return run_bench(bench);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
