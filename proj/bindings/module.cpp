#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pottsmix/ais.hpp"
#include "pottsmix/exact.hpp"
#include "pottsmix/generator.hpp"
#include "pottsmix/instance_io.hpp"
#include "pottsmix/mrf.hpp"
#include "pottsmix/partition.hpp"
#include "pottsmix/rounding.hpp"
#include "pottsmix/solver.hpp"
#include "pottsmix/solver_plus.hpp"

namespace py = pybind11;
using namespace pottsmix;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Approximate inference for pairwise k-class MRFs: low-rank "
            "relaxation solvers, randomized rounding, partition function "
            "estimation, and exact baselines.";

  py::class_<MrfInstance>(m, "MrfInstance")
      .def(py::init([](const Eigen::MatrixXd& a, const Eigen::MatrixXd& h,
                       int k) { return symmetrize_and_validate(a, h, k); }),
           py::arg("A"), py::arg("H"), py::arg("k"))
      .def_readonly("n", &MrfInstance::n)
      .def_readonly("k", &MrfInstance::k)
      .def_readonly("A", &MrfInstance::A)
      .def_readonly("H", &MrfInstance::H)
      .def("to_json", &instance_to_json)
      .def_static("from_json", &instance_from_json)
      .def("__repr__", [](const MrfInstance& inst) {
        return "MrfInstance(n=" + std::to_string(inst.n) +
               ", k=" + std::to_string(inst.k) + ")";
      });

  py::class_<SimplexFrame>(m, "SimplexFrame")
      .def_readonly("k", &SimplexFrame::k)
      .def_readonly("d", &SimplexFrame::d)
      .def_readonly("r", &SimplexFrame::r);

  m.def("objective", &objective, py::arg("instance"), py::arg("config"),
        "Unnormalized log-density of a 1-based label configuration.");
  m.def("coupling_strength", &coupling_strength, py::arg("A"));
  m.def("simplex_frame", &simplex_frame, py::arg("k"), py::arg("d"));
  m.def("embed_config", &embed_config, py::arg("frame"), py::arg("config"));
  m.def("binary_to_multiclass", &binary_to_multiclass, py::arg("A"),
        py::arg("h"));

  m.def(
      "generate",
      [](int n, int k, double cs, std::uint64_t seed, const std::string& graph,
         double edge_prob) {
        GenSpec spec;
        spec.n = n;
        spec.k = k;
        spec.target_cs = cs;
        spec.seed = seed;
        if (graph == "complete") {
          spec.graph = GraphKind::Complete;
        } else if (graph == "er") {
          spec.graph = GraphKind::ErdosRenyi;
          spec.edge_prob = edge_prob;
        } else {
          throw std::invalid_argument("graph must be 'complete' or 'er'");
        }
        return generate(spec);
      },
      py::arg("n"), py::arg("k"), py::arg("cs") = 1.0, py::arg("seed") = 0,
      py::arg("graph") = "complete", py::arg("edge_prob") = 0.5,
      "Seeded synthetic instance with exact target coupling strength.");

  m.def("rank_bound", &rank_bound, py::arg("n"), py::arg("k"));
  m.def("relaxed_objective", &relaxed_objective, py::arg("instance"),
        py::arg("frame"), py::arg("v"));

  py::class_<VectorSolution>(m, "VectorSolution")
      .def_readonly("d", &VectorSolution::d)
      .def_readonly("v", &VectorSolution::v)
      .def_readonly("objective_value", &VectorSolution::objective_value)
      .def_readonly("iterations_used", &VectorSolution::iterations_used)
      .def_readonly("converged", &VectorSolution::converged);

  py::class_<M4Result>(m, "M4Result")
      .def_readonly("solution", &M4Result::solution)
      .def_readonly("frame", &M4Result::frame);

  m.def(
      "solve_m4",
      [](const MrfInstance& inst, int max_iters, double rel_tol,
         std::uint64_t seed, int d) {
        SolverConfig cfg;
        cfg.max_iters = max_iters;
        cfg.rel_tol = rel_tol;
        cfg.seed = seed;
        if (d > 0) cfg.d_override = d;
        return solve_m4(inst, cfg);
      },
      py::arg("instance"), py::arg("max_iters") = 300,
      py::arg("rel_tol") = 1e-8, py::arg("seed") = 0, py::arg("d") = 0,
      "Coordinate-ascent solve of the unit-vector relaxation.");

  py::class_<BlockSolution>(m, "BlockSolution")
      .def_readonly("d", &BlockSolution::d)
      .def_readonly("m", &BlockSolution::m)
      .def_readonly("z", &BlockSolution::z)
      .def_readonly("v", &BlockSolution::v)
      .def_readonly("objective_value", &BlockSolution::objective_value)
      .def_readonly("iterations_used", &BlockSolution::iterations_used)
      .def_readonly("converged", &BlockSolution::converged);

  py::class_<BlockProjector>(m, "BlockProjector")
      .def_readonly("k", &BlockProjector::k)
      .def_readonly("m", &BlockProjector::m)
      .def_readonly("d", &BlockProjector::d)
      .def_readonly("S", &BlockProjector::S)
      .def("frame", &BlockProjector::frame);

  py::class_<M4PlusResult>(m, "M4PlusResult")
      .def_readonly("solution", &M4PlusResult::solution)
      .def_readonly("projector", &M4PlusResult::projector);

  m.def(
      "solve_m4_plus",
      [](const MrfInstance& inst, int max_iters, double rel_tol,
         std::uint64_t seed, int m_blocks) {
        SolverConfig cfg;
        cfg.max_iters = max_iters;
        cfg.rel_tol = rel_tol;
        cfg.seed = seed;
        return solve_m4_plus(inst, cfg, m_blocks);
      },
      py::arg("instance"), py::arg("max_iters") = 300,
      py::arg("rel_tol") = 1e-8, py::arg("seed") = 0, py::arg("m") = 0,
      "Nonnegative block-parameterized coordinate ascent.");

  py::class_<RoundingBatch>(m, "RoundingBatch")
      .def_readonly("samples", &RoundingBatch::samples)
      .def_readonly("best", &RoundingBatch::best)
      .def_readonly("best_value", &RoundingBatch::best_value)
      .def_readonly("unique_set", &RoundingBatch::unique_set);

  m.def("round_batch", &round_batch, py::arg("instance"), py::arg("v"),
        py::arg("frame"), py::arg("iters"), py::arg("seed"),
        "Randomized rounding batch; keeps the best configuration found.");

  py::class_<PartitionEstimate>(m, "PartitionEstimate")
      .def_readonly("log_z_hat", &PartitionEstimate::log_z_hat)
      .def_readonly("cluster_size", &PartitionEstimate::cluster_size)
      .def_readonly("cluster_log_mass", &PartitionEstimate::cluster_log_mass)
      .def_readonly("uniform_phase_log_mass",
                    &PartitionEstimate::uniform_phase_log_mass)
      .def_readonly("R", &PartitionEstimate::R)
      .def_readonly("full_support", &PartitionEstimate::full_support);

  m.def(
      "estimate_z",
      [](const MrfInstance& inst, const Eigen::MatrixXd& v,
         const SimplexFrame& frame, std::uint64_t r, std::uint64_t seed) {
        return estimate_z(inst, v, frame, r, seed);
      },
      py::arg("instance"), py::arg("v"), py::arg("frame"), py::arg("R"),
      py::arg("seed"),
      "Unbiased two-phase importance-sampling estimate of log Z.");

  py::class_<ExactSummary>(m, "ExactSummary")
      .def_readonly("log_z", &ExactSummary::log_z)
      .def_readonly("mode_config", &ExactSummary::mode_config)
      .def_readonly("mode_value", &ExactSummary::mode_value);

  m.def("enumerate_exact", &enumerate_exact, py::arg("instance"),
        py::arg("cap") = kDefaultEnumCap, py::arg("table_cap") = 0,
        "Brute-force log Z and exact mode.");
  m.def("mass_covered", &mass_covered, py::arg("instance"), py::arg("samples"),
        py::arg("cap") = kDefaultEnumCap);

  py::class_<AisResult>(m, "AisResult")
      .def_readonly("log_z_hat", &AisResult::log_z_hat)
      .def_readonly("best_config", &AisResult::best_config)
      .def_readonly("best_value", &AisResult::best_value)
      .def_readonly("wall_time_sec", &AisResult::wall_time_sec);

  m.def(
      "ais_estimate",
      [](const MrfInstance& inst, int K, int cycles, int samples,
         std::uint64_t seed) {
        AisConfig cfg;
        cfg.K = K;
        cfg.num_cycles = cycles;
        cfg.num_samples = samples;
        cfg.seed = seed;
        return ais_estimate(inst, cfg);
      },
      py::arg("instance"), py::arg("K") = 25, py::arg("cycles") = 1,
      py::arg("samples") = 100, py::arg("seed") = 0,
      "Annealed importance sampling estimate of log Z.");
}
