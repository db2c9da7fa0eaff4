#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dpdrc/errors.hpp"
#include "dpdrc/pipeline.hpp"

namespace py = pybind11;
using namespace dpdrc;

PYBIND11_MODULE(_core, m) {
  m.doc() = "distributionally robust control for differentially private linear systems";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NoFeasibleTau>(m, "NoFeasibleTauError", PyExc_RuntimeError);

  py::class_<PlantModel>(m, "PlantModel")
      .def(py::init<>())
      .def_readwrite("A", &PlantModel::A)
      .def_readwrite("B", &PlantModel::B)
      .def_readwrite("C", &PlantModel::C)
      .def_readwrite("Sigma_w", &PlantModel::Sigma_w)
      .def_readwrite("x_ini", &PlantModel::x_ini)
      .def_readwrite("Sigma_ini", &PlantModel::Sigma_ini)
      .def_readwrite("N", &PlantModel::N)
      .def_property_readonly("stacked_dim", &PlantModel::stacked_dim);

  py::class_<CostWeights>(m, "CostWeights")
      .def(py::init<>())
      .def_readwrite("Q", &CostWeights::Q)
      .def_readwrite("Q_N", &CostWeights::Q_N)
      .def_readwrite("R", &CostWeights::R);

  py::enum_<Mechanism>(m, "Mechanism")
      .value("Gaussian", Mechanism::Gaussian)
      .value("Laplace", Mechanism::Laplace);

  py::class_<PrivacySpec>(m, "PrivacySpec")
      .def(py::init<double, double, double, Mechanism>(), py::arg("epsilon"), py::arg("delta"),
           py::arg("gamma"), py::arg("mechanism") = Mechanism::Gaussian)
      .def_readwrite("epsilon", &PrivacySpec::epsilon)
      .def_readwrite("delta", &PrivacySpec::delta)
      .def_readwrite("gamma", &PrivacySpec::gamma)
      .def_readwrite("mechanism", &PrivacySpec::mechanism);

  py::class_<NoiseDistribution>(m, "NoiseDistribution")
      .def_static("gaussian", &NoiseDistribution::gaussian, py::arg("sigma2"), py::arg("L"))
      .def_static("laplace", &NoiseDistribution::laplace, py::arg("b"), py::arg("L"))
      .def_property_readonly("label", &NoiseDistribution::label)
      .def_property_readonly("parameter", &NoiseDistribution::parameter)
      .def_readonly("L", &NoiseDistribution::L);

  py::class_<AmbiguityBounds>(m, "AmbiguityBounds")
      .def(py::init<>())
      .def_readwrite("sigma2_lo", &AmbiguityBounds::sigma2_lo)
      .def_readwrite("sigma2_hi", &AmbiguityBounds::sigma2_hi)
      .def_readwrite("b_lo", &AmbiguityBounds::b_lo)
      .def_readwrite("b_hi", &AmbiguityBounds::b_hi)
      .def_readwrite("L", &AmbiguityBounds::L);

  py::class_<KlRadius>(m, "KlRadius")
      .def_readonly("eta", &KlRadius::eta)
      .def_readonly("eta1", &KlRadius::eta1)
      .def_readonly("eta2", &KlRadius::eta2)
      .def_property_readonly("branch", &KlRadius::branch);

  py::class_<Calibration>(m, "Calibration")
      .def_readonly("bounds", &Calibration::bounds)
      .def_readonly("radius", &Calibration::radius);

  py::class_<RunConfig>(m, "RunConfig")
      .def_readwrite("plant", &RunConfig::plant)
      .def_readwrite("weights", &RunConfig::weights)
      .def_readwrite("privacy", &RunConfig::privacy)
      .def_readwrite("sigma2_ratio", &RunConfig::sigma2_ratio)
      .def_readwrite("b_ratio", &RunConfig::b_ratio)
      .def_readwrite("trials", &RunConfig::trials)
      .def_readwrite("grid_points", &RunConfig::grid_points)
      .def_readwrite("tau_grid", &RunConfig::tau_grid)
      .def_readwrite("master_seed", &RunConfig::master_seed)
      .def_readwrite("epsilon_grid", &RunConfig::epsilon_grid)
      .def_readwrite("delta_grid", &RunConfig::delta_grid)
      .def("to_json", &RunConfig::to_json);

  py::enum_<ControllerKind>(m, "ControllerKind")
      .value("DistributionallyRobust", ControllerKind::DistributionallyRobust)
      .value("LqgBaseline", ControllerKind::LqgBaseline);

  py::class_<Controller>(m, "Controller")
      .def_readonly("kind", &Controller::kind)
      .def_readonly("tau", &Controller::tau)
      .def_readonly("sigma2_nom", &Controller::sigma2_nom)
      .def_readonly("estimator_gains", &Controller::estimator_gains)
      .def_readonly("feedback_gains", &Controller::feedback_gains)
      .def_readonly("correction_matrices", &Controller::correction_matrices)
      .def_readonly("xhat0", &Controller::xhat0)
      .def_property_readonly("horizon", &Controller::horizon);

  py::class_<TauEvaluation>(m, "TauEvaluation")
      .def_readonly("tau", &TauEvaluation::tau)
      .def_readonly("objective", &TauEvaluation::objective);

  py::class_<TauSearchReport>(m, "TauSearchReport")
      .def_readonly("tau_star", &TauSearchReport::tau_star)
      .def_readonly("objective_star", &TauSearchReport::objective_star)
      .def_readonly("feasible_interval_estimate", &TauSearchReport::feasible_interval_estimate)
      .def_readonly("evaluations", &TauSearchReport::evaluations);

  py::class_<DrSynthesis>(m, "DrSynthesis")
      .def_readonly("controller", &DrSynthesis::controller)
      .def_readonly("report", &DrSynthesis::report);

  py::class_<CostStats>(m, "CostStats")
      .def_readonly("controller_id", &CostStats::controller_id)
      .def_readonly("distribution_id", &CostStats::distribution_id)
      .def_readonly("parameter", &CostStats::parameter)
      .def_readonly("mean", &CostStats::mean)
      .def_readonly("p95", &CostStats::p95)
      .def_readonly("worst", &CostStats::worst)
      .def_readonly("min", &CostStats::min)
      .def_readonly("trials", &CostStats::trials)
      .def_readonly("seed", &CostStats::seed);

  m.def("benchmark_config", &builtin_benchmark_config,
        "built-in two-state benchmark instance");
  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", &parse_config, py::arg("json_text"));

  m.def("induced_norms", [](const Matrix& C) {
    const auto n = induced_norms(C);
    return py::make_tuple(n.norm1, n.norm2);
  });
  m.def("gaussian_sigma_lower", &gaussian_sigma_lower, py::arg("spec"), py::arg("C"));
  m.def("laplace_b_lower", &laplace_b_lower, py::arg("spec"), py::arg("C"));
  m.def("sample_noise", &sample_noise, py::arg("dist"), py::arg("seed"));

  m.def("g", &g, py::arg("x"), py::arg("sigma2_lo"));
  m.def("kl_gaussian_gaussian", &kl_gaussian_gaussian, py::arg("sigma2"), py::arg("sigma2_lo"),
        py::arg("L"));
  m.def("kl_laplace_gaussian", &kl_laplace_gaussian, py::arg("b"), py::arg("sigma2_lo"),
        py::arg("L"));
  m.def("radius_eta", &radius_eta, py::arg("bounds"));
  m.def("kl_quadrature_oracle", &kl_quadrature_oracle, py::arg("b"), py::arg("sigma2"));
  m.def("calibrate", &calibrate, py::arg("config"));

  m.def("w_tau", &w_tau, py::arg("plant"), py::arg("weights"), py::arg("sigma2_lo"),
        py::arg("tau"));
  m.def("objective", &objective, py::arg("eta"), py::arg("plant"), py::arg("weights"),
        py::arg("sigma2_lo"), py::arg("tau"));
  m.def("find_feasible_tau", &find_feasible_tau, py::arg("plant"), py::arg("weights"),
        py::arg("sigma2_lo"));
  m.def("optimize_tau", &optimize_tau, py::arg("eta"), py::arg("plant"), py::arg("weights"),
        py::arg("sigma2_lo"), py::arg("grid_size") = 96, py::arg("refine_iters") = 60);
  m.def("synthesize_dr", &synthesize_dr, py::arg("eta"), py::arg("plant"), py::arg("weights"),
        py::arg("sigma2_lo"), py::arg("grid_size") = 96, py::arg("refine_iters") = 60);
  m.def("synthesize_dr_at_tau", &synthesize_dr_at_tau, py::arg("plant"), py::arg("weights"),
        py::arg("sigma2_lo"), py::arg("tau"));
  m.def("synthesize_lqg", &synthesize_lqg, py::arg("plant"), py::arg("weights"),
        py::arg("sigma2_nom"));
  m.def("control_step", &control_step, py::arg("controller"), py::arg("k"), py::arg("y_tilde"),
        py::arg("state"));

  m.def("run_trial", &run_trial, py::arg("plant"), py::arg("weights"), py::arg("controller"),
        py::arg("dist"), py::arg("trial_seed"));
  m.def(
      "monte_carlo",
      [](const PlantModel& plant, const CostWeights& weights,
         const std::vector<Controller>& controllers, const std::vector<std::string>& ids,
         const std::vector<NoiseDistribution>& dists, int trials, std::uint64_t master_seed,
         int workers) {
        ExperimentSpec spec{plant, weights, controllers, ids, dists, trials, master_seed,
                            workers};
        py::gil_scoped_release release;
        return monte_carlo(spec);
      },
      py::arg("plant"), py::arg("weights"), py::arg("controllers"), py::arg("ids"),
      py::arg("dists"), py::arg("trials"), py::arg("master_seed"), py::arg("workers") = 0);
  m.def("gaussian_grid", &gaussian_grid, py::arg("bounds"), py::arg("points"));
  m.def("laplace_grid", &laplace_grid, py::arg("bounds"), py::arg("points"));
  m.def("tau_curve", &tau_curve, py::arg("config"), py::arg("grid_size"));
}
