#include "dpdrc/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dpdrc/csvio.hpp"
#include "dpdrc/errors.hpp"

namespace dpdrc {

using nlohmann::json;

Calibration calibrate(const RunConfig& cfg) {
  Calibration cal;
  PrivacySpec gauss = cfg.privacy;
  gauss.mechanism = Mechanism::Gaussian;
  PrivacySpec lap = cfg.privacy;
  lap.mechanism = Mechanism::Laplace;
  cal.bounds.sigma2_lo = gaussian_sigma_lower(gauss, cfg.plant.C);
  cal.bounds.b_lo = laplace_b_lower(lap, cfg.plant.C);
  cal.bounds.sigma2_hi = cfg.sigma2_ratio * cal.bounds.sigma2_lo;
  cal.bounds.b_hi = cfg.b_ratio * cal.bounds.b_lo;
  cal.bounds.L = cfg.plant.stacked_dim();
  cal.radius = radius_eta(cal.bounds);
  return cal;
}

std::vector<TauEvaluation> tau_curve(const RunConfig& cfg, int grid_size) {
  const Calibration cal = calibrate(cfg);
  const double boundary = find_feasible_tau(cfg.plant, cfg.weights, cal.bounds.sigma2_lo);
  std::vector<TauEvaluation> curve;
  curve.reserve(grid_size);
  const double la = std::log(boundary);
  const double lb = std::log(100.0 * boundary);
  for (int i = 0; i < grid_size; ++i) {
    const double tau = std::exp(la + (lb - la) * i / (grid_size - 1.0));
    curve.push_back(
        {tau, objective(cal.radius.eta, cfg.plant, cfg.weights, cal.bounds.sigma2_lo, tau)});
  }
  return curve;
}

namespace {

std::vector<NoiseDistribution> uniform_grid(double lo, double hi, int points, int L,
                                            bool gaussian) {
  std::vector<NoiseDistribution> grid;
  grid.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    const double param = lo + (hi - lo) * t;
    grid.push_back(gaussian ? NoiseDistribution::gaussian(param, L)
                            : NoiseDistribution::laplace(param, L));
  }
  return grid;
}

}  // namespace

std::vector<NoiseDistribution> gaussian_grid(const AmbiguityBounds& bounds, int points) {
  return uniform_grid(bounds.sigma2_lo, bounds.sigma2_hi, points, bounds.L, true);
}

std::vector<NoiseDistribution> laplace_grid(const AmbiguityBounds& bounds, int points) {
  return uniform_grid(bounds.b_lo, bounds.b_hi, points, bounds.L, false);
}

namespace {

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string controller_to_json(const Controller& ctrl, double objective_star) {
  json root;
  root["kind"] = ctrl.kind == ControllerKind::DistributionallyRobust ? "distributionally_robust"
                                                                     : "lqg_baseline";
  if (ctrl.kind == ControllerKind::DistributionallyRobust) {
    root["tau_star"] = ctrl.tau;
    root["objective_star"] = objective_star;
  }
  root["sigma2_nom"] = ctrl.sigma2_nom;
  root["horizon"] = ctrl.horizon();
  json xh = json::array();
  for (Eigen::Index i = 0; i < ctrl.xhat0.size(); ++i) xh.push_back(ctrl.xhat0(i));
  root["xhat0"] = xh;
  json gains = json::array();
  for (int k = 0; k < ctrl.horizon(); ++k) {
    json g;
    g["k"] = k;
    g["estimator_gain"] = matrix_json(ctrl.estimator_gains[k]);
    g["feedback_gain"] = matrix_json(ctrl.feedback_gains[k]);
    if (!ctrl.correction_matrices.empty())
      g["correction"] = matrix_json(ctrl.correction_matrices[k]);
    gains.push_back(g);
  }
  root["gains"] = gains;
  return root.dump(2) + "\n";
}

std::string render_tau_curve_csv(const std::vector<TauEvaluation>& curve) {
  CsvWriter csv({"tau", "objective"});
  for (const auto& e : curve) {
    if (!e.objective) continue;  // infeasible points omitted
    csv.add_row({CsvWriter::format(e.tau), CsvWriter::format(*e.objective)});
  }
  return csv.str();
}

std::string render_stats_csv(const std::vector<CostStats>& table) {
  CsvWriter csv({"mechanism", "param", "controller", "mean", "p95", "worst", "trials", "seed"});
  for (const auto& s : table) {
    csv.add_row({s.distribution_id, CsvWriter::format(s.parameter), s.controller_id,
                 CsvWriter::format(s.mean), CsvWriter::format(s.p95),
                 CsvWriter::format(s.worst), CsvWriter::format(s.trials),
                 CsvWriter::format(s.seed)});
  }
  return csv.str();
}

std::string render_sweep_csv(const SweepResult& sweep) {
  CsvWriter csv({"mechanism", "epsilon", "delta", "mean_cost"});
  for (const auto& p : sweep.points) {
    csv.add_row({p.mechanism, CsvWriter::format(p.epsilon), CsvWriter::format(p.delta),
                 CsvWriter::format(p.mean_cost)});
  }
  return csv.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
}

void write_manifest(const RunConfig& cfg, const std::string& out_dir,
                    const std::string& subcommand, const std::vector<std::string>& outputs,
                    int skipped_sweep_points) {
  json root;
  root["subcommand"] = subcommand;
  root["master_seed"] = cfg.master_seed;
  root["outputs"] = outputs;
  if (skipped_sweep_points > 0) root["skipped_sweep_points"] = skipped_sweep_points;
  root["config"] = json::parse(cfg.to_json());
  write_text_file(out_dir + "/manifest.json", root.dump(2) + "\n");
}

namespace {

struct Dominance {
  int p95 = 0;
  int worst = 0;
  int grid = 0;
};

// Count grid points where the proposed controller's tail statistics sit below
// the baseline's.
Dominance dominance_counts(const std::vector<CostStats>& table, const std::string& mechanism) {
  Dominance d;
  for (const auto& s : table) {
    if (s.distribution_id != mechanism || s.controller_id != "proposed") continue;
    for (const auto& t : table) {
      if (t.distribution_id == mechanism && t.controller_id == "lqg" &&
          t.parameter == s.parameter) {
        ++d.grid;
        if (s.p95 < t.p95) ++d.p95;
        if (s.worst < t.worst) ++d.worst;
      }
    }
  }
  return d;
}

std::vector<CostStats> filter_stats(const std::vector<CostStats>& table,
                                    const std::string& mechanism) {
  std::vector<CostStats> out;
  for (const auto& s : table)
    if (s.distribution_id == mechanism) out.push_back(s);
  return out;
}

}  // namespace

PaperRun reproduce_paper(const RunConfig& cfg, const std::string& out_dir, int workers) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);

  PaperRun run;
  run.calibration = calibrate(cfg);
  const auto& bounds = run.calibration.bounds;
  const double eta = run.calibration.radius.eta;

  // Fig. 1: the tau curve is deterministic, no randomness consumed.
  const auto curve = tau_curve(cfg, cfg.tau_grid);

  DrSynthesis dr = synthesize_dr(eta, cfg.plant, cfg.weights, bounds.sigma2_lo);
  run.search = dr.report;
  Controller lqg = synthesize_lqg(cfg.plant, cfg.weights, bounds.sigma2_lo);

  ExperimentSpec spec;
  spec.plant = cfg.plant;
  spec.weights = cfg.weights;
  spec.controllers = {dr.controller, lqg};
  spec.controller_ids = {"proposed", "lqg"};
  spec.true_distributions = gaussian_grid(bounds, cfg.grid_points);
  const auto lap = laplace_grid(bounds, cfg.grid_points);
  spec.true_distributions.insert(spec.true_distributions.end(), lap.begin(), lap.end());
  spec.trials = cfg.trials;
  spec.master_seed = cfg.master_seed;
  spec.workers = workers;
  run.fig2 = monte_carlo(spec);

  run.fig3 = privacy_sweep(cfg.plant, cfg.weights, cfg.privacy.gamma, cfg.epsilon_grid,
                           cfg.delta_grid, cfg.sigma2_ratio, cfg.trials, cfg.master_seed,
                           workers);

  const Dominance dg = dominance_counts(run.fig2, "gaussian");
  const Dominance dl = dominance_counts(run.fig2, "laplace");
  run.dominance_p95_gaussian = dg.p95;
  run.dominance_worst_gaussian = dg.worst;
  run.dominance_p95_laplace = dl.p95;
  run.dominance_worst_laplace = dl.worst;

  write_text_file(out_dir + "/fig1.csv", render_tau_curve_csv(curve));
  write_text_file(out_dir + "/fig2_gaussian.csv",
                  render_stats_csv(filter_stats(run.fig2, "gaussian")));
  write_text_file(out_dir + "/fig2_laplace.csv",
                  render_stats_csv(filter_stats(run.fig2, "laplace")));
  write_text_file(out_dir + "/fig3.csv", render_sweep_csv(run.fig3));
  write_text_file(out_dir + "/controller.json",
                  controller_to_json(dr.controller, dr.report.objective_star));

  // Curve minimum over the emitted grid (re-derivable from fig1.csv exactly).
  double curve_min_tau = 0.0;
  double curve_min_obj = std::numeric_limits<double>::infinity();
  for (const auto& e : curve) {
    if (e.objective && *e.objective < curve_min_obj) {
      curve_min_obj = *e.objective;
      curve_min_tau = e.tau;
    }
  }

  std::ostringstream summary;
  summary << "sigma2_lo " << sig6(bounds.sigma2_lo) << "\n";
  summary << "b_lo " << sig6(bounds.b_lo) << "\n";
  summary << "eta " << sig6(eta) << "\n";
  summary << "tau_star " << sig6(run.search.tau_star) << "\n";
  summary << "objective_star " << sig6(run.search.objective_star) << "\n";
  summary << "fig1_min_tau " << CsvWriter::format(curve_min_tau) << "\n";
  summary << "fig1_min_objective " << CsvWriter::format(curve_min_obj) << "\n";
  summary << "dominance_p95_gaussian " << dg.p95 << "/" << dg.grid << "\n";
  summary << "dominance_worst_gaussian " << dg.worst << "/" << dg.grid << "\n";
  summary << "dominance_p95_laplace " << dl.p95 << "/" << dl.grid << "\n";
  summary << "dominance_worst_laplace " << dl.worst << "/" << dl.grid << "\n";
  write_text_file(out_dir + "/summary.txt", summary.str());

  write_manifest(cfg, out_dir, "reproduce-paper",
                 {"fig1.csv", "fig2_gaussian.csv", "fig2_laplace.csv", "fig3.csv",
                  "controller.json", "summary.txt"},
                 run.fig3.skipped);
  return run;
}

}  // namespace dpdrc
