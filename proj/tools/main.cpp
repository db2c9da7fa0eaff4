// dpdrc — synthesis and simulation toolkit for distributionally robust control
// of differentially private linear systems.
//
// Exit status: 0 success, 1 validation error, 2 no feasible tau, 3 I/O error.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpdrc/csvio.hpp"
#include "dpdrc/errors.hpp"
#include "dpdrc/pipeline.hpp"

namespace {

using namespace dpdrc;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 0;
  int grid = 0;
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "path to a JSON config (built-in benchmark when omitted)");
  cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--set", args.overrides, "config override, section.key=value (repeatable)");
  cmd->add_option("--seed", args.seed, "master seed")->each([&args](const std::string&) {
    args.seed_set = true;
  });
  cmd->add_option("--trials", args.trials, "Monte-Carlo trials per point");
  cmd->add_option("--grid", args.grid, "grid size (tau curve / search)");
  cmd->add_option("--jobs", args.jobs, "worker threads (0 = auto)");
}

RunConfig resolve_config(const CommonArgs& args) {
  RunConfig cfg =
      args.config_path.empty() ? builtin_benchmark_config() : load_config(args.config_path);
  for (const auto& kv : args.overrides) apply_override(cfg, kv);
  if (args.seed_set) cfg.master_seed = args.seed;
  if (args.trials > 0) cfg.trials = args.trials;
  if (args.grid > 0) cfg.tau_grid = args.grid;
  const ValidationReport report = validate_model(cfg.plant, cfg.weights);
  if (!report.ok()) throw ValidationError("problem data invalid:\n" + report.describe());
  return cfg;
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);
}

int run_calibrate(const CommonArgs& args) {
  const RunConfig cfg = resolve_config(args);
  const Calibration cal = calibrate(cfg);
  std::cout << "sigma2_lo " << sig6(cal.bounds.sigma2_lo) << "\n";
  std::cout << "b_lo " << sig6(cal.bounds.b_lo) << "\n";
  ensure_out_dir(args.out_dir);
  write_manifest(cfg, args.out_dir, "calibrate", {});
  return 0;
}

int run_eta(const CommonArgs& args) {
  const RunConfig cfg = resolve_config(args);
  const Calibration cal = calibrate(cfg);
  std::cout << "eta " << sig6(cal.radius.eta) << "\n";
  std::cout << "eta1 " << sig6(cal.radius.eta1) << "\n";
  std::cout << "eta2 " << sig6(cal.radius.eta2) << "\n";
  std::cout << "branch " << cal.radius.branch() << "\n";
  ensure_out_dir(args.out_dir);
  write_manifest(cfg, args.out_dir, "eta", {});
  return 0;
}

int run_tau_curve(const CommonArgs& args) {
  const RunConfig cfg = resolve_config(args);
  ensure_out_dir(args.out_dir);
  const auto curve = tau_curve(cfg, cfg.tau_grid);
  const std::string path = args.out_dir + "/tau_curve.csv";
  write_text_file(path, render_tau_curve_csv(curve));
  write_manifest(cfg, args.out_dir, "tau-curve", {"tau_curve.csv"});
  std::cout << "wrote " << path << "\n";
  return 0;
}

int run_synthesize(const CommonArgs& args) {
  const RunConfig cfg = resolve_config(args);
  ensure_out_dir(args.out_dir);
  const Calibration cal = calibrate(cfg);
  const DrSynthesis dr = synthesize_dr(cal.radius.eta, cfg.plant, cfg.weights,
                                       cal.bounds.sigma2_lo);
  const std::string path = args.out_dir + "/controller.json";
  write_text_file(path, controller_to_json(dr.controller, dr.report.objective_star));
  write_manifest(cfg, args.out_dir, "synthesize", {"controller.json"});
  std::cout << "tau_star " << sig6(dr.report.tau_star) << "\n";
  std::cout << "objective_star " << sig6(dr.report.objective_star) << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

int run_simulate(const CommonArgs& args) {
  const RunConfig cfg = resolve_config(args);
  ensure_out_dir(args.out_dir);
  const Calibration cal = calibrate(cfg);
  const DrSynthesis dr = synthesize_dr(cal.radius.eta, cfg.plant, cfg.weights,
                                       cal.bounds.sigma2_lo);
  ExperimentSpec spec;
  spec.plant = cfg.plant;
  spec.weights = cfg.weights;
  spec.controllers = {dr.controller, synthesize_lqg(cfg.plant, cfg.weights, cal.bounds.sigma2_lo)};
  spec.controller_ids = {"proposed", "lqg"};
  spec.true_distributions = gaussian_grid(cal.bounds, cfg.grid_points);
  const auto lap = laplace_grid(cal.bounds, cfg.grid_points);
  spec.true_distributions.insert(spec.true_distributions.end(), lap.begin(), lap.end());
  spec.trials = cfg.trials;
  spec.master_seed = cfg.master_seed;
  spec.workers = args.jobs;
  const auto table = monte_carlo(spec);
  const std::string path = args.out_dir + "/simulate.csv";
  write_text_file(path, render_stats_csv(table));
  write_manifest(cfg, args.out_dir, "simulate", {"simulate.csv"});
  std::cout << "wrote " << path << "\n";
  return 0;
}

int run_sweep_privacy(const CommonArgs& args) {
  const RunConfig cfg = resolve_config(args);
  ensure_out_dir(args.out_dir);
  const auto sweep = privacy_sweep(cfg.plant, cfg.weights, cfg.privacy.gamma, cfg.epsilon_grid,
                                   cfg.delta_grid, cfg.sigma2_ratio, cfg.trials,
                                   cfg.master_seed, args.jobs);
  const std::string path = args.out_dir + "/sweep_privacy.csv";
  write_text_file(path, render_sweep_csv(sweep));
  write_manifest(cfg, args.out_dir, "sweep-privacy", {"sweep_privacy.csv"}, sweep.skipped);
  if (sweep.skipped > 0)
    std::cerr << "note: " << sweep.skipped
              << " grid point(s) skipped (calibration hypotheses not met)\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

int run_reproduce(const CommonArgs& args) {
  const RunConfig cfg = resolve_config(args);
  const PaperRun run = reproduce_paper(cfg, args.out_dir, args.jobs);
  std::cout << "tau_star " << sig6(run.search.tau_star) << "\n";
  std::cout << "objective_star " << sig6(run.search.objective_star) << "\n";
  std::cout << "wrote " << args.out_dir << "/{fig1,fig2_gaussian,fig2_laplace,fig3}.csv"
            << " summary.txt manifest.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributionally robust control for differentially private linear systems"};
  app.require_subcommand(1);

  CommonArgs args;
  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const CommonArgs&);
  };
  const std::vector<Sub> subs = {
      {"calibrate", "print calibrated noise lower bounds (sigma2_lo, b_lo)", run_calibrate},
      {"eta", "print the KL ambiguity radius and its branches", run_eta},
      {"tau-curve", "emit the (tau, objective) curve as CSV", run_tau_curve},
      {"synthesize", "search tau and write the robust controller", run_synthesize},
      {"simulate", "Monte-Carlo cost statistics over the admissible noise grid", run_simulate},
      {"sweep-privacy", "mean cost versus privacy parameters", run_sweep_privacy},
      {"reproduce-paper", "full benchmark pipeline into --out", run_reproduce},
  };
  std::vector<std::pair<CLI::App*, int (*)(const CommonArgs&)>> dispatch;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, args);
    dispatch.emplace_back(cmd, s.fn);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [cmd, fn] : dispatch) {
      if (cmd->parsed()) return fn(args);
    }
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const NoFeasibleTau& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
