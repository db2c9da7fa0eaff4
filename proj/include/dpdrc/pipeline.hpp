#pragma once

#include <string>
#include <vector>

#include "dpdrc/ambiguity.hpp"
#include "dpdrc/config.hpp"
#include "dpdrc/simulate.hpp"

namespace dpdrc {

// Calibrated noise bounds plus the KL radius for a config.
struct Calibration {
  AmbiguityBounds bounds;
  KlRadius radius;
};

Calibration calibrate(const RunConfig& cfg);

// Objective samples on a log grid from the feasibility boundary to 100x the
// boundary; infeasible points keep an empty objective.
std::vector<TauEvaluation> tau_curve(const RunConfig& cfg, int grid_size);

// Uniform true-noise grids over the admissible intervals (Fig.-2 style).
std::vector<NoiseDistribution> gaussian_grid(const AmbiguityBounds& bounds, int points);
std::vector<NoiseDistribution> laplace_grid(const AmbiguityBounds& bounds, int points);

std::string controller_to_json(const Controller& ctrl, double objective_star);

struct PaperRun {
  Calibration calibration;
  TauSearchReport search;
  std::vector<CostStats> fig2;  // both mechanisms, both controllers
  SweepResult fig3;
  int dominance_p95_gaussian = 0;
  int dominance_worst_gaussian = 0;
  int dominance_p95_laplace = 0;
  int dominance_worst_laplace = 0;
};

// End-to-end benchmark pipeline: calibrate, radius, tau curve, synthesize both
// controllers, run both Fig.-2 sweeps and the privacy sweep. Writes fig1.csv,
// fig2_gaussian.csv, fig2_laplace.csv, fig3.csv, summary.txt, manifest.json
// into out_dir.
PaperRun reproduce_paper(const RunConfig& cfg, const std::string& out_dir, int workers);

// CSV renderers shared by the CLI subcommands and reproduce_paper.
std::string render_tau_curve_csv(const std::vector<TauEvaluation>& curve);
std::string render_stats_csv(const std::vector<CostStats>& table);
std::string render_sweep_csv(const SweepResult& sweep);

void write_text_file(const std::string& path, const std::string& content);
void write_manifest(const RunConfig& cfg, const std::string& out_dir,
                    const std::string& subcommand, const std::vector<std::string>& outputs,
                    int skipped_sweep_points = 0);

}  // namespace dpdrc
