#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "dpdrc/pipeline.hpp"
#include "test_helpers.hpp"

using namespace dpdrc;
namespace fs = std::filesystem;

namespace {

RunConfig small_config() {
  RunConfig cfg = builtin_benchmark_config();
  cfg.trials = 200;
  cfg.grid_points = 4;
  cfg.tau_grid = 40;
  cfg.epsilon_grid = {cfg.privacy.epsilon};
  cfg.delta_grid = {cfg.privacy.delta};
  return cfg;
}

std::vector<std::map<std::string, std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) header.push_back(cell);
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    std::map<std::string, std::string> row;
    std::size_t i = 0;
    for (std::string cell; std::getline(ls, cell, ',');) row[header.at(i++)] = cell;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::map<std::string, std::string> read_summary(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::map<std::string, std::string> kv;
  std::string key, value;
  while (in >> key >> value) kv[key] = value;
  return kv;
}

}  // namespace

TEST_CASE("summary numbers re-derive exactly from the emitted CSVs") {
  const fs::path out = fs::temp_directory_path() / "dpdrc_pipeline_test";
  fs::remove_all(out);
  const RunConfig cfg = small_config();
  const PaperRun run = reproduce_paper(cfg, out.string(), 2);

  const auto summary = read_summary(out / "summary.txt");

  // tau-curve minimum from fig1.csv
  const auto fig1 = read_csv(out / "fig1.csv");
  REQUIRE_FALSE(fig1.empty());
  std::string min_tau;
  double min_obj = std::numeric_limits<double>::infinity();
  for (const auto& row : fig1) {
    const double obj = std::stod(row.at("objective"));
    if (obj < min_obj) {
      min_obj = obj;
      min_tau = row.at("tau");
    }
  }
  CHECK(summary.at("fig1_min_tau") == min_tau);
  CHECK(std::stod(summary.at("fig1_min_objective")) == min_obj);

  // dominance counts from the fig2 CSVs
  for (const std::string mech : {"gaussian", "laplace"}) {
    const auto rows = read_csv(out / ("fig2_" + mech + ".csv"));
    REQUIRE(rows.size() == 2 * 4);  // two controllers x grid_points
    int d95 = 0, dworst = 0;
    for (const auto& row : rows) {
      if (row.at("controller") != "proposed") continue;
      for (const auto& other : rows) {
        if (other.at("controller") == "lqg" && other.at("param") == row.at("param")) {
          if (std::stod(row.at("p95")) < std::stod(other.at("p95"))) ++d95;
          if (std::stod(row.at("worst")) < std::stod(other.at("worst"))) ++dworst;
        }
      }
    }
    const std::string expect95 = std::to_string(d95) + "/4";
    const std::string expectw = std::to_string(dworst) + "/4";
    CHECK(summary.at("dominance_p95_" + mech) == expect95);
    CHECK(summary.at("dominance_worst_" + mech) == expectw);
  }

  // fig3 has one row per mechanism for the single valid grid point
  const auto fig3 = read_csv(out / "fig3.csv");
  CHECK(fig3.size() == 2);

  // the run is reproducible byte-for-byte
  const fs::path out2 = fs::temp_directory_path() / "dpdrc_pipeline_test2";
  fs::remove_all(out2);
  reproduce_paper(cfg, out2.string(), 1);
  for (const char* f : {"fig1.csv", "fig2_gaussian.csv", "fig2_laplace.csv", "fig3.csv",
                        "summary.txt", "controller.json"}) {
    std::ifstream a(out / f), b(out2 / f);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
  }
  (void)run;
}

TEST_CASE("controller file carries the search result and every gain") {
  const fs::path out = fs::temp_directory_path() / "dpdrc_pipeline_ctrl";
  fs::remove_all(out);
  RunConfig cfg = small_config();
  reproduce_paper(cfg, out.string(), 2);
  std::ifstream in(out / "controller.json");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  CHECK(text.find("\"kind\": \"distributionally_robust\"") != std::string::npos);
  CHECK(text.find("tau_star") != std::string::npos);
  CHECK(text.find("objective_star") != std::string::npos);
  CHECK(text.find("estimator_gain") != std::string::npos);
  CHECK(text.find("feedback_gain") != std::string::npos);
  CHECK(text.find("correction") != std::string::npos);
}
