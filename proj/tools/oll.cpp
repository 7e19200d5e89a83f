// Batch experiment runner: solve / verify / sweep / report subcommands over
// flat key = value configs.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "oll/config.hpp"

namespace {

struct CommonOpts {
  std::string config;
  std::string out;
  long long seed = -1;
  int jobs = -1;
  std::string formats;
};

void apply_overrides(oll::ExperimentConfig& cfg, const CommonOpts& opt) {
  if (!opt.out.empty()) {
    cfg.out_dir = opt.out;
  } else if (const char* env = std::getenv("OLL_OUT_DIR")) {
    if (env[0] != '\0' && cfg.out_dir == "out") cfg.out_dir = env;
  }
  if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
  if (opt.jobs >= 0) cfg.jobs = opt.jobs;
  if (!opt.formats.empty()) {
    cfg.fmt_csv = opt.formats.find("csv") != std::string::npos;
    cfg.fmt_json = opt.formats.find("json") != std::string::npos;
    cfg.fmt_svg = opt.formats.find("svg") != std::string::npos;
  }
}

void add_common(CLI::App* sub, CommonOpts& opt, bool config_required) {
  auto* c = sub->add_option("--config", opt.config, "experiment config file");
  if (config_required) c->required();
  sub->add_option("--out", opt.out, "output directory (fallback: OLL_OUT_DIR)");
  sub->add_option("--seed", opt.seed, "random seed override");
  sub->add_option("--jobs", opt.jobs, "parallel jobs for independent work");
  sub->add_option("--format", opt.formats, "comma list of csv,json,svg");
}

int run_verify(const CommonOpts& opt, bool sweep_mode) {
  oll::ExperimentConfig cfg = oll::ExperimentConfig::from_file(opt.config);
  apply_overrides(cfg, opt);
  if (!sweep_mode) cfg.resolutions.clear();  // verify runs the primary resolution only
  const oll::ExperimentResult res = oll::run_experiment(cfg);
  for (const auto& r : res.reports)
    std::printf("[%s] %-28s minC=%.6g%s\n", r.passed ? "pass" : "FAIL", r.name.c_str(),
                r.min_constant,
                std::isnan(r.stability_ratio)
                    ? ""
                    : (" stability=" + std::to_string(r.stability_ratio)).c_str());
  std::printf("reports: %zu file(s) under %s\n", res.files.size(), cfg.out_dir.c_str());
  return res.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for singular obstacle problems with measure data"};
  app.require_subcommand(1);

  CommonOpts solve_opt, verify_opt, sweep_opt, report_opt;
  CLI::App* solve = app.add_subcommand("solve", "solve one problem and write the solution");
  add_common(solve, solve_opt, true);
  CLI::App* verify = app.add_subcommand("verify", "run the selected checks");
  add_common(verify, verify_opt, true);
  CLI::App* sweep = app.add_subcommand("sweep", "run checks across the resolution sweep");
  add_common(sweep, sweep_opt, true);
  CLI::App* report = app.add_subcommand("report", "regenerate CSV/SVG from saved reports");
  add_common(report, report_opt, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      oll::ExperimentConfig cfg = oll::ExperimentConfig::from_file(solve_opt.config);
      apply_overrides(cfg, solve_opt);
      for (const auto& f : oll::run_solve(cfg)) std::printf("wrote %s\n", f.c_str());
      return 0;
    }
    if (verify->parsed()) return run_verify(verify_opt, false);
    if (sweep->parsed()) return run_verify(sweep_opt, true);
    if (report->parsed()) {
      // rebuild the index and tables from the JSON documents already on disk
      namespace fs = std::filesystem;
      std::string dir = report_opt.out.empty() ? "out" : report_opt.out;
      if (report_opt.out.empty()) {
        if (const char* env = std::getenv("OLL_OUT_DIR")) dir = env;
      }
      std::vector<fs::path> docs;
      for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") docs.push_back(entry.path());
      std::sort(docs.begin(), docs.end());
      std::vector<oll::VerificationReport> reps;
      for (const auto& path : docs) {
        std::ifstream in(path);
        nlohmann::json j;
        in >> j;
        oll::VerificationReport rep;
        rep.name = j.value("name", path.stem().string());
        rep.min_constant = j.value("min_constant", 0.0);
        if (j.contains("stability_ratio") && !j["stability_ratio"].is_null())
          rep.stability_ratio = j["stability_ratio"].get<double>();
        rep.passed = j.value("passed", false);
        rep.notes = j.value("notes", std::string());
        if (j.contains("table_header")) {
          rep.table_header = j["table_header"].get<std::vector<std::string>>();
          rep.table = j["table"].get<std::vector<std::vector<double>>>();
        }
        reps.push_back(std::move(rep));
      }
      oll::EmitOptions emit;
      emit.outdir = dir;
      emit.json = false;
      emit.csv = report_opt.formats.empty() ||
                 report_opt.formats.find("csv") != std::string::npos;
      emit.svg = report_opt.formats.find("svg") != std::string::npos;
      const auto files = oll::emit_report(reps, emit);
      std::printf("regenerated %zu file(s) from %zu report document(s) under %s\n",
                  files.size(), reps.size(), dir.c_str());
      return 0;
    }
  } catch (const oll::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
