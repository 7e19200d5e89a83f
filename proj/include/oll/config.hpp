#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oll/report.hpp"
#include "oll/solver.hpp"
#include "oll/verifier.hpp"

namespace oll {

// Flat key = value text with [section] headers; repeated keys accumulate.
// Parse errors carry the line number.
struct IniFile {
  struct Entry {
    std::string key, value;
    int line = 0;
  };
  std::map<std::string, std::vector<Entry>> sections;

  static IniFile parse_text(const std::string& text);
  static IniFile parse_file(const std::string& path);

  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::vector<std::string> get_all(const std::string& section, const std::string& key) const;
};

struct CoefficientSpec {
  enum class Kind { Pure, Sinusoidal, Split } kind = Kind::Pure;
  double amplitude = 0.1;
  double frequency = 1.0;
  double c1 = 1.0, c2 = 2.0;
};

struct ExperimentConfig {
  // domain
  DomainKind domain_kind = DomainKind::Box;
  std::vector<int> shape;
  double extent = 3.0;  // box side length; h = extent / shape[0]

  // exponents
  int n = 2;
  double p = 1.5, gamma = 0.6, alpha = 0.3;
  std::optional<double> upsilon, a;
  double r0 = 0.5, delta = 0.05, epsilon = 0.1;

  CoefficientSpec coefficient;

  // measure
  std::vector<Atom> atoms;
  std::string density_path;  // optional density field file

  // obstacle
  ObstacleSpec obstacle;

  // solver
  double tol = 1e-8;
  int max_iter = 200000;
  double eps_reg = 1e-8;
  int K = 5;
  double omega = 1.0;
  int mollify_level = 6;

  // verification
  std::vector<std::string> checks;
  double kappa1 = 0.5, kappa2 = 0.5;
  std::vector<std::pair<double, double>> theorem_b_qs;  // (q, s); s may be inf

  // sweeps
  int lambda_points = 20;
  double lambda_decades = 4.0;
  std::vector<double> eps_list;
  std::vector<int> resolutions;  // cells per axis, coarse to fine
  int ball_count = 5;

  // output
  std::string out_dir = "out";
  std::uint64_t seed = 42;
  bool fmt_csv = true, fmt_json = true, fmt_svg = false;
  int jobs = 0;

  static ExperimentConfig from_ini(const IniFile& ini);
  static ExperimentConfig from_file(const std::string& path);

  ExponentConfig exponents() const;
  DomainPtr make_domain(int cells_per_axis) const;
  CoefficientField make_coefficient(const DomainPtr& dom) const;
  ObstacleProblem make_problem(const DomainPtr& dom) const;
  PipelineSolve pipeline_solve() const;
};

struct ExperimentResult {
  std::vector<VerificationReport> reports;
  std::vector<std::string> files;
  bool all_passed = false;
};

// Runs the selected checks at the configured resolution(s), computes
// stability ratios across the resolution pair, and emits report files.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const std::string& config_path);

// Solve-only entry: mollifies at level K, solves, writes the solution field
// and a summary JSON. Returns the written paths.
std::vector<std::string> run_solve(const ExperimentConfig& cfg);

}  // namespace oll
