#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <cmath>

#include "oll/config.hpp"
#include "oll/report.hpp"

using namespace oll;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kZeroCfg = R"(# empty data: checks pass trivially
[domain]
kind = box
shape = 17
extent = 2.0

[exponents]
n = 2
p = 1.5
gamma = 0.6
alpha = 0.3

[obstacle]
kind = none

[solver]
tol = 1e-8
max_iter = 20000
mollify_level = 3

[verify]
checks = structure, theorem_a, theorem_b

[sweep]
lambda_points = 6
lambda_decades = 2

[output]
dir = /tmp/oll_zero_out
seed = 42
formats = csv,json
)";

}  // namespace

TEST_CASE("ini parsing collects repeated keys and tracks lines") {
  const IniFile ini = IniFile::parse_text("[s]\na = 1\nb = 2\na = 3\n");
  CHECK(ini.get("s", "b") == std::string("2"));
  CHECK(ini.get_all("s", "a").size() == 2);
  CHECK(!ini.get("s", "missing"));
  CHECK(!ini.get("t", "a"));
}

TEST_CASE("malformed configs fail with a line-numbered diagnostic") {
  try {
    IniFile::parse_text("[domain]\nkind = box\nnonsense line\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(IniFile::parse_text("key = outside\n"), ConfigError);
  CHECK_THROWS_AS(IniFile::parse_text("[unterminated\n"), ConfigError);
  try {
    ExperimentConfig::from_ini(IniFile::parse_text("[solver]\ntol = abc\n"));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("experiment config defaults and parsing") {
  const ExperimentConfig cfg = ExperimentConfig::from_ini(IniFile::parse_text(kZeroCfg));
  CHECK(cfg.n == 2);
  CHECK(cfg.p == 1.5);
  CHECK(cfg.shape == std::vector<int>{17, 17});
  CHECK(cfg.obstacle.kind == ObstacleKind::None);
  CHECK(cfg.checks.size() == 3);
  CHECK(cfg.theorem_b_qs.size() == 3);  // default q:s list
  CHECK(cfg.fmt_csv);
  CHECK(cfg.fmt_json);
  CHECK(!cfg.fmt_svg);
  CHECK_NOTHROW(cfg.exponents());
}

TEST_CASE("invalid exponent combinations surface as range errors") {
  std::string bad = kZeroCfg;
  const auto pos = bad.find("gamma = 0.6");
  bad.replace(pos, 11, "gamma = 0.9");
  CHECK_THROWS_AS(ExperimentConfig::from_ini(IniFile::parse_text(bad)), RangeError);
}

TEST_CASE("csv quoting follows the doubling rule") {
  CHECK(csv_quote("plain") == "plain");
  CHECK(csv_quote("with,comma") == "\"with,comma\"");
  CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("report emission writes index, tables and json") {
  VerificationReport rep;
  rep.name = "theorem_a";
  rep.add_param("a", 11.0);
  rep.table_header = {"lambda", "V1", "V2", "V3", "V", "W", "minC"};
  rep.table.push_back({0.5, 0.1, 0.0, 0.02, 0.08, 0.4, 1.25});
  rep.add_sample("lambda=0.5", 0.08, 0.04);
  rep.finalize();

  EmitOptions opt;
  opt.outdir = "/tmp/oll_emit_test";
  opt.svg = true;
  const auto files = emit_report({rep}, opt);
  CHECK(files.size() == 4);  // index.csv, theorem_a.csv, theorem_a.json, theorem_a.svg

  const std::string table = slurp("/tmp/oll_emit_test/theorem_a.csv");
  CHECK(table.rfind("lambda,V1,V2,V3,V,W,minC\n", 0) == 0);
  const std::string json = slurp("/tmp/oll_emit_test/theorem_a.json");
  CHECK(json.find("\"min_constant\"") != std::string::npos);
  const std::string svg = slurp("/tmp/oll_emit_test/theorem_a.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  const std::string index = slurp("/tmp/oll_emit_test/index.csv");
  CHECK(index.find("theorem_a") != std::string::npos);
  std::filesystem::remove_all("/tmp/oll_emit_test");
}

TEST_CASE("empty report list still produces an index") {
  EmitOptions opt;
  opt.outdir = "/tmp/oll_emit_empty";
  const auto files = emit_report({}, opt);
  REQUIRE(files.size() == 1);
  CHECK(slurp(files[0]) == "name,min_constant,stability_ratio,passed,notes\n");
  std::filesystem::remove_all("/tmp/oll_emit_empty");
}

TEST_CASE("cross-format consistency of the emitted numbers") {
  VerificationReport rep;
  rep.name = "check";
  rep.add_sample("s", 1.0, 3.0);
  rep.finalize();
  EmitOptions opt;
  opt.outdir = "/tmp/oll_emit_xfmt";
  emit_report({rep}, opt);
  const std::string index = slurp("/tmp/oll_emit_xfmt/index.csv");
  const std::string json = slurp("/tmp/oll_emit_xfmt/check.json");
  const std::string printed = format_17g(rep.min_constant);
  CHECK(index.find(printed) != std::string::npos);
  CHECK(json.find("0.3333333333333333") != std::string::npos);
  std::filesystem::remove_all("/tmp/oll_emit_xfmt");
}

TEST_CASE("zero-data experiment passes every selected check deterministically") {
  ExperimentConfig cfg = ExperimentConfig::from_ini(IniFile::parse_text(kZeroCfg));
  cfg.out_dir = "/tmp/oll_zero_a";
  const ExperimentResult r1 = run_experiment(cfg);
  CHECK(r1.all_passed);
  CHECK(!r1.reports.empty());
  for (const auto& rep : r1.reports) CHECK(rep.passed);

  cfg.out_dir = "/tmp/oll_zero_b";
  const ExperimentResult r2 = run_experiment(cfg);
  REQUIRE(r1.files.size() == r2.files.size());
  for (std::size_t i = 0; i < r1.files.size(); ++i)
    CHECK(slurp(r1.files[i]) == slurp(r2.files[i]));
  std::filesystem::remove_all("/tmp/oll_zero_a");
  std::filesystem::remove_all("/tmp/oll_zero_b");
}

TEST_CASE("dirac experiment produces the lambda table with nested level sets") {
  const std::string cfg_text = R"(
[domain]
kind = box
shape = 25
extent = 3.0
[exponents]
n = 2
p = 1.5
gamma = 0.6
alpha = 0.3
[measure]
atom = 0 0 1
[solver]
tol = 1e-8
max_iter = 100000
omega = 1.7
mollify_level = 4
[verify]
checks = theorem_a
[sweep]
lambda_points = 12
lambda_decades = 3
resolutions = 17,25
[output]
dir = /tmp/oll_dirac_out
seed = 7
formats = csv,json
)";
  const ExperimentConfig cfg = ExperimentConfig::from_ini(IniFile::parse_text(cfg_text));
  const ExperimentResult res = run_experiment(cfg);
  REQUIRE(res.reports.size() == 1);
  const VerificationReport& rep = res.reports[0];
  CHECK(!std::isnan(rep.stability_ratio));
  // |W| >= |V1| on every row since a > 1
  for (const auto& row : rep.table) CHECK(row[5] >= row[1]);
  // desk-scale small-measure bound on the shipped problem
  double sup_v = -1.0, eps_ball = -1.0;
  for (const auto& [k, v] : rep.params) {
    if (k == "sup_V") sup_v = v;
    if (k == "eps_ball_r0") eps_ball = v;
  }
  CHECK(sup_v >= 0.0);
  CHECK(sup_v < eps_ball);
  std::filesystem::remove_all("/tmp/oll_dirac_out");
}

TEST_CASE("synthetic-field checks and the refinement study run through the pipeline") {
  const std::string cfg_text = R"(
[domain]
kind = box
shape = 25
extent = 3.0
[exponents]
n = 2
p = 1.5
gamma = 0.6
alpha = 0.3
[measure]
atom = 0 0 1
[solver]
tol = 1e-8
max_iter = 200000
omega = 1.8
mollify_level = 5
[verify]
checks = tech2, tech3, radial
[sweep]
resolutions = 25, 33
[output]
dir = /tmp/oll_synth_out
seed = 11
)";
  const ExperimentConfig cfg = ExperimentConfig::from_ini(IniFile::parse_text(cfg_text));
  const ExperimentResult res = run_experiment(cfg);
  REQUIRE(res.reports.size() == 3);
  for (const auto& rep : res.reports) {
    if (rep.name == "radial") {
      CHECK(rep.table.size() == 2);  // one (h, error) row per resolution
      CHECK(rep.table[0][1] > 0.0);
    }
    if (rep.name == "tech2") {
      CHECK(rep.table.size() == 3);  // default epsilon ladder
      CHECK(std::isfinite(rep.min_constant));
    }
    if (rep.name == "tech3") CHECK(std::isfinite(rep.min_constant));
  }
  std::filesystem::remove_all("/tmp/oll_synth_out");
}

TEST_CASE("holder check selection demands the chi2 branch") {
  const std::string cfg_text = R"(
[domain]
shape = 17
extent = 2.0
[exponents]
n = 2
p = 1.5
gamma = 0.6
alpha = 0.3
[verify]
checks = holder
[output]
dir = /tmp/oll_holder_out
)";
  const ExperimentConfig cfg = ExperimentConfig::from_ini(IniFile::parse_text(cfg_text));
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("density measures load from field files at the matching resolution") {
  DomainPtr g = GridDomain::box(2, {17, 17}, 2.0 / 17);
  ScalarField rho(g);
  rho.fill_interior([](const Point& x) { return std::exp(-3.0 * (x[0] * x[0] + x[1] * x[1])); });
  save_field(rho, "/tmp/oll_density.field");

  const std::string cfg_text = R"(
[domain]
shape = 17
extent = 2.0
[exponents]
n = 2
p = 1.5
gamma = 0.6
alpha = 0.3
[measure]
density = /tmp/oll_density.field
[solver]
tol = 1e-7
max_iter = 50000
K = 2
[output]
dir = /tmp/oll_density_out
)";
  const ExperimentConfig cfg = ExperimentConfig::from_ini(IniFile::parse_text(cfg_text));
  const auto files = run_solve(cfg);
  const ScalarField u = load_field(files[0]);
  CHECK(u.max_abs() > 0.0);

  ExperimentConfig bad = cfg;
  bad.shape = {25, 25};
  CHECK_THROWS_AS(run_solve(bad), ConfigError);
  std::remove("/tmp/oll_density.field");
  std::filesystem::remove_all("/tmp/oll_density_out");
}

TEST_CASE("solve entry point writes the solution field and summary") {
  const std::string cfg_text = R"(
[domain]
kind = box
shape = 17
extent = 2.0
[exponents]
n = 2
p = 1.5
gamma = 0.6
alpha = 0.3
[measure]
atom = 0.1 -0.2 0.5
[solver]
tol = 1e-7
max_iter = 50000
K = 3
[output]
dir = /tmp/oll_solve_out
)";
  const ExperimentConfig cfg = ExperimentConfig::from_ini(IniFile::parse_text(cfg_text));
  const auto files = run_solve(cfg);
  REQUIRE(files.size() == 2);
  const ScalarField u = load_field(files[0]);
  CHECK(u.size() == 17 * 17);
  CHECK(u.max_abs() > 0.0);
  std::filesystem::remove_all("/tmp/oll_solve_out");
}
