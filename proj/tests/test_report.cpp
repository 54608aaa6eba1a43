#include "catmot/report.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

using namespace catmot;

namespace {

std::vector<const Representation*> all_entries() {
  std::vector<const Representation*> out;
  for (const auto& rep : list_representations()) out.push_back(&rep);
  return out;
}

VerificationRow row(std::string id, unsigned n, bool pass, std::string rule = "tanh-sinh") {
  VerificationRow r;
  r.rep_id = std::move(id);
  r.n = n;
  r.exact = 42;
  r.estimate = 42.000000001;
  r.rel_err = 2.38e-11;
  r.evaluations = 99;
  r.rule = std::move(rule);
  r.pass = pass;
  return r;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& text)
      : path(std::filesystem::temp_directory_path() /
             ("catmot_cfg_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + ".conf")) {
    std::ofstream(path) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("settings") {
  HarnessConfig cfg;
  apply_setting(cfg, "n_max", "12");
  apply_setting(cfg, " rel_tol ", " 1e-9");
  apply_setting(cfg, "abs_tol", "0");
  apply_setting(cfg, "max_levels", "9");
  apply_setting(cfg, "max_subdivisions", "77");
  CHECK(cfg.n_max == 12);
  CHECK(cfg.quad.rel_tol == 1e-9);
  CHECK(cfg.quad.abs_tol == 0.0);
  CHECK(cfg.quad.max_levels == 9);
  CHECK(cfg.quad.max_subdivisions == 77);

  CHECK_THROWS_AS(apply_setting(cfg, "n_max", "twelve"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "n_max", "-1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "rel_tol", "1e-9x"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "rel_tol", "0"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "max_levels", "2"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "colour", "blue"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "rel_tol", ""), ConfigError);
}

TEST_CASE("config file and environment layering") {
  TempFile file("# harness settings\n\nn_max = 8\nrel_tol=1e-8  # looser\nmax_levels=10\n");
  HarnessConfig cfg;
  apply_config_file(cfg, file.path.string());
  CHECK(cfg.n_max == 8);
  CHECK(cfg.quad.rel_tol == 1e-8);
  CHECK(cfg.quad.max_levels == 10);

  const std::map<std::string, std::string> env{{"CATMOT_N_MAX", "5"}, {"CATMOT_MAX_SUBDIVISIONS", "33"}};
  apply_environment(cfg, [&](const std::string& name) -> std::optional<std::string> {
    auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  });
  CHECK(cfg.n_max == 5);
  CHECK(cfg.quad.rel_tol == 1e-8);
  CHECK(cfg.quad.max_subdivisions == 33);

  TempFile bad("n_max 4\n");
  CHECK_THROWS_AS(apply_config_file(cfg, bad.path.string()), ConfigError);
  CHECK_THROWS_AS(apply_config_file(cfg, "/nonexistent/catmot.conf"), ConfigError);
}

TEST_CASE("config echo") {
  HarnessConfig cfg;
  const auto echo = config_echo(cfg, {{"range", "0..3"}});
  CHECK(echo.at("n_max") == "30");
  CHECK(echo.at("range") == "0..3");
  CHECK(echo.count("rel_tol") == 1);
  CHECK(echo.count("rule") == 1);
}

TEST_CASE("report ordering and summary") {
  auto nc = row("mot.12a", 1, false, "tanh-sinh" + std::string(kNonConvergedTag));
  const auto report = make_report({row("mot.12a", 10, true), row("cat.eq9", 2, false), nc, row("cat.eq10", 0, true)},
                                  {});
  REQUIRE(report.rows.size() == 4);
  CHECK(report.rows[0].rep_id == "cat.eq10");
  CHECK(report.rows[1].rep_id == "cat.eq9");
  CHECK(report.rows[2].n == 1);
  CHECK(report.rows[3].n == 10);
  CHECK(report.summary == Summary{4, 2, 2, 1});
  CHECK(exit_code(report) == 1);
  CHECK(exit_code(make_report({row("cat.eq2", 0, true)}, {})) == 0);
  CHECK(exit_code(make_report({}, {})) == 0);
}

TEST_CASE("csv format") {
  const auto csv = to_csv(make_report({row("cat.eq5", 3, true)}, {}));
  CHECK(csv ==
        "rep_id,n,exact,estimate,rel_err,evaluations,rule,pass\n"
        "cat.eq5,3,42,42.000000000999997,2.380000e-11,99,tanh-sinh,true\n");
}

TEST_CASE("json round trip") {
  HarnessConfig cfg;
  auto rows = run_tasks(plan_sweep(all_entries(), 0, 3), cfg.quad, std::nullopt);
  auto weird = row("mot.13b", 7, false);
  weird.estimate = INFINITY;
  weird.rel_err = INFINITY;
  rows.push_back(weird);
  const auto report = make_report(rows, config_echo(cfg));
  const auto back = report_from_json(to_json(report));
  CHECK(back == report);
  CHECK(to_json(back) == to_json(report));

  auto nan_row = row("cat.eq3", 1, false);
  nan_row.estimate = std::nan("");
  const auto nan_back = report_from_json(to_json(make_report({nan_row}, {})));
  CHECK(std::isnan(nan_back.rows.at(0).estimate));

  CHECK_THROWS_AS(report_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(report_from_json("{\"rows\": []}"), std::invalid_argument);
}

TEST_CASE("markdown") {
  const auto md = to_markdown(make_report({row("cat.eq2", 4, false)}, {{"n_max", "30"}}));
  CHECK(md.find("| cat.eq2 | 4 | 42 |") != std::string::npos);
  CHECK(md.find("FAIL") != std::string::npos);
  CHECK(md.find("| n_max | 30 |") != std::string::npos);
}

TEST_CASE("sweep planning") {
  const auto entries = all_entries();
  const auto tasks = plan_sweep(entries, 0, 20);
  CHECK(tasks.size() == 19 * 21 - 1);
  for (const auto& t : tasks) CHECK(t.n >= t.rep->n_min);
  CHECK(plan_sweep(entries, 5, 4).empty());
}

TEST_CASE("threaded sweeps are deterministic") {
  HarnessConfig cfg;
  const auto tasks = plan_sweep(all_entries(), 0, 12);
  const auto one = run_tasks(tasks, cfg.quad, std::nullopt, 1);
  const auto many = run_tasks(tasks, cfg.quad, std::nullopt, 6);
  CHECK(one == many);
  const auto echo = config_echo(cfg);
  CHECK(to_csv(make_report(one, echo)) == to_csv(make_report(many, echo)));
  CHECK(to_json(make_report(one, echo)) == to_json(make_report(many, echo)));
  for (const auto& r : one) CHECK(r.pass);
}
