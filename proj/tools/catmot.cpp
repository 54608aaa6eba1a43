// catmot: exact Catalan and Motzkin numbers, their integral representations,
// and numerical verification reports.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration error.

#include "catmot/catalog.hpp"
#include "catmot/exact.hpp"
#include "catmot/report.hpp"
#include "catmot/transform.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace catmot;

constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> settings;  // key -> value from flags
};

HarnessConfig load_config(const Overrides& o) {
  HarnessConfig cfg;
  if (!o.config_path.empty()) apply_config_file(cfg, o.config_path);
  apply_environment(cfg);
  for (const auto& [key, value] : o.settings) apply_setting(cfg, key, value);
  return cfg;
}

std::string bound(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << v;
  return s.str();
}

std::string tags(const Representation& rep) {
  std::string out;
  for (auto tag : rep.singularities) {
    if (!out.empty()) out += '|';
    out += singularity_name(tag);
  }
  return out;
}

std::string hint_name(const Representation& rep) {
  if (!rep.exactness) return "None";
  return rep.exactness->kind == ChebyshevKind::First ? "ChebyshevFirstKind" : "ChebyshevSecondKind";
}

int cmd_list(const std::string& family, const std::string& format) {
  std::optional<Family> filter;
  if (!family.empty()) {
    filter = parse_family(family);
    if (!filter) throw UsageError("unknown family '" + family + "'");
  }
  std::vector<const Representation*> reps;
  for (const auto& rep : list_representations()) {
    if (!filter || rep.family == *filter) reps.push_back(&rep);
  }
  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto* rep : reps) {
      std::vector<std::string> t;
      for (auto tag : rep->singularities) t.emplace_back(singularity_name(tag));
      out.push_back({{"id", rep->id},
                     {"family", family_name(rep->family)},
                     {"domain", {bound(rep->domain.lower), bound(rep->domain.upper)}},
                     {"singularities", t},
                     {"exactness_hint", hint_name(*rep)},
                     {"n_min", rep->n_min},
                     {"tolerance", rep->tolerance},
                     {"anchor", rep->anchor}});
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::printf("%-10s %-8s %-12s %-60s %-5s %s\n", "id", "family", "domain", "singularities", "n_min",
              "identity");
  for (const auto* rep : reps) {
    const std::string dom = "(" + bound(rep->domain.lower) + ", " + bound(rep->domain.upper) + ")";
    std::printf("%-10s %-8s %-12s %-60s %-5u %s\n", rep->id.c_str(),
                std::string(family_name(rep->family)).c_str(), dom.c_str(), tags(*rep).c_str(),
                rep->n_min, rep->anchor.c_str());
  }
  return 0;
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("bad n range '" + text + "' (expected a..b)");
    }
    return static_cast<unsigned>(std::stoul(s));
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const unsigned n = number(text);
    return {n, n};
  }
  return {number(text.substr(0, dots)), number(text.substr(dots + 2))};
}

struct VerifyArgs {
  std::string rep = "all";
  bool all = false;
  std::string range = "0..20";
  std::optional<double> tol;
  std::string rule = "auto";
  std::string format = "csv";
  std::string out;
  unsigned jobs = 1;
};

int cmd_verify(const VerifyArgs& args, HarnessConfig cfg) {
  std::vector<const Representation*> reps;
  if (args.all || args.rep == "all") {
    for (const auto& rep : list_representations()) reps.push_back(&rep);
  } else {
    const Representation* rep = find_representation(args.rep);
    if (rep == nullptr) throw UsageError("unknown representation '" + args.rep + "' (see `catmot list`)");
    reps.push_back(rep);
  }
  const auto [lo, hi] = parse_range(args.range);
  if (lo > hi) throw UsageError("empty n range " + args.range);
  if (hi > cfg.n_max) {
    throw UsageError("n range exceeds n_max = " + std::to_string(cfg.n_max) + " (raise it with --n-max)");
  }
  if (args.rule != "auto") {
    cfg.quad.rule_override = quad::parse_rule(args.rule);
    if (!cfg.quad.rule_override) throw UsageError("unknown rule '" + args.rule + "'");
  }
  if (args.tol && !(*args.tol > 0)) throw UsageError("--tol must be positive");
  const auto tasks = plan_sweep(reps, lo, hi);
  if (tasks.empty()) throw UsageError("n range " + args.range + " is below n_min for the selection");

  std::vector<VerificationRow> rows;
  try {
    rows = run_tasks(tasks, cfg.quad, args.tol, args.jobs);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::map<std::string, std::string> extra{
      {"selection", args.all ? "all" : args.rep},
      {"n_range", std::to_string(lo) + ".." + std::to_string(hi)},
      {"tolerance", args.tol ? std::to_string(*args.tol) : "per-entry"}};
  const Report report = make_report(std::move(rows), config_echo(cfg, extra));

  std::string text;
  if (args.format == "csv") text = to_csv(report);
  else if (args.format == "json") text = to_json(report);
  else if (args.format == "md") text = to_markdown(report);
  else throw UsageError("unknown format '" + args.format + "'");

  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(args.out, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) throw UsageError("cannot write " + args.out);
  }
  const auto& s = report.summary;
  std::fprintf(stderr, "%zu/%zu passed, %zu failed, %zu non-converged\n", s.passed, s.total, s.failed,
               s.non_converged);
  return exit_code(report);
}

int cmd_transform(const std::string& id, const std::string& mode, unsigned n, int points) {
  const RegisteredForm* entry = find_form(id);
  if (entry == nullptr) throw UsageError("no Catalan form registered for '" + id + "'");
  if (mode != "simple" && mode != "phi") throw UsageError("mode must be simple or phi");
  const bool phi = mode == "phi";
  if (phi != entry->form.has_inverse_n_plus_1) {
    throw UsageError(id + (phi ? " has no 1/(n+1) prefactor; use --mode simple"
                               : " carries a 1/(n+1) prefactor; use --mode phi"));
  }
  if (points < 1) throw UsageError("--points must be positive");

  if (!entry->motzkin_id) {
    // No catalog counterpart: compare the transformed integral with M(n) directly.
    quad::QuadConfig cfg;
    cfg.rel_tol = 1e-13;
    cfg.max_levels = 14;
    const double value = integrate_form(transform(entry->form), entry->form, n, cfg).value;
    const double exact = to_double(motzkin(n));
    const double dev = std::abs(value - exact) / exact;
    std::printf("%s -> (no catalog entry)\nmode: value-only against exact M(%u) = %s\n", id.c_str(), n,
                to_decimal(motzkin(n)).c_str());
    std::printf("integral: %.17g\ndeviation: %.3e (tolerance 1e-10)\n", value, dev);
    const bool ok = dev <= 1e-10;
    std::printf("result: %s\n", ok ? "agree" : "DISAGREE");
    return ok ? 0 : 1;
  }

  const auto report = transform_consistency(id, *entry->motzkin_id, entry->mode, n, points);
  std::printf("%s -> %s\nmode: %s\n", id.c_str(), entry->motzkin_id->c_str(),
              std::string(mode_name(report.mode)).c_str());
  if (report.mode == ConsistencyMode::Pointwise) {
    std::printf("samples: %d\nmax pointwise deviation: %.3e (tolerance %.0e)\n", report.samples,
                report.max_deviation, report.tolerance);
  } else {
    std::printf("value deviation: %.3e (tolerance %.0e)\n", report.max_deviation, report.tolerance);
  }
  std::printf("result: %s\n", report.agrees ? "agree" : "DISAGREE");
  return report.agrees ? 0 : 1;
}

int cmd_lemma1(unsigned r, unsigned s, double a, double tol) {
  if (!(a > 0) || !std::isfinite(a)) throw UsageError("a must be a positive real");
  if (!(tol > 0)) throw UsageError("tol must be positive");
  const auto res = lemma1_sides(r, s, a, tol);
  std::printf("r = %u, s = %u, a = %.17g\n", r, s, a);
  std::printf("integral over (0, a/2): %.17g\n", res.first_half);
  std::printf("integral over (a/2, a): %.17g\n", res.second_half);
  std::printf("(-1)^r = %+.0f\n", res.sign);
  std::printf("result: %s\n", res.holds ? "holds" : "FAILS");
  return res.holds ? 0 : 1;
}

int cmd_table(unsigned n_max) {
  std::printf("%3s %24s %24s\n", "n", "catalan", "motzkin");
  for (unsigned n = 0; n <= n_max; ++n) {
    std::printf("%3u %24s %24s\n", n, to_decimal(catalan(n)).c_str(), to_decimal(motzkin(n)).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Catalan and Motzkin numbers and numerical checks of their integral representations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Overrides overrides;
  app.add_option("--config", overrides.config_path, "key=value configuration file");
  const std::pair<const char*, const char*> keys[] = {
      {"--n-max", "n_max"},         {"--rel-tol", "rel_tol"},
      {"--abs-tol", "abs_tol"},     {"--max-levels", "max_levels"},
      {"--max-subdivisions", "max_subdivisions"}};
  for (const auto& [flag, key] : keys) {
    app.add_option_function<std::string>(
        flag, [&overrides, key = std::string(key)](const std::string& v) { overrides.settings[key] = v; },
        "overrides config key " + std::string(key));
  }
  app.fallthrough();

  auto* list = app.add_subcommand("list", "list the integral representations");
  std::string family, list_format = "table";
  list->add_option("--family", family, "catalan or motzkin");
  list->add_option("--format", list_format, "table or json")->check(CLI::IsMember({"table", "json"}));

  auto* verify_cmd = app.add_subcommand("verify", "verify representations against exact values");
  VerifyArgs vargs;
  verify_cmd->add_option("--rep", vargs.rep, "representation id or 'all'");
  verify_cmd->add_flag("--all", vargs.all, "verify every representation");
  verify_cmd->add_option("--range", vargs.range, "inclusive n range a..b");
  verify_cmd->add_option("--tol", vargs.tol, "relative tolerance (default: per entry)");
  verify_cmd->add_option("--rule", vargs.rule, "auto, gauss-chebyshev-1, gauss-chebyshev-2, tanh-sinh, "
                                               "exp-sinh, gauss-kronrod-15");
  verify_cmd->add_option("--format", vargs.format, "csv, json or md");
  verify_cmd->add_option("--out", vargs.out, "write the report here instead of stdout");
  verify_cmd->add_option("--jobs", vargs.jobs, "worker threads");

  auto* transform_cmd = app.add_subcommand("transform", "check a Catalan-to-Motzkin transform");
  std::string tid, tmode = "simple";
  unsigned tn = 5;
  int tpoints = 64;
  transform_cmd->add_option("catalan_id", tid, "Catalan representation id")->required();
  transform_cmd->add_option("--mode", tmode, "simple or phi");
  transform_cmd->add_option("--n", tn, "sequence index");
  transform_cmd->add_option("--points", tpoints, "interior sample points");

  auto* lemma = app.add_subcommand("lemma1", "check the half-period symmetry of cos^r sin^s");
  unsigned lr = 0, ls = 0;
  double la = 1.0, ltol = 1e-10;
  lemma->add_option("--r", lr, "cosine power")->required();
  lemma->add_option("--s", ls, "sine power")->required();
  lemma->add_option("--a", la, "period parameter a > 0")->required();
  lemma->add_option("--tol", ltol, "relative tolerance");

  auto* table = app.add_subcommand("table", "print exact C(n) and M(n)");
  unsigned table_max = 20;
  table->add_option("n_max", table_max, "largest n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const HarnessConfig cfg = load_config(overrides);
    if (*list) return cmd_list(family, list_format);
    if (*verify_cmd) return cmd_verify(vargs, cfg);
    if (*transform_cmd) return cmd_transform(tid, tmode, tn, tpoints);
    if (*lemma) return cmd_lemma1(lr, ls, la, ltol);
    if (*table) return cmd_table(table_max);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
