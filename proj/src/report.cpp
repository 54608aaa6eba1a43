#include "catmot/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
#include <tuple>

namespace catmot {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("invalid value for " + std::string(key) + ": '" + s + "'");
  }
  return value;
}

std::string format_double(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

constexpr const char* kKeys[] = {"n_max", "rel_tol", "abs_tol", "max_levels", "max_subdivisions"};

}  // namespace

void apply_setting(HarnessConfig& cfg, std::string_view raw_key, std::string_view value) {
  const std::string key = trim(raw_key);
  if (key == "n_max") {
    cfg.n_max = parse_number<unsigned>(key, value);
  } else if (key == "rel_tol") {
    cfg.quad.rel_tol = parse_number<double>(key, value);
  } else if (key == "abs_tol") {
    cfg.quad.abs_tol = parse_number<double>(key, value);
  } else if (key == "max_levels") {
    cfg.quad.max_levels = parse_number<int>(key, value);
  } else if (key == "max_subdivisions") {
    cfg.quad.max_subdivisions = parse_number<int>(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
  try {
    cfg.quad.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void apply_config_file(HarnessConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key=value");
    }
    apply_setting(cfg, body.substr(0, eq), body.substr(eq + 1));
  }
}

void apply_environment(HarnessConfig& cfg,
                       const std::function<std::optional<std::string>(const std::string&)>& lookup) {
  for (const char* key : kKeys) {
    if (auto value = lookup(std::string(kEnvPrefix) + upper(key))) apply_setting(cfg, key, *value);
  }
}

void apply_environment(HarnessConfig& cfg) {
  apply_environment(cfg, [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  });
}

std::map<std::string, std::string> config_echo(const HarnessConfig& cfg,
                                               const std::map<std::string, std::string>& extra) {
  std::map<std::string, std::string> echo{
      {"n_max", std::to_string(cfg.n_max)},
      {"rel_tol", format_double(cfg.quad.rel_tol, "%.17g")},
      {"abs_tol", format_double(cfg.quad.abs_tol, "%.17g")},
      {"max_levels", std::to_string(cfg.quad.max_levels)},
      {"max_subdivisions", std::to_string(cfg.quad.max_subdivisions)},
      {"rule", cfg.quad.rule_override ? std::string(quad::rule_name(*cfg.quad.rule_override)) : "auto"},
  };
  for (const auto& [k, v] : extra) echo[k] = v;
  return echo;
}

Report make_report(std::vector<VerificationRow> rows, std::map<std::string, std::string> config) {
  std::stable_sort(rows.begin(), rows.end(), [](const VerificationRow& a, const VerificationRow& b) {
    return std::tie(a.rep_id, a.n) < std::tie(b.rep_id, b.n);
  });
  Report report;
  report.config_echo = std::move(config);
  for (const auto& row : rows) {
    ++report.summary.total;
    row.pass ? ++report.summary.passed : ++report.summary.failed;
    if (!row.converged()) ++report.summary.non_converged;
  }
  report.rows = std::move(rows);
  return report;
}

std::vector<Task> plan_sweep(std::span<const Representation* const> reps, unsigned lo, unsigned hi) {
  std::vector<Task> tasks;
  for (const Representation* rep : reps) {
    for (unsigned n = std::max(lo, rep->n_min); n <= hi; ++n) tasks.push_back({rep, n});
  }
  return tasks;
}

std::vector<VerificationRow> run_tasks(const std::vector<Task>& tasks, const quad::QuadConfig& cfg,
                                       std::optional<double> tolerance, unsigned jobs) {
  std::vector<VerificationRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      rows[i] = verify(*tasks[i].rep, tasks[i].n, cfg, tolerance);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size()))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return rows;
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << "rep_id,n,exact,estimate,rel_err,evaluations,rule,pass\n";
  for (const auto& r : report.rows) {
    out << r.rep_id << ',' << r.n << ',' << to_decimal(r.exact) << ','
        << format_double(r.estimate, "%.17g") << ',' << format_double(r.rel_err, "%.6e") << ','
        << r.evaluations << ',' << r.rule << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

namespace {

using nlohmann::json;

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  throw std::invalid_argument("not a number: " + s);
}

}  // namespace

std::string to_json(const Report& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"rep_id", r.rep_id},
                    {"n", r.n},
                    {"exact", to_decimal(r.exact)},
                    {"estimate", number(r.estimate)},
                    {"rel_err", number(r.rel_err)},
                    {"evaluations", r.evaluations},
                    {"rule", r.rule},
                    {"pass", r.pass}});
  }
  json doc = {{"tool_version", report.tool_version},
              {"config", report.config_echo},
              {"rows", rows},
              {"summary",
               {{"total", report.summary.total},
                {"passed", report.summary.passed},
                {"failed", report.summary.failed},
                {"non_converged", report.summary.non_converged}}}};
  return doc.dump(2) + "\n";
}

Report report_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    Report report;
    report.tool_version = doc.at("tool_version").get<std::string>();
    report.config_echo = doc.at("config").get<std::map<std::string, std::string>>();
    for (const auto& j : doc.at("rows")) {
      VerificationRow r;
      r.rep_id = j.at("rep_id").get<std::string>();
      r.n = j.at("n").get<unsigned>();
      r.exact = from_decimal(j.at("exact").get<std::string>());
      r.estimate = number(j.at("estimate"));
      r.rel_err = number(j.at("rel_err"));
      r.evaluations = j.at("evaluations").get<std::size_t>();
      r.rule = j.at("rule").get<std::string>();
      r.pass = j.at("pass").get<bool>();
      report.rows.push_back(std::move(r));
    }
    const json& s = doc.at("summary");
    report.summary = {s.at("total").get<std::size_t>(), s.at("passed").get<std::size_t>(),
                      s.at("failed").get<std::size_t>(), s.at("non_converged").get<std::size_t>()};
    return report;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

std::string to_markdown(const Report& report) {
  std::ostringstream out;
  out << "# Verification report\n\n";
  out << "tool version " << report.tool_version << "\n\n";
  out << "| setting | value |\n|---|---|\n";
  for (const auto& [k, v] : report.config_echo) out << "| " << k << " | " << v << " |\n";
  out << "\n| rep_id | n | exact | estimate | rel_err | evaluations | rule | pass |\n";
  out << "|---|---:|---:|---:|---:|---:|---|---|\n";
  for (const auto& r : report.rows) {
    out << "| " << r.rep_id << " | " << r.n << " | " << to_decimal(r.exact) << " | "
        << format_double(r.estimate, "%.17g") << " | " << format_double(r.rel_err, "%.3e") << " | "
        << r.evaluations << " | " << r.rule << " | " << (r.pass ? "pass" : "FAIL") << " |\n";
  }
  const auto& s = report.summary;
  out << "\n" << s.passed << " of " << s.total << " passed, " << s.failed << " failed, "
      << s.non_converged << " non-converged\n";
  return out.str();
}

int exit_code(const Report& report) { return report.summary.failed == 0 ? 0 : 1; }

}  // namespace catmot
