#pragma once

// Verification sweeps, layered configuration and report serialisation
// (CSV, JSON, markdown).

#include "catmot/catalog.hpp"
#include "catmot/quadrature.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace catmot {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kEnvPrefix = "CATMOT_";

/// Settings shared by the CLI subcommands.
struct HarnessConfig {
  unsigned n_max = 30;
  quad::QuadConfig quad;
};

/// Thrown for malformed configuration (file, environment or flags).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Applies one key=value setting. Keys: n_max, rel_tol, abs_tol, max_levels, max_subdivisions.
void apply_setting(HarnessConfig& cfg, std::string_view key, std::string_view value);

/// Reads a line-oriented key=value file; blank lines and '#' comments are skipped.
void apply_config_file(HarnessConfig& cfg, const std::string& path);

/// Applies CATMOT_N_MAX, CATMOT_REL_TOL, ... as returned by `lookup`.
void apply_environment(HarnessConfig& cfg,
                       const std::function<std::optional<std::string>(const std::string&)>& lookup);
/// Same, reading the process environment.
void apply_environment(HarnessConfig& cfg);

struct Summary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t non_converged = 0;

  bool operator==(const Summary&) const = default;
};

struct Report {
  std::string tool_version{kToolVersion};
  std::map<std::string, std::string> config_echo;
  std::vector<VerificationRow> rows;
  Summary summary;

  bool operator==(const Report&) const = default;
};

/// Echo of the effective configuration, with `extra` entries merged in.
std::map<std::string, std::string> config_echo(const HarnessConfig& cfg,
                                               const std::map<std::string, std::string>& extra = {});

/// Sorts rows by (rep_id, n) and tallies the summary.
Report make_report(std::vector<VerificationRow> rows, std::map<std::string, std::string> config);

struct Task {
  const Representation* rep;
  unsigned n;
};

/// Every (entry, n) with lo <= n <= hi, skipping n below each entry's n_min.
std::vector<Task> plan_sweep(std::span<const Representation* const> reps, unsigned lo, unsigned hi);

/// Runs verify() over `tasks` on `jobs` worker threads; the result is in task order.
std::vector<VerificationRow> run_tasks(const std::vector<Task>& tasks, const quad::QuadConfig& cfg,
                                       std::optional<double> tolerance, unsigned jobs = 1);

std::string to_csv(const Report& report);
std::string to_json(const Report& report);
std::string to_markdown(const Report& report);
/// Inverse of to_json. Throws std::invalid_argument on malformed input.
Report report_from_json(std::string_view text);

/// Exit code convention: 0 all rows pass, 1 otherwise.
int exit_code(const Report& report);

}  // namespace catmot
