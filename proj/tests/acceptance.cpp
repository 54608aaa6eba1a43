// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance <path-to-catmot> [--known-failure K]...
//
// Exit status is 0 when the failing criteria are exactly the ones listed with
// --known-failure, 1 otherwise. The PASS/FAIL lines are printed regardless.
#include "catmot/catalog.hpp"
#include "catmot/exact.hpp"
#include "catmot/quadrature.hpp"
#include "catmot/transform.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace catmot;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

Outcome exact_oracles() {
  const auto t0 = Clock::now();
  bool ok = true;
  for (unsigned n = 0; n <= 64; ++n) {
    ok = ok && motzkin(n) == motzkin_oracle(n);
    const ExactInteger c = binomial(2 * n, n);
    ok = ok && c % (n + 1) == 0 && catalan(n) * (n + 1) == c;
  }
  const double t = seconds_since(t0);
  return {ok && t < 1.0, "n=0..64, " + fmt("%.3f s", t)};
}

Outcome chebyshev_exactness() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  bool nodes_ok = true;
  for (const char* id : {"cat.eq2", "cat.eq9", "cat.eq10"}) {
    const auto& rep = representation(id);
    const auto& hint = *rep.exactness;
    for (unsigned n = 0; n <= 25; ++n) {
      const int nodes = static_cast<int>(n) + 1;
      nodes_ok = nodes_ok && hint.nodes(n) == nodes;
      const auto poly = [&](double t) { return hint.polynomial(n, t); };
      const auto q = hint.kind == ChebyshevKind::First ? quad::gauss_chebyshev_first(poly, nodes)
                                                       : quad::gauss_chebyshev_second(poly, nodes);
      const double exact = to_double(catalan(n));
      worst = std::max(worst, std::abs(rep.prefactor(n).value() * q.value - exact) / exact);
    }
  }
  const double t = seconds_since(t0);
  return {nodes_ok && worst <= 1e-13 && t < 1.0,
          "max rel err " + fmt("%.2e", worst) + ", " + fmt("%.3f s", t)};
}

Outcome sweep(Family family, const std::map<std::string, double>& tolerances, double budget) {
  const auto t0 = Clock::now();
  std::size_t rows = 0, failed = 0, entries = 0;
  double worst = 0.0;
  std::string first_failure;
  for (const auto& rep : list_representations()) {
    if (rep.family != family) continue;
    ++entries;
    const double tol = tolerances.at(rep.id);
    for (unsigned n = rep.n_min; n <= 20; ++n) {
      const auto row = verify(rep, n, {}, tol);
      ++rows;
      worst = std::max(worst, row.rel_err / tol);
      if (!row.pass) {
        ++failed;
        if (first_failure.empty()) first_failure = ", first failure " + rep.id + " n=" + std::to_string(n);
      }
    }
  }
  const double t = seconds_since(t0);
  return {failed == 0 && t < budget,
          std::to_string(entries) + " entries, " + std::to_string(rows) + " rows, " + std::to_string(failed) +
              " failed, worst rel_err/tol " + fmt("%.2e", worst) + ", " + fmt("%.2f s", t) + first_failure};
}

Outcome transform_pairs() {
  struct Pair {
    const char* cat;
    const char* mot;
    ConsistencyMode mode;
  };
  const Pair pairs[] = {
      {"cat.eq5", "mot.12a", ConsistencyMode::Pointwise},  {"cat.eq6", "mot.12b", ConsistencyMode::Pointwise},
      {"cat.eq7", "mot.12c", ConsistencyMode::Pointwise},  {"cat.eq8", "mot.12d", ConsistencyMode::Pointwise},
      {"cat.eq4", "mot.13a", ConsistencyMode::Pointwise},  {"cat.eq9", "mot.12e", ConsistencyMode::ValueOnly},
      {"cat.eq10", "mot.12f", ConsistencyMode::ValueOnly}, {"cat.eq2", "mot.13b", ConsistencyMode::ValueOnly},
  };
  bool ok = true;
  double worst_point = 0.0, worst_value = 0.0;
  for (const auto& p : pairs) {
    for (unsigned n : {0u, 1u, 5u, 10u, 20u}) {
      const auto r = transform_consistency(p.cat, p.mot, p.mode, n, 64);
      const double limit = p.mode == ConsistencyMode::Pointwise ? 1e-12 : 1e-10;
      ok = ok && r.agrees && r.max_deviation <= limit;
      double& worst = p.mode == ConsistencyMode::Pointwise ? worst_point : worst_value;
      worst = std::max(worst, r.max_deviation);
    }
  }
  return {ok, "8 pairs x 5 orders, pointwise max " + fmt("%.2e", worst_point) + ", value-only max " +
                  fmt("%.2e", worst_value)};
}

Outcome lemma1_grid() {
  const auto t0 = Clock::now();
  int cases = 0, holds = 0;
  for (unsigned r = 0; r <= 6; ++r) {
    for (unsigned s = 0; s <= 6; ++s) {
      for (double a : {1.0, 2.5, std::numbers::pi}) {
        ++cases;
        holds += check_lemma1(r, s, a, 1e-10);
      }
    }
  }
  const double t = seconds_since(t0);
  return {holds == cases && t < 10.0,
          std::to_string(holds) + "/" + std::to_string(cases) + " cases, " + fmt("%.3f s", t)};
}

constexpr std::array<double, 3> kStabilityPoints{1e-4, 1e-6, 1e-8};
constexpr unsigned kStabilityOrders[] = {0, 5, 10, 20};

// Literal check: deviations |psi/x^2 - 2| strictly decreasing (or already at
// rounding level) and the last one at most 1e-10.
Outcome psi_stability() {
  const double rounding = 4 * std::numeric_limits<double>::epsilon() * 2;
  bool ok = true;
  std::ostringstream detail;
  for (unsigned n : kStabilityOrders) {
    std::array<double, 3> dev{};
    for (std::size_t i = 0; i < dev.size(); ++i) {
      const double x = kStabilityPoints[i];
      dev[i] = std::abs(psi_difference(n, x) / (x * x) - 2.0);
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < dev.size(); ++i) {
      decreasing = decreasing && (dev[i] < dev[i - 1] || (dev[i] <= rounding && dev[i - 1] <= rounding));
    }
    const bool n_ok = decreasing && dev.back() <= 1e-10;
    ok = ok && n_ok;
    detail << (n == kStabilityOrders[0] ? "" : "; ") << "n=" << n << ": " << fmt("%.2e", dev[0]) << " "
           << fmt("%.2e", dev[1]) << " " << fmt("%.2e", dev[2]);
  }
  return {ok, detail.str()};
}

// psi_{n+2}(x) - psi_{n+1}(x) over x^2, exactly, at the double x.
double psi_ratio_exact(unsigned n, double x) {
  const ExactRational xr(x);
  const ExactRational u = 1 + 2 * xr;
  ExactRational p1 = 1, p2 = 1;
  for (unsigned k = 0; k < n + 1; ++k) p1 *= u;
  p2 = p1 * u;
  const ExactRational diff = (p2 - 1) / ExactRational(n + 2) - (p1 - 1) / ExactRational(n + 1);
  return to_double(ExactRational(diff / (xr * xr)));
}

double psi_ratio_naive(unsigned n, double x) {
  const double u = 1 + 2 * x;
  const double d = (std::pow(u, n + 2) - 1) / (n + 2) - (std::pow(u, n + 1) - 1) / (n + 1);
  return d / (x * x);
}

// Not a criterion: how the cancellation-safe and naive forms compare with the
// exact ratio at the same points.
void psi_supplement() {
  double safe = 0.0, naive = 0.0;
  for (unsigned n : kStabilityOrders) {
    for (double x : kStabilityPoints) {
      const double exact = psi_ratio_exact(n, x);
      safe = std::max(safe, std::abs(psi_difference(n, x) / (x * x) - exact) / exact);
      naive = std::max(naive, std::abs(psi_ratio_naive(n, x) - exact) / exact);
    }
  }
  std::printf("[INFO] 7  psi/x^2 against exact rational value: polynomial path max rel err %.2e, "
              "naive two-term form max rel err %.2e\n",
              safe, naive);
}

std::string run_capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no catmot binary given"};
  const auto t0 = Clock::now();
  std::vector<std::string> outputs;
  bool exits_ok = true;
  for (const char* jobs : {"1", "1", "4", "4"}) {
    int status = 0;
    outputs.push_back(
        run_capture("'" + cli + "' verify --all --format csv --jobs " + jobs + " 2>/dev/null", status));
    exits_ok = exits_ok && status == 0;
  }
  bool same = !outputs[0].empty();
  for (const auto& o : outputs) same = same && o == outputs[0];
  std::size_t lines = 0;
  for (char c : outputs[0]) lines += c == '\n';
  const double t = seconds_since(t0);
  return {same && exits_ok, "4 runs (jobs 1,1,4,4), " + std::to_string(lines) + " csv lines, " +
                                (same ? "identical" : "DIFFER") + ", " + fmt("%.2f s", t)};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--known-failure" && i + 1 < argc) {
      known.insert(std::atoi(argv[++i]));
    } else {
      cli = arg;
    }
  }

  const std::map<std::string, double> catalan_tol{
      {"cat.eq2", 1e-9},  {"cat.eq3", 1e-11},  {"cat.eq4", 1e-9},   {"cat.eq5", 1e-9},
      {"cat.eq6", 1e-9},  {"cat.eq7", 1e-11},  {"cat.eq8", 1e-11},  {"cat.eq9", 1e-11},
      {"cat.eq10", 1e-11}, {"cat.conc1", 1e-9}, {"cat.conc2", 1e-9},
  };
  const std::map<std::string, double> motzkin_tol{
      {"mot.12a", 1e-9}, {"mot.12b", 1e-9}, {"mot.12c", 1e-9}, {"mot.12d", 1e-9},
      {"mot.12e", 1e-9}, {"mot.12f", 1e-9}, {"mot.13a", 1e-8}, {"mot.13b", 1e-8},
  };

  std::vector<std::pair<std::string, Outcome>> results;
  results.emplace_back("exact oracles", exact_oracles());
  results.emplace_back("Chebyshev exactness", chebyshev_exactness());
  results.emplace_back("Catalan sweep", sweep(Family::Catalan, catalan_tol, 30.0));
  results.emplace_back("Motzkin sweep", sweep(Family::Motzkin, motzkin_tol, 30.0));
  results.emplace_back("transform consistency", transform_pairs());
  results.emplace_back("symmetry lemma grid", lemma1_grid());
  results.emplace_back("psi difference stability", psi_stability());
  results.emplace_back("deterministic CSV", determinism(cli));

  std::set<int> failed;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [name, outcome] = results[i];
    const int id = static_cast<int>(i) + 1;
    if (!outcome.pass) failed.insert(id);
    std::printf("[%s] %d  %s: %s%s\n", outcome.pass ? "PASS" : "FAIL", id, name.c_str(), outcome.detail.c_str(),
                !outcome.pass && known.count(id) ? " (known failure)" : "");
    if (id == 7) psi_supplement();
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failed.size(), results.size());
  for (int k : known) {
    if (!failed.count(k)) std::printf("criterion %d listed as a known failure but passed\n", k);
  }
  return failed == known ? 0 : 1;
}
