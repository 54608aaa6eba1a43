#pragma once

// Quadrature engines for the integrand classes found in the catalog:
// Gauss-Chebyshev (both kinds), tanh-sinh for finite intervals with
// algebraic endpoint singularities, exp-sinh for [a, inf), and adaptive
// Gauss-Kronrod 7/15 for smooth or sign-changing integrands.
//
// Integrands may be callable either as h(x) or as h(x, from_lower, to_upper),
// where the last two arguments are the distances from the abscissa to the
// interval ends. Near an endpoint these distances are accurate even when x
// itself has rounded onto the endpoint, so integrands with 1/sqrt(b - x)
// style factors should use them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace catmot::quad {

/// Integration domain; `upper` may be +infinity.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool semi_infinite() const { return std::isinf(upper); }
  double width() const { return upper - lower; }
  bool contains_strictly(double x) const { return x > lower && x < upper; }
};

enum class Rule { ChebyshevFirst, ChebyshevSecond, TanhSinh, ExpSinh, GaussKronrod };

std::string_view rule_name(Rule rule);
std::optional<Rule> parse_rule(std::string_view name);

struct QuadConfig {
  double rel_tol = 1e-11;
  double abs_tol = 1e-300;
  int max_levels = 12;
  int max_subdivisions = 2000;
  std::optional<Rule> rule_override;

  /// Throws std::invalid_argument unless rel_tol > 0, abs_tol >= 0, max_levels >= 3.
  void validate() const;
  /// max(rel_tol * |value|, abs_tol)
  double target(double value) const { return std::max(rel_tol * std::abs(value), abs_tol); }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::string rule;
  bool converged = false;
};

/// Largest tanh-sinh / exp-sinh refinement level with a precomputed table.
inline constexpr int kMaxTableLevel = 16;

namespace detail {

struct Node {
  double complement;  // distance to the nearer end of [-1, 1], or exp(u) for exp-sinh
  double weight;
};

/// Nodes added at `level` for t > 0 (level 0 excludes t = 0). Built once, thread-safe.
std::span<const Node> tanh_sinh_level(int level);
std::span<const Node> exp_sinh_level(int level);
/// Mirrored nodes for exp-sinh (t < 0).
std::span<const Node> exp_sinh_level_negative(int level);
double exp_sinh_center_weight();

struct KronrodPair {
  static const double nodes[8];
  static const double kronrod_weights[8];
  static const double gauss_weights[4];
};

template <class F>
double call(F& h, double x, double from_lower, double to_upper) {
  if constexpr (std::is_invocable_r_v<double, F&, double, double, double>) {
    return h(x, from_lower, to_upper);
  } else {
    return h(x);
  }
}

inline void require_finite_interval(double a, double b, const char* who) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw std::invalid_argument(std::string(who) + ": need finite a < b");
  }
}

}  // namespace detail

/// (pi/N) * sum h(cos((2k-1)pi/(2N))). Approximates the integral of
/// h(x)/sqrt(1-x^2) over (-1, 1); exact for polynomials of degree <= 2N-1.
template <class F>
QuadratureResult gauss_chebyshev_first(F&& h, int nodes) {
  if (nodes < 1) throw std::invalid_argument("gauss_chebyshev_first: N >= 1 required");
  const double pi = std::numbers::pi;
  double sum = 0.0, magnitude = 0.0;
  for (int k = 1; k <= nodes; ++k) {
    const double x = std::cos((2 * k - 1) * pi / (2.0 * nodes));
    const double v = detail::call(h, x, 1.0 + x, 1.0 - x);
    sum += v;
    magnitude += std::abs(v);
  }
  const double scale = pi / nodes;
  QuadratureResult r;
  r.value = scale * sum;
  r.error_estimate = nodes * std::numeric_limits<double>::epsilon() * scale * magnitude;
  r.evaluations = static_cast<std::size_t>(nodes);
  r.rule = std::string(rule_name(Rule::ChebyshevFirst));
  r.converged = true;
  return r;
}

/// sum w_k h(x_k), x_k = cos(k pi/(N+1)), w_k = pi/(N+1) sin^2(k pi/(N+1)).
/// Approximates the integral of h(x) sqrt(1-x^2) over (-1, 1).
template <class F>
QuadratureResult gauss_chebyshev_second(F&& h, int nodes) {
  if (nodes < 1) throw std::invalid_argument("gauss_chebyshev_second: N >= 1 required");
  const double pi = std::numbers::pi;
  const double step = pi / (nodes + 1);
  double sum = 0.0, magnitude = 0.0;
  for (int k = 1; k <= nodes; ++k) {
    const double x = std::cos(k * step);
    const double s = std::sin(k * step);
    const double v = s * s * detail::call(h, x, 1.0 + x, 1.0 - x);
    sum += v;
    magnitude += std::abs(v);
  }
  QuadratureResult r;
  r.value = step * sum;
  r.error_estimate = nodes * std::numeric_limits<double>::epsilon() * step * magnitude;
  r.evaluations = static_cast<std::size_t>(nodes);
  r.rule = std::string(rule_name(Rule::ChebyshevSecond));
  r.converged = true;
  return r;
}

/// Double-exponential rule on (a, b): x = mid + halfwidth * tanh(pi/2 sinh t).
/// Levels halve the step in t; the estimate is accepted once two successive
/// levels (from level 3 on) agree to cfg.target(). Endpoints are never evaluated.
template <class F>
QuadratureResult tanh_sinh(F&& h, double a, double b, const QuadConfig& cfg = {}) {
  detail::require_finite_interval(a, b, "tanh_sinh");
  cfg.validate();
  const int max_level = std::min(cfg.max_levels, kMaxTableLevel);
  const double half = 0.5 * (b - a);
  const double width = b - a;
  const double lo_inside = std::nextafter(a, b);
  const double hi_inside = std::nextafter(b, a);

  std::size_t evaluations = 0;
  auto at_offset = [&](const detail::Node& node) {
    const double d = half * node.complement;
    if (!(d > 0.0)) return 0.0;
    const double xl = std::clamp(a + d, lo_inside, hi_inside);
    const double xr = std::clamp(b - d, lo_inside, hi_inside);
    evaluations += 2;
    return node.weight * (detail::call(h, xl, d, width - d) + detail::call(h, xr, width - d, d));
  };

  // Level 0: step 1, including the centre node (weight pi/2).
  double total = std::numbers::pi / 2 * detail::call(h, a + half, half, half);
  ++evaluations;
  for (const auto& node : detail::tanh_sinh_level(0)) total += at_offset(node);

  double step = 1.0;
  double estimate = half * total;
  double error = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int level = 1; level <= max_level; ++level) {
    step *= 0.5;
    double added = 0.0;
    for (const auto& node : detail::tanh_sinh_level(level)) added += at_offset(node);
    total += added;
    const double next = half * step * total;
    error = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && error <= cfg.target(estimate)) {
      converged = true;
      break;
    }
  }
  QuadratureResult r;
  r.value = estimate;
  r.error_estimate = error;
  r.evaluations = evaluations;
  r.rule = std::string(rule_name(Rule::TanhSinh));
  r.converged = converged;
  return r;
}

/// Double-exponential rule on (a, inf): x = a + exp(pi/2 sinh t).
/// Abscissae span roughly (a + 1e-100, a + 1e100); the integrand should decay
/// at least like x^-2.
template <class F>
QuadratureResult exp_sinh(F&& h, double a, const QuadConfig& cfg = {}) {
  if (!std::isfinite(a)) throw std::invalid_argument("exp_sinh: finite lower limit required");
  cfg.validate();
  const int max_level = std::min(cfg.max_levels, kMaxTableLevel);
  const double inf = std::numeric_limits<double>::infinity();

  std::size_t evaluations = 0;
  auto at = [&](const detail::Node& node) {
    ++evaluations;
    const double d = node.complement;
    return node.weight * detail::call(h, a + d, d, inf);
  };
  auto level_sum = [&](int level) {
    double s = 0.0;
    for (const auto& node : detail::exp_sinh_level_negative(level)) s += at(node);
    for (const auto& node : detail::exp_sinh_level(level)) s += at(node);
    return s;
  };

  double total = detail::exp_sinh_center_weight() * detail::call(h, a + 1.0, 1.0, inf);
  ++evaluations;
  total += level_sum(0);

  double step = 1.0;
  double estimate = total;
  double error = inf;
  bool converged = false;
  for (int level = 1; level <= max_level; ++level) {
    step *= 0.5;
    total += level_sum(level);
    const double next = step * total;
    error = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && error <= cfg.target(estimate)) {
      converged = true;
      break;
    }
  }
  QuadratureResult r;
  r.value = estimate;
  r.error_estimate = error;
  r.evaluations = evaluations;
  r.rule = std::string(rule_name(Rule::ExpSinh));
  r.converged = converged;
  return r;
}

/// Integral over (0, inf) by exp-sinh.
template <class F>
QuadratureResult integrate_semi_infinite(F&& h, const QuadConfig& cfg = {}) {
  return exp_sinh(std::forward<F>(h), 0.0, cfg);
}

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b]. The initial partition is
/// cut at `split_points`; afterwards the interval with the largest error
/// estimate is bisected until the summed error meets cfg.target() or
/// cfg.max_subdivisions intervals exist. The result is summed in interval
/// order, so it does not depend on the bisection history.
template <class F>
QuadratureResult adaptive_gk(F&& h, double a, double b, const QuadConfig& cfg = {},
                             std::span<const double> split_points = {}) {
  detail::require_finite_interval(a, b, "adaptive_gk");
  cfg.validate();
  using detail::KronrodPair;

  struct Piece {
    double lo, hi, value, error;
  };
  std::size_t evaluations = 0;
  auto rule = [&](double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    auto eval = [&](double x) {
      ++evaluations;
      return detail::call(h, x, x - a, b - x);
    };
    const double fc = eval(centre);
    double kronrod = KronrodPair::kronrod_weights[7] * fc;
    double gauss = KronrodPair::gauss_weights[3] * fc;
    for (int j = 0; j < 7; ++j) {
      const double dx = half * KronrodPair::nodes[j];
      const double pair = eval(centre - dx) + eval(centre + dx);
      kronrod += KronrodPair::kronrod_weights[j] * pair;
      if (j % 2 == 1) gauss += KronrodPair::gauss_weights[j / 2] * pair;
    }
    return Piece{lo, hi, half * kronrod, std::abs(half * (kronrod - gauss))};
  };

  std::vector<double> cuts{a};
  for (double s : split_points) {
    if (!(s > a && s < b)) throw std::invalid_argument("adaptive_gk: split point outside (a, b)");
    cuts.push_back(s);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Max-heap on error; ties broken by position so the bisection order is fixed.
  auto worse = [](const Piece& p, const Piece& q) {
    return p.error < q.error || (p.error == q.error && p.lo > q.lo);
  };
  std::priority_queue<Piece, std::vector<Piece>, decltype(worse)> queue(worse);
  std::vector<Piece> finished;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) queue.push(rule(cuts[i], cuts[i + 1]));

  auto totals = [&] {
    std::vector<Piece> all = finished;
    auto copy = queue;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Piece& p, const Piece& q) { return p.lo < q.lo; });
    double value = 0.0, error = 0.0;
    for (const auto& p : all) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  bool converged = error <= cfg.target(value);
  std::size_t pieces = queue.size();
  while (!converged && pieces < static_cast<std::size_t>(cfg.max_subdivisions) && !queue.empty()) {
    Piece worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      finished.push_back(worst);  // cannot be bisected further
      continue;
    }
    const Piece left = rule(worst.lo, mid);
    const Piece right = rule(mid, worst.hi);
    queue.push(left);
    queue.push(right);
    ++pieces;
    error += left.error + right.error - worst.error;
    value += left.value + right.value - worst.value;
    converged = error <= cfg.target(value);
  }
  // Recompute in position order; the running sums above only steer the loop.
  auto [v, e] = totals();
  QuadratureResult r;
  r.value = v;
  r.error_estimate = e;
  r.evaluations = evaluations;
  r.rule = std::string(rule_name(Rule::GaussKronrod));
  r.converged = e <= cfg.target(v);
  return r;
}

/// Dispatches to tanh-sinh, exp-sinh or adaptive Gauss-Kronrod over `domain`.
/// Chebyshev rules need a change of variables and are not handled here.
template <class F>
QuadratureResult integrate(F&& h, Interval domain, Rule rule, const QuadConfig& cfg = {},
                           std::span<const double> split_points = {}) {
  switch (rule) {
    case Rule::ExpSinh:
      if (!domain.semi_infinite()) throw std::invalid_argument("exp-sinh needs a [a, inf) domain");
      return exp_sinh(std::forward<F>(h), domain.lower, cfg);
    case Rule::TanhSinh:
      if (domain.semi_infinite()) throw std::invalid_argument("tanh-sinh needs a finite domain");
      return tanh_sinh(std::forward<F>(h), domain.lower, domain.upper, cfg);
    case Rule::GaussKronrod:
      if (domain.semi_infinite()) throw std::invalid_argument("gauss-kronrod needs a finite domain");
      return adaptive_gk(std::forward<F>(h), domain.lower, domain.upper, cfg, split_points);
    default:
      throw std::invalid_argument("Chebyshev rules need an exactness map");
  }
}

}  // namespace catmot::quad
