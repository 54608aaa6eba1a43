#include "catmot/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace catmot {

std::string_view family_name(Family family) {
  return family == Family::Catalan ? "catalan" : "motzkin";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "catalan" || name == "Catalan") return Family::Catalan;
  if (name == "motzkin" || name == "Motzkin") return Family::Motzkin;
  return std::nullopt;
}

std::string_view singularity_name(Singularity tag) {
  switch (tag) {
    case Singularity::LeftEndpointAlgebraic: return "LeftEndpointAlgebraic";
    case Singularity::RightEndpointAlgebraic: return "RightEndpointAlgebraic";
    case Singularity::SemiInfinite: return "SemiInfinite";
    case Singularity::RemovableInterior: return "RemovableInterior";
    case Singularity::Smooth: return "Smooth";
  }
  return "?";
}

double Prefactor::value() const {
  const double r = to_double(rational);
  return pi_power == 0 ? r : r / std::numbers::pi;
}

bool Representation::has(Singularity tag) const {
  return std::find(singularities.begin(), singularities.end(), tag) != singularities.end();
}

bool Representation::endpoint_singular() const {
  return has(Singularity::LeftEndpointAlgebraic) || has(Singularity::RightEndpointAlgebraic);
}

bool VerificationRow::converged() const { return rule.find(kNonConvergedTag) == std::string::npos; }

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

ExactInteger pow2(unsigned e) { return ExactInteger(1) << e; }

/// rational * pi^-1
Prefactor over_pi(ExactRational r) { return {std::move(r), -1}; }

using S = Singularity;
const std::vector<S> kBothEnds{S::LeftEndpointAlgebraic, S::RightEndpointAlgebraic};

std::vector<Representation> build_catalog() {
  std::vector<Representation> c;
  auto add = [&](Representation r) { c.push_back(std::move(r)); };
  auto first_kind = [](double center, double half, auto poly, auto nodes) {
    return ExactnessHint{ChebyshevKind::First, center, half, poly, nodes};
  };
  auto second_kind = [](double center, double half, auto poly, auto nodes) {
    return ExactnessHint{ChebyshevKind::Second, center, half, poly, nodes};
  };

  // Catalan

  add({.id = "cat.eq2",
       .family = Family::Catalan,
       .prefactor = [](unsigned n) { return over_pi(ExactRational(pow2(2 * n), n + 1)); },
       .integrand = [](unsigned n, double x, double dl,
                       double dr) { return ipow(x, 2 * n) / std::sqrt(dl * dr); },
       .domain = {-1, 1},
       .singularities = kBothEnds,
       .exactness = first_kind(
           0.0, 1.0, [](unsigned n, double t) { return ipow(t, 2 * n); },
           [](unsigned n) { return int(n) + 1; }),
       .tolerance = 1e-9,
       .anchor = "C(n) = 4^n/((n+1) pi) * int_{-1}^{1} x^(2n) / sqrt(1-x^2) dx"});

  add({.id = "cat.eq3",
       .family = Family::Catalan,
       .prefactor = [](unsigned n) { return over_pi(ExactRational(pow2(2 * n), n + 1)); },
       .integrand = [](unsigned n, double x, double, double) { return ipow(std::cos(x), 2 * n); },
       .domain = {0, kPi},
       .singularities = {S::Smooth},
       .tolerance = 1e-11,
       .anchor = "C(n) = 4^n/((n+1) pi) * int_{0}^{pi} cos^(2n)(x) dx"});

  add({.id = "cat.eq4",
       .family = Family::Catalan,
       .prefactor = [](unsigned n) { return over_pi(ExactRational(pow2(2 * n), n + 1)); },
       .integrand = [](unsigned n, double x, double dl, double dr) { return ipow(x, n) / std::sqrt(dl * dr); },
       .domain = {0, 1},
       .singularities = kBothEnds,
       // x = (1+t)/2 turns sqrt(x - x^2) dx into the first-kind weight.
       .exactness = first_kind(
           0.5, 0.5, [](unsigned n, double t) { return ipow(0.5 * (1 + t), n); },
           [](unsigned n) { return int(n) + 1; }),
       .tolerance = 1e-9,
       .anchor = "C(n) = 4^n/((n+1) pi) * int_{0}^{1} x^n / sqrt(x - x^2) dx"});

  add({.id = "cat.eq5",
       .family = Family::Catalan,
       .prefactor = [](unsigned) { return over_pi(ExactRational(1, 2)); },
       .integrand = [](unsigned n, double x, double dl,
                       double dr) { return ipow(x, n) * std::sqrt(dr / dl); },
       .domain = {0, 4},
       .singularities = kBothEnds,
       .tolerance = 1e-9,
       .anchor = "C(n) = 1/(2 pi) * int_{0}^{4} x^n sqrt((4-x)/x) dx"});

  add({.id = "cat.eq6",
       .family = Family::Catalan,
       .prefactor = [](unsigned n) { return over_pi(ExactRational(pow2(2 * n + 2))); },
       .integrand =
           [](unsigned n, double x, double, double) {
             const double s = 1 / (1 + x * x);
             const double q = x * s;
             return q * q * ipow(s, n);
           },
       .domain = {0, kInf},
       .singularities = {S::SemiInfinite},
       .tolerance = 1e-9,
       .anchor = "C(n) = 2^(2n+2)/pi * int_{0}^{inf} x^2 / (1+x^2)^(n+2) dx"});

  add({.id = "cat.eq7",
       .family = Family::Catalan,
       .prefactor = [](unsigned) { return Prefactor{ExactRational(1), 0}; },
       .integrand =
           [](unsigned n, double x, double, double) {
             const double s = std::sin(kPi * x);
             return ipow(2 * std::cos(kPi * x), 2 * n) * 2 * s * s;
           },
       .domain = {0, 1},
       .singularities = {S::Smooth},
       .tolerance = 1e-11,
       .anchor = "C(n) = int_{0}^{1} (2 cos(pi x))^(2n) * 2 sin^2(pi x) dx"});

  add({.id = "cat.eq8",
       .family = Family::Catalan,
       .prefactor = [](unsigned n) { return over_pi(ExactRational(pow2(2 * n + 5))); },
       .integrand =
           [](unsigned n, double x, double, double) {
             const double x2 = x * x;
             return x2 * ipow((1 - x2) / (1 + x2), 2 * n) / ipow(1 + x2, 3);
           },
       .domain = {0, 1},
       .singularities = {S::Smooth},
       .tolerance = 1e-11,
       .anchor = "C(n) = 2^(2n+5)/pi * int_{0}^{1} x^2 (1-x^2)^(2n) / (1+x^2)^(2n+3) dx"});

  add({.id = "cat.eq9",
       .family = Family::Catalan,
       .prefactor = [](unsigned n) { return over_pi(ExactRational(pow2(2 * n + 1))); },
       .integrand = [](unsigned n, double x, double dl,
                       double dr) { return ipow(x, 2 * n) * std::sqrt(dl * dr); },
       .domain = {-1, 1},
       .singularities = {S::Smooth},
       .exactness = second_kind(
           0.0, 1.0, [](unsigned n, double t) { return ipow(t, 2 * n); },
           [](unsigned n) { return int(n) + 1; }),
       .tolerance = 1e-11,
       .anchor = "C(n) = 2^(2n+1)/pi * int_{-1}^{1} x^(2n) sqrt(1-x^2) dx"});

  add({.id = "cat.eq10",
       .family = Family::Catalan,
       .prefactor = [](unsigned) { return over_pi(ExactRational(1, 2)); },
       .integrand = [](unsigned n, double x, double dl,
                       double dr) { return ipow(x, 2 * n) * std::sqrt(dl * dr); },
       .domain = {-2, 2},
       .singularities = {S::Smooth},
       // x = 2t: sqrt(4 - x^2) dx = 4 sqrt(1 - t^2) dt
       .exactness = second_kind(
           0.0, 2.0, [](unsigned n, double t) { return 4 * ipow(2 * t, 2 * n); },
           [](unsigned n) { return int(n) + 1; }),
       .tolerance = 1e-11,
       .anchor = "C(n) = 1/(2 pi) * int_{-2}^{2} x^(2n) sqrt(4-x^2) dx"});

  add({.id = "cat.conc1",
       .family = Family::Catalan,
       .prefactor = [](unsigned n) { return over_pi(ExactRational(pow2(2 * n + 1), 2 * n + 1)); },
       .integrand = [](unsigned n, double x, double dl,
                       double dr) { return ipow(x, 2 * n + 2) / std::sqrt(dl * dr); },
       .domain = {-1, 1},
       .singularities = kBothEnds,
       // degree 2n+2 needs n+2 nodes
       .exactness = first_kind(
           0.0, 1.0, [](unsigned n, double t) { return ipow(t, 2 * n + 2); },
           [](unsigned n) { return int(n) + 2; }),
       .tolerance = 1e-9,
       .anchor = "C(n) = 2^(2n+1)/((2n+1) pi) * int_{-1}^{1} x^(2n+2) / sqrt(1-x^2) dx"});

  add({.id = "cat.conc2",
       .family = Family::Catalan,
       .n_min = 1,
       .prefactor = [](unsigned n) { return over_pi(ExactRational(pow2(2 * n), n)); },
       .integrand =
           [](unsigned n, double x, double dl, double dr) {
             return ipow(x, n) * (2 * x - 1) / std::sqrt(dl * dr);
           },
       .domain = {0, 1},
       .singularities = kBothEnds,
       .exactness = first_kind(
           0.5, 0.5, [](unsigned n, double t) { return ipow(0.5 * (1 + t), n) * t; },
           [](unsigned n) { return int(n) + 1; }),
       .tolerance = 1e-9,
       .anchor = "C(n) = 4^n/(n pi) * int_{0}^{1} (2x^(n+1) - x^n) / sqrt(x - x^2) dx,  n >= 1"});

  // Motzkin

  add({.id = "mot.12a",
       .family = Family::Motzkin,
       .prefactor = [](unsigned) { return over_pi(ExactRational(1, 4)); },
       .integrand =
           [](unsigned n, double x, double dl, double dr) {
             const double r = std::sqrt(x);
             return (ipow(1 + r, n) + ipow(1 - r, n)) * std::sqrt(dr / dl);
           },
       .domain = {0, 4},
       .singularities = kBothEnds,
       .tolerance = 1e-9,
       .anchor = "M(n) = 1/(4 pi) * int_{0}^{4} ((1+sqrt(x))^n + (1-sqrt(x))^n) sqrt((4-x)/x) dx"});

  add({.id = "mot.12b",
       .family = Family::Motzkin,
       .prefactor = [](unsigned) { return over_pi(ExactRational(2)); },
       .integrand =
           [](unsigned n, double x, double, double) {
             const double f = 2 / std::sqrt(1 + x * x);
             const double q = x / (1 + x * x);
             return (ipow(1 + f, n) + ipow(1 - f, n)) * q * q;
           },
       .domain = {0, kInf},
       .singularities = {S::SemiInfinite},
       .tolerance = 1e-9,
       .anchor = "M(n) = 2/pi * int_{0}^{inf} ((1 + 2/sqrt(1+x^2))^n + (1 - 2/sqrt(1+x^2))^n) "
                 "x^2/(1+x^2)^2 dx"});

  add({.id = "mot.12c",
       .family = Family::Motzkin,
       .prefactor = [](unsigned) { return Prefactor{ExactRational(1), 0}; },
       .integrand =
           [](unsigned n, double x, double, double) {
             const double f = 2 * std::cos(kPi * x);
             const double s = std::sin(kPi * x);
             return (ipow(1 + f, n) + ipow(1 - f, n)) * s * s;
           },
       .domain = {0, 1},
       .singularities = {S::Smooth},
       // zeros of 1 - 2cos(pi x) and 1 + 2cos(pi x)
       .split_points = {std::acos(0.5) / kPi, std::acos(-0.5) / kPi},
       .tolerance = 1e-9,
       .anchor = "M(n) = int_{0}^{1} ((1 + 2cos(pi x))^n + (1 - 2cos(pi x))^n) sin^2(pi x) dx"});

  add({.id = "mot.12d",
       .family = Family::Motzkin,
       .prefactor = [](unsigned) { return over_pi(ExactRational(16)); },
       .integrand =
           [](unsigned n, double x, double, double) {
             const double x2 = x * x;
             const double s = 1 / (1 + x2);
             return x2 * (ipow((3 - x2) * s, n) + ipow((3 * x2 - 1) * s, n)) * ipow(s, 3);
           },
       .domain = {0, 1},
       .singularities = {S::Smooth},
       .split_points = {1 / std::sqrt(3.0)},
       .tolerance = 1e-9,
       .anchor = "M(n) = 16/pi * int_{0}^{1} x^2 ((3-x^2)^n + (3x^2-1)^n) / (1+x^2)^(n+3) dx"});

  add({.id = "mot.12e",
       .family = Family::Motzkin,
       .prefactor = [](unsigned) { return over_pi(ExactRational(2)); },
       .integrand = [](unsigned n, double x, double dl,
                       double dr) { return ipow(1 + 2 * x, n) * std::sqrt(dl * dr); },
       .domain = {-1, 1},
       .singularities = {S::Smooth},
       .exactness = second_kind(
           0.0, 1.0, [](unsigned n, double t) { return ipow(1 + 2 * t, n); },
           [](unsigned n) { return int((n + 1) / 2) + 1; }),
       .split_points = {-0.5},
       .tolerance = 1e-9,
       .anchor = "M(n) = 2/pi * int_{-1}^{1} (1+2x)^n sqrt(1-x^2) dx"});

  add({.id = "mot.12f",
       .family = Family::Motzkin,
       .prefactor = [](unsigned) { return over_pi(ExactRational(1, 2)); },
       .integrand = [](unsigned n, double x, double dl,
                       double dr) { return ipow(1 + x, n) * std::sqrt(dl * dr); },
       .domain = {-2, 2},
       .singularities = {S::Smooth},
       .exactness = second_kind(
           0.0, 2.0, [](unsigned n, double t) { return 4 * ipow(1 + 2 * t, n); },
           [](unsigned n) { return int((n + 1) / 2) + 1; }),
       .split_points = {-1.0},
       .tolerance = 1e-9,
       .anchor = "M(n) = 1/(2 pi) * int_{-2}^{2} (1+x)^n sqrt(4-x^2) dx"});

  add({.id = "mot.13a",
       .family = Family::Motzkin,
       .prefactor = [](unsigned) { return over_pi(ExactRational(1, 4)); },
       // phi difference at t = 2 sqrt(x), divided by x: 4 * (difference / t^2) at t^2 = 4x.
       .integrand =
           [](unsigned n, double x, double dl, double dr) {
             return 4 * phi_difference(n)->over_square(4 * x) / std::sqrt(dl * dr);
           },
       .domain = {0, 1},
       .singularities = kBothEnds,
       .tolerance = 1e-8,
       .anchor = "M(n) = 1/(4 pi) * int_{0}^{1} (phi_{n+2}(x) - phi_{n+1}(x)) / (x sqrt(x - x^2)) dx,  "
                 "phi_m(x) = ((1+2 sqrt(x))^m + (1-2 sqrt(x))^m - 2)/m"});

  add({.id = "mot.13b",
       .family = Family::Motzkin,
       .prefactor = [](unsigned) { return over_pi(ExactRational(1, 2)); },
       .integrand =
           [](unsigned n, double x, double dl, double dr) {
             return psi_difference_polynomial(n)->over_square(x) / std::sqrt(dl * dr);
           },
       .domain = {-1, 1},
       .singularities = {S::LeftEndpointAlgebraic, S::RightEndpointAlgebraic, S::RemovableInterior},
       .tolerance = 1e-8,
       .anchor = "M(n) = 1/(2 pi) * int_{-1}^{1} (psi_{n+2}(x) - psi_{n+1}(x)) / (x^2 sqrt(1-x^2)) dx,  "
                 "psi_m(x) = ((1+2x)^m - 1)/m"});

  return c;
}

}  // namespace

std::span<const Representation> list_representations() {
  static const std::vector<Representation> catalog = build_catalog();
  return catalog;
}

const Representation* find_representation(std::string_view id) {
  for (const auto& rep : list_representations()) {
    if (rep.id == id) return &rep;
  }
  return nullptr;
}

const Representation& representation(std::string_view id) {
  const Representation* rep = find_representation(id);
  if (rep == nullptr) throw std::out_of_range("unknown representation: " + std::string(id));
  return *rep;
}

double evaluate_integrand(const Representation& rep, unsigned n, double x) {
  if (n < rep.n_min) throw std::domain_error(rep.id + ": n below n_min");
  if (!rep.domain.contains_strictly(x)) throw std::domain_error(rep.id + ": x outside the open domain");
  return rep.integrand(n, x, x - rep.domain.lower, rep.domain.upper - x);
}

ExactInteger exact_value(const Representation& rep, unsigned n) {
  return rep.family == Family::Catalan ? catalan(n) : motzkin(n);
}

quad::Rule select_rule(const Representation& rep, const quad::QuadConfig& cfg) {
  if (cfg.rule_override) return *cfg.rule_override;
  if (rep.exactness) {
    return rep.exactness->kind == ChebyshevKind::First ? quad::Rule::ChebyshevFirst
                                                       : quad::Rule::ChebyshevSecond;
  }
  if (rep.has(Singularity::SemiInfinite)) return quad::Rule::ExpSinh;
  if (rep.endpoint_singular()) return quad::Rule::TanhSinh;
  return quad::Rule::GaussKronrod;
}

quad::QuadratureResult integrate(const Representation& rep, unsigned n, const quad::QuadConfig& cfg) {
  if (n < rep.n_min) throw std::domain_error(rep.id + ": n below n_min");
  const quad::Rule rule = select_rule(rep, cfg);
  if (rule == quad::Rule::ChebyshevFirst || rule == quad::Rule::ChebyshevSecond) {
    const bool first = rule == quad::Rule::ChebyshevFirst;
    if (!rep.exactness || (rep.exactness->kind == ChebyshevKind::First) != first) {
      throw std::invalid_argument(rep.id + ": no matching Chebyshev exactness map");
    }
    const ExactnessHint& hint = *rep.exactness;
    auto h = [&](double t) { return hint.polynomial(n, t); };
    return first ? quad::gauss_chebyshev_first(h, hint.nodes(n))
                 : quad::gauss_chebyshev_second(h, hint.nodes(n));
  }
  auto h = [&](double x, double dl, double dr) { return rep.integrand(n, x, dl, dr); };
  return quad::integrate(h, rep.domain, rule, cfg, rep.split_points);
}

double representation_value(const Representation& rep, unsigned n, const quad::QuadConfig& cfg) {
  return rep.prefactor(n).value() * integrate(rep, n, cfg).value;
}

VerificationRow verify(const Representation& rep, unsigned n, const quad::QuadConfig& cfg,
                       std::optional<double> tolerance) {
  const quad::QuadratureResult result = integrate(rep, n, cfg);
  VerificationRow row;
  row.rep_id = rep.id;
  row.n = n;
  row.exact = exact_value(rep, n);
  row.estimate = rep.prefactor(n).value() * result.value;
  const double exact = to_double(row.exact);
  row.rel_err = std::abs(row.estimate - exact) / exact;
  if (std::isnan(row.rel_err)) row.rel_err = std::numeric_limits<double>::infinity();
  row.evaluations = result.evaluations;
  row.rule = result.rule;
  if (!result.converged) row.rule += kNonConvergedTag;
  row.pass = result.converged && row.rel_err <= tolerance.value_or(rep.tolerance);
  return row;
}

}  // namespace catmot
