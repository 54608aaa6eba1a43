#pragma once

// The integral representations of Catalan and Motzkin numbers, each as an
// evaluable descriptor, and numerical verification against exact values.

#include "catmot/exact.hpp"
#include "catmot/quadrature.hpp"
#include "catmot/transform.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace catmot {

enum class Family { Catalan, Motzkin };

enum class Singularity {
  LeftEndpointAlgebraic,
  RightEndpointAlgebraic,
  SemiInfinite,
  RemovableInterior,
  Smooth,
};

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);
std::string_view singularity_name(Singularity tag);

/// rational * pi^pi_power, pi_power in {0, -1}.
struct Prefactor {
  ExactRational rational;
  int pi_power = 0;

  double value() const;
};

enum class ChebyshevKind { First, Second };

/// After x = center + half_width * t the integral becomes
/// integral over (-1, 1) of polynomial(n, t) * w(t) dt, with w the Chebyshev
/// weight of the given kind. `nodes(n)` Gauss points integrate it exactly.
struct ExactnessHint {
  ChebyshevKind kind;
  double center = 0.0;
  double half_width = 1.0;
  std::function<double(unsigned n, double t)> polynomial;
  std::function<int(unsigned n)> nodes;
};

struct Representation {
  std::string id;
  Family family;
  unsigned n_min = 0;
  std::function<Prefactor(unsigned n)> prefactor;
  SequenceIntegrand integrand;  // everything under the integral sign
  quad::Interval domain;
  std::vector<Singularity> singularities{};
  std::optional<ExactnessHint> exactness{};
  std::vector<double> split_points{};  // interior sign changes, seeds for Gauss-Kronrod
  double tolerance = 1e-9;           // default relative tolerance for verify()
  std::string anchor;                // the represented identity, as text

  bool has(Singularity tag) const;
  bool endpoint_singular() const;
};

/// All 19 entries in canonical order.
std::span<const Representation> list_representations();

/// nullptr when unknown.
const Representation* find_representation(std::string_view id);
/// Throws std::out_of_range when unknown.
const Representation& representation(std::string_view id);

/// Throws std::domain_error if n < n_min or x is not strictly inside the domain.
double evaluate_integrand(const Representation& rep, unsigned n, double x);

/// catalan(n) or motzkin(n) according to the family.
ExactInteger exact_value(const Representation& rep, unsigned n);

/// Override if set, else: Chebyshev when hinted, exp-sinh when semi-infinite,
/// tanh-sinh when an endpoint is singular, adaptive Gauss-Kronrod otherwise.
quad::Rule select_rule(const Representation& rep, const quad::QuadConfig& cfg);

/// The bare integral (prefactor excluded) with the selected rule.
/// Throws std::invalid_argument if the rule cannot handle the entry.
quad::QuadratureResult integrate(const Representation& rep, unsigned n,
                                 const quad::QuadConfig& cfg);

/// prefactor * integral.
double representation_value(const Representation& rep, unsigned n, const quad::QuadConfig& cfg);

struct VerificationRow {
  std::string rep_id;
  unsigned n = 0;
  ExactInteger exact;
  double estimate = 0.0;
  double rel_err = 0.0;
  std::size_t evaluations = 0;
  std::string rule;  // carries kNonConvergedTag when quadrature did not converge
  bool pass = false;

  bool converged() const;
  bool operator==(const VerificationRow&) const = default;
};

inline constexpr std::string_view kNonConvergedTag = "[non-converged]";

/// Integrates, applies the prefactor and compares with the exact value.
/// pass requires convergence and rel_err <= tolerance (rep.tolerance if unset).
/// Throws std::domain_error if n < n_min.
VerificationRow verify(const Representation& rep, unsigned n, const quad::QuadConfig& cfg = {},
                       std::optional<double> tolerance = std::nullopt);

}  // namespace catmot
