#pragma once

// Catalan-to-Motzkin integrand transforms.
//
// If C(n) = integral of f^(2n) g, then
//   M(n) = integral of 1/2 [(1+f)^n + (1-f)^n] g                       (simple)
// and if C(n) = 1/(n+1) integral of f^(2n) g, then
//   M(n) = integral of [phi_{n+2}(f) - phi_{n+1}(f)] / f^2 g            (phi)
// with phi_m(t) = [(1+t)^m + (1-t)^m - 2] / m.
//
// All three polynomial pieces are evaluated from exact-rational coefficients
// in powers of t^2, never from the closed forms, so nothing cancels near t = 0.

#include "catmot/exact.hpp"
#include "catmot/quadrature.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace catmot {

/// h(x, distance from lower end, distance to upper end)
using PointFunction = std::function<double(double x, double from_lower, double to_upper)>;
/// h(n, x, from_lower, to_upper)
using SequenceIntegrand =
    std::function<double(unsigned n, double x, double from_lower, double to_upper)>;

/// x^n by repeated squaring.
double ipow(double x, unsigned n);

/// sum_{j>=0} coeff_j s^j by Horner.
double horner(std::span<const double> coefficients, double s);

/// 1/2 [(1+t)^n + (1-t)^n] = sum_j C(n, 2j) t^(2j).
class EvenBinomialSum {
 public:
  explicit EvenBinomialSum(unsigned n);

  unsigned order() const { return n_; }
  /// Coefficients of t^0, t^2, t^4, ...
  const std::vector<ExactRational>& coefficients() const { return exact_; }
  double operator()(double t) const { return horner(rounded_, t * t); }

 private:
  unsigned n_;
  std::vector<ExactRational> exact_;
  std::vector<double> rounded_;
};

/// phi_m(t) = [(1+t)^m + (1-t)^m - 2] / m = sum_{j>=1} 2 C(m, 2j)/m t^(2j).
class PhiEvaluator {
 public:
  explicit PhiEvaluator(unsigned m);

  unsigned order() const { return m_; }
  /// Coefficients of t^2, t^4, ...
  const std::vector<ExactRational>& coefficients() const { return exact_; }
  double operator()(double t) const;

 private:
  unsigned m_;
  std::vector<ExactRational> exact_;
  std::vector<double> rounded_;
};

/// [phi_{n+2}(t) - phi_{n+1}(t)] / t^2 as a polynomial in s = t^2.
/// The t^2 terms of the two phis cancel exactly in the coefficients, leaving
/// a constant term of 1; every coefficient is nonnegative.
class PhiDifference {
 public:
  explicit PhiDifference(unsigned n);

  unsigned order() const { return n_; }
  /// Coefficients of s^0, s^1, ...
  const std::vector<ExactRational>& coefficients() const { return exact_; }
  double over_square(double s) const { return horner(rounded_, s); }
  /// phi_{n+2}(t) - phi_{n+1}(t)
  double operator()(double t) const { return t * t * over_square(t * t); }

 private:
  unsigned n_;
  std::vector<ExactRational> exact_;
  std::vector<double> rounded_;
};

/// psi_{n+2}(x) - psi_{n+1}(x), psi_m(x) = [(1+2x)^m - 1] / m, as
/// sum_{j>=2} c_j (2x)^j with exact c_j = C(n+2,j)/(n+2) - C(n+1,j)/(n+1).
class PsiDifference {
 public:
  explicit PsiDifference(unsigned n);

  unsigned order() const { return n_; }
  /// c_2, c_3, ... (coefficients of (2x)^2, (2x)^3, ...)
  const std::vector<ExactRational>& coefficients() const { return exact_; }
  /// difference / x^2, a polynomial in x
  double over_square(double x) const;
  double operator()(double x) const { return x * x * over_square(x); }

 private:
  unsigned n_;
  std::vector<ExactRational> exact_;
  std::vector<double> rounded_;  // c_j 2^j, j >= 2
};

/// Shared, immutable evaluators; orders up to 128 are built once and reused.
std::shared_ptr<const EvenBinomialSum> even_binomial_sum(unsigned n);
std::shared_ptr<const PhiDifference> phi_difference(unsigned n);
std::shared_ptr<const PsiDifference> psi_difference_polynomial(unsigned n);

double psi_difference(unsigned n, double x);

/// f and g such that C(n) = [1/(n+1)] * integral over domain of f^(2n) g.
struct CatalanForm {
  std::function<double(double)> f;
  PointFunction g;
  quad::Interval domain;
  bool has_inverse_n_plus_1 = false;
};

/// n -> integrand of the Motzkin representation produced by a transform.
using MotzkinIntegrand = SequenceIntegrand;

/// Simple transform. Throws std::invalid_argument for forms with 1/(n+1).
MotzkinIntegrand transform_simple(const CatalanForm& form);

/// phi transform. Throws std::invalid_argument for forms without 1/(n+1).
/// Where f(x) = 0 the result is the limit g(x).
MotzkinIntegrand transform_phi(const CatalanForm& form);

/// The transform matching the form's flavour.
MotzkinIntegrand transform(const CatalanForm& form);

enum class ConsistencyMode { Pointwise, ValueOnly };
std::string_view mode_name(ConsistencyMode mode);

/// A catalog Catalan entry rewritten as (f, g), with the Motzkin entry the
/// transform is expected to reproduce (if the catalog has one).
struct RegisteredForm {
  std::string catalan_id;
  CatalanForm form;
  std::optional<std::string> motzkin_id;
  ConsistencyMode mode = ConsistencyMode::Pointwise;
};

std::span<const RegisteredForm> registered_forms();
/// nullptr when `catalan_id` has no form.
const RegisteredForm* find_form(std::string_view catalan_id);

/// Integral over form.domain of `integrand(n, .)`; exp-sinh on [a, inf), tanh-sinh otherwise.
quad::QuadratureResult integrate_form(const MotzkinIntegrand& integrand, const CatalanForm& form,
                                      unsigned n, const quad::QuadConfig& cfg);

struct ConsistencyReport {
  ConsistencyMode mode;
  double max_deviation = 0.0;  // relative
  double tolerance = 0.0;
  int samples = 0;
  bool agrees = false;
};

/// Pointwise: transform output vs the catalog Motzkin integrand (with its
/// prefactor) at `samples` interior points, tolerance 1e-12.
/// ValueOnly: the two integrals, tolerance 1e-10.
/// Throws std::out_of_range for an unknown id or a Catalan id without a form.
ConsistencyReport transform_consistency(std::string_view catalan_id, std::string_view motzkin_id,
                                        ConsistencyMode mode, unsigned n, int samples = 64);

bool check_transform_consistency(std::string_view catalan_id, std::string_view motzkin_id,
                                 ConsistencyMode mode, unsigned n);

/// Symmetry of cos^r(pi x/a) sin^s(pi x/a) about a/2.
struct Lemma1Result {
  double first_half = 0.0;   // integral over (0, a/2)
  double second_half = 0.0;  // integral over (a/2, a)
  double sign = 1.0;         // (-1)^r
  bool holds = false;
};

/// Throws std::invalid_argument unless a > 0 and tol > 0.
Lemma1Result lemma1_sides(unsigned r, unsigned s, double a, double tol);
bool check_lemma1(unsigned r, unsigned s, double a, double tol);

}  // namespace catmot
