#include "catmot/transform.hpp"

#include "catmot/catalog.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace catmot {

double ipow(double x, unsigned n) {
  double result = 1.0;
  while (n != 0) {
    if (n & 1u) result *= x;
    x *= x;
    n >>= 1;
  }
  return result;
}

double horner(std::span<const double> coefficients, double s) {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * s + *it;
  return acc;
}

namespace {

std::vector<double> rounded(const std::vector<ExactRational>& exact) {
  std::vector<double> out;
  out.reserve(exact.size());
  for (const auto& c : exact) out.push_back(to_double(c));
  return out;
}

}  // namespace

EvenBinomialSum::EvenBinomialSum(unsigned n) : n_(n) {
  for (unsigned j = 0; 2 * j <= n; ++j) exact_.emplace_back(binomial(n, 2 * j));
  rounded_ = rounded(exact_);
}

PhiEvaluator::PhiEvaluator(unsigned m) : m_(m) {
  if (m == 0) throw std::invalid_argument("phi_m needs m >= 1");
  for (unsigned j = 1; 2 * j <= m; ++j) exact_.push_back(ExactRational(2 * binomial(m, 2 * j), m));
  rounded_ = rounded(exact_);
}

double PhiEvaluator::operator()(double t) const {
  const double s = t * t;
  return s * horner(rounded_, s);
}

PhiDifference::PhiDifference(unsigned n) : n_(n) {
  const PhiEvaluator upper(n + 2), lower(n + 1);
  const auto& a = upper.coefficients();
  const auto& b = lower.coefficients();
  exact_.resize(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) exact_[j] = a[j] - (j < b.size() ? b[j] : ExactRational(0));
  if (exact_.empty() || exact_.front() != 1) {
    throw std::logic_error("phi difference: leading coefficient is not 1");
  }
  rounded_ = rounded(exact_);
}

PsiDifference::PsiDifference(unsigned n) : n_(n) {
  const unsigned hi = n + 2, lo = n + 1;
  auto coefficient = [&](unsigned j) {
    return ExactRational(binomial(hi, j), hi) - ExactRational(binomial(lo, j), lo);
  };
  if (coefficient(1) != 0) throw std::logic_error("psi difference: linear term does not vanish");
  for (unsigned j = 2; j <= hi; ++j) exact_.push_back(coefficient(j));
  for (unsigned j = 2; j <= hi; ++j) rounded_.push_back(std::ldexp(to_double(exact_[j - 2]), int(j)));
}

double PsiDifference::over_square(double x) const { return horner(rounded_, x); }

namespace {

constexpr unsigned kCachedOrders = 128;

template <class T>
std::shared_ptr<const T> cached(unsigned n) {
  static std::array<std::once_flag, kCachedOrders + 1> flags;
  static std::array<std::shared_ptr<const T>, kCachedOrders + 1> slots;
  if (n > kCachedOrders) return std::make_shared<const T>(n);
  std::call_once(flags[n], [n] { slots[n] = std::make_shared<const T>(n); });
  return slots[n];
}

}  // namespace

std::shared_ptr<const EvenBinomialSum> even_binomial_sum(unsigned n) { return cached<EvenBinomialSum>(n); }
std::shared_ptr<const PhiDifference> phi_difference(unsigned n) { return cached<PhiDifference>(n); }
std::shared_ptr<const PsiDifference> psi_difference_polynomial(unsigned n) {
  return cached<PsiDifference>(n);
}

double psi_difference(unsigned n, double x) { return (*psi_difference_polynomial(n))(x); }

MotzkinIntegrand transform_simple(const CatalanForm& form) {
  if (form.has_inverse_n_plus_1) {
    throw std::invalid_argument("simple transform needs a form without the 1/(n+1) factor");
  }
  return [f = form.f, g = form.g](unsigned n, double x, double dl, double dr) {
    return (*even_binomial_sum(n))(f(x)) * g(x, dl, dr);
  };
}

MotzkinIntegrand transform_phi(const CatalanForm& form) {
  if (!form.has_inverse_n_plus_1) {
    throw std::invalid_argument("phi transform needs a form with the 1/(n+1) factor");
  }
  return [f = form.f, g = form.g](unsigned n, double x, double dl, double dr) {
    const double t = f(x);
    return phi_difference(n)->over_square(t * t) * g(x, dl, dr);
  };
}

MotzkinIntegrand transform(const CatalanForm& form) {
  return form.has_inverse_n_plus_1 ? transform_phi(form) : transform_simple(form);
}

std::string_view mode_name(ConsistencyMode mode) {
  return mode == ConsistencyMode::Pointwise ? "pointwise" : "value-only";
}

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<RegisteredForm> build_forms() {
  using M = ConsistencyMode;
  std::vector<RegisteredForm> forms;
  auto add = [&](std::string id, CatalanForm form, std::optional<std::string> motzkin, M mode) {
    forms.push_back({std::move(id), std::move(form), std::move(motzkin), mode});
  };
  auto inv_sqrt = [](double, double dl, double dr) { return 1.0 / (kPi * std::sqrt(dl * dr)); };

  add("cat.eq2", {[](double x) { return 2 * x; }, inv_sqrt, {-1, 1}, true}, "mot.13b", M::ValueOnly);
  add("cat.eq3", {[](double x) { return 2 * std::cos(x); }, [](double, double, double) { return 1 / kPi; },
                  {0, kPi}, true},
      std::nullopt, M::ValueOnly);
  add("cat.eq4", {[](double x) { return 2 * std::sqrt(x); }, inv_sqrt, {0, 1}, true}, "mot.13a",
      M::Pointwise);
  add("cat.eq5",
      {[](double x) { return std::sqrt(x); },
       [](double, double dl, double dr) { return std::sqrt(dr / dl) / (2 * kPi); }, {0, 4}, false},
      "mot.12a", M::Pointwise);
  add("cat.eq6",
      {[](double x) { return 2 / std::sqrt(1 + x * x); },
       [](double x, double, double) {
         const double q = x / (1 + x * x);
         return 4 * q * q / kPi;
       },
       {0, std::numeric_limits<double>::infinity()}, false},
      "mot.12b", M::Pointwise);
  add("cat.eq7",
      {[](double x) { return 2 * std::cos(kPi * x); },
       [](double x, double, double) {
         const double s = std::sin(kPi * x);
         return 2 * s * s;
       },
       {0, 1}, false},
      "mot.12c", M::Pointwise);
  add("cat.eq8",
      {[](double x) { return 2 * (1 - x * x) / (1 + x * x); },
       [](double x, double, double) { return 32 * x * x / (kPi * ipow(1 + x * x, 3)); }, {0, 1}, false},
      "mot.12d", M::Pointwise);
  add("cat.eq9",
      {[](double x) { return 2 * x; },
       [](double, double dl, double dr) { return 2 / kPi * std::sqrt(dl * dr); }, {-1, 1}, false},
      "mot.12e", M::ValueOnly);
  add("cat.eq10",
      {[](double x) { return x; },
       [](double, double dl, double dr) { return std::sqrt(dl * dr) / (2 * kPi); }, {-2, 2}, false},
      "mot.12f", M::ValueOnly);
  return forms;
}

}  // namespace

std::span<const RegisteredForm> registered_forms() {
  static const std::vector<RegisteredForm> forms = build_forms();
  return forms;
}

const RegisteredForm* find_form(std::string_view catalan_id) {
  for (const auto& entry : registered_forms()) {
    if (entry.catalan_id == catalan_id) return &entry;
  }
  return nullptr;
}

quad::QuadratureResult integrate_form(const MotzkinIntegrand& integrand, const CatalanForm& form,
                                      unsigned n, const quad::QuadConfig& cfg) {
  auto h = [&](double x, double dl, double dr) { return integrand(n, x, dl, dr); };
  const auto rule = form.domain.semi_infinite() ? quad::Rule::ExpSinh : quad::Rule::TanhSinh;
  return quad::integrate(h, form.domain, rule, cfg);
}

namespace {

constexpr double kPointwiseTolerance = 1e-12;
constexpr double kValueTolerance = 1e-10;

double relative_deviation(double value, double reference) {
  const double diff = std::abs(value - reference);
  return reference == 0.0 ? diff : diff / std::abs(reference);
}

quad::QuadConfig tight_config() {
  quad::QuadConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.max_levels = 14;
  cfg.max_subdivisions = 5000;
  return cfg;
}

}  // namespace

ConsistencyReport transform_consistency(std::string_view catalan_id, std::string_view motzkin_id,
                                        ConsistencyMode mode, unsigned n, int samples) {
  const RegisteredForm* entry = find_form(catalan_id);
  if (entry == nullptr) throw std::out_of_range("no Catalan form registered for " + std::string(catalan_id));
  const Representation& target = representation(motzkin_id);
  if (target.family != Family::Motzkin) throw std::out_of_range(std::string(motzkin_id) + " is not a Motzkin entry");
  if (samples < 1) throw std::invalid_argument("need at least one sample point");

  const CatalanForm& form = entry->form;
  const MotzkinIntegrand generated = transform(form);
  ConsistencyReport report{mode};

  if (mode == ConsistencyMode::Pointwise) {
    report.tolerance = kPointwiseTolerance;
    report.samples = samples;
    const double scale = target.prefactor(n).value();
    const quad::Interval dom = form.domain;
    for (int k = 0; k < samples; ++k) {
      const double u = (k + 0.5) / samples;
      const double x = dom.semi_infinite() ? dom.lower + u / (1 - u) : dom.lower + u * dom.width();
      const double dl = x - dom.lower;
      const double dr = dom.upper - x;
      const double mine = generated(n, x, dl, dr);
      const double theirs = scale * target.integrand(n, x, dl, dr);
      report.max_deviation = std::max(report.max_deviation, relative_deviation(mine, theirs));
    }
  } else {
    report.tolerance = kValueTolerance;
    const auto cfg = tight_config();
    const double mine = integrate_form(generated, form, n, cfg).value;
    const double theirs = representation_value(target, n, cfg);
    report.max_deviation = relative_deviation(mine, theirs);
  }
  report.agrees = report.max_deviation <= report.tolerance;
  return report;
}

bool check_transform_consistency(std::string_view catalan_id, std::string_view motzkin_id,
                                 ConsistencyMode mode, unsigned n) {
  return transform_consistency(catalan_id, motzkin_id, mode, n).agrees;
}

Lemma1Result lemma1_sides(unsigned r, unsigned s, double a, double tol) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("lemma1: a must be a positive real");
  if (!(tol > 0.0)) throw std::invalid_argument("lemma1: tol must be positive");
  auto h = [&](double x) {
    const double arg = kPi * x / a;
    return ipow(std::cos(arg), r) * ipow(std::sin(arg), s);
  };
  quad::QuadConfig cfg;
  cfg.rel_tol = 1e-14;
  cfg.abs_tol = 1e-300;
  Lemma1Result out;
  out.first_half = quad::adaptive_gk(h, 0.0, a / 2, cfg).value;
  out.second_half = quad::adaptive_gk(h, a / 2, a, cfg).value;
  out.sign = (r % 2 == 0) ? 1.0 : -1.0;
  const double diff = std::abs(out.first_half - out.sign * out.second_half);
  const double scale = std::max(std::abs(out.first_half), std::abs(out.second_half));
  const bool tiny = std::abs(out.first_half) < tol || std::abs(out.second_half) < tol;
  out.holds = tiny ? diff <= tol : diff <= tol * scale;
  return out;
}

bool check_lemma1(unsigned r, unsigned s, double a, double tol) { return lemma1_sides(r, s, a, tol).holds; }

}  // namespace catmot
