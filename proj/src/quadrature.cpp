#include "catmot/quadrature.hpp"

#include <array>

namespace catmot::quad {

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::ChebyshevFirst: return "gauss-chebyshev-1";
    case Rule::ChebyshevSecond: return "gauss-chebyshev-2";
    case Rule::TanhSinh: return "tanh-sinh";
    case Rule::ExpSinh: return "exp-sinh";
    case Rule::GaussKronrod: return "gauss-kronrod-15";
  }
  return "unknown";
}

std::optional<Rule> parse_rule(std::string_view name) {
  if (name == "gauss-chebyshev-1" || name == "chebyshev-1") return Rule::ChebyshevFirst;
  if (name == "gauss-chebyshev-2" || name == "chebyshev-2") return Rule::ChebyshevSecond;
  if (name == "tanh-sinh") return Rule::TanhSinh;
  if (name == "exp-sinh") return Rule::ExpSinh;
  if (name == "gauss-kronrod-15" || name == "gauss-kronrod" || name == "gk") return Rule::GaussKronrod;
  return std::nullopt;
}

void QuadConfig::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw std::invalid_argument("abs_tol must be >= 0");
  if (max_levels < 3) throw std::invalid_argument("max_levels must be >= 3");
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
}

namespace detail {

// QUADPACK qk15 abscissae and weights, rounded to double.
const double KronrodPair::nodes[8] = {
    0x1.fba009d4d09b1p-1, 0x1.e5f178e7c6229p-1, 0x1.bacf827b9bb3ep-1, 0x1.7ba9f9be3a1d6p-1,
    0x1.2c13a049dfa24p-1, 0x1.9f95df119fd62p-2, 0x1.a98b2892e0c77p-3, 0x0.0p+0};
const double KronrodPair::kronrod_weights[8] = {
    0x1.77c5b67d57470p-6, 0x1.026cdaa7b61c4p-4, 0x1.ad384a34814c6p-4, 0x1.200ed0f46e8c1p-3,
    0x1.5a1f266e47d5cp-3, 0x1.85d6861c80eb1p-3, 0x1.a2adbcbec9cd8p-3, 0x1.ad04f9087090fp-3};
const double KronrodPair::gauss_weights[4] = {
    0x1.092f69f826d57p-3, 0x1.1e6b1713d8644p-2, 0x1.86fe74ee32b3dp-2, 0x1.abfd7e03c2fa6p-2};

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Largest |pi/2 sinh t| kept. For tanh-sinh the complement 2/(1+e^{2u}) stays
// above the subnormal range; for exp-sinh x stays within about 1e+-100.
constexpr double kTanhSinhMaxU = 340.0;
constexpr double kExpSinhMaxU = 230.0;

using Levels = std::array<std::vector<Node>, kMaxTableLevel + 1>;

template <class Make>
Levels build(double max_u, Make make) {
  const double t_max = std::asinh(max_u / kHalfPi);
  Levels levels;
  for (int level = 0; level <= kMaxTableLevel; ++level) {
    const double step = std::ldexp(1.0, -level);
    // Level 0 holds t = 1, 2, ...; level k >= 1 holds the odd multiples of 2^-k.
    const long stride = level == 0 ? 1 : 2;
    for (long j = 1;; j += stride) {
      const double t = j * step;
      if (t > t_max) break;
      levels[level].push_back(make(t));
    }
  }
  return levels;
}

const Levels& tanh_sinh_table() {
  static const Levels table = build(kTanhSinhMaxU, [](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double e = std::exp(-2.0 * u);
    const double complement = 2.0 * e / (1.0 + e);
    const double weight = kHalfPi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    return Node{complement, weight};
  });
  return table;
}

const Levels& exp_sinh_table(bool negative) {
  static const Levels positive = build(kExpSinhMaxU, [](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double x = std::exp(u);
    return Node{x, x * kHalfPi * std::cosh(t)};
  });
  static const Levels mirrored = build(kExpSinhMaxU, [](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double x = std::exp(-u);
    return Node{x, x * kHalfPi * std::cosh(t)};
  });
  return negative ? mirrored : positive;
}

void check_level(int level) {
  if (level < 0 || level > kMaxTableLevel) throw std::out_of_range("quadrature level out of range");
}

}  // namespace

std::span<const Node> tanh_sinh_level(int level) {
  check_level(level);
  return tanh_sinh_table()[level];
}

std::span<const Node> exp_sinh_level(int level) {
  check_level(level);
  return exp_sinh_table(false)[level];
}

std::span<const Node> exp_sinh_level_negative(int level) {
  check_level(level);
  return exp_sinh_table(true)[level];
}

double exp_sinh_center_weight() { return kHalfPi; }

}  // namespace detail
}  // namespace catmot::quad
