#pragma once

// Exact combinatorial ground truth: binomials, Catalan and Motzkin numbers.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace catmot {

/// Arbitrary-precision integer. Every exact value in the library is one of these.
using ExactInteger = boost::multiprecision::cpp_int;
/// Exact rational, used for prefactors and polynomial coefficients.
using ExactRational = boost::multiprecision::cpp_rational;

/// n choose k by the multiplicative formula; zero when k > n.
ExactInteger binomial(unsigned n, unsigned k);

/// Binomial by Pascal's triangle. Slow; kept as an independent cross-check.
ExactInteger binomial_pascal(unsigned n, unsigned k);

/// C(2n, n) / (n + 1). Throws std::logic_error if the division is not exact.
ExactInteger catalan(unsigned n);

/// Sum over k of C(n, 2k) * catalan(k).
ExactInteger motzkin(unsigned n);

/// Motzkin number from the convolution recurrence
///   M(0) = 1,  M(n+1) = M(n) + sum_{k<n} M(k) M(n-1-k).
/// Shares no code with motzkin().
ExactInteger motzkin_oracle(unsigned n);

/// Round-to-nearest conversion (exact below 2^53, correctly rounded above).
double to_double(const ExactInteger& value);
double to_double(const ExactRational& value);

std::string to_decimal(const ExactInteger& value);
ExactInteger from_decimal(const std::string& text);

}  // namespace catmot
