#include "catmot/exact.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace catmot {

ExactInteger binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  ExactInteger result = 1;
  // After step i the accumulator equals C(n - k + i, i), so each division is exact.
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

ExactInteger binomial_pascal(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::vector<ExactInteger> row(k + 1, 0);
  row[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    for (unsigned j = std::min(m, k); j >= 1; --j) row[j] += row[j - 1];
  }
  return row[k];
}

ExactInteger catalan(unsigned n) {
  ExactInteger central = binomial(2 * n, n);
  ExactInteger quotient, remainder;
  boost::multiprecision::divide_qr(central, ExactInteger(n + 1), quotient, remainder);
  if (remainder != 0) throw std::logic_error("catalan: C(2n,n) not divisible by n+1");
  return quotient;
}

ExactInteger motzkin(unsigned n) {
  ExactInteger sum = 0;
  for (unsigned k = 0; 2 * k <= n; ++k) sum += binomial(n, 2 * k) * catalan(k);
  return sum;
}

ExactInteger motzkin_oracle(unsigned n) {
  std::vector<ExactInteger> m(n + 1);
  m[0] = 1;
  for (unsigned i = 0; i < n; ++i) {
    ExactInteger conv = 0;
    for (unsigned k = 0; k + 1 <= i; ++k) conv += m[k] * m[i - 1 - k];
    m[i + 1] = m[i] + conv;
  }
  return m[n];
}

double to_double(const ExactInteger& value) {
  // strtod rounds correctly; the integer's decimal string is exact.
  const std::string text = value.str();
  return std::strtod(text.c_str(), nullptr);
}

double to_double(const ExactRational& value) {
  return value.convert_to<double>();
}

std::string to_decimal(const ExactInteger& value) { return value.str(); }

ExactInteger from_decimal(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("not a nonnegative decimal integer: '" + text + "'");
  }
  return ExactInteger(text);
}

}  // namespace catmot
