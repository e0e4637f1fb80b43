#include "dnml/log_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dnml {

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double log_sum_exp(std::span<const double> x) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (x.empty()) return kNegInf;
  const double top = *std::max_element(x.begin(), x.end());
  if (top == kNegInf) return kNegInf;
  if (std::isinf(top)) return top;

  double sum = 0.0;
  double carry = 0.0;
  for (const double v : x) {
    const double y = std::exp(v - top) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return top + std::log(sum);
}

double xlogy(double x, double y) {
  if (x == 0.0) return 0.0;
  return x * std::log(y);
}

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

}  // namespace dnml
