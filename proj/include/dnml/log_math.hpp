#ifndef DNML_LOG_MATH_HPP
#define DNML_LOG_MATH_HPP

#include <span>

namespace dnml {

/// log(exp(a) + exp(b)); either argument may be -inf.
double log_add_exp(double a, double b);

/// log(sum_i exp(x_i)) with max-shift and Kahan-compensated accumulation.
/// Returns -inf for an empty input or when every entry is -inf.
double log_sum_exp(std::span<const double> x);

/// x * log(y) with the convention 0 * log(0) = 0.
double xlogy(double x, double y);

/// Thread-safe log|Gamma(x)| (does not touch the global signgam).
double log_gamma(double x);

/// log(m!) for nonnegative integer m.
inline double log_factorial(double m) { return log_gamma(m + 1.0); }

}  // namespace dnml

#endif  // DNML_LOG_MATH_HPP
