#include "dnml/criteria.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include "dnml/errors.hpp"
#include "dnml/log_math.hpp"

namespace dnml {
namespace {

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);
const double kLogGammaHalf = 0.5 * std::log(std::numbers::pi);

// log(x!) - [(x + 1/2) log x - x + log sqrt(2 pi)], the Stirling remainder.
double stirling_remainder(double x) {
  if (x <= 15.0) {
    return log_factorial(x) - (x + 0.5) * std::log(x) + x - kLogSqrt2Pi;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return inv *
         (1.0 / 12.0 -
          inv2 * (1.0 / 360.0 -
                  inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
}

// log C_MN(m, 2). Each summand is a Binomial(m, t/m) pmf evaluated at its
// mode, so every summand is <= 1 and the t = 0 and t = m summands equal 1.
// For 0 < t < m the summand is written via Stirling remainders, which avoids
// the cancellation between log m! and m log m at large m.
double log_binary_complexity(std::int64_t m) {
  if (m <= 1) return m == 0 ? 0.0 : std::log(2.0);
  const double md = static_cast<double>(m);
  const double rest_m = stirling_remainder(md);
  // Summands are symmetric in t <-> m - t.
  double sum = 2.0;
  double carry = 0.0;
  const std::int64_t half = m / 2;
  for (std::int64_t t = 1; t <= half; ++t) {
    const double td = static_cast<double>(t);
    const double sd = md - td;
    const double log_term = rest_m - stirling_remainder(td) - stirling_remainder(sd) -
                            kLogSqrt2Pi - 0.5 * std::log(td * (sd / md));
    const double term = (2 * t == m ? 1.0 : 2.0) * std::exp(log_term);
    const double y = term - carry;
    const double next = sum + y;
    carry = (next - sum) - y;
    sum = next;
  }
  return std::log(sum);
}

// Three-term recursion C(m, q) = C(m, q-1) + m/(q-2) C(m, q-2), log space.
double log_multinomial_from_binary(std::int64_t m, std::int64_t categories,
                                   double log_c2) {
  if (categories == 1) return 0.0;
  double prev = 0.0;  // log C(m, q-2)
  double cur = log_c2;  // log C(m, q-1)
  const double log_m = m == 0 ? -std::numeric_limits<double>::infinity()
                              : std::log(static_cast<double>(m));
  for (std::int64_t q = 3; q <= categories; ++q) {
    const double next =
        log_add_exp(cur, log_m - std::log(static_cast<double>(q - 2)) + prev);
    prev = cur;
    cur = next;
  }
  return cur;
}

void check_complexity_args(std::int64_t m, std::int64_t categories) {
  if (m < 0) throw DomainError("multinomial complexity needs m >= 0");
  if (categories < 1) throw DomainError("multinomial complexity needs Q >= 1");
}

double pair_complexity_sum(const BlockStats& stats, ComplexityCache* cache) {
  double total = 0.0;
  for (int a = 0; a < stats.k(); ++a) {
    for (int b = a; b < stats.k(); ++b) {
      const std::int64_t m = stats.pair_capacity(a, b);
      if (m == 0) continue;
      total += cache ? cache->log_binary(m) : log_binary_complexity(m);
    }
  }
  return total;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kDnml: return "dnml";
    case Method::kCbic: return "cbic";
    case Method::kIl: return "il";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "dnml") return Method::kDnml;
  if (lower == "cbic") return Method::kCbic;
  if (lower == "il") return Method::kIl;
  throw DomainError("unknown method '" + std::string(name) + "'");
}

void PenaltyConfig::validate() const {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(cbic_lambda > 0.0)) throw DomainError("cbic_lambda must be positive");
}

double ComplexityCache::log_binary(std::int64_t m) {
  check_complexity_args(m, 2);
  {
    std::shared_lock lock(mutex_);
    if (const auto it = binary_.find(m); it != binary_.end()) return it->second;
  }
  const double value = log_binary_complexity(m);
  std::unique_lock lock(mutex_);
  binary_.emplace(m, value);
  return value;
}

double ComplexityCache::log_multinomial(std::int64_t m, std::int64_t categories) {
  check_complexity_args(m, categories);
  if (categories == 1) return 0.0;
  return log_multinomial_from_binary(m, categories, log_binary(m));
}

std::size_t ComplexityCache::size() const {
  std::shared_lock lock(mutex_);
  return binary_.size();
}

double log_multinomial_complexity(std::int64_t m, std::int64_t categories) {
  check_complexity_args(m, categories);
  if (categories == 1) return 0.0;
  return log_multinomial_from_binary(m, categories, log_binary_complexity(m));
}

double cond_loglik_sup(const BlockStats& stats) {
  double total = 0.0;
  for (int a = 0; a < stats.k(); ++a) {
    for (int b = a; b < stats.k(); ++b) {
      const auto m = static_cast<double>(stats.pair_capacity(a, b));
      if (m == 0.0) continue;
      const auto o = static_cast<double>(stats.edge_count(a, b));
      total += xlogy(o, o / m) + xlogy(m - o, (m - o) / m);
    }
  }
  return total;
}

double label_loglik_sup(const BlockStats& stats) {
  const auto n = static_cast<double>(stats.num_nodes());
  double total = 0.0;
  for (const std::int64_t size : stats.community_sizes()) {
    const auto s = static_cast<double>(size);
    total += xlogy(s, s / n);
  }
  return total;
}

double log_dnml(const BlockStats& stats, ComplexityCache* cache) {
  const std::int64_t n = stats.num_nodes();
  const double label_complexity =
      cache ? cache->log_multinomial(n, stats.k())
            : log_multinomial_complexity(n, stats.k());
  return label_loglik_sup(stats) + cond_loglik_sup(stats) - label_complexity -
         pair_complexity_sum(stats, cache);
}

double pen_nml(int k, std::int64_t n, double epsilon) {
  if (k < 1) throw DomainError("penalty needs k >= 1");
  if (n < 1) throw DomainError("penalty needs n >= 1");
  const double kd = k;
  const double coefficient =
      kd * (kd - 1.0) * (2.0 * kd - 1.0) / 12.0 + (kd - 1.0) * (kd + 1.0 + epsilon) / 2.0;
  return coefficient * std::log(static_cast<double>(n));
}

double pen_dnml(int k, std::int64_t n, double epsilon) {
  return pen_nml(k, n, epsilon) + static_cast<double>(n) * log_factorial(k - 1.0);
}

double pen_cbic(int k, std::int64_t n, double lambda) {
  if (k < 1) throw DomainError("penalty needs k >= 1");
  if (n < 1) throw DomainError("penalty needs n >= 1");
  const double kd = k;
  const double nd = static_cast<double>(n);
  return lambda * (kd * (kd + 1.0) / 2.0 * std::log(nd) + nd * std::log(kd));
}

double log_integrated_graph_lik(const BlockStats& stats) {
  double total = 0.0;
  for (int a = 0; a < stats.k(); ++a) {
    for (int b = a; b < stats.k(); ++b) {
      const auto m = static_cast<double>(stats.pair_capacity(a, b));
      const auto o = static_cast<double>(stats.edge_count(a, b));
      total += log_gamma(o + 0.5) + log_gamma(m - o + 0.5) - log_factorial(m) -
               2.0 * kLogGammaHalf;
    }
  }
  return total;
}

double log_integrated_label_lik(const BlockStats& stats) {
  const double k = stats.k();
  const auto n = static_cast<double>(stats.num_nodes());
  double total = log_gamma(k / 2.0) - k * kLogGammaHalf - log_gamma(n + k / 2.0);
  for (const std::int64_t size : stats.community_sizes()) {
    total += log_gamma(static_cast<double>(size) + 0.5);
  }
  return total;
}

double log_integrated_lik(const BlockStats& stats) {
  return log_integrated_graph_lik(stats) + log_integrated_label_lik(stats);
}

double penalty(Method method, int k, std::int64_t n, const PenaltyConfig& config) {
  switch (method) {
    case Method::kDnml: return pen_dnml(k, n, config.epsilon);
    case Method::kCbic: return pen_cbic(k, n, config.cbic_lambda);
    case Method::kIl:
      switch (config.il_penalty) {
        case IlPenalty::kNml: return pen_nml(k, n, config.epsilon);
        case IlPenalty::kDnml: return pen_dnml(k, n, config.epsilon);
        case IlPenalty::kNone: return 0.0;
      }
  }
  throw DomainError("unknown method");
}

CriterionScore score(Method method, const BlockStats& stats,
                     const PenaltyConfig& config, ComplexityCache* cache) {
  config.validate();
  CriterionScore s;
  s.k = stats.k();
  s.method = method;
  switch (method) {
    case Method::kDnml:
      s.log_score = log_dnml(stats, cache);
      break;
    case Method::kCbic:
      s.log_score = cond_loglik_sup(stats) + label_loglik_sup(stats);
      break;
    case Method::kIl:
      s.log_score = log_integrated_lik(stats);
      break;
  }
  s.penalty = penalty(method, s.k, stats.num_nodes(), config);
  s.penalized = s.log_score - s.penalty;
  return s;
}

}  // namespace dnml
