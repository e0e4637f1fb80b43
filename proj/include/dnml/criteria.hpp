#ifndef DNML_CRITERIA_HPP
#define DNML_CRITERIA_HPP

#include <cstdint>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "dnml/block_stats.hpp"

namespace dnml {

enum class Method { kDnml, kCbic, kIl };

std::string_view method_name(Method m);
// Accepts "dnml", "cbic", "il" (case-insensitive). Throws DomainError.
Method parse_method(std::string_view name);

// Which penalty the integrated-likelihood baseline subtracts.
enum class IlPenalty { kNml, kDnml, kNone };

struct PenaltyConfig {
  double epsilon = 0.5;
  double cbic_lambda = 1.0;
  IlPenalty il_penalty = IlPenalty::kNml;

  // Throws DomainError unless epsilon > 0 and cbic_lambda > 0.
  void validate() const;
};

struct CriterionScore {
  int k = 0;
  Method method = Method::kDnml;
  double log_score = 0.0;
  double penalty = 0.0;
  double penalized = 0.0;  // log_score - penalty
};

/// Memo table for log C_MN(m, 2) keyed by m. Safe to share between threads.
class ComplexityCache {
 public:
  double log_binary(std::int64_t m);
  double log_multinomial(std::int64_t m, std::int64_t categories);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::int64_t, double> binary_;
};

/// log C_MN(m, Q): log of the normalizer of the maximized multinomial
/// likelihood over all Q^m sequences of length m. Q = 2 is a direct O(m) sum,
/// larger Q follows the three-term recursion in log space. Throws DomainError
/// for m < 0 or Q < 1.
double log_multinomial_complexity(std::int64_t m, std::int64_t categories);

/// sum_{a<=b} o log(o/n_ab) + (n_ab - o) log(1 - o/n_ab), with 0 log 0 = 0.
double cond_loglik_sup(const BlockStats& stats);

/// sum_a n_a log(n_a / n), with 0 log 0 = 0.
double label_loglik_sup(const BlockStats& stats);

/// Log of the decomposed NML of (graph, labels) at k = stats.k():
/// both maximized log-likelihoods minus log C_MN(n, k) and
/// sum_{a<=b} log C_MN(n_ab, 2).
double log_dnml(const BlockStats& stats, ComplexityCache* cache = nullptr);

/// [k(k-1)(2k-1)/12 + (k-1)(k+1+eps)/2] log n.
double pen_nml(int k, std::int64_t n, double epsilon);

/// pen_nml + n log((k-1)!).
double pen_dnml(int k, std::int64_t n, double epsilon);

/// lambda [k(k+1)/2 log n + n log k].
double pen_cbic(int k, std::int64_t n, double lambda);

/// log of the Beta(1/2, 1/2)-integrated conditional likelihood of the graph.
double log_integrated_graph_lik(const BlockStats& stats);

/// log of the Dirichlet(1/2, ..., 1/2)-integrated likelihood of the labels.
double log_integrated_label_lik(const BlockStats& stats);

/// Sum of the two integrated log-likelihoods.
double log_integrated_lik(const BlockStats& stats);

/// Penalized criterion for candidate k = stats.k():
///   DNML: log_dnml - pen_dnml
///   CBIC: (cond_loglik_sup + label_loglik_sup) - pen_cbic
///   IL:   log_integrated_lik - pen_nml (see PenaltyConfig::il_penalty)
CriterionScore score(Method method, const BlockStats& stats,
                     const PenaltyConfig& config, ComplexityCache* cache = nullptr);

/// Penalty term of score() for a k-candidate on n nodes.
double penalty(Method method, int k, std::int64_t n, const PenaltyConfig& config);

}  // namespace dnml

#endif  // DNML_CRITERIA_HPP
