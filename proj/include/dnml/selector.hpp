#ifndef DNML_SELECTOR_HPP
#define DNML_SELECTOR_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dnml/criteria.hpp"
#include "dnml/graph.hpp"
#include "dnml/spectral.hpp"

namespace dnml {

inline constexpr int kDefaultMaxCommunities = 10;

struct SelectorOptions {
  // Largest candidate k; unset means min(n, kDefaultMaxCommunities).
  std::optional<int> k_max;
  PenaltyConfig penalty;
  DetectorConfig detector;
  // Worker threads for the per-k loop. Results do not depend on it.
  unsigned threads = 1;
};

struct CandidateRecord {
  int k = 0;
  std::optional<Labeling> labels;
  CriterionScore score;
  // Non-empty when detection or scoring failed; such k never wins.
  std::string failure;
  std::int64_t detection_ns = 0;
  std::int64_t criterion_ns = 0;

  bool ok() const { return failure.empty(); }
};

struct SelectionResult {
  Method method = Method::kDnml;
  int k_max = 0;
  std::vector<CandidateRecord> candidates;  // k = 1..k_max in order
  int k_hat = 1;
  // Eigendecomposition plus all k-means runs.
  std::int64_t detection_ns = 0;
  // Block statistics plus criterion evaluation, summed over k.
  std::int64_t criterion_ns = 0;

  const CandidateRecord& chosen() const { return candidates[k_hat - 1]; }
};

// Criterion hook; defaults to dnml::score.
using Scorer = std::function<CriterionScore(Method, const BlockStats&,
                                            const PenaltyConfig&, ComplexityCache*)>;

// Sweep k = 1..k_max: spectral plug-in labels, block statistics, penalized
// criterion; k_hat is the argmax with ties broken toward the smaller k.
// Throws DomainError unless 1 <= k_max <= n.
SelectionResult select_k(const Graph& g, Method method, const SelectorOptions& options = {});

// Same sweep scored under several methods; labels are detected once and
// shared. Results follow the order of `methods`.
std::vector<SelectionResult> select_k(const Graph& g, std::span<const Method> methods,
                                      const SelectorOptions& options,
                                      const Scorer& scorer = {});

// argmax of penalized over successful records, smallest k on ties.
// Throws DetectorError if no record succeeded.
int argmax_k(std::span<const CandidateRecord> records);

}  // namespace dnml

#endif  // DNML_SELECTOR_HPP
