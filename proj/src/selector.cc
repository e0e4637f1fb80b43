#include "dnml/selector.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <string>
#include <thread>
#include <utility>

#include "dnml/block_stats.hpp"
#include "dnml/errors.hpp"

namespace dnml {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count();
}

template <typename Fn>
void parallel_for(int count, unsigned threads, Fn&& fn) {
  const unsigned workers = std::min<unsigned>(std::max(1U, threads), static_cast<unsigned>(count));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  }
}

}  // namespace

int argmax_k(std::span<const CandidateRecord> records) {
  const CandidateRecord* best = nullptr;
  for (const CandidateRecord& r : records) {
    if (!r.ok()) continue;
    if (best == nullptr || r.score.penalized > best->score.penalized) best = &r;
  }
  if (best == nullptr) throw DetectorError("no candidate k produced a valid score");
  return best->k;
}

std::vector<SelectionResult> select_k(const Graph& g, std::span<const Method> methods,
                                      const SelectorOptions& options,
                                      const Scorer& scorer) {
  options.penalty.validate();
  options.detector.validate();
  const auto n = static_cast<int>(g.num_nodes());
  const int k_max = options.k_max.value_or(std::min(n, kDefaultMaxCommunities));
  if (k_max < 1 || k_max > n) {
    throw DomainError("k_max must lie in [1, n] (k_max = " + std::to_string(k_max) +
                      ", n = " + std::to_string(n) + ")");
  }
  const Scorer& score_fn = scorer ? scorer : Scorer(score);

  // Detection: one eigendecomposition shared by every k >= 2.
  std::vector<std::optional<Labeling>> labels(static_cast<std::size_t>(k_max));
  std::vector<std::string> failures(static_cast<std::size_t>(k_max));
  std::vector<std::int64_t> detect_ns(static_cast<std::size_t>(k_max), 0);
  std::int64_t embedding_ns = 0;
  std::unique_ptr<SpectralEmbedding> embedding;
  std::string embedding_failure;
  if (k_max >= 2) {
    const auto start = Clock::now();
    try {
      embedding = std::make_unique<SpectralEmbedding>(g, options.detector.eig_tolerance);
    } catch (const std::exception& e) {
      embedding_failure = e.what();
    }
    embedding_ns = elapsed_ns(start);
  }
  parallel_for(k_max, options.threads, [&](int i) {
    const int k = i + 1;
    const auto start = Clock::now();
    if (k == 1) {
      labels[i] = Labeling::constant(g.num_nodes());
    } else if (!embedding) {
      failures[i] = "detector failed: " + embedding_failure;
    } else {
      try {
        labels[i] = spectral_cluster(*embedding, k, options.detector);
      } catch (const std::exception& e) {
        failures[i] = std::string("detector failed: ") + e.what();
      }
    }
    detect_ns[i] = elapsed_ns(start);
  });

  std::vector<SelectionResult> results;
  results.reserve(methods.size());
  ComplexityCache cache;
  for (const Method method : methods) {
    SelectionResult result;
    result.method = method;
    result.k_max = k_max;
    result.candidates.resize(static_cast<std::size_t>(k_max));
    parallel_for(k_max, options.threads, [&](int i) {
      CandidateRecord& record = result.candidates[i];
      record.k = i + 1;
      record.detection_ns = detect_ns[i];
      record.failure = failures[i];
      if (!labels[i]) return;
      record.labels = labels[i];
      const auto start = Clock::now();
      try {
        const BlockStats stats = block_stats(g, *labels[i]);
        record.score = score_fn(method, stats, options.penalty, &cache);
        if (!std::isfinite(record.score.penalized)) {
          record.failure = "criterion is not finite";
        }
      } catch (const std::exception& e) {
        record.failure = std::string("criterion failed: ") + e.what();
      }
      record.criterion_ns = elapsed_ns(start);
    });
    result.detection_ns = embedding_ns;
    for (const CandidateRecord& r : result.candidates) {
      result.detection_ns += r.detection_ns;
      result.criterion_ns += r.criterion_ns;
    }
    result.k_hat = argmax_k(result.candidates);
    results.push_back(std::move(result));
  }
  return results;
}

SelectionResult select_k(const Graph& g, Method method, const SelectorOptions& options) {
  const Method methods[] = {method};
  return std::move(select_k(g, methods, options).front());
}

}  // namespace dnml
