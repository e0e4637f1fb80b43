#include "dnml/block_stats.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "dnml/errors.hpp"

namespace dnml {

BlockStats::BlockStats(std::vector<std::int64_t> sizes,
                       std::vector<std::int64_t> edge_counts)
    : k_(static_cast<int>(sizes.size())),
      sizes_(std::move(sizes)),
      edges_(std::move(edge_counts)) {
  capacity_.assign(edges_.size(), 0);
  for (int a = 0; a < k_; ++a) {
    n_ += sizes_[a];
    for (int b = 0; b < k_; ++b) {
      capacity_[index(a, b)] =
          a == b ? sizes_[a] * (sizes_[a] - 1) / 2 : sizes_[a] * sizes_[b];
    }
    for (int b = a; b < k_; ++b) total_edges_ += edges_[index(a, b)];
  }
}

BlockStats BlockStats::from_counts(std::vector<std::int64_t> sizes,
                                   std::vector<std::int64_t> edge_counts) {
  const std::size_t k = sizes.size();
  if (k == 0) throw DomainError("block stats need k >= 1");
  if (edge_counts.size() != k * k) {
    throw InputShapeError("edge count matrix must be k x k");
  }
  for (const std::int64_t s : sizes) {
    if (s < 0) throw DomainError("negative community size");
  }
  BlockStats stats(std::move(sizes), std::move(edge_counts));
  for (int a = 0; a < stats.k_; ++a) {
    for (int b = 0; b < stats.k_; ++b) {
      const std::int64_t o = stats.edge_count(a, b);
      if (o != stats.edge_count(b, a)) {
        throw DomainError("edge count matrix is not symmetric");
      }
      if (o < 0 || o > stats.pair_capacity(a, b)) {
        throw DomainError("edge count " + std::to_string(o) +
                          " outside [0, n_ab] for block (" + std::to_string(a) +
                          ", " + std::to_string(b) + ")");
      }
    }
  }
  if (stats.n_ == 0) throw DomainError("block stats need at least one node");
  return stats;
}

BlockStats BlockStats::permuted(std::span<const int> perm) const {
  if (perm.size() != static_cast<std::size_t>(k_)) {
    throw InputShapeError("community permutation has wrong length");
  }
  std::vector<std::int64_t> sizes(sizes_.size());
  std::vector<std::int64_t> counts(edges_.size());
  for (int a = 0; a < k_; ++a) {
    sizes[perm[a]] = sizes_[a];
    for (int b = 0; b < k_; ++b) {
      counts[static_cast<std::size_t>(perm[a]) * k_ + perm[b]] = edges_[index(a, b)];
    }
  }
  return from_counts(std::move(sizes), std::move(counts));
}

BlockStats block_stats(const Graph& g, const Labeling& z) {
  if (z.size() != g.num_nodes()) {
    throw InputShapeError("labeling has " + std::to_string(z.size()) +
                          " entries for a graph with " +
                          std::to_string(g.num_nodes()) + " nodes");
  }
  const auto k = static_cast<std::size_t>(z.k());
  std::vector<std::int64_t> sizes(k, 0);
  for (const int a : z.assignment()) ++sizes[a - 1];
  std::vector<std::int64_t> counts(k * k, 0);
  for (const Edge& e : g.edges()) {
    const std::size_t a = z[e.u] - 1;
    const std::size_t b = z[e.v] - 1;
    ++counts[a * k + b];
    if (a != b) ++counts[b * k + a];
  }
  return BlockStats(std::move(sizes), std::move(counts));
}

}  // namespace dnml
