#ifndef DNML_BLOCK_STATS_HPP
#define DNML_BLOCK_STATS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dnml/graph.hpp"

namespace dnml {

// Sufficient statistics of a (graph, labeling) pair: community sizes n_a,
// pair capacities n_ab and edge counts o_ab. Community indices here are
// 0-based (label a corresponds to index a - 1).
class BlockStats {
 public:
  // Builds stats from community sizes and a full symmetric k x k matrix of
  // edge counts (row-major). Capacities are derived from the sizes. Throws
  // InputShapeError / DomainError if any invariant fails.
  static BlockStats from_counts(std::vector<std::int64_t> sizes,
                                std::vector<std::int64_t> edge_counts);

  int k() const { return k_; }
  std::int64_t num_nodes() const { return n_; }
  std::int64_t num_edges() const { return total_edges_; }

  std::span<const std::int64_t> community_sizes() const { return sizes_; }
  std::int64_t community_size(int a) const { return sizes_[a]; }
  std::int64_t pair_capacity(int a, int b) const { return capacity_[index(a, b)]; }
  std::int64_t edge_count(int a, int b) const { return edges_[index(a, b)]; }

  // Stats with community a moved to position perm[a].
  BlockStats permuted(std::span<const int> perm) const;

  friend bool operator==(const BlockStats&, const BlockStats&) = default;

 private:
  friend BlockStats block_stats(const Graph& g, const Labeling& z);

  BlockStats(std::vector<std::int64_t> sizes, std::vector<std::int64_t> edge_counts);
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(k_) +
           static_cast<std::size_t>(b);
  }

  int k_ = 0;
  std::int64_t n_ = 0;
  std::int64_t total_edges_ = 0;
  std::vector<std::int64_t> sizes_;
  std::vector<std::int64_t> capacity_;
  std::vector<std::int64_t> edges_;
};

// O(E + n + k^2). Throws InputShapeError if z.size() != g.num_nodes().
BlockStats block_stats(const Graph& g, const Labeling& z);

}  // namespace dnml

#endif  // DNML_BLOCK_STATS_HPP
