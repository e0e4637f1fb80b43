#ifndef DNML_GRAPH_HPP
#define DNML_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dnml {

using NodeId = std::uint32_t;

// Unordered node pair stored with u < v.
struct Edge {
  NodeId u;
  NodeId v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph on nodes 0..n-1.
//
// Edges are kept as a sorted (u < v) list plus CSR neighbour lists. Graphs
// with at most dense_threshold nodes also carry a packed adjacency bitmask so
// has_edge() is O(1); larger graphs fall back to binary search. Immutable
// after construction.
class Graph {
 public:
  static constexpr std::size_t kDefaultDenseThreshold = 4096;

  Graph() = default;

  // Accepts pairs in either orientation and drops duplicates. Throws
  // DomainError on a self-loop or an endpoint >= num_nodes, and on
  // num_nodes == 0.
  Graph(std::size_t num_nodes, std::vector<Edge> edges,
        std::size_t dense_threshold = kDefaultDenseThreshold);

  // Same, additionally recording the external id of every internal node.
  Graph(std::size_t num_nodes, std::vector<Edge> edges,
        std::vector<std::int64_t> original_ids,
        std::size_t dense_threshold = kDefaultDenseThreshold);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const;
  bool has_dense_index() const { return !bits_.empty(); }

  // External id of internal node v (identity unless set at ingest).
  std::int64_t original_id(NodeId v) const;

  // Graph with node v relabelled to perm[v]; perm must be a permutation.
  Graph permuted(std::span<const NodeId> perm) const;

 private:
  void build(std::size_t dense_threshold);

  std::size_t num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::int64_t> original_ids_;
};

// Community assignment with labels in {1, ..., k}. Communities may be empty.
class Labeling {
 public:
  Labeling() = default;

  // Throws DomainError if k < 1 or any label is outside [1, k].
  Labeling(int k, std::vector<int> assignment);

  static Labeling constant(std::size_t n);

  int k() const { return k_; }
  std::size_t size() const { return assignment_.size(); }
  int operator[](std::size_t i) const { return assignment_[i]; }
  std::span<const int> assignment() const { return assignment_; }

  // Number of labels in [1, k] that occur at least once.
  int occupied() const;

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  int k_ = 1;
  std::vector<int> assignment_;
};

// Adjusted Rand index between two labelings of the same node set.
double adjusted_rand_index(const Labeling& x, const Labeling& y);

}  // namespace dnml

#endif  // DNML_GRAPH_HPP
