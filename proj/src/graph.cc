#include "dnml/graph.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "dnml/errors.hpp"

namespace dnml {

Graph::Graph(std::size_t num_nodes, std::vector<Edge> edges,
             std::size_t dense_threshold)
    : Graph(num_nodes, std::move(edges), {}, dense_threshold) {}

Graph::Graph(std::size_t num_nodes, std::vector<Edge> edges,
             std::vector<std::int64_t> original_ids,
             std::size_t dense_threshold)
    : num_nodes_(num_nodes),
      edges_(std::move(edges)),
      original_ids_(std::move(original_ids)) {
  if (num_nodes_ == 0) throw DomainError("graph must have at least one node");
  if (num_nodes_ > static_cast<std::size_t>(UINT32_MAX)) {
    throw DomainError("graph too large");
  }
  if (!original_ids_.empty() && original_ids_.size() != num_nodes_) {
    throw InputShapeError("original id table has " +
                          std::to_string(original_ids_.size()) +
                          " entries for " + std::to_string(num_nodes_) +
                          " nodes");
  }
  for (Edge& e : edges_) {
    if (e.u == e.v) {
      throw DomainError("self-loop at node " + std::to_string(e.u));
    }
    if (e.u >= num_nodes_ || e.v >= num_nodes_) {
      throw DomainError("edge endpoint out of range: " + std::to_string(e.u) +
                        "-" + std::to_string(e.v));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  build(dense_threshold);
}

void Graph::build(std::size_t dense_threshold) {
  offsets_.assign(num_nodes_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < num_nodes_; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
  // Edges are sorted by (u, v), so every neighbour list is already sorted
  // except for the interleaving of lower and higher neighbours.
  for (std::size_t i = 0; i < num_nodes_; ++i) {
    std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1]);
  }

  if (num_nodes_ <= dense_threshold) {
    const std::size_t words = (num_nodes_ * num_nodes_ + 63) / 64;
    bits_.assign(words, 0);
    for (const Edge& e : edges_) {
      const std::size_t a = std::size_t{e.u} * num_nodes_ + e.v;
      const std::size_t b = std::size_t{e.v} * num_nodes_ + e.u;
      bits_[a / 64] |= std::uint64_t{1} << (a % 64);
      bits_[b / 64] |= std::uint64_t{1} << (b % 64);
    }
  }
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t Graph::degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= num_nodes_ || v >= num_nodes_ || u == v) return false;
  if (!bits_.empty()) {
    const std::size_t a = std::size_t{u} * num_nodes_ + v;
    return (bits_[a / 64] >> (a % 64)) & 1U;
  }
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::int64_t Graph::original_id(NodeId v) const {
  return original_ids_.empty() ? static_cast<std::int64_t>(v) : original_ids_[v];
}

Graph Graph::permuted(std::span<const NodeId> perm) const {
  if (perm.size() != num_nodes_) {
    throw InputShapeError("permutation length does not match node count");
  }
  std::vector<bool> seen(num_nodes_, false);
  for (const NodeId p : perm) {
    if (p >= num_nodes_ || seen[p]) throw DomainError("not a permutation");
    seen[p] = true;
  }
  std::vector<Edge> moved;
  moved.reserve(edges_.size());
  for (const Edge& e : edges_) moved.push_back({perm[e.u], perm[e.v]});
  std::vector<std::int64_t> ids;
  if (!original_ids_.empty()) {
    ids.resize(num_nodes_);
    for (std::size_t v = 0; v < num_nodes_; ++v) ids[perm[v]] = original_ids_[v];
  }
  return Graph(num_nodes_, std::move(moved), std::move(ids),
               has_dense_index() ? num_nodes_ : 0);
}

Labeling::Labeling(int k, std::vector<int> assignment)
    : k_(k), assignment_(std::move(assignment)) {
  if (k_ < 1) throw DomainError("labeling needs k >= 1");
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] < 1 || assignment_[i] > k_) {
      throw DomainError("label " + std::to_string(assignment_[i]) +
                        " at node " + std::to_string(i) + " outside [1, " +
                        std::to_string(k_) + "]");
    }
  }
}

Labeling Labeling::constant(std::size_t n) {
  return Labeling(1, std::vector<int>(n, 1));
}

int Labeling::occupied() const {
  std::vector<bool> used(static_cast<std::size_t>(k_) + 1, false);
  int count = 0;
  for (const int a : assignment_) {
    if (!used[a]) {
      used[a] = true;
      ++count;
    }
  }
  return count;
}

double adjusted_rand_index(const Labeling& x, const Labeling& y) {
  if (x.size() != y.size()) {
    throw InputShapeError("labelings have different lengths");
  }
  const auto choose2 = [](double m) { return m * (m - 1.0) / 2.0; };
  std::map<std::pair<int, int>, double> joint;
  std::vector<double> rows(static_cast<std::size_t>(x.k()) + 1, 0.0);
  std::vector<double> cols(static_cast<std::size_t>(y.k()) + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    joint[{x[i], y[i]}] += 1.0;
    rows[x[i]] += 1.0;
    cols[y[i]] += 1.0;
  }
  double index = 0.0;
  for (const auto& [key, count] : joint) index += choose2(count);
  double sum_rows = 0.0;
  double sum_cols = 0.0;
  for (const double r : rows) sum_rows += choose2(r);
  for (const double c : cols) sum_cols += choose2(c);
  const double total = choose2(static_cast<double>(x.size()));
  if (total == 0.0) return 1.0;
  const double expected = sum_rows * sum_cols / total;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace dnml
