#include "dnml/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "dnml/errors.hpp"

namespace dnml {
namespace {

constexpr std::uint64_t kKMeansStream = 0x6b6d65616e73ULL;

struct Clustering {
  std::vector<int> assignment;  // 0-based
  Eigen::MatrixXd centers;      // k x d
  double wcss = 0.0;
};

double squared_distance(const Eigen::MatrixXd& points, Eigen::Index i,
                        const Eigen::MatrixXd& centers, Eigen::Index c) {
  return (points.row(i) - centers.row(c)).squaredNorm();
}

std::vector<Eigen::Index> farthest_point_seeds(const Eigen::MatrixXd& points, int k) {
  const Eigen::Index n = points.rows();
  std::vector<Eigen::Index> seeds;
  Eigen::Index first = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = points.row(i).squaredNorm();
    if (norm > best) {
      best = norm;
      first = i;
    }
  }
  seeds.push_back(first);
  std::vector<double> nearest(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    nearest[i] = (points.row(i) - points.row(first)).squaredNorm();
  }
  while (static_cast<int>(seeds.size()) < k) {
    Eigen::Index next = 0;
    double far = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (nearest[i] > far) {
        far = nearest[i];
        next = i;
      }
    }
    seeds.push_back(next);
    for (Eigen::Index i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], (points.row(i) - points.row(next)).squaredNorm());
    }
  }
  return seeds;
}

std::vector<Eigen::Index> d2_seeds(const Eigen::MatrixXd& points, int k,
                                   const CounterRng& rng, std::uint64_t& counter) {
  const Eigen::Index n = points.rows();
  std::vector<Eigen::Index> seeds;
  seeds.push_back(static_cast<Eigen::Index>(rng.below(counter++, static_cast<std::uint64_t>(n))));
  std::vector<double> nearest(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    nearest[i] = (points.row(i) - points.row(seeds[0])).squaredNorm();
  }
  while (static_cast<int>(seeds.size()) < k) {
    const double total = std::accumulate(nearest.begin(), nearest.end(), 0.0);
    Eigen::Index next = 0;
    if (total > 0.0) {
      const double target = rng.uniform(counter++) * total;
      double running = 0.0;
      next = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        running += nearest[i];
        if (running > target && nearest[i] > 0.0) {
          next = i;
          break;
        }
      }
    } else {
      next = static_cast<Eigen::Index>(rng.below(counter++, static_cast<std::uint64_t>(n)));
    }
    seeds.push_back(next);
    for (Eigen::Index i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], (points.row(i) - points.row(next)).squaredNorm());
    }
  }
  return seeds;
}

// Gives every empty cluster the point farthest from its own centroid, taken
// from clusters that keep at least one member.
void repair_empty_clusters(const Eigen::MatrixXd& points, Clustering& c,
                           std::vector<int>& sizes) {
  const int k = static_cast<int>(sizes.size());
  for (int empty = 0; empty < k; ++empty) {
    if (sizes[empty] > 0) continue;
    Eigen::Index donor = -1;
    double far = -1.0;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const int owner = c.assignment[i];
      if (sizes[owner] <= 1) continue;
      const double d = squared_distance(points, i, c.centers, owner);
      if (d > far) {
        far = d;
        donor = i;
      }
    }
    if (donor < 0) return;
    --sizes[c.assignment[donor]];
    c.assignment[donor] = empty;
    ++sizes[empty];
    c.centers.row(empty) = points.row(donor);
  }
}

void update_centers(const Eigen::MatrixXd& points, Clustering& c,
                    const std::vector<int>& sizes) {
  const Eigen::Index k = c.centers.rows();
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
  for (Eigen::Index i = 0; i < points.rows(); ++i) sums.row(c.assignment[i]) += points.row(i);
  for (Eigen::Index a = 0; a < k; ++a) {
    if (sizes[a] > 0) c.centers.row(a) = sums.row(a) / static_cast<double>(sizes[a]);
  }
}

Clustering lloyd(const Eigen::MatrixXd& points, int k,
                 const std::vector<Eigen::Index>& seeds, int max_iter) {
  const Eigen::Index n = points.rows();
  Clustering c;
  c.centers.resize(k, points.cols());
  for (int a = 0; a < k; ++a) c.centers.row(a) = points.row(seeds[a]);
  c.assignment.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);

  std::vector<int> previous;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(sizes.begin(), sizes.end(), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = squared_distance(points, i, c.centers, 0);
      for (int a = 1; a < k; ++a) {
        const double d = squared_distance(points, i, c.centers, a);
        if (d < best_d) {
          best_d = d;
          best = a;
        }
      }
      c.assignment[i] = best;
      ++sizes[best];
    }
    repair_empty_clusters(points, c, sizes);
    update_centers(points, c, sizes);
    if (c.assignment == previous) break;
    previous = c.assignment;
  }

  c.wcss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    c.wcss += squared_distance(points, i, c.centers, c.assignment[i]);
  }
  return c;
}

// Renumber clusters by lexicographic order of their centres.
std::vector<int> canonical_labels(const Clustering& c, int k) {
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    for (Eigen::Index j = 0; j < c.centers.cols(); ++j) {
      if (c.centers(a, j) != c.centers(b, j)) return c.centers(a, j) < c.centers(b, j);
    }
    return false;
  });
  std::vector<int> rank(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) rank[order[r]] = r;
  std::vector<int> labels(c.assignment.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = rank[c.assignment[i]] + 1;
  return labels;
}

}  // namespace

void DetectorConfig::validate() const {
  if (!(eig_tolerance > 0.0)) throw DomainError("eig_tolerance must be positive");
  if (kmeans_restarts < 1) throw DomainError("kmeans_restarts must be at least 1");
  if (kmeans_max_iter < 1) throw DomainError("kmeans_max_iter must be at least 1");
}

SpectralEmbedding::SpectralEmbedding(const Graph& g, double tolerance)
    : tolerance_(tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("eig_tolerance must be positive");
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  adjacency_ = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    adjacency_(e.u, e.v) = 1.0;
    adjacency_(e.v, e.u) = 1.0;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency_);
  if (solver.info() != Eigen::Success) {
    throw DetectorError("symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd& raw_values = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(raw_values[a]);
    const double mb = std::abs(raw_values[b]);
    if (ma != mb) return ma > mb;
    return raw_values[a] > raw_values[b];
  });
  values_.resize(n);
  vectors_.resize(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    values_[c] = raw_values[order[c]];
    Eigen::VectorXd v = solver.eigenvectors().col(order[c]);
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(v[i]) > std::abs(v[pivot])) pivot = i;
    }
    if (v[pivot] < 0.0) v = -v;
    vectors_.col(c) = v;
  }
}

Eigen::MatrixXd SpectralEmbedding::leading(int k) const {
  if (k < 1 || k > num_nodes()) {
    throw DomainError("need 1 <= k <= n for leading eigenvectors (k = " +
                      std::to_string(k) + ", n = " + std::to_string(num_nodes()) + ")");
  }
  Eigen::MatrixXd cols = vectors_.leftCols(k);
  const Eigen::MatrixXd residual =
      adjacency_ * cols - cols * values_.head(k).asDiagonal();
  const double scale = std::max(1.0, std::abs(values_[0]));
  if (residual.cwiseAbs().maxCoeff() > tolerance_ * scale) {
    throw DetectorError("eigenpair residual exceeds tolerance");
  }
  return cols;
}

Eigen::MatrixXd leading_eigenvectors(const Graph& g, int k, double tolerance) {
  if (k < 1 || static_cast<std::size_t>(k) > g.num_nodes()) {
    throw DomainError("need 1 <= k <= n for leading eigenvectors");
  }
  return SpectralEmbedding(g, tolerance).leading(k);
}

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, const DetectorConfig& config) {
  config.validate();
  const Eigen::Index n = points.rows();
  if (k < 1) throw DomainError("k-means needs k >= 1");
  if (n == 0) throw DomainError("k-means needs at least one point");
  if (k > n) throw DomainError("k-means needs k <= number of points");
  if (!points.allFinite()) throw DetectorError("k-means input contains non-finite values");

  if (k == 1) {
    Clustering c = lloyd(points, 1, {0}, 1);
    return {Labeling::constant(static_cast<std::size_t>(n)), c.wcss, 0};
  }

  const CounterRng rng(config.seed, kKMeansStream);
  std::uint64_t counter = 0;
  Clustering best;
  int best_restart = -1;
  for (int r = 0; r < config.kmeans_restarts; ++r) {
    const auto seeds = r == 0 ? farthest_point_seeds(points, k)
                              : d2_seeds(points, k, rng, counter);
    Clustering c = lloyd(points, k, seeds, config.kmeans_max_iter);
    if (best_restart < 0 || c.wcss < best.wcss) {
      best = std::move(c);
      best_restart = r;
    }
  }
  return {Labeling(k, canonical_labels(best, k)), best.wcss, best_restart};
}

Labeling spectral_cluster(const SpectralEmbedding& embedding, int k,
                          const DetectorConfig& config) {
  config.validate();
  if (k < 1 || k > embedding.num_nodes()) {
    throw DomainError("need 1 <= k <= n for spectral clustering");
  }
  if (k == 1) return Labeling::constant(static_cast<std::size_t>(embedding.num_nodes()));
  return kmeans(embedding.leading(k), k, config).labels;
}

Labeling spectral_cluster(const Graph& g, int k, const DetectorConfig& config) {
  config.validate();
  if (k < 1 || static_cast<std::size_t>(k) > g.num_nodes()) {
    throw DomainError("need 1 <= k <= n for spectral clustering");
  }
  if (k == 1) return Labeling::constant(g.num_nodes());
  return spectral_cluster(SpectralEmbedding(g, config.eig_tolerance), k, config);
}

}  // namespace dnml
