#ifndef DNML_SPECTRAL_HPP
#define DNML_SPECTRAL_HPP

#include <vector>

#include <Eigen/Dense>

#include "dnml/graph.hpp"
#include "dnml/random.hpp"

namespace dnml {

struct DetectorConfig {
  double eig_tolerance = 1e-8;
  int kmeans_restarts = 10;
  int kmeans_max_iter = 300;
  Seed seed{0};

  void validate() const;
};

// Full eigendecomposition of the adjacency matrix, computed once and shared
// across candidate k. Eigenpairs are ordered by decreasing |lambda| (ties:
// larger lambda first); each eigenvector is sign-normalized so that its
// largest-magnitude entry (lowest index on ties) is positive.
class SpectralEmbedding {
 public:
  SpectralEmbedding(const Graph& g, double tolerance = 1e-8);

  int num_nodes() const { return static_cast<int>(values_.size()); }
  const Eigen::VectorXd& eigenvalues() const { return values_; }

  // n x k matrix of the k leading eigenvectors. Throws DomainError unless
  // 1 <= k <= n, DetectorError if a returned pair fails the residual check.
  Eigen::MatrixXd leading(int k) const;

 private:
  Eigen::MatrixXd adjacency_;
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
  double tolerance_;
};

Eigen::MatrixXd leading_eigenvectors(const Graph& g, int k, double tolerance = 1e-8);

struct KMeansResult {
  Labeling labels;
  double wcss = 0.0;
  int restart = 0;  // restart that produced the result
};

// Best-of-restarts Lloyd's algorithm on the rows of `points`.
//
// Restart 0 seeds deterministically: the row of largest norm, then greedy
// farthest points. Later restarts draw the first centre uniformly and the
// rest by D^2 sampling from config.seed. Assignment ties go to the lower
// cluster index; an empty cluster takes the point farthest from its
// centroid. The lowest-WCSS restart wins (earliest on ties) and clusters are
// renumbered by lexicographic order of their centroids.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, const DetectorConfig& config);

// Adjacency spectral clustering; k = 1 returns the constant labeling.
Labeling spectral_cluster(const Graph& g, int k, const DetectorConfig& config);
Labeling spectral_cluster(const SpectralEmbedding& embedding, int k,
                          const DetectorConfig& config);

}  // namespace dnml

#endif  // DNML_SPECTRAL_HPP
