#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "dnml/errors.hpp"
#include "dnml/sbm_sampler.hpp"
#include "dnml/spectral.hpp"

using namespace dnml;

namespace {

Graph cliques(int count, int size) {
  std::vector<Edge> edges;
  for (int c = 0; c < count; ++c) {
    const auto base = static_cast<NodeId>(c * size);
    for (NodeId i = 0; i < static_cast<NodeId>(size); ++i) {
      for (NodeId j = i + 1; j < static_cast<NodeId>(size); ++j) {
        edges.push_back({base + i, base + j});
      }
    }
  }
  return Graph(static_cast<std::size_t>(count * size), std::move(edges));
}

bool same_partition(const Labeling& x, const Labeling& y) {
  return std::abs(adjusted_rand_index(x, y) - 1.0) < 1e-12;
}

}  // namespace

TEST_CASE("leading eigenvector of K3") {
  const Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  const SpectralEmbedding embedding(k3);
  CHECK(embedding.eigenvalues()(0) == doctest::Approx(2.0));
  const Eigen::MatrixXd v = leading_eigenvectors(k3, 1);
  REQUIRE(v.rows() == 3);
  REQUIRE(v.cols() == 1);
  for (int i = 0; i < 3; ++i) CHECK(v(i, 0) == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("leading_eigenvectors rejects k outside [1, n]") {
  const Graph g(3, {{0, 1}});
  CHECK_THROWS_AS(leading_eigenvectors(g, 4), DomainError);
  CHECK_THROWS_AS(leading_eigenvectors(g, 0), DomainError);
}

TEST_CASE("empty graph: zero spectrum, orthonormal vectors, clustering terminates") {
  const Graph empty(6, {});
  const SpectralEmbedding embedding(empty);
  CHECK(embedding.eigenvalues().cwiseAbs().maxCoeff() == 0.0);
  const Eigen::MatrixXd v = embedding.leading(3);
  CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  const Labeling z = spectral_cluster(empty, 3, DetectorConfig{});
  CHECK(z.size() == 6);
  CHECK(z.k() == 3);
}

TEST_CASE("two disjoint K5: indicator-supported eigenvectors") {
  const Graph g = cliques(2, 5);
  const SpectralEmbedding embedding(g);
  CHECK(embedding.eigenvalues()(0) == doctest::Approx(4.0));
  CHECK(embedding.eigenvalues()(1) == doctest::Approx(4.0));
  const Eigen::MatrixXd v = embedding.leading(2);
  CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-10);
  // The span is that of the two component indicators.
  Eigen::MatrixXd indicators = Eigen::MatrixXd::Zero(10, 2);
  indicators.block(0, 0, 5, 1).setConstant(1.0 / std::sqrt(5.0));
  indicators.block(5, 1, 5, 1).setConstant(1.0 / std::sqrt(5.0));
  const Eigen::MatrixXd projected = indicators * (indicators.transpose() * v);
  CHECK((projected - v).norm() < 1e-10);
  for (int c = 0; c < 2; ++c) {
    CHECK(v.col(c).cwiseAbs().maxCoeff() == doctest::Approx(v.col(c).maxCoeff()));
  }
}

TEST_CASE("kmeans basics") {
  DetectorConfig config;
  Eigen::MatrixXd points(6, 2);
  points << 0.0, 0.0, 0.1, 0.0, 0.0, 0.1, 10.0, 10.0, 10.1, 10.0, 10.0, 10.1;
  const KMeansResult one = kmeans(points, 1, config);
  for (const int a : one.labels.assignment()) CHECK(a == 1);

  const KMeansResult two = kmeans(points, 2, config);
  CHECK(same_partition(two.labels, Labeling(2, {1, 1, 1, 2, 2, 2})));
  CHECK(two.wcss == doctest::Approx(4 * 0.01 * 2.0 / 3.0 * 1.0));

  const Eigen::MatrixXd same = Eigen::MatrixXd::Constant(5, 3, 0.25);
  const KMeansResult degenerate = kmeans(same, 2, config);
  CHECK(degenerate.wcss == 0.0);
  CHECK(degenerate.labels.size() == 5);
}

TEST_CASE("kmeans separates two repeated point clouds") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.01);
  Eigen::MatrixXd points(40, 3);
  std::vector<int> truth(40);
  for (int i = 0; i < 40; ++i) {
    const double centre = i % 2 == 0 ? 0.0 : 100.0;
    truth[i] = 1 + i % 2;
    for (int c = 0; c < 3; ++c) points(i, c) = centre + noise(rng);
  }
  for (int restarts : {1, 10}) {
    DetectorConfig config;
    config.kmeans_restarts = restarts;
    CHECK(same_partition(kmeans(points, 2, config).labels, Labeling(2, truth)));
  }
}

TEST_CASE("detector config validation") {
  DetectorConfig config;
  config.kmeans_restarts = 0;
  CHECK_THROWS_AS(config.validate(), DomainError);
  config = {};
  config.eig_tolerance = 0.0;
  CHECK_THROWS_AS(config.validate(), DomainError);
}

TEST_CASE("spectral clustering recovers two 10-cliques") {
  const Graph g = cliques(2, 10);
  std::vector<int> truth(20, 1);
  std::fill(truth.begin() + 10, truth.end(), 2);
  CHECK(same_partition(spectral_cluster(g, 2, DetectorConfig{}), Labeling(2, truth)));
  const Labeling one = spectral_cluster(g, 1, DetectorConfig{});
  CHECK(one == Labeling::constant(20));
}

TEST_CASE("spectral clustering recovers a strong two-block SBM") {
  const SBMParams params = SBMParams::planted(SBMParams::balanced(2), 0.8, 0.3);
  double worst = 1.0;
  for (std::uint64_t r = 0; r < 20; ++r) {
    const SBMSample s = sample_sbm(300, params, derive_seed(Seed{4242}, r));
    DetectorConfig config;
    config.seed = Seed{r};
    worst = std::min(worst, adjusted_rand_index(spectral_cluster(s.graph, 2, config), s.labels));
  }
  CHECK(worst >= 0.99);
}

TEST_CASE("spectral clustering is deterministic and equivariant under node permutation") {
  const SBMParams params = SBMParams::planted(SBMParams::balanced(3), 0.6, 0.2);
  const SBMSample s = sample_sbm(90, params, Seed{8});
  DetectorConfig config;
  config.seed = Seed{17};
  const Labeling z = spectral_cluster(s.graph, 3, config);
  CHECK(z == spectral_cluster(s.graph, 3, config));

  std::vector<NodeId> perm(90);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(1);
  std::shuffle(perm.begin(), perm.end(), rng);
  const Labeling zp = spectral_cluster(s.graph.permuted(perm), 3, config);
  for (std::size_t i = 0; i < 90; ++i) CHECK(zp[perm[i]] == z[i]);
}
