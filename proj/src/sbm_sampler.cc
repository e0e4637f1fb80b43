#include "dnml/sbm_sampler.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "dnml/errors.hpp"

namespace dnml {
namespace {

constexpr std::uint64_t kLabelStream = 1;
constexpr std::uint64_t kEdgeStream = 2;

void validate_connectivity(const Eigen::MatrixXd& p, int k) {
  if (p.rows() != k || p.cols() != k) {
    throw InputShapeError("connectivity matrix must be " + std::to_string(k) +
                          " x " + std::to_string(k));
  }
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (!(p(a, b) >= 0.0 && p(a, b) <= 1.0)) {
        throw DomainError("connectivity entries must lie in [0, 1]");
      }
      if (p(a, b) != p(b, a)) throw DomainError("connectivity matrix must be symmetric");
    }
  }
}

}  // namespace

void validate_pi(std::span<const double> pi) {
  if (pi.empty()) throw DomainError("pi must have at least one entry");
  double total = 0.0;
  for (const double p : pi) {
    if (!(p > 0.0)) throw DomainError("pi entries must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("pi must sum to 1 (got " + std::to_string(total) + ")");
  }
}

SBMParams::SBMParams(std::vector<double> pi, Eigen::MatrixXd connectivity)
    : pi_(std::move(pi)), connectivity_(std::move(connectivity)) {
  validate_pi(pi_);
  validate_connectivity(connectivity_, k());
}

SBMParams SBMParams::sparse(std::vector<double> pi, double rho, Eigen::MatrixXd shape) {
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("rho must lie in (0, 1]");
  if (shape.size() > 0 && (shape.array() < 0.0).any()) {
    throw DomainError("shape matrix entries must be nonnegative");
  }
  if (shape.size() > 0 && rho * shape.maxCoeff() > 1.0) {
    throw DomainError("rho * max(S) exceeds 1");
  }
  SBMParams params(std::move(pi), rho * shape);
  params.rho_ = rho;
  return params;
}

SBMParams SBMParams::planted(std::vector<double> pi, double a, double b) {
  const auto k = static_cast<Eigen::Index>(pi.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(k, k, b);
  p.diagonal().setConstant(a);
  return SBMParams(std::move(pi), std::move(p));
}

std::vector<double> SBMParams::balanced(int k) {
  if (k < 1) throw DomainError("k must be positive");
  return std::vector<double>(static_cast<std::size_t>(k), 1.0 / k);
}

Labeling sample_labels(std::size_t n, std::span<const double> pi, Seed seed) {
  validate_pi(pi);
  std::vector<double> cdf(pi.size());
  std::partial_sum(pi.begin(), pi.end(), cdf.begin());
  const CounterRng rng(seed, kLabelStream);
  std::vector<int> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform(i) * cdf.back();
    std::size_t a = 0;
    while (a + 1 < cdf.size() && u >= cdf[a]) ++a;
    z[i] = static_cast<int>(a) + 1;
  }
  return Labeling(static_cast<int>(pi.size()), std::move(z));
}

Graph sample_graph(const Labeling& z, const Eigen::MatrixXd& connectivity, Seed seed) {
  validate_connectivity(connectivity, z.k());
  const std::size_t n = z.size();
  if (n == 0) throw DomainError("cannot sample a graph with no nodes");
  const CounterRng rng(seed, kEdgeStream);
  std::vector<Edge> edges;
  std::uint64_t counter = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++counter) {
      const double p = connectivity(z[i] - 1, z[j] - 1);
      if (rng.uniform(counter) < p) {
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
      }
    }
  }
  return Graph(n, std::move(edges));
}

SBMSample sample_sbm(std::size_t n, const SBMParams& params, Seed seed) {
  Labeling labels = sample_labels(n, params.pi(), seed);
  Graph graph = sample_graph(labels, params.connectivity(), seed);
  return {std::move(labels), std::move(graph)};
}

}  // namespace dnml
