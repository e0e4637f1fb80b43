#ifndef DNML_SBM_SAMPLER_HPP
#define DNML_SBM_SAMPLER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dnml/graph.hpp"
#include "dnml/random.hpp"

namespace dnml {

// SBM parameters (k, pi, P). The sparse form stores P = rho * S.
class SBMParams {
 public:
  // Throws DomainError unless pi is a positive probability vector (sum within
  // 1e-12) and P is symmetric k x k with entries in [0, 1].
  SBMParams(std::vector<double> pi, Eigen::MatrixXd connectivity);

  // P = rho * shape with rho in (0, 1] and rho * max(shape) <= 1.
  static SBMParams sparse(std::vector<double> pi, double rho, Eigen::MatrixXd shape);

  // Within-community probability a on the diagonal, b elsewhere.
  static SBMParams planted(std::vector<double> pi, double a, double b);

  static std::vector<double> balanced(int k);

  int k() const { return static_cast<int>(pi_.size()); }
  std::span<const double> pi() const { return pi_; }
  const Eigen::MatrixXd& connectivity() const { return connectivity_; }
  std::optional<double> rho() const { return rho_; }

 private:
  std::vector<double> pi_;
  Eigen::MatrixXd connectivity_;
  std::optional<double> rho_;
};

// Throws DomainError if pi is not a valid probability vector.
void validate_pi(std::span<const double> pi);

// i.i.d. categorical labels, P(z_i = a) = pi_a.
Labeling sample_labels(std::size_t n, std::span<const double> pi, Seed seed);

// Each pair i < j is drawn once as Bernoulli(P[z_i][z_j]), streamed in
// lexicographic pair order. Throws InputShapeError if P is not z.k() x z.k().
Graph sample_graph(const Labeling& z, const Eigen::MatrixXd& connectivity, Seed seed);

struct SBMSample {
  Labeling labels;
  Graph graph;
};

SBMSample sample_sbm(std::size_t n, const SBMParams& params, Seed seed);

}  // namespace dnml

#endif  // DNML_SBM_SAMPLER_HPP
