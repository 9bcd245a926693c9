#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace pkadapt {

// Dense embedding point in R^d. All numeric modules exchange these.
using EmbeddingVector = Eigen::VectorXd;
using EmbeddingSet = std::vector<EmbeddingVector>;

// Gaussian second-moment model fitted from a sample set. With shrinkage
// lambda the covariance is (1-lambda)*S + lambda*(tr(S)/d)*I, which is
// strictly positive definite for lambda > 0 and non-degenerate input.
struct CovarianceModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  double shrinkage = 0.0;
  std::size_t n_fit = 0;

  std::size_t dim() const { return static_cast<std::size_t>(mean.size()); }
};

// Component-wise mean of a non-empty, dimension-consistent set.
EmbeddingVector centroid(const EmbeddingSet& vectors);

// 1 - cos(a,b), range [0, 2]. Both arguments must have positive norm.
double cosine_distance(const EmbeddingVector& a, const EmbeddingVector& b);

// sqrt((a-b)' Sigma^-1 (a-b)) via triangular solve against the Cholesky
// factor. Throws if the covariance is not positive definite.
double mahalanobis_distance(const EmbeddingVector& a, const EmbeddingVector& b,
                            const CovarianceModel& cov);

// exp(-|a-b|^2 / (2 bandwidth^2)), bandwidth > 0.
double rbf_kernel(const EmbeddingVector& a, const EmbeddingVector& b, double bandwidth);

// Sample covariance (denominator n-1) with scaled-identity shrinkage.
CovarianceModel fit_covariance(const EmbeddingSet& samples, double shrinkage);

// Throws std::invalid_argument("dimension mismatch") unless all vectors in
// the set share one dimension; returns that dimension.
Eigen::Index check_same_dim(const EmbeddingSet& vectors);

// Stack a set into an n x d row-major sample matrix.
Eigen::MatrixXd stack_rows(const EmbeddingSet& vectors);
EmbeddingSet unstack_rows(const Eigen::MatrixXd& m);

}  // namespace pkadapt
