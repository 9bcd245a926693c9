#include "pkadapt/metrics.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace pkadapt {

Eigen::Index check_same_dim(const EmbeddingSet& vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("empty collection");
  }
  const Eigen::Index d = vectors.front().size();
  if (d < 1) {
    throw std::invalid_argument("dimension must be >= 1");
  }
  for (const auto& v : vectors) {
    if (v.size() != d) {
      throw std::invalid_argument("dimension mismatch");
    }
  }
  return d;
}

Eigen::MatrixXd stack_rows(const EmbeddingSet& vectors) {
  const Eigen::Index d = check_same_dim(vectors);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(vectors.size()), d);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m.row(i) = vectors[static_cast<std::size_t>(i)].transpose();
  }
  return m;
}

EmbeddingSet unstack_rows(const Eigen::MatrixXd& m) {
  EmbeddingSet out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.push_back(m.row(i).transpose());
  }
  return out;
}

EmbeddingVector centroid(const EmbeddingSet& vectors) {
  const Eigen::Index d = check_same_dim(vectors);
  EmbeddingVector sum = EmbeddingVector::Zero(d);
  for (const auto& v : vectors) {
    sum += v;
  }
  return sum / static_cast<double>(vectors.size());
}

double cosine_distance(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("undefined direction");
  }
  const double c = a.dot(b) / (na * nb);
  double dist = 1.0 - c;
  if (dist < 0.0) dist = 0.0;
  if (dist > 2.0) dist = 2.0;
  return dist;
}

double mahalanobis_distance(const EmbeddingVector& a, const EmbeddingVector& b,
                            const CovarianceModel& cov) {
  if (a.size() != b.size() || a.size() != cov.covariance.rows()) {
    throw std::invalid_argument("dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov.covariance);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("singular covariance; increase shrinkage");
  }
  // d^2 = r' Sigma^-1 r = |L^-1 r|^2 with Sigma = L L'.
  Eigen::VectorXd r = a - b;
  Eigen::VectorXd y = llt.matrixL().solve(r);
  return y.norm();
}

double rbf_kernel(const EmbeddingVector& a, const EmbeddingVector& b, double bandwidth) {
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("bandwidth must be > 0");
  }
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  const double d2 = (a - b).squaredNorm();
  return std::exp(-d2 / (2.0 * bandwidth * bandwidth));
}

CovarianceModel fit_covariance(const EmbeddingSet& samples, double shrinkage) {
  if (samples.size() < 2) {
    throw std::invalid_argument("need at least 2 samples");
  }
  if (!(shrinkage >= 0.0 && shrinkage <= 1.0)) {
    throw std::invalid_argument("shrinkage must lie in [0,1]");
  }
  const Eigen::Index d = check_same_dim(samples);
  const auto n = static_cast<double>(samples.size());

  CovarianceModel model;
  model.mean = centroid(samples);
  Eigen::MatrixXd centered(static_cast<Eigen::Index>(samples.size()), d);
  for (Eigen::Index i = 0; i < centered.rows(); ++i) {
    centered.row(i) = (samples[static_cast<std::size_t>(i)] - model.mean).transpose();
  }
  Eigen::MatrixXd sigma = (centered.transpose() * centered) / (n - 1.0);
  sigma = 0.5 * (sigma + sigma.transpose().eval());
  const double target = sigma.trace() / static_cast<double>(d);
  model.covariance = (1.0 - shrinkage) * sigma +
                     shrinkage * target * Eigen::MatrixXd::Identity(d, d);
  model.shrinkage = shrinkage;
  model.n_fit = samples.size();
  return model;
}

}  // namespace pkadapt
