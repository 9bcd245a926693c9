#include "pkadapt/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace pkadapt {

std::string to_string(MmdEstimator e) {
  return e == MmdEstimator::biased_v ? "biased_v" : "unbiased_u";
}

namespace {

void check_pair(const EmbeddingSet& x, const EmbeddingSet& y) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("empty collection");
  }
  if (x.front().size() != y.front().size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  check_same_dim(x);
  check_same_dim(y);
}

// Gram matrix of the pooled sample under the RBF kernel. Used by the
// permutation test so each permutation only re-sums cached entries.
Eigen::MatrixXd pooled_gram(const EmbeddingSet& x, const EmbeddingSet& y, double bandwidth) {
  const std::size_t total = x.size() + y.size();
  Eigen::MatrixXd g(total, total);
  auto point = [&](std::size_t i) -> const EmbeddingVector& {
    return i < x.size() ? x[i] : y[i - x.size()];
  };
  for (std::size_t i = 0; i < total; ++i) {
    g(i, i) = 1.0;
    for (std::size_t j = i + 1; j < total; ++j) {
      const double k = rbf_kernel(point(i), point(j), bandwidth);
      g(i, j) = k;
      g(j, i) = k;
    }
  }
  return g;
}

// Unbiased statistic over a pooled Gram matrix with an index assignment:
// the first m entries of idx form the X side, the rest the Y side.
double mmd2_unbiased_from_gram(const Eigen::MatrixXd& gram, const std::vector<std::size_t>& idx,
                               std::size_t m) {
  const std::size_t n = idx.size() - m;
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j) xx += gram(idx[i], idx[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) yy += gram(idx[m + i], idx[m + j]);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      xy += gram(idx[i], idx[m + j]);
    }
  }
  const auto md = static_cast<double>(m);
  const auto nd = static_cast<double>(n);
  return xx / (md * (md - 1.0)) + yy / (nd * (nd - 1.0)) - 2.0 * xy / (md * nd);
}

}  // namespace

double mmd2_biased(const EmbeddingSet& x, const EmbeddingSet& y, double bandwidth) {
  check_pair(x, y);
  const auto m = static_cast<double>(x.size());
  const auto n = static_cast<double>(y.size());
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (const auto& a : x) {
    for (const auto& b : x) xx += rbf_kernel(a, b, bandwidth);
  }
  for (const auto& a : y) {
    for (const auto& b : y) yy += rbf_kernel(a, b, bandwidth);
  }
  for (const auto& a : x) {
    for (const auto& b : y) xy += rbf_kernel(a, b, bandwidth);
  }
  const double v = xx / (m * m) + yy / (n * n) - 2.0 * xy / (m * n);
  return v < 0.0 ? 0.0 : v;
}

double mmd2_unbiased(const EmbeddingSet& x, const EmbeddingSet& y, double bandwidth) {
  check_pair(x, y);
  if (x.size() < 2 || y.size() < 2) {
    throw std::invalid_argument("unbiased estimator needs at least 2 points per set");
  }
  const auto m = static_cast<double>(x.size());
  const auto n = static_cast<double>(y.size());
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i != j) xx += rbf_kernel(x[i], x[j], bandwidth);
    }
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (i != j) yy += rbf_kernel(y[i], y[j], bandwidth);
    }
  }
  for (const auto& a : x) {
    for (const auto& b : y) xy += rbf_kernel(a, b, bandwidth);
  }
  return xx / (m * (m - 1.0)) + yy / (n * (n - 1.0)) - 2.0 * xy / (m * n);
}

double median_heuristic_bandwidth(const EmbeddingSet& points) {
  if (points.size() < 2) {
    throw std::invalid_argument("need at least 2 points");
  }
  check_same_dim(points);
  std::vector<double> dists;
  dists.reserve(points.size() * (points.size() - 1) / 2);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      dists.push_back((points[i] - points[j]).norm());
    }
  }
  std::sort(dists.begin(), dists.end());
  const std::size_t p = dists.size();
  double median;
  if (p % 2 == 1) {
    median = dists[p / 2];
  } else {
    median = 0.5 * (dists[p / 2 - 1] + dists[p / 2]);
  }
  if (!(median > 0.0)) {
    throw std::invalid_argument("degenerate bandwidth");
  }
  return median;
}

double permutation_test(const EmbeddingSet& x, const EmbeddingSet& y, double bandwidth,
                        int n_permutations, std::uint64_t seed) {
  if (n_permutations < 100) {
    throw std::invalid_argument("n_permutations must be >= 100");
  }
  check_pair(x, y);
  if (x.size() < 2 || y.size() < 2) {
    throw std::invalid_argument("unbiased estimator needs at least 2 points per set");
  }
  const Eigen::MatrixXd gram = pooled_gram(x, y, bandwidth);
  const std::size_t m = x.size();
  std::vector<std::size_t> idx(x.size() + y.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});

  const double observed = mmd2_unbiased_from_gram(gram, idx, m);
  std::mt19937_64 rng(seed);
  int at_least = 0;
  for (int p = 0; p < n_permutations; ++p) {
    std::shuffle(idx.begin(), idx.end(), rng);
    if (mmd2_unbiased_from_gram(gram, idx, m) >= observed) ++at_least;
  }
  return (1.0 + at_least) / (1.0 + n_permutations);
}

double kernel_distance_to_set(const EmbeddingVector& x, const EmbeddingSet& target,
                              double bandwidth) {
  if (target.empty()) {
    throw std::invalid_argument("empty collection");
  }
  return std::sqrt(mmd2_biased({x}, target, bandwidth));
}

DivergenceEstimate estimate_divergence(const EmbeddingSet& x, const EmbeddingSet& y,
                                       double bandwidth, MmdEstimator estimator) {
  DivergenceEstimate est;
  est.estimator = estimator;
  est.bandwidth = bandwidth;
  est.n_source = x.size();
  est.n_target = y.size();
  est.value = estimator == MmdEstimator::biased_v ? mmd2_biased(x, y, bandwidth)
                                                  : mmd2_unbiased(x, y, bandwidth);
  return est;
}

}  // namespace pkadapt
