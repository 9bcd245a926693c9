#pragma once

#include "pkadapt/metrics.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace pkadapt {

// Affine PCA subspace: mean point plus an orthonormal basis of the top-k
// principal directions, with the covariance eigenvalues kept for variance
// bookkeeping.
struct ManifoldModel {
  Eigen::VectorXd mean;         // d
  Eigen::MatrixXd basis;        // d x k, orthonormal columns
  Eigen::VectorXd eigenvalues;  // k, descending, >= 0
  int k = 0;
  double variance_explained = 0.0;
  std::size_t n_fit = 0;

  Eigen::Index dim() const { return mean.size(); }
};

// Either a fixed subspace dimension or the smallest k whose cumulative
// eigenvalue share reaches a variance target in (0, 1].
struct PcaSelector {
  std::variant<int, double> choice;

  static PcaSelector fixed(int k) { return PcaSelector{k}; }
  static PcaSelector variance(double target) { return PcaSelector{target}; }
};

ManifoldModel fit_pca(const EmbeddingSet& samples, const PcaSelector& selector);

// Orthogonal projection of v onto the affine subspace.
EmbeddingVector project(const EmbeddingVector& v, const ManifoldModel& model);

// Norm of the orthogonal residual: min_{y in subspace} |v - y|.
double distance_to_manifold(const EmbeddingVector& v, const ManifoldModel& model);

// tau = mean + 2 * sample std (denominator n-1) of the given distances.
double outlier_threshold(const std::vector<double>& distances);

enum class GateMode { reject, downweight };
enum class GateAction { keep, downweight, reject };

struct GateDecision {
  std::size_t sample_index = 0;
  double distance = 0.0;
  double threshold = 0.0;
  GateAction action = GateAction::keep;
  double omega_clean = 1.0;  // exp(-beta * distance)
};

// Rows with distance strictly greater than tau are rejected (reject mode)
// or marked for downweighting (downweight mode, all rows kept). Every
// decision carries omega_clean = exp(-beta * distance).
std::vector<GateDecision> gate(const std::vector<double>& distances, double tau,
                               GateMode mode, double beta);

std::string to_string(GateAction a);
std::string to_string(GateMode m);

// Versioned JSON round-trip; floats survive bit-exactly.
std::string manifold_to_json(const ManifoldModel& model);
ManifoldModel manifold_from_json(const std::string& text);

}  // namespace pkadapt
