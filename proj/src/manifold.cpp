#include "pkadapt/manifold.hpp"

#include "pkadapt/weights.hpp"

#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace pkadapt {

ManifoldModel fit_pca(const EmbeddingSet& samples, const PcaSelector& selector) {
  if (samples.size() < 2) {
    throw std::invalid_argument("need at least 2 samples");
  }
  const Eigen::Index d = check_same_dim(samples);
  const auto n = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index k_max = std::min(d, n - 1);

  ManifoldModel model;
  model.mean = centroid(samples);
  model.n_fit = samples.size();

  Eigen::MatrixXd centered(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    centered.row(i) = (samples[static_cast<std::size_t>(i)] - model.mean).transpose();
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();

  Eigen::VectorXd eig = Eigen::VectorXd::Zero(k_max);
  for (Eigen::Index i = 0; i < std::min(k_max, sv.size()); ++i) {
    const double lambda = sv(i) * sv(i) / static_cast<double>(n - 1);
    eig(i) = lambda > 0.0 ? lambda : 0.0;
  }
  const double total = eig.sum();

  int k = 0;
  if (std::holds_alternative<int>(selector.choice)) {
    k = std::get<int>(selector.choice);
    if (k < 1 || k > static_cast<int>(k_max)) {
      throw std::invalid_argument("k out of range [1, min(d, n-1)]");
    }
  } else {
    const double target = std::get<double>(selector.choice);
    if (!(target > 0.0) || target > 1.0) {
      throw std::invalid_argument("target_variance must lie in (0, 1]");
    }
    if (total <= 0.0) {
      k = 1;  // fully degenerate cloud; any direction explains everything
    } else {
      double cum = 0.0;
      for (Eigen::Index i = 0; i < k_max; ++i) {
        cum += eig(i);
        if (cum / total >= target) {
          k = static_cast<int>(i) + 1;
          break;
        }
      }
      if (k == 0) k = static_cast<int>(k_max);
    }
  }

  model.k = k;
  model.basis = svd.matrixV().leftCols(k);
  model.eigenvalues = eig.head(k);
  model.variance_explained = total > 0.0 ? model.eigenvalues.sum() / total : 1.0;
  return model;
}

EmbeddingVector project(const EmbeddingVector& v, const ManifoldModel& model) {
  if (v.size() != model.dim()) {
    throw std::invalid_argument("dimension mismatch");
  }
  const Eigen::VectorXd r = v - model.mean;
  return model.mean + model.basis * (model.basis.transpose() * r);
}

double distance_to_manifold(const EmbeddingVector& v, const ManifoldModel& model) {
  if (v.size() != model.dim()) {
    throw std::invalid_argument("dimension mismatch");
  }
  const Eigen::VectorXd r = v - model.mean;
  const Eigen::VectorXd residual = r - model.basis * (model.basis.transpose() * r);
  return residual.norm();
}

double outlier_threshold(const std::vector<double>& distances) {
  if (distances.size() < 2) {
    throw std::invalid_argument("need at least 2 distances");
  }
  const auto n = static_cast<double>(distances.size());
  double mean = 0.0;
  for (double d : distances) mean += d;
  mean /= n;
  double ss = 0.0;
  for (double d : distances) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return mean + 2.0 * sd;
}

std::vector<GateDecision> gate(const std::vector<double>& distances, double tau,
                               GateMode mode, double beta) {
  if (!(tau >= 0.0)) {
    throw std::invalid_argument("tau must be >= 0");
  }
  if (!(beta > 0.0)) {
    throw std::invalid_argument("beta must be > 0");
  }
  std::vector<GateDecision> decisions;
  decisions.reserve(distances.size());
  for (std::size_t i = 0; i < distances.size(); ++i) {
    GateDecision g;
    g.sample_index = i;
    g.distance = distances[i];
    g.threshold = tau;
    g.omega_clean = clean_weight(distances[i], beta);
    // Strict inequality: a row exactly at tau stays in.
    if (distances[i] > tau) {
      g.action = mode == GateMode::reject ? GateAction::reject : GateAction::downweight;
    } else {
      g.action = GateAction::keep;
    }
    decisions.push_back(g);
  }
  return decisions;
}

std::string to_string(GateAction a) {
  switch (a) {
    case GateAction::keep: return "keep";
    case GateAction::downweight: return "downweight";
    case GateAction::reject: return "reject";
  }
  return "keep";
}

std::string to_string(GateMode m) {
  return m == GateMode::reject ? "reject" : "downweight";
}

std::string manifold_to_json(const ManifoldModel& model) {
  nlohmann::json j;
  j["version"] = 1;
  j["d"] = model.dim();
  j["k"] = model.k;
  j["n_fit"] = model.n_fit;
  j["variance_explained"] = model.variance_explained;
  j["mean"] = std::vector<double>(model.mean.data(), model.mean.data() + model.mean.size());
  std::vector<double> basis(model.basis.data(), model.basis.data() + model.basis.size());
  j["basis"] = basis;  // column-major
  j["eigenvalues"] = std::vector<double>(model.eigenvalues.data(),
                                         model.eigenvalues.data() + model.eigenvalues.size());
  return j.dump(2);
}

ManifoldModel manifold_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("version").get<int>() != 1) {
    throw std::runtime_error("unsupported manifold model version");
  }
  ManifoldModel model;
  const auto d = j.at("d").get<Eigen::Index>();
  model.k = j.at("k").get<int>();
  model.n_fit = j.at("n_fit").get<std::size_t>();
  model.variance_explained = j.at("variance_explained").get<double>();
  const auto mean = j.at("mean").get<std::vector<double>>();
  const auto basis = j.at("basis").get<std::vector<double>>();
  const auto eig = j.at("eigenvalues").get<std::vector<double>>();
  if (mean.size() != static_cast<std::size_t>(d) ||
      basis.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(model.k) ||
      eig.size() != static_cast<std::size_t>(model.k)) {
    throw std::runtime_error("manifold model: inconsistent field sizes");
  }
  model.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), d);
  model.basis = Eigen::Map<const Eigen::MatrixXd>(basis.data(), d, model.k);
  model.eigenvalues = Eigen::Map<const Eigen::VectorXd>(eig.data(), model.k);
  return model;
}

}  // namespace pkadapt
