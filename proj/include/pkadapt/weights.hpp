#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace pkadapt {

enum class DistanceMetric { cosine, mahalanobis, kernel };
enum class HybridMode { multiplicative, additive };
enum class LossNormalization { paper_mean, self_normalized };

// One source sample with its two distances and the three derived weights.
// Each omega is exp(-coef * dist) for the stored distance, so the table is
// recomputable from the distances alone.
struct WeightedSample {
  std::string sample_id;
  double dist_sim = 0.0;
  double dist_manifold = 0.0;
  double omega_sim = 1.0;
  double omega_clean = 1.0;
  double omega_hybrid = 1.0;
};

struct WeightConfig {
  double alpha = 1.0;
  double beta = 1.0;
  DistanceMetric metric = DistanceMetric::cosine;
  HybridMode hybrid_mode = HybridMode::multiplicative;
  LossNormalization loss_normalization = LossNormalization::paper_mean;
};

// exp(-alpha * dist); dist >= 0, alpha >= 0.
double similarity_weight(double dist, double alpha);

// exp(-beta * d_manifold); same contract as similarity_weight.
double clean_weight(double d_manifold, double beta);

// multiplicative: product of the two weights; additive: their arithmetic
// mean. Both inputs must lie in (0, 1].
double hybrid_weight(double omega_sim, double omega_clean, HybridMode mode);

// paper_mean: (1/n) sum w_i l_i; self_normalized: sum w_i l_i / sum w_i.
// Weights in [0, 1], losses >= 0, equal non-empty lengths.
double weighted_loss(const std::vector<double>& losses, const std::vector<double>& weights,
                     LossNormalization normalization);

// Grid search: returns the candidate whose model scores the lowest
// validation loss, ties broken toward the smaller alpha. A candidate whose
// evaluation throws is skipped with a warning; if all fail, throws.
double select_alpha(std::vector<double> candidates,
                    const std::function<double(double)>& validation_loss,
                    std::vector<std::string>* warnings = nullptr);

// CSV table with header
// sample_id,dist_sim,dist_manifold,omega_sim,omega_clean,omega_hybrid
// and round-trip float encoding.
void write_weight_table(std::ostream& out, const std::vector<WeightedSample>& samples);
std::vector<WeightedSample> read_weight_table(std::istream& in);

std::string to_string(DistanceMetric m);
std::string to_string(HybridMode m);
std::string to_string(LossNormalization n);
DistanceMetric metric_from_string(const std::string& s);
HybridMode hybrid_from_string(const std::string& s);
LossNormalization normalization_from_string(const std::string& s);

}  // namespace pkadapt
