#pragma once

#include "pkadapt/metrics.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace pkadapt {

enum class MmdEstimator { biased_v, unbiased_u };

// One squared-MMD reading between two sample sets, with enough context to
// reproduce it (estimator, bandwidth, sizes) and an optional permutation
// p-value.
struct DivergenceEstimate {
  double value = 0.0;
  MmdEstimator estimator = MmdEstimator::biased_v;
  double bandwidth = 0.0;
  std::optional<double> p_value;
  std::size_t n_source = 0;
  std::size_t n_target = 0;
};

std::string to_string(MmdEstimator e);

// V-statistic squared MMD under the Gaussian RBF kernel; >= 0 (tiny negative
// rounding residue is clamped to zero).
double mmd2_biased(const EmbeddingSet& x, const EmbeddingSet& y, double bandwidth);

// U-statistic squared MMD (diagonal terms excluded); may be negative.
// Requires at least 2 points per side.
double mmd2_unbiased(const EmbeddingSet& x, const EmbeddingSet& y, double bandwidth);

// Exact median of all pairwise Euclidean distances (average of the two
// central values for an even pair count). Throws "degenerate bandwidth"
// when the median is zero.
double median_heuristic_bandwidth(const EmbeddingSet& points);

// Two-sample permutation test on the unbiased statistic. Add-one
// convention: p = (1 + #{permuted >= observed}) / (1 + n_permutations).
// Deterministic for a fixed seed. n_permutations >= 100.
double permutation_test(const EmbeddingSet& x, const EmbeddingSet& y, double bandwidth,
                        int n_permutations, std::uint64_t seed);

// Per-sample kernel distance: sqrt of the biased squared MMD between the
// singleton {x} and the set. This is the dist option labelled "kernel" in
// the weighting configuration.
double kernel_distance_to_set(const EmbeddingVector& x, const EmbeddingSet& target,
                              double bandwidth);

DivergenceEstimate estimate_divergence(const EmbeddingSet& x, const EmbeddingSet& y,
                                       double bandwidth, MmdEstimator estimator);

}  // namespace pkadapt
