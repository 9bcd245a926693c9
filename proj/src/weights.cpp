#include "pkadapt/weights.hpp"

#include "pkadapt/io_util.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace pkadapt {

namespace {

double exp_weight(double dist, double coef, const char* dist_name) {
  if (!(dist >= 0.0) || !std::isfinite(dist)) {
    throw std::invalid_argument(std::string(dist_name) + " must be finite and >= 0");
  }
  if (!(coef >= 0.0) || !std::isfinite(coef)) {
    throw std::invalid_argument("weight coefficient must be finite and >= 0");
  }
  return std::exp(-coef * dist);
}

}  // namespace

double similarity_weight(double dist, double alpha) {
  return exp_weight(dist, alpha, "dist");
}

double clean_weight(double d_manifold, double beta) {
  return exp_weight(d_manifold, beta, "d_manifold");
}

double hybrid_weight(double omega_sim, double omega_clean, HybridMode mode) {
  if (!(omega_sim > 0.0 && omega_sim <= 1.0) || !(omega_clean > 0.0 && omega_clean <= 1.0)) {
    throw std::invalid_argument("weights must lie in (0, 1]");
  }
  if (mode == HybridMode::multiplicative) {
    return omega_sim * omega_clean;
  }
  return 0.5 * (omega_sim + omega_clean);
}

double weighted_loss(const std::vector<double>& losses, const std::vector<double>& weights,
                     LossNormalization normalization) {
  if (losses.empty() || losses.size() != weights.size()) {
    throw std::invalid_argument("losses and weights must be non-empty and equal length");
  }
  double num = 0.0;
  double wsum = 0.0;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    if (!(losses[i] >= 0.0)) {
      throw std::invalid_argument("losses must be >= 0");
    }
    if (!(weights[i] >= 0.0 && weights[i] <= 1.0)) {
      throw std::invalid_argument("weights must lie in [0, 1]");
    }
    num += weights[i] * losses[i];
    wsum += weights[i];
  }
  if (normalization == LossNormalization::paper_mean) {
    return num / static_cast<double>(losses.size());
  }
  if (wsum <= 0.0) {
    throw std::invalid_argument("self-normalized loss needs a positive weight sum");
  }
  return num / wsum;
}

double select_alpha(std::vector<double> candidates,
                    const std::function<double(double)>& validation_loss,
                    std::vector<std::string>* warnings) {
  if (candidates.empty()) {
    throw std::invalid_argument("empty candidate grid");
  }
  for (double a : candidates) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("alpha candidates must be finite and >= 0");
    }
  }
  // Ascending order + strict comparison implements the smaller-alpha tie rule.
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  bool found = false;
  double best_alpha = 0.0;
  double best_loss = std::numeric_limits<double>::infinity();
  for (double a : candidates) {
    double loss;
    try {
      loss = validation_loss(a);
    } catch (const std::exception& e) {
      const std::string msg = "alpha " + format_double(a) + " skipped: " + e.what();
      if (warnings) warnings->push_back(msg);
      warn(msg);
      continue;
    }
    if (!found || loss < best_loss) {
      found = true;
      best_alpha = a;
      best_loss = loss;
    }
  }
  if (!found) {
    throw std::runtime_error("all alpha candidates failed");
  }
  return best_alpha;
}

static const char* kWeightHeader = "sample_id,dist_sim,dist_manifold,omega_sim,omega_clean,omega_hybrid";

void write_weight_table(std::ostream& out, const std::vector<WeightedSample>& samples) {
  out << kWeightHeader << "\n";
  for (const auto& s : samples) {
    out << csv_join({s.sample_id, format_double(s.dist_sim), format_double(s.dist_manifold),
                     format_double(s.omega_sim), format_double(s.omega_clean),
                     format_double(s.omega_hybrid)})
        << "\n";
  }
}

std::vector<WeightedSample> read_weight_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("weight table: empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kWeightHeader) {
    throw std::runtime_error("weight table: unexpected header: " + line);
  }
  std::vector<WeightedSample> samples;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = csv_split_line(line);
    if (fields.size() != 6) {
      throw std::runtime_error("weight table: expected 6 fields, got line: " + line);
    }
    WeightedSample s;
    s.sample_id = fields[0];
    const std::optional<double> vals[5] = {parse_double(fields[1]), parse_double(fields[2]),
                                           parse_double(fields[3]), parse_double(fields[4]),
                                           parse_double(fields[5])};
    for (const auto& v : vals) {
      if (!v) throw std::runtime_error("weight table: bad number in line: " + line);
    }
    s.dist_sim = *vals[0];
    s.dist_manifold = *vals[1];
    s.omega_sim = *vals[2];
    s.omega_clean = *vals[3];
    s.omega_hybrid = *vals[4];
    samples.push_back(std::move(s));
  }
  return samples;
}

std::string to_string(DistanceMetric m) {
  switch (m) {
    case DistanceMetric::cosine: return "cosine";
    case DistanceMetric::mahalanobis: return "mahalanobis";
    case DistanceMetric::kernel: return "kernel";
  }
  return "cosine";
}

std::string to_string(HybridMode m) {
  return m == HybridMode::multiplicative ? "mult" : "add";
}

std::string to_string(LossNormalization n) {
  return n == LossNormalization::paper_mean ? "paper_mean" : "self_normalized";
}

DistanceMetric metric_from_string(const std::string& s) {
  if (s == "cosine") return DistanceMetric::cosine;
  if (s == "mahalanobis") return DistanceMetric::mahalanobis;
  if (s == "kernel") return DistanceMetric::kernel;
  throw std::invalid_argument("unknown metric: " + s);
}

HybridMode hybrid_from_string(const std::string& s) {
  if (s == "mult" || s == "multiplicative") return HybridMode::multiplicative;
  if (s == "add" || s == "additive") return HybridMode::additive;
  throw std::invalid_argument("unknown hybrid mode: " + s);
}

LossNormalization normalization_from_string(const std::string& s) {
  if (s == "paper_mean") return LossNormalization::paper_mean;
  if (s == "self_normalized") return LossNormalization::self_normalized;
  throw std::invalid_argument("unknown loss normalization: " + s);
}

}  // namespace pkadapt
