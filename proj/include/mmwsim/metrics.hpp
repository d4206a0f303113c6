#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mmwsim {

// Right-continuous step function: probs[i] = P(X <= values[i]). Repeated
// samples collapse onto one step.
struct Ecdf {
  std::vector<double> values;
  std::vector<double> probs;
};

struct MetricsReport {
  Ecdf ecdf;
  double p1_rate_bps = 0.0;
  double mean_rate_bps = 0.0;
  double jain_mean = 0.0;    // mean of per-drop indices (headline)
  double jain_pooled = 0.0;  // one index over all pooled samples
  std::size_t sample_count = 0;
  std::size_t drop_count = 0;
};

// (sum r)^2 / (n sum r^2). Throws MetricError when empty, negative, or all zero.
double jain_index(std::span<const double> rates);

// Linear interpolation between order statistics at rank (n - 1) q / 100.
double percentile(std::span<const double> samples, double q);

double mean_rate(std::span<const double> samples);

Ecdf ecdf(std::span<const double> samples);

// Pools per-UE average rates from every drop. Drops whose rates are all
// zero have no defined Jain index and are left out of jain_mean.
MetricsReport summarize(std::span<const std::vector<double>> per_drop_rates);

}  // namespace mmwsim
