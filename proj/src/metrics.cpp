#include "mmwsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mmwsim/error.hpp"

namespace mmwsim {

double jain_index(std::span<const double> rates) {
  if (rates.empty()) throw MetricError("Jain index of an empty rate set");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double r : rates) {
    if (!(r >= 0.0)) throw MetricError("Jain index needs non-negative rates");
    sum += r;
    sum_sq += r * r;
  }
  if (sum_sq == 0.0) throw MetricError("Jain index is undefined when every rate is zero");
  return sum * sum / (static_cast<double>(rates.size()) * sum_sq);
}

double percentile(std::span<const double> samples, double q) {
  if (samples.empty()) throw MetricError("percentile of an empty sample set");
  if (!(q > 0.0 && q < 100.0)) throw MetricError("percentile rank must lie in (0, 100)");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double rank = static_cast<double>(sorted.size() - 1) * q / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double mean_rate(std::span<const double> samples) {
  if (samples.empty()) throw MetricError("mean of an empty sample set");
  return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

Ecdf ecdf(std::span<const double> samples) {
  if (samples.empty()) throw MetricError("ECDF of an empty sample set");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  Ecdf out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    out.values.push_back(sorted[i]);
    out.probs.push_back(i + 1 == sorted.size() ? 1.0 : static_cast<double>(i + 1) / n);
  }
  return out;
}

MetricsReport summarize(std::span<const std::vector<double>> per_drop_rates) {
  std::vector<double> pooled;
  double jain_sum = 0.0;
  std::size_t jain_drops = 0;
  for (const auto& drop : per_drop_rates) {
    pooled.insert(pooled.end(), drop.begin(), drop.end());
    if (std::any_of(drop.begin(), drop.end(), [](double r) { return r > 0.0; })) {
      jain_sum += jain_index(drop);
      ++jain_drops;
    }
  }
  if (pooled.empty()) throw MetricError("no rate samples to summarize");

  MetricsReport report;
  report.ecdf = ecdf(pooled);
  report.p1_rate_bps = percentile(pooled, 1.0);
  report.mean_rate_bps = mean_rate(pooled);
  report.jain_mean = jain_drops > 0 ? jain_sum / static_cast<double>(jain_drops) : 0.0;
  report.jain_pooled =
      std::any_of(pooled.begin(), pooled.end(), [](double r) { return r > 0.0; }) ? jain_index(pooled) : 0.0;
  report.sample_count = pooled.size();
  report.drop_count = per_drop_rates.size();
  return report;
}

}  // namespace mmwsim
