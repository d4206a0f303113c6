#include "mmwsim/predictor.hpp"

#include <algorithm>
#include <cmath>

#include "mmwsim/error.hpp"

namespace mmwsim {

void PredictionParams::validate(double slot_duration_ms) const {
  if (!(error_std_db >= 0.0)) throw ParameterError("prediction error std must be >= 0");
  if (!(detection_threshold_db > 0.0)) throw ParameterError("detection threshold must be > 0");
  if (!(window_ms > 0.0) || window_slots(slot_duration_ms) < 1)
    throw ParameterError("prediction window must cover at least one slot");
}

std::size_t PredictionParams::window_slots(double slot_duration_ms) const {
  const double n = std::round(window_ms / slot_duration_ms);
  return n < 1.0 ? 0 : static_cast<std::size_t>(n);
}

std::optional<double> paired_error_std(double window_ms) {
  if (window_ms == 50.0) return 1e-3;
  if (window_ms == 200.0) return 1e-2;
  if (window_ms == 500.0) return 1e-1;
  return std::nullopt;
}

void add_prediction_error(std::span<double> powers_dbm, double sigma_db, Rng& rng) {
  if (sigma_db == 0.0) return;
  std::normal_distribution<double> err(0.0, sigma_db);
  for (double& p : powers_dbm) p += err(rng);
}

std::vector<double> predict_window(std::span<const double> true_powers_dbm, double sigma_db,
                                   std::uint64_t seed) {
  if (!(sigma_db >= 0.0)) throw ParameterError("prediction error std must be >= 0");
  std::vector<double> out(true_powers_dbm.begin(), true_powers_dbm.end());
  Rng rng(seed);
  add_prediction_error(out, sigma_db, rng);
  return out;
}

bool detect_blockage(std::span<const double> window_dbm, double threshold_db) {
  if (window_dbm.empty()) throw ParameterError("cannot detect blockage on an empty window");
  const auto [lo, hi] = std::minmax_element(window_dbm.begin(), window_dbm.end());
  return *hi - *lo > threshold_db;
}

}  // namespace mmwsim
