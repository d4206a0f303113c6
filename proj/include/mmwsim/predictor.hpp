#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmwsim/rng.hpp"

namespace mmwsim {

// Oracle-access received-power predictor: ground truth plus Gaussian dB error.
struct PredictionParams {
  double window_ms = 50.0;
  double error_std_db = 1e-3;
  double detection_threshold_db = 3.0;

  void validate(double slot_duration_ms) const;
  std::size_t window_slots(double slot_duration_ms) const;
  bool operator==(const PredictionParams&) const = default;
};

// Error std paired with the three reference windows, in order:
// 50 ms -> 1e-3, 200 ms -> 1e-2, 500 ms -> 1e-1. nullopt for other windows.
std::optional<double> paired_error_std(double window_ms);

// Adds i.i.d. N(0, sigma^2) in place. sigma == 0 leaves the input untouched
// and draws nothing.
void add_prediction_error(std::span<double> powers_dbm, double sigma_db, Rng& rng);

std::vector<double> predict_window(std::span<const double> true_powers_dbm, double sigma_db,
                                   std::uint64_t seed);

// Significant variation test: max - min over the window exceeds the threshold.
// Throws ParameterError on an empty window.
bool detect_blockage(std::span<const double> window_dbm, double threshold_db);

}  // namespace mmwsim
