#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmwsim/blockage.hpp"
#include "mmwsim/channel.hpp"
#include "mmwsim/metrics.hpp"
#include "mmwsim/predictor.hpp"
#include "mmwsim/schedulers.hpp"

namespace mmwsim {

struct ScenarioConfig {
  std::size_t n_ues = 8;
  double cell_radius_m = 15.0;
  double ap_height_m = 2.0;
  double beamwidth_deg = 170.0;
  double slot_duration_us = 62.5;
  std::size_t horizon_slots = 48000;

  BlockageParams blockage{.arrival_rate_per_s = 0.2, .mean_duration_ms = 1000.0};

  double tx_power_mw = 100.0;
  double tx_gain_dbi = 3.16;
  double rx_gain_dbi = 0.0;
  double ref_loss_db = 63.4;
  double pathloss_exponent = 1.72;
  double bandwidth_hz = 2e9;
  double noise_figure_db = 9.0;
  double snr_threshold_db = 0.0;

  PredictionParams prediction;
  // Take the error std from the reference window pairing when the window is
  // one of 50/200/500 ms; otherwise prediction.error_std_db is used as is.
  bool pair_error_with_window = true;

  Policy policy = Policy::kPf;
  double ema_weight = 0.5;
  std::size_t drops = 200;
  std::uint64_t master_seed = 1;

  static ScenarioConfig table1() { return {}; }

  double slot_duration_ms() const { return slot_duration_us / 1000.0; }
  LinkBudget link_budget() const;
  double effective_error_std() const;
  std::size_t window_slots() const { return prediction.window_slots(slot_duration_ms()); }

  // Throws ParameterError naming the offending field.
  void validate() const;

  bool operator==(const ScenarioConfig&) const = default;
};

// Uniform over the disk: radius rho sqrt(U), azimuth uniform.
std::vector<UeGeometry> place_ues(std::size_t n_ues, double cell_radius_m, double ap_height_m,
                                  std::uint64_t seed);

// Test and tooling hooks for run_drop.
struct DropOptions {
  std::optional<std::vector<UeGeometry>> geometry;
  // Each trace must cover at least horizon (+ window for BA-PF) slots.
  std::optional<std::vector<AttenuationTrace>> traces;
  bool record_assignment = false;
};

struct DropResult {
  std::vector<double> avg_rate_bps;
  std::vector<std::size_t> blockage_events;
  std::vector<std::size_t> blocked_slots;
  std::vector<std::size_t> assigned_slots;
  std::vector<std::size_t> assignment;  // per slot, only when recorded
  std::size_t bapf_windows = 0;
  std::size_t bapf_windows_detected = 0;

  bool operator==(const DropResult&) const = default;
};

// Slot-by-slot simulation of one realization. Deterministic in
// (config, drop_seed, options).
DropResult run_drop(const ScenarioConfig& config, std::uint64_t drop_seed, const DropOptions& options = {});

// One campaign grid point. window/sigma are zero for non-predictive policies.
struct ScenarioPoint {
  Policy policy = Policy::kPf;
  double arrival_rate_per_s = 0.0;
  double mean_duration_ms = 0.0;
  double window_ms = 0.0;
  double error_std_db = 0.0;

  std::string label() const;
  bool operator==(const ScenarioPoint&) const = default;
};

// Empty lists fall back to the base config's value.
struct ScenarioGrid {
  std::vector<double> arrival_rates_per_s;
  std::vector<double> mean_durations_ms;
  std::vector<double> windows_ms;
  std::vector<Policy> policies;

  bool operator==(const ScenarioGrid&) const = default;
};

struct CampaignResult {
  ScenarioPoint point;
  MetricsReport report;
  std::vector<std::vector<double>> per_drop_rates;
};

// Config for one grid point, derived from the base config.
ScenarioConfig config_for_point(const ScenarioConfig& base, const ScenarioPoint& point);

std::vector<ScenarioPoint> expand_grid(const ScenarioConfig& base, const ScenarioGrid& grid);

// Drop d of every point uses drop_seed(master_seed, d), so all points see
// the same placements and blockage traces. threads == 0 means hardware
// concurrency. Output is independent of the thread count.
CampaignResult run_point(const ScenarioConfig& base, const ScenarioPoint& point, unsigned threads = 0);
std::vector<CampaignResult> run_campaign(const ScenarioConfig& base, const ScenarioGrid& grid,
                                         unsigned threads = 0);

}  // namespace mmwsim
