#pragma once

#include <cmath>

namespace mmwsim {

// Static radio parameters of the AP -> UE link. All power quantities are
// in the dB domain; linear values only appear inside the Shannon formula.
struct LinkBudget {
  double tx_power_dbm = 20.0;  // 100 mW
  double tx_gain_dbi = 3.16;
  double rx_gain_dbi = 0.0;
  double ref_loss_db = 63.4;  // at 1 m
  double pathloss_exponent = 1.72;
  double noise_power_dbm = -71.99;
  double bandwidth_hz = 2e9;
  double snr_threshold_db = 0.0;

  void validate() const;
  bool operator==(const LinkBudget&) const = default;
};

struct UeGeometry {
  double planar_radius_m = 0.0;
  double ap_height_m = 2.0;
  double azimuth_rad = 0.0;  // informational; the link only sees the radius

  double distance_m() const { return std::hypot(ap_height_m, planar_radius_m); }
  // Angle between the downward boresight and the UE, in degrees.
  double boresight_angle_deg() const;
  bool operator==(const UeGeometry&) const = default;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Thermal noise floor (-174 dBm/Hz) over `bandwidth_hz` plus noise figure.
double noise_power_dbm(double bandwidth_hz, double noise_figure_db);

// p_tx + g_tx + g_rx - l0 - 10 nu log10(d) - A.
double received_power_dbm(const LinkBudget& lb, double distance_m, double attenuation_db);
double received_power_dbm(const LinkBudget& lb, const UeGeometry& geom, double attenuation_db);

inline double snr_db(double rx_power_dbm, double noise_power_dbm) {
  return rx_power_dbm - noise_power_dbm;
}

// b log2(1 + z) when allocated and z > threshold (strict), else 0.
double instantaneous_rate_bps(double snr_db, bool allocated, const LinkBudget& lb);

// Rate the UE would get if it were scheduled.
inline double feasible_rate_bps(double snr_db, const LinkBudget& lb) {
  return instantaneous_rate_bps(snr_db, true, lb);
}

bool in_coverage(const UeGeometry& geom, double beamwidth_deg);

}  // namespace mmwsim
