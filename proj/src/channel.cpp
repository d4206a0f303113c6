#include "mmwsim/channel.hpp"

#include <numbers>

#include "mmwsim/error.hpp"

namespace mmwsim {

void LinkBudget::validate() const {
  if (!(bandwidth_hz > 0.0)) throw ParameterError("bandwidth must be > 0");
  if (!(pathloss_exponent > 0.0)) throw ParameterError("path loss exponent must be > 0");
  if (!std::isfinite(tx_power_dbm) || !std::isfinite(noise_power_dbm))
    throw ParameterError("link budget powers must be finite");
}

double UeGeometry::boresight_angle_deg() const {
  return std::atan2(planar_radius_m, ap_height_m) * 180.0 / std::numbers::pi;
}

double noise_power_dbm(double bandwidth_hz, double noise_figure_db) {
  if (!(bandwidth_hz > 0.0)) throw ParameterError("bandwidth must be > 0");
  return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double received_power_dbm(const LinkBudget& lb, double distance_m, double attenuation_db) {
  if (!(distance_m > 0.0)) throw GeometryError("AP-UE distance must be > 0");
  if (attenuation_db < 0.0) throw ParameterError("attenuation must be >= 0");
  return lb.tx_power_dbm + lb.tx_gain_dbi + lb.rx_gain_dbi - lb.ref_loss_db -
         10.0 * lb.pathloss_exponent * std::log10(distance_m) - attenuation_db;
}

double received_power_dbm(const LinkBudget& lb, const UeGeometry& geom, double attenuation_db) {
  return received_power_dbm(lb, geom.distance_m(), attenuation_db);
}

double instantaneous_rate_bps(double snr_db, bool allocated, const LinkBudget& lb) {
  if (!allocated || !(snr_db > lb.snr_threshold_db)) return 0.0;
  return lb.bandwidth_hz * std::log2(1.0 + db_to_linear(snr_db));
}

bool in_coverage(const UeGeometry& geom, double beamwidth_deg) {
  return geom.boresight_angle_deg() <= beamwidth_deg / 2.0;
}

}  // namespace mmwsim
