#include "mmwsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "mmwsim/error.hpp"
#include "mmwsim/format.hpp"
#include "mmwsim/rng.hpp"

namespace mmwsim {

LinkBudget ScenarioConfig::link_budget() const {
  LinkBudget lb;
  lb.tx_power_dbm = linear_to_db(tx_power_mw);
  lb.tx_gain_dbi = tx_gain_dbi;
  lb.rx_gain_dbi = rx_gain_dbi;
  lb.ref_loss_db = ref_loss_db;
  lb.pathloss_exponent = pathloss_exponent;
  lb.noise_power_dbm = noise_power_dbm(bandwidth_hz, noise_figure_db);
  lb.bandwidth_hz = bandwidth_hz;
  lb.snr_threshold_db = snr_threshold_db;
  return lb;
}

double ScenarioConfig::effective_error_std() const {
  if (pair_error_with_window)
    if (auto paired = paired_error_std(prediction.window_ms)) return *paired;
  return prediction.error_std_db;
}

void ScenarioConfig::validate() const {
  auto fail = [](const char* field, const char* what) {
    throw ParameterError(std::string(field) + ": " + what);
  };
  if (n_ues < 1) fail("n_ues", "must be >= 1");
  if (!(cell_radius_m > 0.0)) fail("cell_radius_m", "must be > 0");
  if (!(ap_height_m > 0.0)) fail("ap_height_m", "must be > 0");
  if (!(beamwidth_deg > 0.0 && beamwidth_deg <= 360.0)) fail("beamwidth_deg", "must lie in (0, 360]");
  if (!(slot_duration_us > 0.0)) fail("slot_duration_us", "must be > 0");
  if (horizon_slots < 1) fail("horizon_slots", "must be >= 1");
  if (!(tx_power_mw > 0.0)) fail("tx_power_mw", "must be > 0");
  if (!(bandwidth_hz > 0.0)) fail("bandwidth_hz", "must be > 0");
  if (!(pathloss_exponent > 0.0)) fail("pathloss_exponent", "must be > 0");
  if (!(ema_weight >= 0.0 && ema_weight <= 1.0)) fail("ema_weight", "must lie in [0, 1]");
  if (drops < 1) fail("drops", "must be >= 1");
  blockage.validate();
  prediction.validate(slot_duration_ms());
}

std::vector<UeGeometry> place_ues(std::size_t n_ues, double cell_radius_m, double ap_height_m,
                                  std::uint64_t seed) {
  if (n_ues < 1) throw ParameterError("need at least one UE");
  if (!(cell_radius_m > 0.0)) throw ParameterError("cell radius must be > 0");
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<UeGeometry> out(n_ues);
  for (auto& g : out) {
    g.planar_radius_m = cell_radius_m * std::sqrt(unit(rng));
    g.azimuth_rad = 2.0 * std::numbers::pi * unit(rng);
    g.ap_height_m = ap_height_m;
  }
  return out;
}

namespace {

// Per-UE link with a one-entry cache: attenuation only changes while a UE
// is ramping, so LOS and NLOS stretches reuse the last rate.
class UeLink {
 public:
  UeLink(const LinkBudget& lb, const UeGeometry& geom, double beamwidth_deg)
      : lb_(&lb), covered_(in_coverage(geom, beamwidth_deg)) {
    if (covered_) clear_power_dbm_ = received_power_dbm(lb, geom, 0.0);
  }

  double power_dbm(double attenuation_db) const { return clear_power_dbm_ - attenuation_db; }

  double feasible_rate(double attenuation_db) {
    if (!covered_) return 0.0;
    if (attenuation_db != cached_attenuation_) {
      cached_attenuation_ = attenuation_db;
      cached_rate_ = feasible_rate_bps(snr_db(power_dbm(attenuation_db), lb_->noise_power_dbm), *lb_);
    }
    return cached_rate_;
  }

  bool covered() const { return covered_; }

 private:
  const LinkBudget* lb_;
  bool covered_;
  double clear_power_dbm_ = 0.0;
  double cached_attenuation_ = -1.0;
  double cached_rate_ = 0.0;
};

WindowPlan plan_window(const ScenarioConfig& config, const LinkBudget& lb,
                       const std::vector<AttenuationTrace>& traces, const std::vector<UeLink>& links,
                       std::size_t first_slot, std::size_t window_index, std::uint64_t drop_seed,
                       SchedulerState& state) {
  const std::size_t n_ues = links.size();
  const std::size_t n_slots = config.window_slots();
  const double sigma = config.effective_error_std();

  WindowPlan plan;
  RateWindow predicted(n_ues, n_slots);
  std::vector<double> powers(n_slots);
  for (std::size_t u = 0; u < n_ues; ++u) {
    if (!links[u].covered()) continue;  // never predicted to carry traffic
    const auto& att = traces[u].values_db;
    for (std::size_t j = 0; j < n_slots; ++j) powers[j] = links[u].power_dbm(att[first_slot + j]);
    Rng rng(derive_seed(drop_seed, {static_cast<std::uint64_t>(Stream::kPrediction), u, window_index}));
    add_prediction_error(powers, sigma, rng);
    if (detect_blockage(powers, config.prediction.detection_threshold_db)) plan.blockage_detected = true;
    auto row = predicted.ue(u);
    for (std::size_t j = 0; j < n_slots; ++j) row[j] = feasible_rate_bps(snr_db(powers[j], lb.noise_power_dbm), lb);
  }
  if (plan.blockage_detected) plan.assignment = bapf_schedule_window(predicted, state.tiebreak);
  return plan;
}

}  // namespace

DropResult run_drop(const ScenarioConfig& config, std::uint64_t drop_seed, const DropOptions& options) {
  config.validate();
  const LinkBudget lb = config.link_budget();
  const std::size_t n_ues = config.n_ues;
  const std::size_t horizon = config.horizon_slots;
  const bool predictive = config.policy == Policy::kBaPf;
  const std::size_t window = config.window_slots();
  const std::size_t trace_len = horizon + window;

  std::vector<UeGeometry> geometry =
      options.geometry ? *options.geometry
                       : place_ues(n_ues, config.cell_radius_m, config.ap_height_m,
                                   derive_seed(drop_seed, {static_cast<std::uint64_t>(Stream::kPlacement)}));
  if (geometry.size() != n_ues) throw ParameterError("forced geometry does not match n_ues");

  std::vector<AttenuationTrace> traces;
  if (options.traces) {
    traces = *options.traces;
    if (traces.size() != n_ues) throw ParameterError("forced traces do not match n_ues");
    for (const auto& tr : traces)
      if (tr.size() < (predictive ? trace_len : horizon))
        throw ParameterError("forced trace shorter than the simulated horizon");
  } else {
    traces.reserve(n_ues);
    for (std::size_t u = 0; u < n_ues; ++u)
      traces.push_back(generate_trace(
          config.blockage, trace_len, config.slot_duration_ms(),
          derive_seed(drop_seed, {static_cast<std::uint64_t>(Stream::kBlockage), u})));
  }

  std::vector<UeLink> links;
  links.reserve(n_ues);
  for (const auto& g : geometry) links.emplace_back(lb, g, config.beamwidth_deg);

  std::vector<double> initial(n_ues);
  for (std::size_t u = 0; u < n_ues; ++u) initial[u] = links[u].feasible_rate(0.0);
  SchedulerState state(std::move(initial), config.ema_weight,
                       derive_seed(drop_seed, {static_cast<std::uint64_t>(Stream::kTieBreak)}));

  DropResult result;
  result.assigned_slots.assign(n_ues, 0);
  if (options.record_assignment) result.assignment.reserve(horizon);

  std::vector<double> feasible(n_ues);
  std::vector<double> realized(n_ues, 0.0);
  std::vector<double> rate_sum(n_ues, 0.0);
  std::size_t window_index = 0;

  for (std::size_t t = 0; t < horizon; ++t) {
    if (predictive) {
      // Slot 0 is served by PF; afterwards back-to-back windows [t, t+n_T)
      // are planned at the preceding slot from the ground-truth future.
      if (t == 0) {
        state.window = WindowPlan{};
      } else if ((t - 1) % window == 0) {
        state.window = plan_window(config, lb, traces, links, t, window_index++, drop_seed, state);
        ++result.bapf_windows;
        if (state.window->blockage_detected) ++result.bapf_windows_detected;
      }
    }

    for (std::size_t u = 0; u < n_ues; ++u) feasible[u] = links[u].feasible_rate(traces[u].values_db[t]);
    const std::size_t chosen = schedule_slot(config.policy, state, feasible);

    realized[chosen] = feasible[chosen];
    update_avg(state, realized);
    rate_sum[chosen] += feasible[chosen];
    realized[chosen] = 0.0;

    ++result.assigned_slots[chosen];
    if (options.record_assignment) result.assignment.push_back(chosen);
  }

  result.avg_rate_bps.resize(n_ues);
  result.blockage_events.resize(n_ues);
  result.blocked_slots.resize(n_ues);
  for (std::size_t u = 0; u < n_ues; ++u) {
    result.avg_rate_bps[u] = rate_sum[u] / static_cast<double>(horizon);
    AttenuationTrace head;
    head.states.assign(traces[u].states.begin(), traces[u].states.begin() + static_cast<std::ptrdiff_t>(horizon));
    result.blockage_events[u] = head.blockage_events();
    result.blocked_slots[u] = head.blocked_slots();
  }
  return result;
}

std::string ScenarioPoint::label() const {
  std::string s = std::string(to_string(policy)) + "_lb" + format_double(arrival_rate_per_s) + "_tb" +
                  format_double(mean_duration_ms);
  if (policy == Policy::kBaPf) s += "_nt" + format_double(window_ms);
  return s;
}

ScenarioConfig config_for_point(const ScenarioConfig& base, const ScenarioPoint& point) {
  ScenarioConfig cfg = base;
  cfg.policy = point.policy;
  cfg.blockage.arrival_rate_per_s = point.arrival_rate_per_s;
  cfg.blockage.mean_duration_ms = point.mean_duration_ms;
  if (point.policy == Policy::kBaPf) {
    cfg.prediction.window_ms = point.window_ms;
    cfg.prediction.error_std_db = point.error_std_db;
    cfg.pair_error_with_window = false;
  }
  return cfg;
}

std::vector<ScenarioPoint> expand_grid(const ScenarioConfig& base, const ScenarioGrid& grid) {
  auto or_default = [](const auto& list, auto fallback) {
    using T = typename std::decay_t<decltype(list)>::value_type;
    return list.empty() ? std::vector<T>{fallback} : list;
  };
  const auto policies = or_default(grid.policies, base.policy);
  const auto rates = or_default(grid.arrival_rates_per_s, base.blockage.arrival_rate_per_s);
  const auto durations = or_default(grid.mean_durations_ms, base.blockage.mean_duration_ms);
  const auto windows = or_default(grid.windows_ms, base.prediction.window_ms);

  std::vector<ScenarioPoint> points;
  for (Policy p : policies)
    for (double lambda : rates)
      for (double tau : durations) {
        if (p != Policy::kBaPf) {
          points.push_back({p, lambda, tau, 0.0, 0.0});
          continue;
        }
        for (double nt : windows) {
          ScenarioConfig cfg = base;
          cfg.prediction.window_ms = nt;
          points.push_back({p, lambda, tau, nt, cfg.effective_error_std()});
        }
      }
  return points;
}

CampaignResult run_point(const ScenarioConfig& base, const ScenarioPoint& point, unsigned threads) {
  const ScenarioConfig cfg = config_for_point(base, point);
  cfg.validate();

  CampaignResult out;
  out.point = point;
  out.per_drop_rates.resize(cfg.drops);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.drops));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t d = next++; d < cfg.drops; d = next++) {
      try {
        out.per_drop_rates[d] = run_drop(cfg, drop_seed(cfg.master_seed, d)).avg_rate_bps;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.drops;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  out.report = summarize(out.per_drop_rates);
  return out;
}

std::vector<CampaignResult> run_campaign(const ScenarioConfig& base, const ScenarioGrid& grid, unsigned threads) {
  const auto points = expand_grid(base, grid);
  if (points.empty()) throw ParameterError("scenario grid is empty");
  std::vector<CampaignResult> results;
  results.reserve(points.size());
  for (const auto& p : points) results.push_back(run_point(base, p, threads));
  return results;
}

}  // namespace mmwsim
