#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mmwsim/blockage.hpp"
#include "mmwsim/channel.hpp"
#include "mmwsim/config.hpp"
#include "mmwsim/engine.hpp"
#include "mmwsim/error.hpp"
#include "mmwsim/metrics.hpp"
#include "mmwsim/predictor.hpp"
#include "mmwsim/schedulers.hpp"
#include "mmwsim/validate.hpp"

namespace py = pybind11;
using namespace mmwsim;

namespace {

RateWindow to_window(const std::vector<std::vector<double>>& rates) {
  const std::size_t n_slots = rates.empty() ? 0 : rates.front().size();
  RateWindow w(rates.size(), n_slots);
  for (std::size_t u = 0; u < rates.size(); ++u) {
    if (rates[u].size() != n_slots) throw ParameterError("ragged rate window");
    for (std::size_t j = 0; j < n_slots; ++j) w(u, j) = rates[u][j];
  }
  return w;
}

std::vector<std::string> state_labels(const AttenuationTrace& t) {
  std::vector<std::string> out;
  out.reserve(t.states.size());
  for (auto s : t.states) out.emplace_back(to_string(s));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Slot-level mmWave downlink scheduling simulator under human blockage";

  py::register_exception<Error>(m, "MmwsimError", PyExc_ValueError);

  // blockage
  py::class_<BlockageParams>(m, "BlockageParams")
      .def(py::init<>())
      .def(py::init([](double rate, double duration, double decay, double rise, double a_max) {
             return BlockageParams{rate, duration, decay, rise, a_max};
           }),
           py::arg("arrival_rate_per_s") = 0.0, py::arg("mean_duration_ms") = 1000.0,
           py::arg("decay_rate_db_per_ms") = 0.2, py::arg("rise_rate_db_per_ms") = 6.7,
           py::arg("max_attenuation_db") = 40.0)
      .def_readwrite("arrival_rate_per_s", &BlockageParams::arrival_rate_per_s)
      .def_readwrite("mean_duration_ms", &BlockageParams::mean_duration_ms)
      .def_readwrite("decay_rate_db_per_ms", &BlockageParams::decay_rate_db_per_ms)
      .def_readwrite("rise_rate_db_per_ms", &BlockageParams::rise_rate_db_per_ms)
      .def_readwrite("max_attenuation_db", &BlockageParams::max_attenuation_db)
      .def("validate", &BlockageParams::validate);

  py::class_<AttenuationTrace>(m, "AttenuationTrace")
      .def_readonly("slot_duration_ms", &AttenuationTrace::slot_duration_ms)
      .def_readonly("values_db", &AttenuationTrace::values_db)
      .def_property_readonly("states", &state_labels)
      .def("blockage_events", &AttenuationTrace::blockage_events)
      .def("blocked_slots", &AttenuationTrace::blocked_slots)
      .def("__len__", &AttenuationTrace::size);

  m.def("arrival_times", &arrival_times, py::arg("rate_per_s"), py::arg("horizon_s"), py::arg("seed"));
  m.def("generate_trace", &generate_trace, py::arg("params"), py::arg("horizon_slots"),
        py::arg("slot_duration_ms"), py::arg("seed"));
  m.def(
      "trace_from_blockers",
      [](const BlockageParams& p, std::size_t horizon, double slot_ms,
         const std::vector<std::pair<double, double>>& blockers) {
        std::vector<Blocker> bs;
        for (auto [a, d] : blockers) bs.push_back({a, d});
        return trace_from_blockers(p, horizon, slot_ms, bs);
      },
      py::arg("params"), py::arg("horizon_slots"), py::arg("slot_duration_ms"), py::arg("blockers"),
      "blockers: list of (arrival_ms, dwell_ms)");
  m.def("check_trace_invariants", &check_trace_invariants, py::arg("trace"), py::arg("params"));

  // channel
  py::class_<LinkBudget>(m, "LinkBudget")
      .def(py::init<>())
      .def_readwrite("tx_power_dbm", &LinkBudget::tx_power_dbm)
      .def_readwrite("tx_gain_dbi", &LinkBudget::tx_gain_dbi)
      .def_readwrite("rx_gain_dbi", &LinkBudget::rx_gain_dbi)
      .def_readwrite("ref_loss_db", &LinkBudget::ref_loss_db)
      .def_readwrite("pathloss_exponent", &LinkBudget::pathloss_exponent)
      .def_readwrite("noise_power_dbm", &LinkBudget::noise_power_dbm)
      .def_readwrite("bandwidth_hz", &LinkBudget::bandwidth_hz)
      .def_readwrite("snr_threshold_db", &LinkBudget::snr_threshold_db);

  py::class_<UeGeometry>(m, "UeGeometry")
      .def(py::init([](double r, double h) { return UeGeometry{r, h, 0.0}; }), py::arg("planar_radius_m") = 0.0,
           py::arg("ap_height_m") = 2.0)
      .def_readwrite("planar_radius_m", &UeGeometry::planar_radius_m)
      .def_readwrite("ap_height_m", &UeGeometry::ap_height_m)
      .def_readwrite("azimuth_rad", &UeGeometry::azimuth_rad)
      .def_property_readonly("distance_m", &UeGeometry::distance_m);

  m.def("noise_power_dbm", &noise_power_dbm, py::arg("bandwidth_hz"), py::arg("noise_figure_db"));
  m.def("received_power_dbm", py::overload_cast<const LinkBudget&, double, double>(&received_power_dbm),
        py::arg("link_budget"), py::arg("distance_m"), py::arg("attenuation_db"));
  m.def("snr_db", &snr_db, py::arg("rx_power_dbm"), py::arg("noise_power_dbm"));
  m.def("instantaneous_rate_bps", &instantaneous_rate_bps, py::arg("snr_db"), py::arg("allocated"),
        py::arg("link_budget"));

  // predictor
  m.def(
      "predict_window",
      [](const std::vector<double>& p, double sigma, std::uint64_t seed) { return predict_window(p, sigma, seed); },
      py::arg("true_powers_dbm"), py::arg("sigma_db"), py::arg("seed"));
  m.def(
      "detect_blockage", [](const std::vector<double>& w, double delta) { return detect_blockage(w, delta); },
      py::arg("window_dbm"), py::arg("threshold_db") = 3.0);

  // schedulers
  py::enum_<Policy>(m, "Policy")
      .value("PF", Policy::kPf)
      .value("MAXMIN", Policy::kMaxMin)
      .value("BAPF", Policy::kBaPf);
  m.def("parse_policy", &parse_policy);
  m.def(
      "pf_select",
      [](const std::vector<double>& feasible, std::vector<double> avg, std::uint64_t seed) {
        SchedulerState st(std::move(avg), 0.5, seed);
        return pf_select(feasible, st);
      },
      py::arg("feasible_rates"), py::arg("avg_rates"), py::arg("seed") = 0);
  m.def(
      "maxmin_select",
      [](std::vector<double> avg, std::uint64_t seed) {
        SchedulerState st(std::move(avg), 0.5, seed);
        return maxmin_select(st);
      },
      py::arg("avg_rates"), py::arg("seed") = 0);
  m.def(
      "bapf_schedule_window",
      [](const std::vector<std::vector<double>>& rates, std::uint64_t seed) {
        Rng rng(seed);
        return bapf_schedule_window(to_window(rates), rng);
      },
      py::arg("predicted_rates"), py::arg("seed") = 0, "predicted_rates[u][j]: UE u at window slot j");

  // metrics
  py::class_<Ecdf>(m, "Ecdf").def_readonly("values", &Ecdf::values).def_readonly("probs", &Ecdf::probs);
  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("ecdf", &MetricsReport::ecdf)
      .def_readonly("p1_rate_bps", &MetricsReport::p1_rate_bps)
      .def_readonly("mean_rate_bps", &MetricsReport::mean_rate_bps)
      .def_readonly("jain_mean", &MetricsReport::jain_mean)
      .def_readonly("jain_pooled", &MetricsReport::jain_pooled)
      .def_readonly("sample_count", &MetricsReport::sample_count)
      .def_readonly("drop_count", &MetricsReport::drop_count);
  m.def("jain_index", [](const std::vector<double>& r) { return jain_index(r); }, py::arg("rates"));
  m.def("percentile", [](const std::vector<double>& s, double q) { return percentile(s, q); }, py::arg("samples"),
        py::arg("q"));
  m.def("mean_rate", [](const std::vector<double>& s) { return mean_rate(s); }, py::arg("samples"));
  m.def("ecdf", [](const std::vector<double>& s) { return ecdf(s); }, py::arg("samples"));

  // engine
  py::class_<PredictionParams>(m, "PredictionParams")
      .def(py::init<>())
      .def_readwrite("window_ms", &PredictionParams::window_ms)
      .def_readwrite("error_std_db", &PredictionParams::error_std_db)
      .def_readwrite("detection_threshold_db", &PredictionParams::detection_threshold_db);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_static("table1", &ScenarioConfig::table1)
      .def_readwrite("n_ues", &ScenarioConfig::n_ues)
      .def_readwrite("cell_radius_m", &ScenarioConfig::cell_radius_m)
      .def_readwrite("ap_height_m", &ScenarioConfig::ap_height_m)
      .def_readwrite("beamwidth_deg", &ScenarioConfig::beamwidth_deg)
      .def_readwrite("slot_duration_us", &ScenarioConfig::slot_duration_us)
      .def_readwrite("horizon_slots", &ScenarioConfig::horizon_slots)
      .def_readwrite("blockage", &ScenarioConfig::blockage)
      .def_readwrite("tx_power_mw", &ScenarioConfig::tx_power_mw)
      .def_readwrite("tx_gain_dbi", &ScenarioConfig::tx_gain_dbi)
      .def_readwrite("rx_gain_dbi", &ScenarioConfig::rx_gain_dbi)
      .def_readwrite("ref_loss_db", &ScenarioConfig::ref_loss_db)
      .def_readwrite("pathloss_exponent", &ScenarioConfig::pathloss_exponent)
      .def_readwrite("bandwidth_hz", &ScenarioConfig::bandwidth_hz)
      .def_readwrite("noise_figure_db", &ScenarioConfig::noise_figure_db)
      .def_readwrite("snr_threshold_db", &ScenarioConfig::snr_threshold_db)
      .def_readwrite("prediction", &ScenarioConfig::prediction)
      .def_readwrite("pair_error_with_window", &ScenarioConfig::pair_error_with_window)
      .def_readwrite("policy", &ScenarioConfig::policy)
      .def_readwrite("ema_weight", &ScenarioConfig::ema_weight)
      .def_readwrite("drops", &ScenarioConfig::drops)
      .def_readwrite("master_seed", &ScenarioConfig::master_seed)
      .def("link_budget", &ScenarioConfig::link_budget)
      .def("validate", &ScenarioConfig::validate)
      .def("__eq__", [](const ScenarioConfig& a, const ScenarioConfig& b) { return a == b; });

  m.def("place_ues", &place_ues, py::arg("n_ues"), py::arg("cell_radius_m"), py::arg("ap_height_m"),
        py::arg("seed"));

  py::class_<DropResult>(m, "DropResult")
      .def_readonly("avg_rate_bps", &DropResult::avg_rate_bps)
      .def_readonly("blockage_events", &DropResult::blockage_events)
      .def_readonly("blocked_slots", &DropResult::blocked_slots)
      .def_readonly("assigned_slots", &DropResult::assigned_slots)
      .def_readonly("assignment", &DropResult::assignment)
      .def_readonly("bapf_windows", &DropResult::bapf_windows)
      .def_readonly("bapf_windows_detected", &DropResult::bapf_windows_detected);
  m.def(
      "run_drop",
      [](const ScenarioConfig& cfg, std::uint64_t seed, bool record) {
        DropOptions opts;
        opts.record_assignment = record;
        py::gil_scoped_release release;
        return run_drop(cfg, seed, opts);
      },
      py::arg("config"), py::arg("drop_seed"), py::arg("record_assignment") = false);
  m.def("drop_seed", &drop_seed, py::arg("master_seed"), py::arg("drop_index"));

  py::class_<ScenarioPoint>(m, "ScenarioPoint")
      .def(py::init([](Policy p, double l, double tau, double nt, double sigma) {
             return ScenarioPoint{p, l, tau, nt, sigma};
           }),
           py::arg("policy"), py::arg("arrival_rate_per_s"), py::arg("mean_duration_ms"), py::arg("window_ms") = 0.0,
           py::arg("error_std_db") = 0.0)
      .def_readonly("policy", &ScenarioPoint::policy)
      .def_readonly("arrival_rate_per_s", &ScenarioPoint::arrival_rate_per_s)
      .def_readonly("mean_duration_ms", &ScenarioPoint::mean_duration_ms)
      .def_readonly("window_ms", &ScenarioPoint::window_ms)
      .def_readonly("error_std_db", &ScenarioPoint::error_std_db)
      .def("label", &ScenarioPoint::label);

  py::class_<ScenarioGrid>(m, "ScenarioGrid")
      .def(py::init<>())
      .def_readwrite("arrival_rates_per_s", &ScenarioGrid::arrival_rates_per_s)
      .def_readwrite("mean_durations_ms", &ScenarioGrid::mean_durations_ms)
      .def_readwrite("windows_ms", &ScenarioGrid::windows_ms)
      .def_readwrite("policies", &ScenarioGrid::policies);

  py::class_<CampaignResult>(m, "CampaignResult")
      .def_readonly("point", &CampaignResult::point)
      .def_readonly("report", &CampaignResult::report)
      .def_readonly("per_drop_rates", &CampaignResult::per_drop_rates);

  m.def("run_point", &run_point, py::arg("config"), py::arg("point"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_campaign", &run_campaign, py::arg("config"), py::arg("grid"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());

  // config
  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", [](const std::string& text) {
    auto rc = parse_config(text);
    return std::make_pair(rc.scenario, rc.grid);
  });
}
