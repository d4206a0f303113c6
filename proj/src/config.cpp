#include "mmwsim/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mmwsim/error.hpp"
#include "mmwsim/format.hpp"

namespace mmwsim {

namespace {

std::string where(const YAML::Node& node, const std::string& field) {
  const auto mark = node.Mark();
  std::string s = mark.is_null() ? std::string() : "line " + std::to_string(mark.line + 1);
  if (!field.empty()) s += (s.empty() ? "" : ", ") + std::string("field '") + field + "'";
  return s;
}

template <class T>
T scalar(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) throw ConfigError(where(node, field), "expected a scalar value");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(where(node, field), "cannot parse '" + node.Scalar() + "'");
  }
}

template <class T>
std::vector<T> sequence(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence()) throw ConfigError(where(node, field), "expected a list");
  std::vector<T> out;
  for (const auto& item : node) out.push_back(scalar<T>(item, field));
  return out;
}

using Setter = std::function<void(const YAML::Node&, const std::string&)>;
using Section = std::map<std::string, Setter>;

template <class T>
Setter bind(T& target) {
  return [&target](const YAML::Node& n, const std::string& f) { target = scalar<T>(n, f); };
}

void apply(const YAML::Node& node, const Section& section, const std::string& prefix) {
  if (!node.IsMap()) throw ConfigError(where(node, prefix), "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    const std::string field = prefix.empty() ? key : prefix + "." + key;
    const auto it = section.find(key);
    if (it == section.end()) throw ConfigError(where(kv.first, field), "unknown key");
    it->second(kv.second, field);
  }
}

}  // namespace

RunConfig parse_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("line " + std::to_string(e.mark.line + 1), e.msg);
  }

  RunConfig cfg;
  if (root.IsNull()) return cfg;

  ScenarioConfig& s = cfg.scenario;
  ScenarioGrid& g = cfg.grid;

  const Section blockage{
      {"arrival_rate_per_s", bind(s.blockage.arrival_rate_per_s)},
      {"mean_duration_ms", bind(s.blockage.mean_duration_ms)},
      {"decay_rate_db_per_ms", bind(s.blockage.decay_rate_db_per_ms)},
      {"rise_rate_db_per_ms", bind(s.blockage.rise_rate_db_per_ms)},
      {"max_attenuation_db", bind(s.blockage.max_attenuation_db)},
  };
  const Section link{
      {"tx_power_mw", bind(s.tx_power_mw)},
      {"tx_gain_dbi", bind(s.tx_gain_dbi)},
      {"rx_gain_dbi", bind(s.rx_gain_dbi)},
      {"ref_loss_db", bind(s.ref_loss_db)},
      {"pathloss_exponent", bind(s.pathloss_exponent)},
      {"bandwidth_hz", bind(s.bandwidth_hz)},
      {"noise_figure_db", bind(s.noise_figure_db)},
      {"snr_threshold_db", bind(s.snr_threshold_db)},
  };
  const Section prediction{
      {"window_ms", bind(s.prediction.window_ms)},
      {"error_std_db", bind(s.prediction.error_std_db)},
      {"detection_threshold_db", bind(s.prediction.detection_threshold_db)},
      {"pair_error_with_window", bind(s.pair_error_with_window)},
  };
  const Section sweep{
      {"arrival_rates_per_s", [&](const YAML::Node& n, const std::string& f) { g.arrival_rates_per_s = sequence<double>(n, f); }},
      {"mean_durations_ms", [&](const YAML::Node& n, const std::string& f) { g.mean_durations_ms = sequence<double>(n, f); }},
      {"windows_ms", [&](const YAML::Node& n, const std::string& f) { g.windows_ms = sequence<double>(n, f); }},
      {"policies",
       [&](const YAML::Node& n, const std::string& f) {
         g.policies.clear();
         for (const auto& name : sequence<std::string>(n, f)) {
           try {
             g.policies.push_back(parse_policy(name));
           } catch (const ParameterError& e) {
             throw ConfigError(where(n, f), e.what());
           }
         }
       }},
  };

  const Section top{
      {"preset",
       [](const YAML::Node& n, const std::string& f) {
         if (scalar<std::string>(n, f) != "table1") throw ConfigError(where(n, f), "unknown preset");
       }},
      {"policy",
       [&](const YAML::Node& n, const std::string& f) {
         try {
           s.policy = parse_policy(scalar<std::string>(n, f));
         } catch (const ParameterError& e) {
           throw ConfigError(where(n, f), e.what());
         }
       }},
      {"n_ues", bind(s.n_ues)},
      {"cell_radius_m", bind(s.cell_radius_m)},
      {"ap_height_m", bind(s.ap_height_m)},
      {"beamwidth_deg", bind(s.beamwidth_deg)},
      {"slot_duration_us", bind(s.slot_duration_us)},
      {"horizon_slots", bind(s.horizon_slots)},
      {"ema_weight", bind(s.ema_weight)},
      {"drops", bind(s.drops)},
      {"master_seed", bind(s.master_seed)},
      {"blockage", [&](const YAML::Node& n, const std::string& f) { apply(n, blockage, f); }},
      {"link", [&](const YAML::Node& n, const std::string& f) { apply(n, link, f); }},
      {"prediction", [&](const YAML::Node& n, const std::string& f) { apply(n, prediction, f); }},
      {"sweep", [&](const YAML::Node& n, const std::string& f) { apply(n, sweep, f); }},
  };
  apply(root, top, "");

  // yaml-cpp happily reads "-1" into an unsigned; catch the obvious cases.
  for (const char* key : {"n_ues", "horizon_slots", "drops", "master_seed"})
    if (root[key] && root[key].IsScalar() && !root[key].Scalar().empty() && root[key].Scalar()[0] == '-')
      throw ConfigError(where(root[key], key), "must be non-negative");

  try {
    s.validate();
  } catch (const ParameterError& e) {
    throw ConfigError("", std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  if (path == "table1") return RunConfig{};
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + (e.where().empty() ? "" : ":" + e.where()),
                      std::string(e.what()).substr(e.where().empty() ? 0 : e.where().size() + 2));
  }
}

ScenarioConfig load_config(const std::filesystem::path& path) { return load_run_config(path).scenario; }

std::string dump_config(const RunConfig& config) {
  const ScenarioConfig& s = config.scenario;
  const ScenarioGrid& g = config.grid;
  auto num = [](double v) { return format_double(v); };
  auto list = [&](const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
    return out + "]";
  };

  std::ostringstream os;
  os << "policy: " << to_string(s.policy) << '\n'
     << "n_ues: " << s.n_ues << '\n'
     << "cell_radius_m: " << num(s.cell_radius_m) << '\n'
     << "ap_height_m: " << num(s.ap_height_m) << '\n'
     << "beamwidth_deg: " << num(s.beamwidth_deg) << '\n'
     << "slot_duration_us: " << num(s.slot_duration_us) << '\n'
     << "horizon_slots: " << s.horizon_slots << '\n'
     << "ema_weight: " << num(s.ema_weight) << '\n'
     << "drops: " << s.drops << '\n'
     << "master_seed: " << s.master_seed << '\n'
     << "blockage:\n"
     << "  arrival_rate_per_s: " << num(s.blockage.arrival_rate_per_s) << '\n'
     << "  mean_duration_ms: " << num(s.blockage.mean_duration_ms) << '\n'
     << "  decay_rate_db_per_ms: " << num(s.blockage.decay_rate_db_per_ms) << '\n'
     << "  rise_rate_db_per_ms: " << num(s.blockage.rise_rate_db_per_ms) << '\n'
     << "  max_attenuation_db: " << num(s.blockage.max_attenuation_db) << '\n'
     << "link:\n"
     << "  tx_power_mw: " << num(s.tx_power_mw) << '\n'
     << "  tx_gain_dbi: " << num(s.tx_gain_dbi) << '\n'
     << "  rx_gain_dbi: " << num(s.rx_gain_dbi) << '\n'
     << "  ref_loss_db: " << num(s.ref_loss_db) << '\n'
     << "  pathloss_exponent: " << num(s.pathloss_exponent) << '\n'
     << "  bandwidth_hz: " << num(s.bandwidth_hz) << '\n'
     << "  noise_figure_db: " << num(s.noise_figure_db) << '\n'
     << "  snr_threshold_db: " << num(s.snr_threshold_db) << '\n'
     << "prediction:\n"
     << "  window_ms: " << num(s.prediction.window_ms) << '\n'
     << "  error_std_db: " << num(s.prediction.error_std_db) << '\n'
     << "  detection_threshold_db: " << num(s.prediction.detection_threshold_db) << '\n'
     << "  pair_error_with_window: " << (s.pair_error_with_window ? "true" : "false") << '\n';

  const bool has_grid = !g.arrival_rates_per_s.empty() || !g.mean_durations_ms.empty() ||
                        !g.windows_ms.empty() || !g.policies.empty();
  if (has_grid) {
    os << "sweep:\n";
    if (!g.arrival_rates_per_s.empty()) os << "  arrival_rates_per_s: " << list(g.arrival_rates_per_s) << '\n';
    if (!g.mean_durations_ms.empty()) os << "  mean_durations_ms: " << list(g.mean_durations_ms) << '\n';
    if (!g.windows_ms.empty()) os << "  windows_ms: " << list(g.windows_ms) << '\n';
    if (!g.policies.empty()) {
      os << "  policies: [";
      for (std::size_t i = 0; i < g.policies.size(); ++i) os << (i ? ", " : "") << to_string(g.policies[i]);
      os << "]\n";
    }
  }
  return os.str();
}

}  // namespace mmwsim
