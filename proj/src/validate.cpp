#include "mmwsim/validate.hpp"

#include <cmath>
#include <functional>
#include <numeric>

#include "mmwsim/engine.hpp"
#include "mmwsim/error.hpp"
#include "mmwsim/metrics.hpp"
#include "mmwsim/rng.hpp"

namespace mmwsim {

std::optional<std::string> check_trace_invariants(const AttenuationTrace& trace, const BlockageParams& params) {
  constexpr double kTol = 1e-9;
  const double a_max = params.max_attenuation_db;
  const double up = params.decay_rate_db_per_ms * trace.slot_duration_ms;
  const double down = params.rise_rate_db_per_ms * trace.slot_duration_ms;
  auto at = [](std::size_t t) { return " at slot " + std::to_string(t); };

  if (trace.values_db.size() != trace.states.size()) return "values and states differ in length";
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const double v = trace.values_db[t];
    const ChannelState s = trace.states[t];
    if (v < -kTol || v > a_max + kTol) return "attenuation out of [0, A_max]" + at(t);
    if (s == ChannelState::kLos && v != 0.0) return "LOS slot with nonzero attenuation" + at(t);
    if (s == ChannelState::kNlos && v != a_max) return "NLOS slot below A_max" + at(t);
    if (t == 0) continue;

    const ChannelState prev = trace.states[t - 1];
    if (!is_legal_transition(prev, s))
      return std::string("illegal transition ") + std::string(to_string(prev)) + "->" + std::string(to_string(s)) + at(t);
    const double inc = v - trace.values_db[t - 1];
    if (prev == s) {
      const double expected = s == ChannelState::kDecay ? up : s == ChannelState::kRise ? -down : 0.0;
      if (std::abs(inc - expected) > kTol) return "slope violation inside a run" + at(t);
    } else if (inc > up + kTol || inc < -down - kTol) {
      return "boundary increment exceeds one ramp step" + at(t);
    }
  }
  return std::nullopt;
}

namespace {

CheckResult check(const std::string& name, const std::function<std::string()>& body) {
  try {
    std::string detail = body();
    return {name, detail.empty(), detail.empty() ? "ok" : detail};
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

ScenarioConfig short_config(Policy policy, double lambda) {
  ScenarioConfig cfg = ScenarioConfig::table1();
  cfg.policy = policy;
  cfg.horizon_slots = 8000;
  cfg.blockage.arrival_rate_per_s = lambda;
  cfg.blockage.mean_duration_ms = 300.0;
  cfg.drops = 4;
  return cfg;
}

}  // namespace

std::vector<CheckResult> run_self_checks(unsigned threads) {
  std::vector<CheckResult> out;

  out.push_back(check("noise power matches -71.99 dBm", [] {
    const double pn = noise_power_dbm(2e9, 9.0);
    return std::abs(pn + 71.99) <= 0.01 ? "" : "got " + std::to_string(pn);
  }));

  out.push_back(check("attenuation trace invariants", [] {
    BlockageParams p{.arrival_rate_per_s = 3.0, .mean_duration_ms = 200.0};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto trace = generate_trace(p, 48000, 0.0625, seed);
      if (auto err = check_trace_invariants(trace, p)) return "seed " + std::to_string(seed) + ": " + *err;
    }
    return std::string();
  }));

  out.push_back(check("one UE per slot, all slots accounted", [] {
    for (Policy policy : {Policy::kPf, Policy::kMaxMin, Policy::kBaPf}) {
      const auto cfg = short_config(policy, 2.0);
      DropOptions opts;
      opts.record_assignment = true;
      const auto r = run_drop(cfg, 11, opts);
      const auto total = std::accumulate(r.assigned_slots.begin(), r.assigned_slots.end(), std::size_t{0});
      if (total != cfg.horizon_slots || r.assignment.size() != cfg.horizon_slots)
        return std::string(to_string(policy)) + ": slot accounting mismatch";
      for (std::size_t u : r.assignment)
        if (u >= cfg.n_ues) return std::string(to_string(policy)) + ": UE index out of range";
    }
    return std::string();
  }));

  out.push_back(check("BA-PF equals PF without blockers", [] {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      DropOptions opts;
      opts.record_assignment = true;
      const auto pf = run_drop(short_config(Policy::kPf, 0.0), seed, opts);
      auto ba = run_drop(short_config(Policy::kBaPf, 0.0), seed, opts);
      if (ba.bapf_windows_detected != 0) return std::string("blockage detected with no blockers");
      ba.bapf_windows = 0;
      if (!(pf == ba)) return "seed " + std::to_string(seed) + ": assignments differ";
    }
    return std::string();
  }));

  out.push_back(check("Jain bounds and scale invariance", [] {
    Rng rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> rates(8);
      for (double& r : rates) r = unit(rng) * 1e9;
      const double j = jain_index(rates);
      if (j < 1.0 / 8.0 - 1e-12 || j > 1.0 + 1e-12) return std::string("Jain index out of [1/n, 1]");
      std::vector<double> scaled(rates);
      for (double& r : scaled) r *= 3.7;
      if (std::abs(jain_index(scaled) - j) > 1e-12) return std::string("Jain index not scale invariant");
    }
    return std::string();
  }));

  out.push_back(check("campaign determinism across thread counts", [threads] {
    const auto cfg = short_config(Policy::kBaPf, 1.0);
    const ScenarioPoint point{Policy::kBaPf, 1.0, 300.0, 50.0, 1e-3};
    const auto a = run_point(cfg, point, 1);
    const auto b = run_point(cfg, point, threads == 0 ? 3 : threads);
    return a.per_drop_rates == b.per_drop_rates ? std::string() : std::string("per-drop rates differ");
  }));

  return out;
}

}  // namespace mmwsim
