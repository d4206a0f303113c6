#include "mmwsim/blockage.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "mmwsim/error.hpp"
#include "mmwsim/format.hpp"
#include "mmwsim/rng.hpp"

namespace mmwsim {

namespace {

// Slack for comparing accumulated ramps against their end levels and for
// snapping continuous instants onto the slot grid.
constexpr double kEps = 1e-9;

std::size_t slot_at_or_after(double instant_ms, double slot_ms) {
  const double x = instant_ms / slot_ms;
  return x <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(x - kEps));
}

}  // namespace

void BlockageParams::validate() const {
  if (!(arrival_rate_per_s >= 0.0) || !std::isfinite(arrival_rate_per_s))
    throw ParameterError("blockage arrival rate must be >= 0");
  if (!(mean_duration_ms > 0.0)) throw ParameterError("blockage mean duration must be > 0");
  if (!(decay_rate_db_per_ms > 0.0)) throw ParameterError("decay rate must be > 0");
  if (!(rise_rate_db_per_ms > 0.0)) throw ParameterError("rise rate must be > 0");
  if (!(max_attenuation_db > 0.0)) throw ParameterError("max attenuation must be > 0");
}

std::string_view to_string(ChannelState s) {
  switch (s) {
    case ChannelState::kLos: return "LOS";
    case ChannelState::kDecay: return "DECAY";
    case ChannelState::kNlos: return "NLOS";
    case ChannelState::kRise: return "RISE";
  }
  return "?";
}

bool is_legal_transition(ChannelState from, ChannelState to) {
  using S = ChannelState;
  if (from == to) return true;
  return (from == S::kLos && to == S::kDecay) || (from == S::kDecay && to == S::kNlos) ||
         (from == S::kNlos && to == S::kRise) || (from == S::kRise && to == S::kLos) ||
         (from == S::kRise && to == S::kDecay);
}

std::size_t AttenuationTrace::blockage_events() const {
  std::size_t n = 0;
  for (std::size_t t = 0; t < states.size(); ++t) {
    const bool blocked = states[t] != ChannelState::kLos;
    const bool was_clear = t == 0 || states[t - 1] == ChannelState::kLos;
    if (blocked && was_clear) ++n;
  }
  return n;
}

std::size_t AttenuationTrace::blocked_slots() const {
  return static_cast<std::size_t>(
      std::count_if(states.begin(), states.end(), [](ChannelState s) { return s != ChannelState::kLos; }));
}

std::vector<double> arrival_times(double rate_per_s, double horizon_s, std::uint64_t seed) {
  std::vector<double> out;
  if (!(rate_per_s > 0.0) || !(horizon_s > 0.0)) return out;
  Rng rng(seed);
  std::exponential_distribution<double> gap(rate_per_s);
  for (double t = gap(rng); t < horizon_s; t += gap(rng)) out.push_back(t);
  return out;
}

AttenuationTrace trace_from_blockers(const BlockageParams& params, std::size_t horizon_slots,
                                     double slot_duration_ms, std::span<const Blocker> blockers) {
  params.validate();
  if (horizon_slots == 0) throw ParameterError("trace horizon must be at least one slot");
  if (!(slot_duration_ms > 0.0)) throw ParameterError("slot duration must be > 0");

  std::vector<Blocker> sorted(blockers.begin(), blockers.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Blocker& a, const Blocker& b) { return a.arrival_ms < b.arrival_ms; });

  const double a_max = params.max_attenuation_db;
  const double decay_step = params.decay_rate_db_per_ms * slot_duration_ms;
  const double rise_step = params.rise_rate_db_per_ms * slot_duration_ms;

  AttenuationTrace trace;
  trace.slot_duration_ms = slot_duration_ms;
  trace.values_db.resize(horizon_slots);
  trace.states.resize(horizon_slots);

  ChannelState state = ChannelState::kLos;
  double level = 0.0;
  // Ramps are evaluated from their anchor, not accumulated, so a 3200-slot
  // decay lands on A_max without drift.
  double ramp_level = 0.0;
  std::size_t ramp_start = 0;
  std::size_t nlos_end = 0;
  std::size_t next = 0;

  for (std::size_t t = 0; t < horizon_slots; ++t) {
    if (t > 0) {
      switch (state) {
        case ChannelState::kLos:
          break;
        case ChannelState::kDecay:
          level = ramp_level + decay_step * static_cast<double>(t - ramp_start);
          if (level >= a_max - kEps) {
            level = a_max;
            state = ChannelState::kNlos;
          }
          break;
        case ChannelState::kNlos:
          if (t >= nlos_end) {
            state = ChannelState::kRise;
            ramp_start = t;
          }
          break;
        case ChannelState::kRise:
          level = a_max - rise_step * static_cast<double>(t - ramp_start);
          if (level <= kEps) {
            level = 0.0;
            state = ChannelState::kLos;
          }
          break;
      }
    }

    while (next < sorted.size() && slot_at_or_after(sorted[next].arrival_ms, slot_duration_ms) <= t) {
      const Blocker& b = sorted[next++];
      const std::size_t end =
          slot_at_or_after(b.arrival_ms + params.full_decay_ms() + b.dwell_ms, slot_duration_ms);
      switch (state) {
        case ChannelState::kLos:
          state = ChannelState::kDecay;
          ramp_level = 0.0;
          ramp_start = t;
          nlos_end = end;
          break;
        case ChannelState::kDecay:
        case ChannelState::kNlos:
          nlos_end = std::max(nlos_end, end);
          break;
        case ChannelState::kRise:
          state = ChannelState::kDecay;
          ramp_level = level;
          ramp_start = t;
          nlos_end = end;
          break;
      }
    }

    trace.values_db[t] = level;
    trace.states[t] = state;
  }
  return trace;
}

AttenuationTrace generate_trace(const BlockageParams& params, std::size_t horizon_slots,
                                double slot_duration_ms, std::uint64_t seed) {
  params.validate();
  if (horizon_slots == 0) throw ParameterError("trace horizon must be at least one slot");

  const double horizon_s = static_cast<double>(horizon_slots) * slot_duration_ms / 1000.0;
  const auto arrivals = arrival_times(params.arrival_rate_per_s, horizon_s, derive_seed(seed, {0}));

  Rng dwell_rng(derive_seed(seed, {1}));
  std::exponential_distribution<double> dwell(1.0 / params.mean_duration_ms);
  std::vector<Blocker> blockers;
  blockers.reserve(arrivals.size());
  for (double a : arrivals) blockers.push_back({a * 1000.0, dwell(dwell_rng)});

  return trace_from_blockers(params, horizon_slots, slot_duration_ms, blockers);
}

void write_trace_csv(std::ostream& os, const AttenuationTrace& trace) {
  os << "slot_index,state_label,attenuation_db\n";
  for (std::size_t t = 0; t < trace.size(); ++t)
    os << t << ',' << to_string(trace.states[t]) << ',' << format_double(trace.values_db[t]) << '\n';
}

}  // namespace mmwsim
