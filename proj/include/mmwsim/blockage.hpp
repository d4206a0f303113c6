#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace mmwsim {

// Human blockage process: Poisson blocker arrivals, each driving the link
// through LOS -> DECAY -> NLOS -> RISE -> LOS.
struct BlockageParams {
  double arrival_rate_per_s = 0.0;    // lambda_B
  double mean_duration_ms = 1000.0;   // tau_B, mean NLOS dwell per blocker
  double decay_rate_db_per_ms = 0.2;  // rho_D
  double rise_rate_db_per_ms = 6.7;   // rho_R
  double max_attenuation_db = 40.0;   // A_max

  // Throws ParameterError on violation.
  void validate() const;

  // Time for an unobstructed link to ramp to full attenuation.
  double full_decay_ms() const { return max_attenuation_db / decay_rate_db_per_ms; }

  bool operator==(const BlockageParams&) const = default;
};

enum class ChannelState : std::uint8_t { kLos, kDecay, kNlos, kRise };

std::string_view to_string(ChannelState s);

// True for the four forward edges and the re-blocking edges
// (DECAY/NLOS absorb new blockers in place, RISE -> DECAY).
bool is_legal_transition(ChannelState from, ChannelState to);

// One blocker event in continuous time. The blocker keeps the link in NLOS
// until arrival + full_decay + dwell; overlapping blockers merge and the
// NLOS interval ends at the latest end time.
struct Blocker {
  double arrival_ms = 0.0;
  double dwell_ms = 0.0;
};

struct AttenuationTrace {
  double slot_duration_ms = 0.0;
  std::vector<double> values_db;
  std::vector<ChannelState> states;

  std::size_t size() const { return values_db.size(); }
  // Number of LOS -> DECAY onsets, counting a trace that starts blocked.
  std::size_t blockage_events() const;
  // Slots not in LOS.
  std::size_t blocked_slots() const;
};

// Sorted Poisson arrival instants in [0, horizon_s), in seconds.
std::vector<double> arrival_times(double rate_per_s, double horizon_s, std::uint64_t seed);

// Realizes a trace from an explicit blocker list (sorted or not). Exposed so
// tests can force arrivals; generate_trace() draws the list and delegates.
AttenuationTrace trace_from_blockers(const BlockageParams& params, std::size_t horizon_slots,
                                     double slot_duration_ms, std::span<const Blocker> blockers);

// Random trace. Prefix-stable: a longer horizon with the same seed
// reproduces the shorter trace as its prefix.
AttenuationTrace generate_trace(const BlockageParams& params, std::size_t horizon_slots,
                                double slot_duration_ms, std::uint64_t seed);

// slot_index,state_label,attenuation_db
void write_trace_csv(std::ostream& os, const AttenuationTrace& trace);

}  // namespace mmwsim
