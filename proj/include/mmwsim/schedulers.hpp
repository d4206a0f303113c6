#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mmwsim/rng.hpp"

namespace mmwsim {

enum class Policy { kPf, kMaxMin, kBaPf };

std::string_view to_string(Policy p);
// "pf" | "maxmin" | "bapf"; throws ParameterError otherwise.
Policy parse_policy(std::string_view name);

// Predicted feasible rates for one window, UE-major: rate(u, j) is UE u at
// window slot j (j = 0 is the slot right after the decision instant).
class RateWindow {
 public:
  RateWindow() = default;
  RateWindow(std::size_t n_ues, std::size_t n_slots)
      : n_ues_(n_ues), n_slots_(n_slots), rates_(n_ues * n_slots, 0.0) {}

  std::size_t n_ues() const { return n_ues_; }
  std::size_t n_slots() const { return n_slots_; }
  double& operator()(std::size_t ue, std::size_t slot) { return rates_[ue * n_slots_ + slot]; }
  double operator()(std::size_t ue, std::size_t slot) const { return rates_[ue * n_slots_ + slot]; }
  std::span<double> ue(std::size_t u) { return {rates_.data() + u * n_slots_, n_slots_}; }
  std::span<const double> ue(std::size_t u) const { return {rates_.data() + u * n_slots_, n_slots_}; }

 private:
  std::size_t n_ues_ = 0;
  std::size_t n_slots_ = 0;
  std::vector<double> rates_;
};

// A BA-PF plan for the current prediction window.
struct WindowPlan {
  bool blockage_detected = false;
  std::vector<std::size_t> assignment;  // one UE per window slot when detected
  std::size_t next = 0;
};

struct SchedulerState {
  std::vector<double> avg_rates;  // r_bar, bits/s
  double ema_weight = 0.5;
  Rng tiebreak;
  std::optional<WindowPlan> window;

  SchedulerState(std::vector<double> initial_avg, double ema_weight, std::uint64_t tiebreak_seed);
  std::size_t n_ues() const { return avg_rates.size(); }
};

// Uniform pick among the `count` indices that satisfy `is_candidate`, in
// increasing index order. Draws from `rng` only when count > 1.
template <class Pred>
std::size_t pick_uniform(std::size_t n, std::size_t count, Pred is_candidate, Rng& rng) {
  std::size_t k = 0;
  if (count > 1) k = std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
  for (std::size_t u = 0; u < n; ++u)
    if (is_candidate(u) && k-- == 0) return u;
  return n;  // unreachable when count matches
}

// Shared argmax of numerator / denominator used by PF and BA-PF.
// A zero denominator with a positive numerator is the infinite-priority
// class; inside that class the largest numerator wins. If every priority is
// zero the pick is uniform over all UEs. Ties are uniform at random.
std::size_t select_ratio(std::span<const double> numerators, std::span<const double> denominators,
                         Rng& rng);

// argmax feasible / r_bar.
std::size_t pf_select(std::span<const double> feasible_rates, SchedulerState& state);

// argmin r_bar (zero average is infinite priority).
std::size_t maxmin_select(SchedulerState& state);

// r_bar <- (1 - w) r_bar + w r for every UE.
void update_avg(SchedulerState& state, std::span<const double> realized_rates);

// Backward greedy over the window: from the last slot to the first, give the
// slot to argmax r_hat(j) / S_u(j), S_u(j) being the rate already committed
// to u in slots after j.
std::vector<std::size_t> bapf_schedule_window(const RateWindow& predicted, Rng& rng);

// Per-slot dispatch. BA-PF follows its window plan when blockage was
// detected and falls back to PF otherwise; throws SchedulingError if BA-PF
// has no plan or the plan is exhausted.
std::size_t schedule_slot(Policy policy, SchedulerState& state, std::span<const double> feasible_rates);

}  // namespace mmwsim
