#include "mmwsim/schedulers.hpp"

#include <string>

#include "mmwsim/error.hpp"

namespace mmwsim {

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::kPf: return "pf";
    case Policy::kMaxMin: return "maxmin";
    case Policy::kBaPf: return "bapf";
  }
  return "?";
}

Policy parse_policy(std::string_view name) {
  if (name == "pf") return Policy::kPf;
  if (name == "maxmin") return Policy::kMaxMin;
  if (name == "bapf") return Policy::kBaPf;
  throw ParameterError("unknown policy '" + std::string(name) + "' (expected pf, maxmin or bapf)");
}

SchedulerState::SchedulerState(std::vector<double> initial_avg, double w, std::uint64_t tiebreak_seed)
    : avg_rates(std::move(initial_avg)), ema_weight(w), tiebreak(tiebreak_seed) {
  if (avg_rates.empty()) throw ParameterError("scheduler needs at least one UE");
  if (!(w >= 0.0 && w <= 1.0)) throw ParameterError("EMA weight must lie in [0, 1]");
  for (double r : avg_rates)
    if (!(r >= 0.0)) throw ParameterError("average rates must be >= 0");
}

std::size_t select_ratio(std::span<const double> num, std::span<const double> den, Rng& rng) {
  const std::size_t n = num.size();

  // Infinite-priority class first.
  auto infinite = [&](std::size_t u) { return den[u] == 0.0 && num[u] > 0.0; };
  double best = -1.0;
  std::size_t ties = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (!infinite(u)) continue;
    if (num[u] > best) {
      best = num[u];
      ties = 1;
    } else if (num[u] == best) {
      ++ties;
    }
  }
  if (ties > 0)
    return pick_uniform(n, ties, [&](std::size_t u) { return infinite(u) && num[u] == best; }, rng);

  auto priority = [&](std::size_t u) { return den[u] > 0.0 ? num[u] / den[u] : 0.0; };
  best = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    const double p = priority(u);
    if (p > best) {
      best = p;
      ties = 1;
    } else if (p == best && p > 0.0) {
      ++ties;
    }
  }
  if (ties == 0) return pick_uniform(n, n, [](std::size_t) { return true; }, rng);
  return pick_uniform(n, ties, [&](std::size_t u) { return priority(u) == best; }, rng);
}

std::size_t pf_select(std::span<const double> feasible_rates, SchedulerState& state) {
  if (feasible_rates.size() != state.n_ues())
    throw SchedulingError("feasible rate vector does not match UE count");
  return select_ratio(feasible_rates, state.avg_rates, state.tiebreak);
}

std::size_t maxmin_select(SchedulerState& state) {
  const auto& avg = state.avg_rates;
  double lowest = avg[0];
  std::size_t ties = 0;
  for (double r : avg) {
    if (r < lowest) {
      lowest = r;
      ties = 1;
    } else if (r == lowest) {
      ++ties;
    }
  }
  return pick_uniform(avg.size(), ties, [&](std::size_t u) { return avg[u] == lowest; }, state.tiebreak);
}

void update_avg(SchedulerState& state, std::span<const double> realized_rates) {
  if (realized_rates.size() != state.n_ues())
    throw SchedulingError("realized rate vector does not match UE count");
  const double w = state.ema_weight;
  for (std::size_t u = 0; u < realized_rates.size(); ++u)
    state.avg_rates[u] = (1.0 - w) * state.avg_rates[u] + w * realized_rates[u];
}

std::vector<std::size_t> bapf_schedule_window(const RateWindow& predicted, Rng& rng) {
  const std::size_t n_ues = predicted.n_ues();
  const std::size_t n_slots = predicted.n_slots();
  if (n_ues == 0) throw SchedulingError("BA-PF window has no UEs");

  std::vector<std::size_t> assignment(n_slots, 0);
  std::vector<double> committed(n_ues, 0.0);  // S_u
  std::vector<double> slot_rates(n_ues);
  for (std::size_t j = n_slots; j-- > 0;) {
    for (std::size_t u = 0; u < n_ues; ++u) slot_rates[u] = predicted(u, j);
    const std::size_t chosen = select_ratio(slot_rates, committed, rng);
    assignment[j] = chosen;
    committed[chosen] += slot_rates[chosen];
  }
  return assignment;
}

std::size_t schedule_slot(Policy policy, SchedulerState& state, std::span<const double> feasible_rates) {
  switch (policy) {
    case Policy::kPf:
      return pf_select(feasible_rates, state);
    case Policy::kMaxMin:
      return maxmin_select(state);
    case Policy::kBaPf: {
      if (!state.window) throw SchedulingError("BA-PF slot scheduled without a prediction window");
      WindowPlan& plan = *state.window;
      if (!plan.blockage_detected) return pf_select(feasible_rates, state);
      if (plan.next >= plan.assignment.size())
        throw SchedulingError("BA-PF window plan exhausted");
      return plan.assignment[plan.next++];
    }
  }
  throw SchedulingError("unknown policy");
}

}  // namespace mmwsim
