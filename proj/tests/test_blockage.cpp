#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mmwsim/blockage.hpp"
#include "mmwsim/error.hpp"
#include "mmwsim/validate.hpp"
#include "oracles.hpp"

namespace mmwsim {
namespace {

constexpr double kSlotMs = 0.0625;

BlockageParams table1_blockage(double lambda = 1.0, double tau = 1000.0) {
  return BlockageParams{.arrival_rate_per_s = lambda, .mean_duration_ms = tau};
}

// Maximal runs of one state: (state, first slot, length).
struct Run {
  ChannelState state;
  std::size_t first;
  std::size_t length;
};

std::vector<Run> runs(const AttenuationTrace& t) {
  std::vector<Run> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (out.empty() || out.back().state != t.states[i]) out.push_back({t.states[i], i, 0});
    ++out.back().length;
  }
  return out;
}

TEST(Blockage, NoArrivalsMeansClearLink) {
  const auto trace = generate_trace(table1_blockage(0.0), 48000, kSlotMs, 5);
  ASSERT_EQ(trace.size(), 48000u);
  EXPECT_TRUE(std::all_of(trace.values_db.begin(), trace.values_db.end(), [](double v) { return v == 0.0; }));
  EXPECT_TRUE(std::all_of(trace.states.begin(), trace.states.end(),
                          [](ChannelState s) { return s == ChannelState::kLos; }));
  EXPECT_EQ(trace.blockage_events(), 0u);
}

TEST(Blockage, DecayTakesAmaxOverRhoD) {
  // Oracle: 40 dB / 0.2 dB/ms = 200 ms = 3200 slots.
  const Blocker b{0.0, 500.0};
  const auto trace = trace_from_blockers(table1_blockage(), 10000, kSlotMs, {&b, 1});
  const auto r = runs(trace);
  ASSERT_GE(r.size(), 2u);
  EXPECT_EQ(r[0].state, ChannelState::kDecay);
  EXPECT_EQ(r[0].first, 0u);
  EXPECT_EQ(r[0].length, 3200u);
  EXPECT_DOUBLE_EQ(static_cast<double>(r[0].length) * kSlotMs, 200.0);
  EXPECT_EQ(r[1].state, ChannelState::kNlos);
}

TEST(Blockage, RiseTakesAmaxOverRhoRQuantized) {
  // Oracle: 40 / 6.7 = 5.97 ms = 95.52 slots -> 96 slots once quantized.
  const Blocker b{0.0, 100.0};
  const auto trace = trace_from_blockers(table1_blockage(), 10000, kSlotMs, {&b, 1});
  const auto r = runs(trace);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[2].state, ChannelState::kRise);
  EXPECT_EQ(r[2].length, 96u);
  EXPECT_NEAR(static_cast<double>(r[2].length) * kSlotMs, 40.0 / 6.7, kSlotMs);
  EXPECT_EQ(r[3].state, ChannelState::kLos);
  // NLOS ends at arrival + decay + dwell = 300 ms = slot 4800.
  EXPECT_EQ(r[2].first, 4800u);
}

TEST(Blockage, OverlappingBlockersMergeIntoOneNlosInterval) {
  const std::vector<Blocker> blockers{{0.0, 100.0}, {50.0, 300.0}};
  for (bool reversed : {false, true}) {
    auto input = blockers;
    if (reversed) std::reverse(input.begin(), input.end());
    const auto trace = trace_from_blockers(table1_blockage(), 20000, kSlotMs, input);
    const auto r = runs(trace);
    ASSERT_EQ(r.size(), 4u);
    EXPECT_EQ(r[1].state, ChannelState::kNlos);
    EXPECT_EQ(r[1].first, 3200u);
    // max(0 + 200 + 100, 50 + 200 + 300) = 550 ms -> slot 8800.
    EXPECT_EQ(r[1].first + r[1].length, 8800u);
    EXPECT_EQ(trace.blockage_events(), 1u);
  }
}

TEST(Blockage, ArrivalDuringRiseResumesDecayFromCurrentLevel) {
  // First blocker: NLOS ends at 300 ms (slot 4800); second arrives 2 ms into RISE.
  const std::vector<Blocker> blockers{{0.0, 100.0}, {302.0, 50.0}};
  const auto trace = trace_from_blockers(table1_blockage(), 20000, kSlotMs, blockers);
  const std::size_t arrival = 302.0 / kSlotMs;  // 4832
  EXPECT_EQ(trace.states[arrival - 1], ChannelState::kRise);
  EXPECT_EQ(trace.states[arrival], ChannelState::kDecay);
  const double level = trace.values_db[arrival];
  EXPECT_NEAR(level, 40.0 - 6.7 * kSlotMs * 32, 1e-9);
  EXPECT_NEAR(trace.values_db[arrival + 1] - level, 0.2 * kSlotMs, 1e-9);
  EXPECT_FALSE(check_trace_invariants(trace, table1_blockage()).has_value());
}

TEST(Blockage, ArrivalsOffTheGridTakeEffectAtNextSlotBoundary) {
  const Blocker b{0.01, 10.0};
  const auto trace = trace_from_blockers(table1_blockage(), 100, kSlotMs, {&b, 1});
  EXPECT_EQ(trace.states[0], ChannelState::kLos);
  EXPECT_EQ(trace.states[1], ChannelState::kDecay);
}

TEST(Blockage, TraceInvariantsHoldForRandomParameters) {
  Rng rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    BlockageParams p;
    p.arrival_rate_per_s = 5.0 * u(rng);
    p.mean_duration_ms = 10.0 + 3000.0 * u(rng);
    p.decay_rate_db_per_ms = 0.05 + 2.0 * u(rng);
    p.rise_rate_db_per_ms = 0.5 + 10.0 * u(rng);
    p.max_attenuation_db = 5.0 + 40.0 * u(rng);
    const auto trace = generate_trace(p, 48000, kSlotMs, static_cast<std::uint64_t>(trial));
    const auto err = check_trace_invariants(trace, p);
    EXPECT_FALSE(err.has_value()) << "trial " << trial << ": " << err.value_or("");
  }
}

TEST(Blockage, InvariantCheckerRejectsBrokenTraces) {
  const auto p = table1_blockage();
  const Blocker b{0.0, 100.0};
  auto trace = trace_from_blockers(p, 6000, kSlotMs, {&b, 1});
  ASSERT_FALSE(check_trace_invariants(trace, p).has_value());

  auto jump = trace;
  jump.values_db[10] += 1.0;
  EXPECT_TRUE(check_trace_invariants(jump, p).has_value());

  auto illegal = trace;
  illegal.states[3300] = ChannelState::kLos;  // NLOS -> LOS -> NLOS
  illegal.values_db[3300] = 0.0;
  EXPECT_TRUE(check_trace_invariants(illegal, p).has_value());
}

TEST(Blockage, DeterministicAndPrefixStable) {
  const auto p = table1_blockage(2.0, 300.0);
  const auto a = generate_trace(p, 48000, kSlotMs, 77);
  const auto b = generate_trace(p, 48000, kSlotMs, 77);
  EXPECT_EQ(a.values_db, b.values_db);
  EXPECT_EQ(a.states, b.states);

  const auto longer = generate_trace(p, 56000, kSlotMs, 77);
  EXPECT_TRUE(std::equal(a.values_db.begin(), a.values_db.end(), longer.values_db.begin()));

  const auto other = generate_trace(p, 48000, kSlotMs, 78);
  EXPECT_NE(a.values_db, other.values_db);
}

TEST(Blockage, InvalidInputsThrow) {
  auto bad = table1_blockage();
  bad.mean_duration_ms = 0.0;
  EXPECT_THROW(generate_trace(bad, 10, kSlotMs, 1), ParameterError);
  bad = table1_blockage(-1.0);
  EXPECT_THROW(generate_trace(bad, 10, kSlotMs, 1), ParameterError);
  EXPECT_THROW(generate_trace(table1_blockage(), 0, kSlotMs, 1), ParameterError);
}

TEST(ArrivalTimes, ZeroRateIsEmpty) { EXPECT_TRUE(arrival_times(0.0, 3.0, 1).empty()); }

TEST(ArrivalTimes, SortedInsideHorizon) {
  const auto a = arrival_times(50.0, 3.0, 4);
  ASSERT_FALSE(a.empty());
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_GE(a.front(), 0.0);
  EXPECT_LT(a.back(), 3.0);
}

TEST(ArrivalTimes, MeanCountMatchesPoissonMean) {
  // Oracle: E[N] = lambda T = 6, standard error sqrt(6 / 10000).
  constexpr int kRuns = 10000;
  double total = 0.0;
  for (int s = 0; s < kRuns; ++s) total += static_cast<double>(arrival_times(2.0, 3.0, s).size());
  const double mean = total / kRuns;
  EXPECT_NEAR(mean, 6.0, 3.0 * std::sqrt(6.0 / kRuns));
}

TEST(ArrivalTimes, FirstArrivalFollowsTruncatedExponential) {
  // lambda = 0.2/s over 3 s: the first arrival, given that one happens, has
  // CDF (1 - e^{-lambda x}) / (1 - e^{-lambda T}).
  constexpr double kLambda = 0.2;
  constexpr double kT = 3.0;
  std::vector<double> first;
  for (int s = 0; s < 20000; ++s) {
    const auto a = arrival_times(kLambda, kT, s);
    if (!a.empty()) first.push_back(a.front());
  }
  ASSERT_GT(first.size(), 1000u);
  const double norm = 1.0 - std::exp(-kLambda * kT);
  const double d = test::ks_statistic(first, [&](double x) { return (1.0 - std::exp(-kLambda * x)) / norm; });
  EXPECT_LT(d * std::sqrt(static_cast<double>(first.size())), test::kKsCritical1Percent);
}

TEST(ArrivalTimes, GapsAreExponentialWithMeanOneOverLambda) {
  const auto a = arrival_times(0.2, 50000.0, 9);
  std::vector<double> gaps;
  for (std::size_t i = 1; i < a.size(); ++i) gaps.push_back(a[i] - a[i - 1]);
  ASSERT_GT(gaps.size(), 5000u);
  const double d = test::ks_statistic(gaps, [](double x) { return 1.0 - std::exp(-x / 5.0); });
  EXPECT_LT(d * std::sqrt(static_cast<double>(gaps.size())), test::kKsCritical1Percent);
}

TEST(Blockage, TraceCsvExport) {
  const Blocker b{0.0, 1.0};
  const auto trace = trace_from_blockers(table1_blockage(), 3, kSlotMs, {&b, 1});
  std::ostringstream os;
  write_trace_csv(os, trace);
  EXPECT_EQ(os.str(), "slot_index,state_label,attenuation_db\n0,DECAY,0\n1,DECAY,0.0125\n2,DECAY,0.025\n");
}

}  // namespace
}  // namespace mmwsim
