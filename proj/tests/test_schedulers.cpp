#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mmwsim/error.hpp"
#include "mmwsim/schedulers.hpp"
#include "oracles.hpp"

namespace mmwsim {
namespace {

RateWindow window_from(const std::vector<std::vector<double>>& rows) {
  RateWindow w(rows.size(), rows.front().size());
  for (std::size_t u = 0; u < rows.size(); ++u)
    for (std::size_t j = 0; j < rows[u].size(); ++j) w(u, j) = rows[u][j];
  return w;
}

TEST(Policy, ParseAndPrint) {
  for (Policy p : {Policy::kPf, Policy::kMaxMin, Policy::kBaPf}) EXPECT_EQ(parse_policy(to_string(p)), p);
  EXPECT_THROW(parse_policy("rr"), ParameterError);
}

TEST(SchedulerState, RejectsBadInputs) {
  EXPECT_THROW(SchedulerState({}, 0.5, 1), ParameterError);
  EXPECT_THROW(SchedulerState({1.0}, 1.5, 1), ParameterError);
  EXPECT_THROW(SchedulerState({-1.0}, 0.5, 1), ParameterError);
}

TEST(Pf, PicksLargestRatio) {
  SchedulerState s({2.0, 1.0, 4.0}, 0.5, 1);
  EXPECT_EQ(pf_select(std::vector<double>{3.0, 2.0, 5.0}, s), 1u);  // 1.5, 2, 1.25
}

TEST(Pf, ZeroAverageWithPositiveRateWins) {
  SchedulerState s({0.0, 1.0, 0.0}, 0.5, 1);
  // UEs 0 and 2 are both infinite; the larger feasible rate breaks the tie.
  EXPECT_EQ(pf_select(std::vector<double>{1.0, 100.0, 2.0}, s), 2u);
}

TEST(Pf, AllZeroPrioritiesPickUniformly) {
  SchedulerState s({1.0, 1.0, 1.0, 1.0}, 0.5, 3);
  std::vector<int> hits(4, 0);
  for (int i = 0; i < 40000; ++i) ++hits[pf_select(std::vector<double>{0, 0, 0, 0}, s)];
  for (int h : hits) EXPECT_NEAR(h / 40000.0, 0.25, 0.01);
}

TEST(Pf, TiesSplitUniformly) {
  SchedulerState s({1.0, 1.0, 1.0}, 0.5, 9);
  std::vector<int> hits(3, 0);
  for (int i = 0; i < 30000; ++i) ++hits[pf_select(std::vector<double>{2.0, 2.0, 1.0}, s)];
  EXPECT_EQ(hits[2], 0);
  EXPECT_NEAR(hits[0] / 30000.0, 0.5, 0.01);
}

TEST(Pf, UniqueWinnerDrawsNoRandomness) {
  SchedulerState s({1.0, 1.0}, 0.5, 9);
  const Rng before = s.tiebreak;
  pf_select(std::vector<double>{2.0, 1.0}, s);
  EXPECT_EQ(s.tiebreak, before);
}

TEST(Pf, SizeMismatchThrows) {
  SchedulerState s({1.0, 1.0}, 0.5, 1);
  EXPECT_THROW(pf_select(std::vector<double>{1.0}, s), SchedulingError);
}

TEST(MaxMin, PicksLowestAverageIgnoringRates) {
  SchedulerState s({5.0, 0.5, 3.0}, 0.5, 1);
  EXPECT_EQ(maxmin_select(s), 1u);
  SchedulerState z({5.0, 0.0, 0.0}, 0.5, 1);
  std::vector<int> hits(3, 0);
  for (int i = 0; i < 20000; ++i) ++hits[maxmin_select(z)];
  EXPECT_EQ(hits[0], 0);
  EXPECT_NEAR(hits[1] / 20000.0, 0.5, 0.015);
}

TEST(UpdateAvg, ExponentialMovingAverage) {
  SchedulerState s({4.0, 2.0}, 0.5, 1);
  update_avg(s, std::vector<double>{8.0, 0.0});
  EXPECT_EQ(s.avg_rates, (std::vector<double>{6.0, 1.0}));
  SchedulerState frozen({4.0}, 0.0, 1);
  update_avg(frozen, std::vector<double>{100.0});
  EXPECT_EQ(frozen.avg_rates[0], 4.0);
}

TEST(BaPf, HandTraceTwoUesTwoSlots) {
  // UE 0 is blocked in slot 1, UE 1 is clear in both slots.
  Rng rng(1);
  const auto a = bapf_schedule_window(window_from({{4e9, 0.0}, {4e9, 4e9}}), rng);
  EXPECT_EQ(a, (std::vector<std::size_t>{0, 1}));
}

TEST(BaPf, AnticipatesTheBlockedUe) {
  // UE 0 loses its link half-way through the window; it gets the early half.
  Rng rng(1);
  const auto a = bapf_schedule_window(
      window_from({{1, 1, 1, 1, 1, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1}}), rng);
  EXPECT_EQ(a, (std::vector<std::size_t>{0, 0, 0, 0, 0, 1, 1, 1, 1, 1}));
}

TEST(BaPf, EqualRatesGiveEqualShares) {
  for (std::size_t n_u : {2u, 3u, 5u, 8u}) {
    for (std::size_t n_t : {7u, 16u, 800u}) {
      Rng rng(n_u * 1000 + n_t);
      RateWindow w(n_u, n_t);
      for (std::size_t u = 0; u < n_u; ++u) std::fill(w.ue(u).begin(), w.ue(u).end(), 3.5e9);
      const auto a = bapf_schedule_window(w, rng);
      for (std::size_t u = 0; u < n_u; ++u) {
        const auto share = static_cast<std::size_t>(std::count(a.begin(), a.end(), u));
        EXPECT_GE(share, n_t / n_u);
        EXPECT_LE(share, (n_t + n_u - 1) / n_u);
      }
    }
  }
}

TEST(BaPf, SingleUeTakesEverySlot) {
  Rng rng(1);
  const auto a = bapf_schedule_window(window_from({{0.0, 1.0, 0.0, 2.0}}), rng);
  EXPECT_EQ(a, (std::vector<std::size_t>(4, 0)));
}

TEST(BaPf, MatchesLiteralTranscriptionOnSmallWindows) {
  // Rates drawn from a small alphabet (including zero) so ties, zero
  // columns and infinite priorities all occur.
  Rng gen(31337);
  const std::vector<double> alphabet{0.0, 1e9, 2e9, 4e9, 6e9};
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  int cases = 0;
  for (std::size_t n_u = 1; n_u <= 3; ++n_u) {
    for (std::size_t n_t = 1; n_t <= 4; ++n_t) {
      for (int trial = 0; trial < 400; ++trial) {
        std::vector<std::vector<double>> rows(n_u, std::vector<double>(n_t));
        for (auto& row : rows)
          for (auto& r : row) r = alphabet[pick(gen)];
        const std::uint64_t seed = gen();
        Rng a(seed), b(seed);
        ASSERT_EQ(bapf_schedule_window(window_from(rows), a), test::bapf_literal(rows, b))
            << "n_u=" << n_u << " n_t=" << n_t << " trial=" << trial;
        ++cases;
      }
    }
  }
  EXPECT_EQ(cases, 4800);
}

TEST(BaPf, ScaleInvariant) {
  Rng gen(5);
  std::uniform_real_distribution<double> r(0.0, 1e10);
  for (int trial = 0; trial < 50; ++trial) {
    RateWindow w(4, 32), scaled(4, 32);
    for (std::size_t u = 0; u < 4; ++u)
      for (std::size_t j = 0; j < 32; ++j) {
        w(u, j) = r(gen);
        scaled(u, j) = 8.0 * w(u, j);  // power of two keeps every ratio exact
      }
    Rng a(trial), b(trial);
    EXPECT_EQ(bapf_schedule_window(w, a), bapf_schedule_window(scaled, b));
  }
}

TEST(ScheduleSlot, BaPfNeedsAPlan) {
  SchedulerState s({1.0, 1.0}, 0.5, 1);
  const std::vector<double> f{1.0, 2.0};
  EXPECT_THROW(schedule_slot(Policy::kBaPf, s, f), SchedulingError);

  s.window = WindowPlan{true, {1, 0}, 0};
  EXPECT_EQ(schedule_slot(Policy::kBaPf, s, f), 1u);
  EXPECT_EQ(schedule_slot(Policy::kBaPf, s, f), 0u);
  EXPECT_THROW(schedule_slot(Policy::kBaPf, s, f), SchedulingError);
}

TEST(ScheduleSlot, UndetectedWindowFallsBackToPf) {
  SchedulerState a({2.0, 1.0, 4.0}, 0.5, 7), b({2.0, 1.0, 4.0}, 0.5, 7);
  a.window = WindowPlan{};
  const std::vector<double> f{3.0, 2.0, 5.0};
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(schedule_slot(Policy::kBaPf, a, f), schedule_slot(Policy::kPf, b, f));
  }
}

}  // namespace
}  // namespace mmwsim
