/*
 * Copyright 2026 The Fairway Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fairway/metrics.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fairway/error.hpp"
#include "oracles.hpp"

namespace fairway {
namespace {

using oracle::NaiveTally;
using oracle::naive;

GroupConfusion cells(ConfusionCells p, ConfusionCells u) { return {p, u}; }

TEST(Confusion, PerfectPrediction) {
  const std::vector<int> y{1, 1, 0, 0};
  const GroupConfusion c = confusion(y, y, std::vector<int>{1, 1, 0, 0});
  EXPECT_EQ(c.privileged, (ConfusionCells{0, 0, 0, 2}));
  EXPECT_EQ(c.unprivileged, (ConfusionCells{2, 0, 0, 0}));
}

TEST(Confusion, TotalInversion) {
  const GroupConfusion c =
      confusion(std::vector<int>{1, 0, 1, 0}, std::vector<int>{0, 1, 0, 1},
                std::vector<int>{1, 1, 0, 0});
  EXPECT_EQ(c.privileged, (ConfusionCells{0, 1, 1, 0}));
  EXPECT_EQ(c.unprivileged, (ConfusionCells{0, 1, 1, 0}));
}

TEST(Confusion, LengthMismatch) {
  EXPECT_THROW(confusion(std::vector<int>{1, 0}, std::vector<int>{1},
                         std::vector<int>{1, 0}),
               LengthMismatch);
  EXPECT_THROW(confusion(std::vector<int>{}, std::vector<int>{},
                         std::vector<int>{}),
               LengthMismatch);
}

TEST(Rates, DirectArithmetic) {
  const GroupRates r = rates(cells({6, 2, 1, 3}, {0, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(r.tpr_privileged, 0.75);
  EXPECT_DOUBLE_EQ(r.fpr_privileged, 0.25);
  // Empty denominators give 0.
  EXPECT_EQ(r.tpr_unprivileged, 0.0);
  EXPECT_EQ(r.fpr_unprivileged, 0.0);
}

TEST(Eod, Examples) {
  EXPECT_EQ(eod(cells({1, 1, 1, 1}, {2, 2, 2, 2})), 0.0);
  // TPR_U = 3/4, TPR_P = 1/2.
  const GroupConfusion c = cells({0, 0, 2, 2}, {0, 0, 1, 3});
  EXPECT_DOUBLE_EQ(eod(c), 0.25);
  EXPECT_DOUBLE_EQ(eod(c.swapped()), 0.25);
}

TEST(Aod, Examples) {
  EXPECT_EQ(aod(cells({3, 1, 1, 3}, {3, 1, 1, 3})), 0.0);
  // FPR_P = 0.3, FPR_U = 0.2 (diff -0.1); TPR_P = 0.5, TPR_U = 0.8 (+0.3).
  const GroupConfusion a = cells({7, 3, 5, 5}, {8, 2, 2, 8});
  EXPECT_NEAR(aod(a), 0.1, 1e-12);
  // FPR diff +0.2 and TPR diff -0.2 cancel before the absolute value.
  const GroupConfusion b = cells({9, 1, 3, 7}, {7, 3, 5, 5});
  EXPECT_NEAR(aod(b), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(aod(a.swapped()), aod(a));
}

TEST(Performance, Pooled) {
  const std::vector<int> y{1, 0, 1, 0, 1, 0};
  const Performance perfect =
      performance(confusion(y, y, std::vector<int>{1, 1, 1, 0, 0, 0}));
  EXPECT_EQ(perfect.recall, 1.0);
  EXPECT_EQ(perfect.false_alarm, 0.0);

  const std::vector<int> labels{0, 0, 0, 0, 1};
  const Performance all_pos = performance(confusion(
      labels, std::vector<int>(5, 1), std::vector<int>{1, 0, 1, 0, 1}));
  EXPECT_EQ(all_pos.false_alarm, 1.0);
  EXPECT_EQ(all_pos.recall, 1.0);
}

TEST(Performance, NoPositivesGivesZeroRecall) {
  const Performance p = performance(confusion(
      std::vector<int>{0, 0}, std::vector<int>{1, 0}, std::vector<int>{1, 0}));
  EXPECT_EQ(p.recall, 0.0);
  EXPECT_EQ(p.false_alarm, 0.5);
}

TEST(Metrics, MatchNaiveTallyOnRandomInstances) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> len(1, 60);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = len(rng);
    // Vary the mix so empty groups and single-class groups occur.
    std::bernoulli_distribution label(std::uniform_real_distribution<>(0, 1)(rng));
    std::bernoulli_distribution pred(std::uniform_real_distribution<>(0, 1)(rng));
    std::bernoulli_distribution grp(std::uniform_real_distribution<>(0, 1)(rng));
    std::vector<int> y(n), p(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = label(rng);
      p[i] = pred(rng);
      g[i] = grp(rng);
    }
    const NaiveTally t = naive(y, p, g);
    const GroupConfusion c = confusion(y, p, g);
    ASSERT_EQ(c.total(), n);
    EXPECT_EQ(c.privileged, (ConfusionCells{t.cell[1][0], t.cell[1][1],
                                            t.cell[1][2], t.cell[1][3]}));
    EXPECT_EQ(c.unprivileged, (ConfusionCells{t.cell[0][0], t.cell[0][1],
                                              t.cell[0][2], t.cell[0][3]}));
    const GroupRates r = rates(c);
    EXPECT_NEAR(r.tpr_privileged, t.tpr[1], 1e-9);
    EXPECT_NEAR(r.tpr_unprivileged, t.tpr[0], 1e-9);
    EXPECT_NEAR(r.fpr_privileged, t.fpr[1], 1e-9);
    EXPECT_NEAR(r.fpr_unprivileged, t.fpr[0], 1e-9);
    const MeasureSet m = measures(y, p, g);
    EXPECT_NEAR(m.eod, std::abs(t.tpr[0] - t.tpr[1]), 1e-9);
    EXPECT_NEAR(m.aod,
                std::abs(0.5 * ((t.fpr[0] - t.fpr[1]) + (t.tpr[0] - t.tpr[1]))),
                1e-9);
    EXPECT_NEAR(m.recall, t.recall, 1e-9);
    EXPECT_NEAR(m.false_alarm, t.far, 1e-9);
    EXPECT_GE(m.eod, 0.0);
    EXPECT_LE(m.eod, 1.0);
    EXPECT_GE(m.aod, 0.0);
    EXPECT_LE(m.aod, 1.0);
    EXPECT_EQ(eod(c.swapped()), eod(c));
    EXPECT_EQ(aod(c.swapped()), aod(c));
  }
}

}  // namespace
}  // namespace fairway
