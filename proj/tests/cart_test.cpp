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

#include "fairway/cart.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fairway/error.hpp"

namespace fairway {
namespace {

std::vector<CartPoint> random_points(std::size_t n, std::size_t dim,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> level(0, 9);
  std::normal_distribution<double> noise;
  std::vector<CartPoint> points(n);
  for (auto& p : points) {
    p.x.resize(dim);
    double y = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      p.x[j] = level(rng);
      y += (j + 1) * std::sin(p.x[j]);
    }
    p.y = y + 0.1 * noise(rng);
  }
  return points;
}

double training_mse(const CartTree& t, const std::vector<CartPoint>& pts) {
  double total = 0.0;
  for (const auto& p : pts) {
    const double d = t.predict(p.x) - p.y;
    total += d * d;
  }
  return total / static_cast<double>(pts.size());
}

TEST(Cart, ConstantResponseGivesSingleLeaf) {
  const std::vector<CartPoint> pts{{{1}, 2.5}, {{2}, 2.5}, {{3}, 2.5},
                                   {{4}, 2.5}, {{5}, 2.5}};
  const CartTree t = cart_fit(pts);
  EXPECT_EQ(t.nodes().size(), 1u);
  EXPECT_EQ(cart_predict(t, std::vector<double>{-100}), 2.5);
  EXPECT_EQ(cart_predict(t, std::vector<double>{100}), 2.5);
}

TEST(Cart, TwoClusterExample) {
  const std::vector<CartPoint> pts{
      {{0}, 0}, {{1}, 0}, {{10}, 5}, {{11}, 5}};
  const CartTree t = cart_fit(pts, {2, CartParams::kUnlimitedDepth});
  const auto& root = t.nodes()[0];
  ASSERT_FALSE(root.leaf);
  EXPECT_GT(root.threshold, 1.0);
  EXPECT_LT(root.threshold, 10.0);
  EXPECT_EQ(t.nodes()[root.left].value, 0.0);
  EXPECT_EQ(t.nodes()[root.right].value, 5.0);
  EXPECT_TRUE(t.nodes()[root.left].leaf);
  EXPECT_TRUE(t.nodes()[root.right].leaf);
}

// Exhaustive search for the best single split, as an oracle for the root.
struct BestSplit {
  std::size_t feature;
  double threshold;
};

BestSplit brute_force_root(const std::vector<CartPoint>& pts) {
  double best = -1.0;
  BestSplit out{0, 0.0};
  double mean = 0.0;
  for (const auto& p : pts) mean += p.y;
  mean /= pts.size();
  double sse = 0.0;
  for (const auto& p : pts) sse += (p.y - mean) * (p.y - mean);
  for (std::size_t f = 0; f < pts[0].x.size(); ++f) {
    std::set<double> values;
    for (const auto& p : pts) values.insert(p.x[f]);
    for (auto it = values.begin(); std::next(it) != values.end(); ++it) {
      const double thr = (*it + *std::next(it)) / 2.0;
      double ls = 0, rs = 0;
      std::size_t ln = 0, rn = 0;
      for (const auto& p : pts) {
        if (p.x[f] <= thr) { ls += p.y; ++ln; } else { rs += p.y; ++rn; }
      }
      const double lm = ls / ln, rm = rs / rn;
      double child = 0.0;
      for (const auto& p : pts) {
        const double m = p.x[f] <= thr ? lm : rm;
        child += (p.y - m) * (p.y - m);
      }
      const double gain = sse - child;
      if (gain > best + 1e-9) {
        best = gain;
        out = {f, thr};
      }
    }
  }
  return out;
}

TEST(Cart, RootSplitMatchesExhaustiveSearch) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto pts = random_points(30, 3, seed);
    const CartTree t = cart_fit(pts);
    const BestSplit oracle = brute_force_root(pts);
    ASSERT_FALSE(t.nodes()[0].leaf);
    EXPECT_EQ(t.nodes()[0].feature, oracle.feature) << "seed " << seed;
    EXPECT_DOUBLE_EQ(t.nodes()[0].threshold, oracle.threshold);
  }
}

TEST(Cart, FullTreeMemorizesDistinctPoints) {
  std::vector<CartPoint> pts;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 5; ++b) {
      pts.push_back({{double(a), double(b)}, std::cos(a * 5.0 + b)});
    }
  }
  const CartTree t = cart_fit(pts, {2, CartParams::kUnlimitedDepth});
  for (const auto& p : pts) EXPECT_EQ(t.predict(p.x), p.y);
}

TEST(Cart, MseNonIncreasingInDepth) {
  const auto pts = random_points(80, 3, 5);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t depth = 0; depth <= 10; ++depth) {
    const double mse = training_mse(cart_fit(pts, {2, depth}), pts);
    EXPECT_LE(mse, previous + 1e-12) << "depth " << depth;
    previous = mse;
  }
}

TEST(Cart, StoppingRules) {
  const auto pts = random_points(50, 2, 8);
  EXPECT_EQ(cart_fit(pts, {4, 0}).nodes().size(), 1u);
  EXPECT_LE(cart_fit(pts, {4, 3}).depth(), 3u);
  const CartTree t = cart_fit(pts, {20, CartParams::kUnlimitedDepth});
  for (const auto& n : t.nodes()) {
    EXPECT_GE(n.count, 1u);
    if (!n.leaf) {
      EXPECT_GE(n.count, 20u);
      EXPECT_EQ(t.nodes()[n.left].count + t.nodes()[n.right].count, n.count);
      EXPECT_GE(t.nodes()[n.left].count, 1u);
      EXPECT_GE(t.nodes()[n.right].count, 1u);
    }
  }
}

TEST(Cart, IdenticalInputsCannotSplit) {
  const std::vector<CartPoint> pts{{{1, 1}, 0}, {{1, 1}, 4}, {{1, 1}, 2},
                                   {{1, 1}, 6}};
  const CartTree t = cart_fit(pts);
  EXPECT_EQ(t.nodes().size(), 1u);
  EXPECT_DOUBLE_EQ(t.predict(std::vector<double>{1, 1}), 3.0);
}

TEST(Cart, LeftIffAtMostThreshold) {
  const std::vector<CartPoint> pts{{{0}, 0}, {{2}, 10}};
  const CartTree t = cart_fit(pts, {2, 1});
  EXPECT_EQ(t.nodes()[0].threshold, 1.0);
  EXPECT_EQ(t.predict(std::vector<double>{1.0}), 0.0);
  EXPECT_EQ(t.predict(std::vector<double>{1.0000001}), 10.0);
}

TEST(Cart, Errors) {
  EXPECT_THROW(cart_fit(std::vector<CartPoint>{}), EmptyInput);
  const std::vector<CartPoint> ragged{{{1, 2}, 0}, {{1}, 1}};
  EXPECT_THROW(cart_fit(ragged), DimensionMismatch);
  const CartTree t = cart_fit(std::vector<CartPoint>{{{1, 2}, 0}});
  EXPECT_THROW(t.predict(std::vector<double>{1}), DimensionMismatch);
}

TEST(Cart, Deterministic) {
  const auto pts = random_points(60, 3, 13);
  const CartTree a = cart_fit(pts), b = cart_fit(pts);
  ASSERT_EQ(a.nodes().size(), b.nodes().size());
  for (std::size_t i = 0; i < a.nodes().size(); ++i) {
    EXPECT_EQ(a.nodes()[i].threshold, b.nodes()[i].threshold);
    EXPECT_EQ(a.nodes()[i].value, b.nodes()[i].value);
  }
}

}  // namespace
}  // namespace fairway
