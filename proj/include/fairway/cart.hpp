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

#ifndef FAIRWAY_CART_HPP_
#define FAIRWAY_CART_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "fairway/error.hpp"

namespace fairway {

struct CartParams {
  static constexpr std::size_t kUnlimitedDepth =
      std::numeric_limits<std::size_t>::max();

  std::size_t min_samples_split = 4;
  std::size_t max_depth = 12;

  bool operator==(const CartParams&) const = default;
};

struct CartPoint {
  std::vector<double> x;
  double y = 0.0;
};

// Regression tree. Nodes live in a flat array; node 0 is the root.
class CartTree {
 public:
  struct Node {
    bool leaf = true;
    double value = 0.0;  // mean response of the node's rows
    std::size_t count = 0;
    std::size_t feature = 0;
    double threshold = 0.0;  // go left iff x[feature] <= threshold
    std::size_t left = 0;
    std::size_t right = 0;
  };

  // Greedy variance-reduction growth. Candidate thresholds are midpoints of
  // consecutive distinct values; the largest reduction wins, ties going to
  // the lower feature index and then the lower threshold. A node stays a
  // leaf when it has fewer than min_samples_split rows, is at max_depth,
  // has zero variance, or admits no split.
  static CartTree fit(std::span<const CartPoint> points,
                      CartParams params = {}) {
    if (points.empty()) throw EmptyInput("cart_fit needs at least one point");
    CartTree tree;
    tree.dim_ = points.front().x.size();
    for (const auto& p : points) {
      if (p.x.size() != tree.dim_) {
        throw DimensionMismatch("cart_fit: ragged config vectors");
      }
    }
    tree.params_ = params;
    std::vector<std::size_t> rows(points.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    tree.grow(points, rows, 0);
    return tree;
  }

  double predict(std::span<const double> x) const {
    if (x.size() != dim_) {
      throw DimensionMismatch("cart_predict: expected " +
                              std::to_string(dim_) + " values, got " +
                              std::to_string(x.size()));
    }
    std::size_t at = 0;
    while (!nodes_[at].leaf) {
      const Node& n = nodes_[at];
      at = x[n.feature] <= n.threshold ? n.left : n.right;
    }
    return nodes_[at].value;
  }

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t dim() const noexcept { return dim_; }
  const CartParams& params() const noexcept { return params_; }

  std::size_t depth() const { return depth_of(0); }
  std::size_t leaf_count() const {
    return static_cast<std::size_t>(std::count_if(
        nodes_.begin(), nodes_.end(), [](const Node& n) { return n.leaf; }));
  }

 private:
  std::size_t grow(std::span<const CartPoint> points,
                   std::vector<std::size_t>& rows, std::size_t depth) {
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    double sum = 0.0;
    for (std::size_t r : rows) sum += points[r].y;
    const double mean = sum / static_cast<double>(rows.size());
    double sse = 0.0;
    for (std::size_t r : rows) {
      const double d = points[r].y - mean;
      sse += d * d;
    }
    nodes_[id].value = mean;
    nodes_[id].count = rows.size();
    const bool constant =
        std::all_of(rows.begin(), rows.end(), [&](std::size_t r) {
          return points[r].y == points[rows.front()].y;
        });

    if (rows.size() < params_.min_samples_split ||
        depth >= params_.max_depth || constant) {
      return id;
    }

    // Best split by sum-of-squares reduction.
    double best_gain = 0.0;
    std::size_t best_feature = 0;
    double best_threshold = 0.0;
    bool found = false;
    std::vector<std::size_t> order = rows;
    for (std::size_t f = 0; f < dim_; ++f) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return points[a].x[f] < points[b].x[f];
      });
      double left_sum = 0.0, left_sq = 0.0;
      double total_sq = 0.0;
      for (std::size_t r : order) total_sq += points[r].y * points[r].y;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const double y = points[order[k]].y;
        left_sum += y;
        left_sq += y * y;
        const double lo = points[order[k]].x[f];
        const double hi = points[order[k + 1]].x[f];
        if (!(lo < hi)) continue;
        const double nl = static_cast<double>(k + 1);
        const double nr = static_cast<double>(order.size() - k - 1);
        const double right_sum = sum - left_sum;
        const double right_sq = total_sq - left_sq;
        const double child_sse = (left_sq - left_sum * left_sum / nl) +
                                 (right_sq - right_sum * right_sum / nr);
        const double gain = sse - child_sse;
        if (gain > best_gain * (1.0 + 1e-12) + 1e-15) {
          best_gain = gain;
          best_feature = f;
          best_threshold = lo + (hi - lo) / 2.0;
          found = true;
        }
      }
    }
    if (!found) return id;

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows) {
      (points[r].x[best_feature] <= best_threshold ? left_rows : right_rows)
          .push_back(r);
    }
    const std::size_t l = grow(points, left_rows, depth + 1);
    const std::size_t r = grow(points, right_rows, depth + 1);
    Node& node = nodes_[id];
    node.leaf = false;
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  std::size_t depth_of(std::size_t id) const {
    const Node& n = nodes_[id];
    if (n.leaf) return 0;
    return 1 + std::max(depth_of(n.left), depth_of(n.right));
  }

  std::vector<Node> nodes_;
  std::size_t dim_ = 0;
  CartParams params_;
};

inline CartTree cart_fit(std::span<const CartPoint> points,
                         CartParams params = {}) {
  return CartTree::fit(points, params);
}

inline double cart_predict(const CartTree& tree, std::span<const double> x) {
  return tree.predict(x);
}

}  // namespace fairway

#endif  // FAIRWAY_CART_HPP_
