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

#ifndef FAIRWAY_TESTS_ORACLES_HPP_
#define FAIRWAY_TESTS_ORACLES_HPP_

// Reference computations written straight from the definitions, kept apart
// from the library code paths they check.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "fairway/fairway.hpp"

namespace fairway::oracle {

// Objective written out directly, without the library's stable softplus.
inline double naive_loss(const Matrix& x, const std::vector<int>& y,
                         const std::vector<double>& w, double c) {
  const std::size_t n = x.rows();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = w[0];
    for (std::size_t j = 0; j < x.cols(); ++j) z += w[j + 1] * x(i, j);
    const double p = 1.0 / (1.0 + std::exp(-z));
    total -= y[i] ? std::log(p) : std::log(1.0 - p);
  }
  double pen = 0.0;
  for (std::size_t j = 1; j < w.size(); ++j) pen += w[j] * w[j];
  return total / n + pen / (2.0 * c * n);
}

inline std::vector<double> finite_difference(const Matrix& x,
                                             const std::vector<int>& y,
                                             std::vector<double> w, double c,
                                             double h = 1e-5) {
  std::vector<double> g(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double keep = w[j];
    w[j] = keep + h;
    const double up = lr_loss(x, y, w, c);
    w[j] = keep - h;
    const double down = lr_loss(x, y, w, c);
    w[j] = keep;
    g[j] = (up - down) / (2.0 * h);
  }
  return g;
}

inline double relative_error(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-8});
  return std::abs(a - b) / scale;
}

// Independent tally: one pass per cell, straight from the definitions.
struct NaiveTally {
  double tpr[2], fpr[2], recall, far;
  std::size_t cell[2][4];  // [group][tn, fp, fn, tp]
};

inline NaiveTally naive(const std::vector<int>& y, const std::vector<int>& p,
                        const std::vector<int>& g) {
  NaiveTally t{};
  for (int grp = 0; grp < 2; ++grp) {
    for (int k = 0; k < 4; ++k) t.cell[grp][k] = 0;
    double pos = 0, neg = 0, tp = 0, fp = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (g[i] != grp) continue;
      if (y[i] == 1) {
        pos += 1;
        if (p[i] == 1) { tp += 1; ++t.cell[grp][3]; } else { ++t.cell[grp][2]; }
      } else {
        neg += 1;
        if (p[i] == 1) { fp += 1; ++t.cell[grp][1]; } else { ++t.cell[grp][0]; }
      }
    }
    t.tpr[grp] = pos > 0 ? tp / pos : 0.0;
    t.fpr[grp] = neg > 0 ? fp / neg : 0.0;
  }
  double pos = 0, neg = 0, tp = 0, fp = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i]) { pos += 1; tp += p[i]; } else { neg += 1; fp += p[i]; }
  }
  t.recall = pos > 0 ? tp / pos : 0.0;
  t.far = neg > 0 ? fp / neg : 0.0;
  return t;
}

// Recomputes the drop set from scratch: partition rows by the listed
// indicator columns, fit one model per cell on the remaining columns, and
// collect rows where any two models disagree.
inline std::vector<std::size_t> brute_force_drops(
    const Matrix& x, const std::vector<int>& y,
    const std::vector<std::size_t>& indicator_cols) {
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    bool is_indicator = false;
    for (std::size_t k : indicator_cols) is_indicator |= k == c;
    if (!is_indicator) keep.push_back(c);
  }
  std::map<std::vector<int>, std::vector<std::size_t>> cells;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    std::vector<int> key;
    for (std::size_t k : indicator_cols) key.push_back(x(r, k) > 0.5);
    cells[key].push_back(r);
  }
  std::vector<std::vector<int>> votes;
  for (const auto& [key, rows] : cells) {
    Matrix sub(rows.size(), keep.size());
    std::vector<int> sub_y;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < keep.size(); ++j) {
        sub(i, j) = x(rows[i], keep[j]);
      }
      sub_y.push_back(y[rows[i]]);
    }
    const LogisticModel m = lr_fit(sub, sub_y);
    std::vector<int> v(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
      double z = m.weights[0];
      for (std::size_t j = 0; j < keep.size(); ++j) {
        z += m.weights[j + 1] * x(r, keep[j]);
      }
      v[r] = z >= 0.0;
    }
    votes.push_back(v);
  }
  std::vector<std::size_t> dropped;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    std::set<int> distinct;
    for (const auto& v : votes) distinct.insert(v[r]);
    if (distinct.size() > 1) dropped.push_back(r);
  }
  return dropped;
}

}  // namespace fairway::oracle

#endif  // FAIRWAY_TESTS_ORACLES_HPP_
