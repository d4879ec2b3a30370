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

#ifndef FAIRWAY_FAIR_FLASH_HPP_
#define FAIRWAY_FAIR_FLASH_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairway/cart.hpp"
#include "fairway/dataset.hpp"
#include "fairway/error.hpp"
#include "fairway/logistic.hpp"
#include "fairway/metrics.hpp"
#include "fairway/random.hpp"

namespace fairway {

struct ConfigAxis {
  std::string name;
  std::vector<double> values;
  bool operator==(const ConfigAxis&) const = default;
};

// Cross product of discrete axes. Config i is addressed in mixed radix with
// the last axis varying fastest; its coded vector holds the per-axis value
// positions, which is what the surrogate sees.
class ConfigSpace {
 public:
  ConfigSpace() = default;
  explicit ConfigSpace(std::vector<ConfigAxis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw ConfigError("config space has no axes");
    for (const auto& a : axes_) {
      if (a.values.empty()) {
        throw ConfigError("config axis '" + a.name + "' has no values");
      }
    }
  }

  // Hyperparameter grid around the library defaults: 7 x 4 x 3 = 84 configs.
  static ConfigSpace lr_default() {
    return ConfigSpace({{"c", {0.01, 0.1, 0.5, 1.0, 5.0, 10.0, 100.0}},
                        {"max_iter", {50, 100, 200, 500}},
                        {"tol", {1e-3, 1e-4, 1e-5}}});
  }

  const std::vector<ConfigAxis>& axes() const noexcept { return axes_; }

  std::size_t size() const {
    std::size_t n = axes_.empty() ? 0 : 1;
    for (const auto& a : axes_) n *= a.values.size();
    return n;
  }

  std::vector<std::size_t> positions(std::size_t index) const {
    check(index);
    std::vector<std::size_t> pos(axes_.size());
    for (std::size_t k = axes_.size(); k-- > 0;) {
      pos[k] = index % axes_[k].values.size();
      index /= axes_[k].values.size();
    }
    return pos;
  }

  std::vector<double> coded(std::size_t index) const {
    auto pos = positions(index);
    return {pos.begin(), pos.end()};
  }

  double value(std::size_t index, std::string_view axis) const {
    auto pos = positions(index);
    for (std::size_t k = 0; k < axes_.size(); ++k) {
      if (axes_[k].name == axis) return axes_[k].values[pos[k]];
    }
    throw ConfigError("config space has no axis '" + std::string(axis) + "'");
  }

  // Axes named c, max_iter and tol override the defaults; any other axis
  // name is rejected.
  LrHyper hyper(std::size_t index) const {
    LrHyper h;
    auto pos = positions(index);
    for (std::size_t k = 0; k < axes_.size(); ++k) {
      const double v = axes_[k].values[pos[k]];
      if (axes_[k].name == "c") {
        h.c = v;
      } else if (axes_[k].name == "max_iter") {
        if (v != std::floor(v)) throw ConfigError("max_iter must be integral");
        h.max_iter = static_cast<int>(v);
      } else if (axes_[k].name == "tol") {
        h.tol = v;
      } else {
        throw ConfigError("unknown LR hyperparameter axis '" + axes_[k].name +
                          "'");
      }
    }
    h.validate();
    return h;
  }

  bool operator==(const ConfigSpace&) const = default;

 private:
  void check(std::size_t index) const {
    if (index >= size()) {
      throw ConfigError("config index " + std::to_string(index) +
                        " outside space of " + std::to_string(size()));
    }
  }

  std::vector<ConfigAxis> axes_;
};

struct ObjectiveWeights {
  double recall = 1.0;
  double false_alarm = 1.0;
  double aod = 1.0;
  double eod = 1.0;

  void validate() const {
    for (double w : {recall, false_alarm, aod, eod}) {
      if (!std::isfinite(w)) throw ConfigError("objective weight not finite");
    }
    if (recall == 0.0 && false_alarm == 0.0 && aod == 0.0 && eod == 0.0) {
      throw ConfigError("objective weights are all zero");
    }
  }

  bool operator==(const ObjectiveWeights&) const = default;
};

// Scalar score to maximize: reward recall, penalize false alarm, AOD, EOD.
inline double composite(const MeasureSet& m, const ObjectiveWeights& w) {
  return w.recall * m.recall - w.false_alarm * m.false_alarm -
         w.aod * m.aod - w.eod * m.eod;
}

struct FlashBudget {
  std::size_t initial_pool = 20;
  std::size_t life = 5;
  bool operator==(const FlashBudget&) const = default;
};

struct FlashTraceEntry {
  std::size_t config = 0;
  double score = 0.0;
  std::optional<double> predicted;  // unset for the initial pool
  std::optional<MeasureSet> measures;
  bool operator==(const FlashTraceEntry&) const = default;
};

struct FlashResult {
  std::size_t best_config = 0;
  double best_score = 0.0;
  std::vector<FlashTraceEntry> trace;  // every true evaluation, in order
  std::size_t evaluations_used = 0;
  std::size_t surrogate_rounds = 0;
  std::size_t life_remaining = 0;
  bool operator==(const FlashResult&) const = default;
};

// Sequential model-based search. A random initial pool is evaluated (in
// ascending config order); then, while life remains and configs are left,
// a CART model fit to every evaluated (coded config, score) pair ranks the
// unevaluated configs, the top-ranked one is evaluated for real, and life
// is lost whenever that evaluation falls below the best score seen so far.
// Returns the best evaluated config, ties going to the lowest index.
//
// evaluate(config_index) -> double must be deterministic.
template <typename Evaluate>
FlashResult flash_search(const ConfigSpace& space, const FlashBudget& budget,
                         std::uint64_t seed, Evaluate&& evaluate,
                         const CartParams& cart = {}) {
  if (budget.initial_pool < 2) {
    throw ConfigError("initial_pool must be at least 2");
  }
  if (budget.life < 1) throw ConfigError("life must be at least 1");
  const std::size_t n = space.size();
  if (n < budget.initial_pool) {
    throw SpaceTooSmall("config space of " + std::to_string(n) +
                        " is smaller than initial_pool " +
                        std::to_string(budget.initial_pool));
  }

  Rng rng(seed);
  std::vector<std::size_t> build =
      sample_without_replacement(n, budget.initial_pool, rng);
  std::sort(build.begin(), build.end());
  std::vector<bool> evaluated(n, false);

  FlashResult out;
  std::vector<CartPoint> points;
  double best = 0.0;
  auto record = [&](std::size_t config, std::optional<double> predicted) {
    const double score = evaluate(config);
    evaluated[config] = true;
    out.trace.push_back({config, score, predicted, std::nullopt});
    points.push_back({space.coded(config), score});
    return score;
  };
  for (std::size_t i = 0; i < build.size(); ++i) {
    const double s = record(build[i], std::nullopt);
    best = i == 0 ? s : std::max(best, s);
  }

  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < n; ++c) {
    if (!evaluated[c]) rest.push_back(c);
  }

  std::size_t life = budget.life;
  while (life > 0 && !rest.empty()) {
    const CartTree model = cart_fit(points, cart);
    std::size_t pick = 0;
    double pick_value = 0.0;
    for (std::size_t k = 0; k < rest.size(); ++k) {
      const double v = model.predict(space.coded(rest[k]));
      if (k == 0 || v > pick_value) {
        pick = k;
        pick_value = v;
      }
    }
    const std::size_t config = rest[pick];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
    const double s = record(config, pick_value);
    ++out.surrogate_rounds;
    if (s < best) {
      --life;
    } else {
      best = s;
    }
  }

  out.life_remaining = life;
  out.evaluations_used = out.trace.size();
  out.best_config = out.trace.front().config;
  out.best_score = out.trace.front().score;
  for (const auto& e : out.trace) {
    if (e.score > out.best_score ||
        (e.score == out.best_score && e.config < out.best_config)) {
      out.best_config = e.config;
      out.best_score = e.score;
    }
  }
  return out;
}

// Fit on train with the given hyperparameters and score on validation.
inline MeasureSet evaluate_config(const LrHyper& hyper,
                                  const EncodedDataset& train,
                                  const EncodedDataset& validation,
                                  std::string_view attribute) {
  const LogisticModel model = lr_fit(train, hyper);
  const std::vector<int> predicted = lr_predict(model, validation.features());
  return measures(validation.labels(), predicted, validation.group(attribute));
}

// Tune logistic-regression hyperparameters for the composite score measured
// on the validation split.
inline FlashResult run_flash(const ConfigSpace& space,
                             const ObjectiveWeights& weights,
                             const FlashBudget& budget,
                             const EncodedDataset& train,
                             const EncodedDataset& validation,
                             std::string_view attribute, std::uint64_t seed,
                             const CartParams& cart = {}) {
  weights.validate();
  std::map<std::size_t, MeasureSet> seen;
  FlashResult result = flash_search(
      space, budget, seed,
      [&](std::size_t config) {
        const MeasureSet m =
            evaluate_config(space.hyper(config), train, validation, attribute);
        seen.emplace(config, m);
        return composite(m, weights);
      },
      cart);
  for (auto& e : result.trace) e.measures = seen.at(e.config);
  return result;
}

}  // namespace fairway

#endif  // FAIRWAY_FAIR_FLASH_HPP_
