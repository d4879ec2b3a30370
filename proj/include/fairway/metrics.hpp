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

#ifndef FAIRWAY_METRICS_HPP_
#define FAIRWAY_METRICS_HPP_

#include <cmath>
#include <cstddef>
#include <span>

#include "fairway/error.hpp"

namespace fairway {

struct ConfusionCells {
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tp = 0;

  std::size_t total() const { return tn + fp + fn + tp; }
  bool operator==(const ConfusionCells&) const = default;
};

// Confusion matrices of the privileged and unprivileged groups. The
// favorable class (1) is the positive class.
struct GroupConfusion {
  ConfusionCells privileged;
  ConfusionCells unprivileged;

  std::size_t total() const { return privileged.total() + unprivileged.total(); }
  ConfusionCells pooled() const {
    return {privileged.tn + unprivileged.tn, privileged.fp + unprivileged.fp,
            privileged.fn + unprivileged.fn, privileged.tp + unprivileged.tp};
  }
  // Same counts with the group roles exchanged.
  GroupConfusion swapped() const { return {unprivileged, privileged}; }

  bool operator==(const GroupConfusion&) const = default;
};

struct GroupRates {
  double tpr_privileged = 0.0;
  double tpr_unprivileged = 0.0;
  double fpr_privileged = 0.0;
  double fpr_unprivileged = 0.0;
};

struct MeasureSet {
  double recall = 0.0;
  double false_alarm = 0.0;
  double aod = 0.0;
  double eod = 0.0;

  bool operator==(const MeasureSet&) const = default;
};

// group[i] is 1 for privileged rows, 0 otherwise.
inline GroupConfusion confusion(std::span<const int> labels,
                                std::span<const int> predictions,
                                std::span<const int> group) {
  if (labels.size() != predictions.size() || labels.size() != group.size()) {
    throw LengthMismatch("labels, predictions and group differ in length");
  }
  if (labels.empty()) throw LengthMismatch("confusion of zero rows");
  GroupConfusion c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ConfusionCells& cell = group[i] ? c.privileged : c.unprivileged;
    if (labels[i]) {
      ++(predictions[i] ? cell.tp : cell.fn);
    } else {
      ++(predictions[i] ? cell.fp : cell.tn);
    }
  }
  return c;
}

// num / den with an empty denominator read as rate 0.
inline double safe_rate(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

inline GroupRates rates(const GroupConfusion& c) {
  return {safe_rate(c.privileged.tp, c.privileged.tp + c.privileged.fn),
          safe_rate(c.unprivileged.tp, c.unprivileged.tp + c.unprivileged.fn),
          safe_rate(c.privileged.fp, c.privileged.fp + c.privileged.tn),
          safe_rate(c.unprivileged.fp,
                    c.unprivileged.fp + c.unprivileged.tn)};
}

// Equal opportunity difference, |TPR_U - TPR_P|.
inline double eod(const GroupConfusion& c) {
  const GroupRates r = rates(c);
  return std::abs(r.tpr_unprivileged - r.tpr_privileged);
}

// Average odds difference, |((FPR_U - FPR_P) + (TPR_U - TPR_P)) / 2|. The
// sign is taken after summing, so opposite FPR and TPR gaps cancel.
inline double aod(const GroupConfusion& c) {
  const GroupRates r = rates(c);
  return std::abs(0.5 * ((r.fpr_unprivileged - r.fpr_privileged) +
                         (r.tpr_unprivileged - r.tpr_privileged)));
}

struct Performance {
  double recall = 0.0;
  double false_alarm = 0.0;
};

// Recall and false alarm pooled over both groups.
inline Performance performance(const GroupConfusion& c) {
  const ConfusionCells p = c.pooled();
  return {safe_rate(p.tp, p.tp + p.fn), safe_rate(p.fp, p.fp + p.tn)};
}

inline MeasureSet measures(const GroupConfusion& c) {
  const Performance perf = performance(c);
  return {perf.recall, perf.false_alarm, aod(c), eod(c)};
}

inline MeasureSet measures(std::span<const int> labels,
                           std::span<const int> predictions,
                           std::span<const int> group) {
  return measures(confusion(labels, predictions, group));
}

}  // namespace fairway

#endif  // FAIRWAY_METRICS_HPP_
