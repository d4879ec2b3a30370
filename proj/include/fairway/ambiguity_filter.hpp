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

#ifndef FAIRWAY_AMBIGUITY_FILTER_HPP_
#define FAIRWAY_AMBIGUITY_FILTER_HPP_

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "fairway/dataset.hpp"
#include "fairway/error.hpp"
#include "fairway/logistic.hpp"

namespace fairway {

enum class FilterMode { kSingle, kJoint };

inline std::string_view to_string(FilterMode m) {
  return m == FilterMode::kSingle ? "single" : "joint";
}

inline FilterMode parse_filter_mode(std::string_view s) {
  if (s == "single") return FilterMode::kSingle;
  if (s == "joint") return FilterMode::kJoint;
  throw ConfigError("filter mode must be single or joint, got '" +
                    std::string(s) + "'");
}

// Minimum rows of each class a group needs before a model is fit on it.
inline constexpr std::size_t kMinRowsPerClass = 2;

struct FilterOutcome {
  EncodedDataset retained;
  std::vector<std::size_t> retained_indices;
  std::vector<std::size_t> dropped_indices;
  double dropped_fraction = 0.0;
  FilterMode mode = FilterMode::kSingle;
  std::vector<std::string> attributes;
  // One model per group, fit on the columns in model_columns. Groups are
  // ordered by their indicator bits, privileged first: (1), (0) for one
  // attribute; (1,1), (1,0), (0,1), (0,0) for two.
  std::vector<LogisticModel> group_models;
  std::vector<std::size_t> model_columns;
};

namespace detail {

inline FilterOutcome filter_by_groups(const EncodedDataset& train,
                                      const std::vector<std::string>& attrs,
                                      const LrHyper& hyper, FilterMode mode) {
  const std::size_t n = train.rows();
  std::vector<std::size_t> excluded;
  std::vector<const std::vector<int>*> bits;
  for (const auto& a : attrs) {
    excluded.push_back(train.protected_column_index(a));
    bits.push_back(&train.group(a));
  }

  FilterOutcome out;
  out.mode = mode;
  out.attributes = attrs;
  for (std::size_t c = 0; c < train.cols(); ++c) {
    if (std::find(excluded.begin(), excluded.end(), c) == excluded.end()) {
      out.model_columns.push_back(c);
    }
  }
  const Matrix reduced = train.features().take_cols(out.model_columns);

  // Group id: bit k of the id is 1 - indicator of attribute k, so that the
  // all-privileged group is id 0.
  const std::size_t group_count = std::size_t{1} << attrs.size();
  std::vector<std::vector<std::size_t>> members(group_count);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t id = 0;
    for (std::size_t k = 0; k < attrs.size(); ++k) {
      if (!(*bits[k])[r]) id |= std::size_t{1} << (attrs.size() - 1 - k);
    }
    members[id].push_back(r);
  }

  std::vector<std::vector<int>> predictions;
  for (std::size_t id = 0; id < group_count; ++id) {
    const auto& rows = members[id];
    std::array<std::size_t, 2> per_class{0, 0};
    for (std::size_t r : rows) ++per_class[train.labels()[r]];
    if (per_class[0] < kMinRowsPerClass || per_class[1] < kMinRowsPerClass) {
      std::string label;
      for (std::size_t k = 0; k < attrs.size(); ++k) {
        const bool priv = !((id >> (attrs.size() - 1 - k)) & 1);
        label += (k ? ", " : "") + attrs[k] + "=" +
                 (priv ? "privileged" : "unprivileged");
      }
      throw DegenerateGroup("group (" + label + ") has " +
                            std::to_string(per_class[1]) + " favorable and " +
                            std::to_string(per_class[0]) +
                            " unfavorable rows; at least " +
                            std::to_string(kMinRowsPerClass) +
                            " of each are needed");
    }
    LogisticModel model = lr_fit(reduced.take_rows(rows),
                                 take<int>(train.labels(), rows), hyper);
    for (std::size_t c : out.model_columns) {
      model.feature_names.push_back(train.column_names()[c]);
    }
    predictions.push_back(lr_predict(model, reduced));
    out.group_models.push_back(std::move(model));
  }

  for (std::size_t r = 0; r < n; ++r) {
    const bool agree = std::all_of(
        predictions.begin() + 1, predictions.end(),
        [&](const std::vector<int>& p) { return p[r] == predictions[0][r]; });
    (agree ? out.retained_indices : out.dropped_indices).push_back(r);
  }
  out.retained = train.subset(out.retained_indices);
  out.dropped_fraction =
      n ? static_cast<double>(out.dropped_indices.size()) /
              static_cast<double>(n)
        : 0.0;
  return out;
}

}  // namespace detail

// Fits one model on the privileged rows and one on the unprivileged rows,
// both without the attribute's indicator column, and drops every training
// row on which the two models predict different classes.
inline FilterOutcome filter_single(const EncodedDataset& train,
                                   std::string_view attribute,
                                   const LrHyper& hyper = {}) {
  return detail::filter_by_groups(train, {std::string(attribute)}, hyper,
                                  FilterMode::kSingle);
}

// Four-group variant for two protected attributes: a row is kept only when
// all four group models agree on it.
inline FilterOutcome filter_joint(const EncodedDataset& train,
                                  std::string_view first,
                                  std::string_view second,
                                  const LrHyper& hyper = {}) {
  if (first == second) {
    throw ConfigError("joint filtering needs two distinct attributes");
  }
  return detail::filter_by_groups(
      train, {std::string(first), std::string(second)}, hyper,
      FilterMode::kJoint);
}

}  // namespace fairway

#endif  // FAIRWAY_AMBIGUITY_FILTER_HPP_
