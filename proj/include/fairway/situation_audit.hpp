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

#ifndef FAIRWAY_SITUATION_AUDIT_HPP_
#define FAIRWAY_SITUATION_AUDIT_HPP_

#include <algorithm>
#include <string>
#include <string_view>

#include "fairway/dataset.hpp"
#include "fairway/error.hpp"
#include "fairway/logistic.hpp"

namespace fairway {

struct SituationResult {
  std::size_t total = 0;
  std::size_t flipped = 0;
  double fail_rate = 0.0;
  std::string attribute;

  bool operator==(const SituationResult&) const = default;
};

// Situation testing: predict every row as-is and with the attribute's
// indicator complemented; a row fails when the predicted class changes.
// The model must have been trained with the indicator column present.
inline SituationResult situation_test(const LogisticModel& model,
                                      const EncodedDataset& data,
                                      std::string_view attribute) {
  const std::size_t col = data.protected_column_index(attribute);
  if (!model.feature_names.empty()) {
    const auto& names = model.feature_names;
    if (std::find(names.begin(), names.end(), data.column_names()[col]) ==
        names.end()) {
      throw AttributeAbsent("model was trained without '" +
                            std::string(attribute) +
                            "'; situation testing is undefined");
    }
    if (names != data.column_names()) {
      throw DimensionMismatch("model columns differ from data columns");
    }
  }
  check_model_input(model, data.features());

  SituationResult out;
  out.attribute = std::string(attribute);
  out.total = data.rows();
  if (out.total == 0) return out;
  const std::vector<int> before = lr_predict(model, data.features());
  const std::vector<int> after =
      lr_predict(model, flip_protected(data, attribute).features());
  for (std::size_t i = 0; i < before.size(); ++i) {
    out.flipped += before[i] != after[i];
  }
  out.fail_rate =
      static_cast<double>(out.flipped) / static_cast<double>(out.total);
  return out;
}

}  // namespace fairway

#endif  // FAIRWAY_SITUATION_AUDIT_HPP_
