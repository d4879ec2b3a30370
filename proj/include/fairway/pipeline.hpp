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

#ifndef FAIRWAY_PIPELINE_HPP_
#define FAIRWAY_PIPELINE_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairway/ambiguity_filter.hpp"
#include "fairway/dataset.hpp"
#include "fairway/error.hpp"
#include "fairway/fair_flash.hpp"
#include "fairway/logistic.hpp"
#include "fairway/metrics.hpp"
#include "fairway/situation_audit.hpp"

namespace fairway {

inline constexpr std::string_view kToolVersion = "1.0.0";

// baseline:   default LR on the raw training split
// preprocess: default LR on the ambiguity-filtered training split
// optimize:   tuned LR on the raw training split
// fairway:    tuned LR on the filtered training split
enum class Mode { kBaseline, kPreprocess, kOptimize, kFairway };

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::kBaseline: return "baseline";
    case Mode::kPreprocess: return "preprocess";
    case Mode::kOptimize: return "optimize";
    case Mode::kFairway: return "fairway";
  }
  return "?";
}

inline Mode parse_mode(std::string_view s) {
  if (s == "baseline") return Mode::kBaseline;
  if (s == "preprocess") return Mode::kPreprocess;
  if (s == "optimize") return Mode::kOptimize;
  if (s == "fairway") return Mode::kFairway;
  throw ConfigError("mode must be baseline, preprocess, optimize or fairway; "
                    "got '" + std::string(s) + "'");
}

inline bool filters(Mode m) {
  return m == Mode::kPreprocess || m == Mode::kFairway;
}
inline bool tunes(Mode m) {
  return m == Mode::kOptimize || m == Mode::kFairway;
}

struct RunConfig {
  std::string spec_path;
  std::string attribute;
  Mode mode = Mode::kBaseline;
  std::size_t repeats = 10;
  std::uint64_t base_seed = 0;
  ObjectiveWeights weights;
  FilterMode filter_mode = FilterMode::kSingle;
  FlashBudget budget;
  std::string output_path;

  void validate() const {
    if (repeats < 1) throw ConfigError("repeats must be at least 1");
    if (attribute.empty()) throw ConfigError("no protected attribute given");
    weights.validate();
    if (budget.initial_pool < 2) {
      throw ConfigError("initial_pool must be at least 2");
    }
    if (budget.life < 1) throw ConfigError("life must be at least 1");
  }

  bool operator==(const RunConfig&) const = default;
};

struct ChosenConfig {
  std::size_t index = 0;
  LrHyper hyper;
  bool operator==(const ChosenConfig&) const = default;
};

struct RepeatResult {
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  std::size_t train_rows = 0;
  std::size_t validation_rows = 0;
  std::size_t test_rows = 0;
  MeasureSet test;
  std::size_t dropped_rows = 0;
  double dropped_fraction = 0.0;
  // Fail rate of a model fit on the unfiltered training split, audited on
  // that split.
  double situation_fail_pre = 0.0;
  // Fail rate of the model fit on the filtered split, audited on the rows
  // that survived filtering. Filtering modes only.
  std::optional<double> situation_fail_post;
  // Fail rate of the final model on the test split.
  double situation_fail_test = 0.0;
  std::optional<ChosenConfig> chosen;
  std::vector<FlashTraceEntry> trace;

  bool operator==(const RepeatResult&) const = default;
};

struct Medians {
  double recall = 0.0;
  double false_alarm = 0.0;
  double aod = 0.0;
  double eod = 0.0;
  double dropped_fraction = 0.0;
  double situation_fail_pre = 0.0;
  std::optional<double> situation_fail_post;
  double situation_fail_test = 0.0;
  bool operator==(const Medians&) const = default;
};

struct FairnessReport {
  std::string tool_version = std::string(kToolVersion);
  RunConfig config;
  std::string dataset;
  IngestSummary ingest;
  std::vector<RepeatResult> repeats;
  Medians medians;
  bool operator==(const FairnessReport&) const = default;
};

// Median of a non-empty list; the mean of the middle pair for even sizes.
inline double median(std::vector<double> values) {
  if (values.empty()) throw EmptyInput("median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

// Component-wise medians over repeats.
inline Medians compute_medians(const std::vector<RepeatResult>& repeats) {
  auto column = [&](auto get) {
    std::vector<double> v;
    for (const auto& r : repeats) v.push_back(get(r));
    return median(std::move(v));
  };
  Medians m;
  m.recall = column([](const RepeatResult& r) { return r.test.recall; });
  m.false_alarm =
      column([](const RepeatResult& r) { return r.test.false_alarm; });
  m.aod = column([](const RepeatResult& r) { return r.test.aod; });
  m.eod = column([](const RepeatResult& r) { return r.test.eod; });
  m.dropped_fraction =
      column([](const RepeatResult& r) { return r.dropped_fraction; });
  m.situation_fail_pre =
      column([](const RepeatResult& r) { return r.situation_fail_pre; });
  m.situation_fail_test =
      column([](const RepeatResult& r) { return r.situation_fail_test; });
  std::vector<double> post;
  for (const auto& r : repeats) {
    if (r.situation_fail_post) post.push_back(*r.situation_fail_post);
  }
  if (!post.empty()) m.situation_fail_post = median(std::move(post));
  return m;
}

// One shuffled split of the experiment.
inline RepeatResult run_repeat(const RunConfig& config,
                               const EncodedDataset& data, std::size_t repeat,
                               const ConfigSpace& space = ConfigSpace::lr_default()) {
  RepeatResult out;
  out.repeat = repeat;
  out.seed = config.base_seed + repeat;
  const SplitTriple parts = split(data, out.seed);
  out.train_rows = parts.train.rows();
  out.validation_rows = parts.validation.rows();
  out.test_rows = parts.test.rows();

  const EncodedDataset* train = &parts.train;
  std::optional<FilterOutcome> filtered;
  if (filters(config.mode)) {
    if (config.filter_mode == FilterMode::kJoint) {
      const auto& names = data.protected_names();
      if (names.size() != 2) {
        throw ConfigError("joint filtering needs a dataset with two "
                          "protected attributes");
      }
      filtered = filter_joint(parts.train, names[0], names[1]);
    } else {
      filtered = filter_single(parts.train, config.attribute);
    }
    out.dropped_rows = filtered->dropped_indices.size();
    out.dropped_fraction = filtered->dropped_fraction;
    train = &filtered->retained;
  }

  LrHyper hyper;
  if (tunes(config.mode)) {
    FlashResult flash = run_flash(space, config.weights, config.budget, *train,
                                  parts.validation, config.attribute, out.seed);
    hyper = space.hyper(flash.best_config);
    out.chosen = ChosenConfig{flash.best_config, hyper};
    out.trace = std::move(flash.trace);
  }

  const LogisticModel model = lr_fit(*train, hyper);
  const std::vector<int> predicted = lr_predict(model, parts.test.features());
  out.test = measures(parts.test.labels(), predicted,
                      parts.test.group(config.attribute));
  out.situation_fail_test =
      situation_test(model, parts.test, config.attribute).fail_rate;

  if (filtered) {
    const LogisticModel unfiltered = lr_fit(parts.train, hyper);
    out.situation_fail_pre =
        situation_test(unfiltered, parts.train, config.attribute).fail_rate;
    out.situation_fail_post =
        situation_test(model, filtered->retained, config.attribute).fail_rate;
  } else {
    out.situation_fail_pre =
        situation_test(model, parts.train, config.attribute).fail_rate;
  }
  return out;
}

// Runs every repeat on an already-encoded dataset.
inline FairnessReport run_on(const RunConfig& config,
                             const EncodedDataset& data,
                             const std::string& dataset_name,
                             const IngestSummary& ingest = {}) {
  config.validate();
  data.attribute_slot(config.attribute);
  FairnessReport report;
  report.config = config;
  report.dataset = dataset_name;
  report.ingest = ingest;
  for (std::size_t i = 0; i < config.repeats; ++i) {
    try {
      report.repeats.push_back(run_repeat(config, data, i));
    } catch (Error& e) {
      e.prepend("repeat " + std::to_string(i) + " (seed " +
                std::to_string(config.base_seed + i) + "): ");
      throw;
    }
  }
  report.medians = compute_medians(report.repeats);
  return report;
}

inline FairnessReport run(const RunConfig& config) {
  config.validate();
  const DatasetSpec spec = load_dataset_spec(config.spec_path);
  spec.attribute(config.attribute);
  IngestSummary ingest;
  const EncodedDataset data = load_dataset(spec, &ingest);
  return run_on(config, data, spec.name, ingest);
}

}  // namespace fairway

#endif  // FAIRWAY_PIPELINE_HPP_
