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

#ifndef FAIRWAY_DATASET_HPP_
#define FAIRWAY_DATASET_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fairway/csv.hpp"
#include "fairway/error.hpp"
#include "fairway/matrix.hpp"
#include "fairway/random.hpp"
#include "json.hpp"

namespace fairway {

// Version of the dataset config file format understood by this build.
inline constexpr int kDatasetSpecVersion = 1;

enum class FeatureKind { kNumeric, kCategorical };

struct FeatureColumn {
  std::string name;
  FeatureKind kind = FeatureKind::kNumeric;
  bool operator==(const FeatureColumn&) const = default;
};

enum class Comparator { kEq, kNe, kLt, kLe, kGt, kGe };

inline Comparator parse_comparator(std::string_view op) {
  if (op == "==") return Comparator::kEq;
  if (op == "!=") return Comparator::kNe;
  if (op == "<") return Comparator::kLt;
  if (op == "<=") return Comparator::kLe;
  if (op == ">") return Comparator::kGt;
  if (op == ">=") return Comparator::kGe;
  throw ConfigError("unknown comparator '" + std::string(op) + "'");
}

inline std::string_view to_string(Comparator op) {
  switch (op) {
    case Comparator::kEq: return "==";
    case Comparator::kNe: return "!=";
    case Comparator::kLt: return "<";
    case Comparator::kLe: return "<=";
    case Comparator::kGt: return ">";
    case Comparator::kGe: return ">=";
  }
  return "?";
}

// Strict decimal parse: the whole string must be consumed.
inline std::optional<double> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string buf(text);
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

template <typename T>
bool compare(const T& lhs, Comparator op, const T& rhs) {
  switch (op) {
    case Comparator::kEq: return lhs == rhs;
    case Comparator::kNe: return lhs != rhs;
    case Comparator::kLt: return lhs < rhs;
    case Comparator::kLe: return lhs <= rhs;
    case Comparator::kGt: return lhs > rhs;
    case Comparator::kGe: return lhs >= rhs;
  }
  return false;
}

// Numeric comparison when both sides parse as numbers. Otherwise only
// == and != are defined (as string comparisons); ordering comparators on
// non-numeric values are false.
inline bool compare_raw(std::string_view raw, Comparator op,
                        std::string_view value) {
  auto a = parse_number(raw);
  auto b = parse_number(value);
  if (a && b) return compare(*a, op, *b);
  if (op == Comparator::kEq) return raw == value;
  if (op == Comparator::kNe) return raw != value;
  return false;
}

struct RowFilter {
  std::string column;
  Comparator op = Comparator::kEq;
  std::string value;
  bool operator==(const RowFilter&) const = default;
};

// Maps a raw protected-column value to privileged (true) or unprivileged
// (false). Either a value list or a numeric threshold is used. When an
// explicit unprivileged list is given, values in neither list are rejected.
struct PrivilegedPredicate {
  std::vector<std::string> privileged_values;
  std::vector<std::string> unprivileged_values;
  std::optional<Comparator> threshold_op;
  double threshold = 0.0;

  std::optional<bool> classify(std::string_view raw) const {
    if (threshold_op) {
      auto v = parse_number(raw);
      if (!v) return std::nullopt;
      return compare(*v, *threshold_op, threshold);
    }
    auto contains = [raw](const std::vector<std::string>& values) {
      return std::find(values.begin(), values.end(), raw) != values.end();
    };
    if (contains(privileged_values)) return true;
    if (unprivileged_values.empty() || contains(unprivileged_values)) {
      return false;
    }
    return std::nullopt;
  }

  bool operator==(const PrivilegedPredicate&) const = default;
};

struct ProtectedAttribute {
  std::string name;    // attribute name used on the command line
  std::string column;  // raw CSV column it is derived from
  PrivilegedPredicate predicate;
  bool operator==(const ProtectedAttribute&) const = default;
};

struct DatasetSpec {
  int format_version = kDatasetSpecVersion;
  std::string name;
  std::string description;
  std::string csv_path;
  std::string label_column;
  std::vector<std::string> favorable_values;
  std::vector<FeatureColumn> feature_columns;
  std::vector<ProtectedAttribute> protected_attributes;
  std::string missing_token = "?";
  std::vector<RowFilter> row_filters;

  const ProtectedAttribute& attribute(std::string_view attr) const {
    for (const auto& p : protected_attributes) {
      if (p.name == attr) return p;
    }
    throw UnknownAttribute("dataset '" + name +
                           "' has no protected attribute '" +
                           std::string(attr) + "'");
  }

  bool operator==(const DatasetSpec&) const = default;
};

inline void validate(const DatasetSpec& spec) {
  if (spec.format_version != kDatasetSpecVersion) {
    throw ConfigError("unsupported dataset spec format_version " +
                      std::to_string(spec.format_version));
  }
  if (spec.label_column.empty()) throw ConfigError("label column not set");
  if (spec.favorable_values.empty()) {
    throw ConfigError("no favorable label value given");
  }
  if (spec.protected_attributes.empty() ||
      spec.protected_attributes.size() > 2) {
    throw ConfigError("between one and two protected attributes required");
  }
  std::set<std::string> seen;
  for (const auto& f : spec.feature_columns) {
    if (f.name == spec.label_column) {
      throw ConfigError("label column '" + f.name + "' listed as a feature");
    }
    if (!seen.insert(f.name).second) {
      throw ConfigError("feature column '" + f.name + "' listed twice");
    }
  }
  std::set<std::string> names;
  for (const auto& p : spec.protected_attributes) {
    if (!names.insert(p.name).second) {
      throw ConfigError("protected attribute '" + p.name + "' listed twice");
    }
    if (p.column == spec.label_column) {
      throw ConfigError("protected attribute '" + p.name +
                        "' uses the label column");
    }
  }
}

// Config file format (JSON, format_version 1):
//
//   {
//     "format_version": 1,
//     "name": "adult",
//     "csv_path": "../data/adult.csv",        // relative to the config file
//     "label": {"column": "income", "favorable": [">50K"]},
//     "features": [{"name": "age", "kind": "numeric"}, ...],
//     "protected": [
//       {"name": "sex", "column": "sex", "privileged": ["Male"]},
//       {"name": "age", "column": "age", "privileged_if": {"op": "<", "value": 60}}
//     ],
//     "missing_token": "?",
//     "row_filters": [{"column": "is_recid", "op": "!=", "value": "-1"}]
//   }
//
// "unprivileged" may accompany "privileged" to make the value partition
// explicit; values in neither list are then an ingestion error.
inline DatasetSpec parse_dataset_spec(const nlohmann::json& j,
                                      const std::filesystem::path& base_dir) {
  DatasetSpec spec;
  try {
    spec.format_version = j.at("format_version").get<int>();
    spec.name = j.at("name").get<std::string>();
    spec.description = j.value("description", "");
    std::filesystem::path csv = j.at("csv_path").get<std::string>();
    spec.csv_path = (csv.is_absolute() ? csv : base_dir / csv)
                        .lexically_normal()
                        .string();
    spec.label_column = j.at("label").at("column").get<std::string>();
    spec.favorable_values =
        j.at("label").at("favorable").get<std::vector<std::string>>();
    for (const auto& f : j.at("features")) {
      std::string kind = f.at("kind").get<std::string>();
      if (kind != "numeric" && kind != "categorical") {
        throw ConfigError("feature kind must be numeric or categorical, got '" +
                          kind + "'");
      }
      spec.feature_columns.push_back(
          {f.at("name").get<std::string>(),
           kind == "numeric" ? FeatureKind::kNumeric
                             : FeatureKind::kCategorical});
    }
    for (const auto& p : j.at("protected")) {
      ProtectedAttribute attr;
      attr.name = p.at("name").get<std::string>();
      attr.column = p.value("column", attr.name);
      if (p.contains("privileged_if")) {
        const auto& t = p.at("privileged_if");
        attr.predicate.threshold_op =
            parse_comparator(t.at("op").get<std::string>());
        attr.predicate.threshold = t.at("value").get<double>();
      } else {
        attr.predicate.privileged_values =
            p.at("privileged").get<std::vector<std::string>>();
        attr.predicate.unprivileged_values =
            p.value("unprivileged", std::vector<std::string>{});
      }
      spec.protected_attributes.push_back(std::move(attr));
    }
    spec.missing_token = j.value("missing_token", "?");
    if (j.contains("row_filters")) {
      for (const auto& f : j.at("row_filters")) {
        spec.row_filters.push_back(
            {f.at("column").get<std::string>(),
             parse_comparator(f.at("op").get<std::string>()),
             f.at("value").get<std::string>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("dataset spec: " + std::string(e.what()));
  }
  validate(spec);
  return spec;
}

inline DatasetSpec load_dataset_spec(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_dataset_spec(j, std::filesystem::path(path).parent_path());
}

enum class ColumnRole : std::uint8_t { kNumeric, kOneHot, kProtected };

// Numeric design matrix with binary labels and per-row group membership.
// Immutable once built.
class EncodedDataset {
 public:
  EncodedDataset() = default;
  EncodedDataset(Matrix features, std::vector<int> labels,
                 std::vector<std::string> column_names,
                 std::vector<ColumnRole> roles,
                 std::vector<std::string> protected_names,
                 std::vector<std::size_t> protected_columns)
      : features_(std::move(features)),
        labels_(std::move(labels)),
        column_names_(std::move(column_names)),
        roles_(std::move(roles)),
        protected_names_(std::move(protected_names)),
        protected_columns_(std::move(protected_columns)) {
    const std::size_t n = features_.rows();
    const std::size_t d = features_.cols();
    if (labels_.size() != n) {
      throw DimensionMismatch("label count does not match row count");
    }
    if (column_names_.size() != d || roles_.size() != d) {
      throw DimensionMismatch("column metadata does not match width");
    }
    if (protected_names_.size() != protected_columns_.size()) {
      throw DimensionMismatch("protected metadata mismatch");
    }
    for (int y : labels_) {
      if (y != 0 && y != 1) throw DataError("labels must be 0 or 1");
    }
    for (double v : features_.data()) {
      if (!std::isfinite(v)) throw DataError("non-finite feature value");
    }
    groups_.resize(protected_columns_.size());
    for (std::size_t a = 0; a < protected_columns_.size(); ++a) {
      const std::size_t col = protected_columns_[a];
      if (col >= d || roles_[col] != ColumnRole::kProtected) {
        throw DimensionMismatch("protected column index out of range");
      }
      groups_[a].resize(n);
      for (std::size_t r = 0; r < n; ++r) {
        double v = features_(r, col);
        if (v != 0.0 && v != 1.0) {
          throw NonBinaryProtected("protected indicator must be 0 or 1");
        }
        groups_[a][r] = static_cast<int>(v);
      }
    }
  }

  std::size_t rows() const noexcept { return features_.rows(); }
  std::size_t cols() const noexcept { return features_.cols(); }
  const Matrix& features() const noexcept { return features_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& column_names() const noexcept {
    return column_names_;
  }
  const std::vector<ColumnRole>& roles() const noexcept { return roles_; }
  const std::vector<std::string>& protected_names() const noexcept {
    return protected_names_;
  }

  std::size_t attribute_slot(std::string_view attr) const {
    for (std::size_t a = 0; a < protected_names_.size(); ++a) {
      if (protected_names_[a] == attr) return a;
    }
    throw UnknownAttribute("no protected attribute '" + std::string(attr) +
                           "'");
  }
  std::size_t protected_column_index(std::string_view attr) const {
    return protected_columns_[attribute_slot(attr)];
  }
  const std::vector<std::size_t>& protected_columns() const noexcept {
    return protected_columns_;
  }
  // 1 = privileged, 0 = unprivileged.
  const std::vector<int>& group(std::string_view attr) const {
    return groups_[attribute_slot(attr)];
  }

  EncodedDataset subset(std::span<const std::size_t> indices) const {
    return with_features(features_.take_rows(indices),
                         take<int>(labels_, indices));
  }

  // Same metadata, new rows.
  EncodedDataset with_features(Matrix features,
                               std::vector<int> labels) const {
    return EncodedDataset(std::move(features), std::move(labels),
                          column_names_, roles_, protected_names_,
                          protected_columns_);
  }

  bool operator==(const EncodedDataset& o) const {
    return features_ == o.features_ && labels_ == o.labels_ &&
           column_names_ == o.column_names_ && roles_ == o.roles_ &&
           protected_names_ == o.protected_names_ &&
           protected_columns_ == o.protected_columns_;
  }

 private:
  Matrix features_;
  std::vector<int> labels_;
  std::vector<std::string> column_names_;
  std::vector<ColumnRole> roles_;
  std::vector<std::string> protected_names_;
  std::vector<std::size_t> protected_columns_;
  std::vector<std::vector<int>> groups_;
};

struct IngestSummary {
  std::size_t rows_read = 0;
  std::size_t rows_dropped_filter = 0;
  std::size_t rows_dropped_missing = 0;
  std::size_t d = 0;
  bool operator==(const IngestSummary&) const = default;
};

// Encodes an already-parsed table. Row filters run first, then rows with the
// missing token in any used column are dropped. Numeric columns pass
// through; categorical columns are one-hot encoded with levels in
// lexicographic order; each protected attribute becomes one 0/1 indicator
// column (privileged = 1), placed where its column appears in the feature
// list or appended after the features otherwise.
inline EncodedDataset encode_table(const DatasetSpec& spec,
                                   const CsvTable& table,
                                   IngestSummary* summary = nullptr) {
  validate(spec);
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    index.emplace(table.header[i], i);
  }
  auto column = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw MissingColumn("column '" + name + "' not in " + spec.csv_path);
    }
    return it->second;
  };

  std::vector<std::size_t> used{column(spec.label_column)};
  for (const auto& f : spec.feature_columns) used.push_back(column(f.name));
  for (const auto& p : spec.protected_attributes) {
    used.push_back(column(p.column));
  }
  std::vector<std::pair<std::size_t, const RowFilter*>> filters;
  for (const auto& f : spec.row_filters) {
    filters.emplace_back(column(f.column), &f);
  }

  IngestSummary local;
  local.rows_read = table.rows.size();
  std::vector<const std::vector<std::string>*> kept;
  for (const auto& row : table.rows) {
    bool pass = std::all_of(filters.begin(), filters.end(), [&](auto& f) {
      return compare_raw(row[f.first], f.second->op, f.second->value);
    });
    if (!pass) {
      ++local.rows_dropped_filter;
      continue;
    }
    bool missing = std::any_of(used.begin(), used.end(), [&](std::size_t c) {
      return row[c] == spec.missing_token;
    });
    if (missing) {
      ++local.rows_dropped_missing;
      continue;
    }
    kept.push_back(&row);
  }
  if (kept.empty()) {
    throw EmptyAfterFilter("no rows of " + spec.csv_path +
                           " survive filtering");
  }

  // Layout: one block per feature column, protected indicators in place.
  struct Block {
    std::size_t source;
    ColumnRole role;
    const ProtectedAttribute* attr = nullptr;
    std::vector<std::string> levels;  // one-hot only
  };
  std::vector<Block> blocks;
  std::set<const ProtectedAttribute*> placed;
  for (const auto& f : spec.feature_columns) {
    const std::size_t src = column(f.name);
    bool is_protected = false;
    for (const auto& p : spec.protected_attributes) {
      if (p.column != f.name) continue;
      is_protected = true;
      if (placed.insert(&p).second) {
        blocks.push_back({src, ColumnRole::kProtected, &p, {}});
      }
    }
    if (is_protected) continue;
    if (f.kind == FeatureKind::kNumeric) {
      blocks.push_back({src, ColumnRole::kNumeric, nullptr, {}});
    } else {
      std::set<std::string> levels;
      for (const auto* row : kept) levels.insert((*row)[src]);
      blocks.push_back({src, ColumnRole::kOneHot, nullptr,
                        {levels.begin(), levels.end()}});
    }
  }
  for (const auto& p : spec.protected_attributes) {
    if (!placed.count(&p)) {
      blocks.push_back({column(p.column), ColumnRole::kProtected, &p, {}});
    }
  }

  std::vector<std::string> names;
  std::vector<ColumnRole> roles;
  std::vector<std::string> protected_names(spec.protected_attributes.size());
  std::vector<std::size_t> protected_cols(spec.protected_attributes.size());
  for (const auto& b : blocks) {
    if (b.role == ColumnRole::kOneHot) {
      for (const auto& level : b.levels) {
        names.push_back(table.header[b.source] + "=" + level);
        roles.push_back(ColumnRole::kOneHot);
      }
      continue;
    }
    if (b.role == ColumnRole::kProtected) {
      std::size_t slot = static_cast<std::size_t>(
          b.attr - spec.protected_attributes.data());
      protected_names[slot] = b.attr->name;
      protected_cols[slot] = names.size();
      names.push_back(b.attr->name);
    } else {
      names.push_back(table.header[b.source]);
    }
    roles.push_back(b.role);
  }

  const std::size_t n = kept.size();
  const std::size_t d = names.size();
  Matrix x(n, d);
  std::vector<int> labels(n);
  const std::size_t label_col = column(spec.label_column);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = *kept[r];
    labels[r] = std::find(spec.favorable_values.begin(),
                          spec.favorable_values.end(),
                          row[label_col]) != spec.favorable_values.end();
    std::size_t c = 0;
    for (const auto& b : blocks) {
      const std::string& raw = row[b.source];
      switch (b.role) {
        case ColumnRole::kNumeric: {
          auto v = parse_number(raw);
          if (!v) {
            throw DataError("non-numeric value '" + raw + "' in column '" +
                            table.header[b.source] + "'");
          }
          x(r, c++) = *v;
          break;
        }
        case ColumnRole::kOneHot: {
          auto it = std::lower_bound(b.levels.begin(), b.levels.end(), raw);
          x(r, c + static_cast<std::size_t>(it - b.levels.begin())) = 1.0;
          c += b.levels.size();
          break;
        }
        case ColumnRole::kProtected: {
          auto g = b.attr->predicate.classify(raw);
          if (!g) {
            throw NonBinaryProtected("value '" + raw +
                                     "' of protected attribute '" +
                                     b.attr->name +
                                     "' is neither privileged nor "
                                     "unprivileged");
          }
          x(r, c++) = *g ? 1.0 : 0.0;
          break;
        }
      }
    }
  }
  local.d = d;
  if (summary) *summary = local;
  return EncodedDataset(std::move(x), std::move(labels), std::move(names),
                        std::move(roles), std::move(protected_names),
                        std::move(protected_cols));
}

inline EncodedDataset load_dataset(const DatasetSpec& spec,
                                   IngestSummary* summary = nullptr) {
  return encode_table(spec, read_csv(spec.csv_path), summary);
}

// z-score transform of the numeric columns, fit on one dataset and applied
// to others. Columns with zero spread are only centred.
struct Standardizer {
  std::vector<std::size_t> columns;
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const EncodedDataset& data) {
    Standardizer s;
    const std::size_t n = data.rows();
    for (std::size_t c = 0; c < data.cols(); ++c) {
      if (data.roles()[c] != ColumnRole::kNumeric) continue;
      double sum = 0.0;
      for (std::size_t r = 0; r < n; ++r) sum += data.features()(r, c);
      const double mu = n ? sum / static_cast<double>(n) : 0.0;
      double ss = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        const double dv = data.features()(r, c) - mu;
        ss += dv * dv;
      }
      const double sd = n ? std::sqrt(ss / static_cast<double>(n)) : 0.0;
      s.columns.push_back(c);
      s.mean.push_back(mu);
      s.scale.push_back(sd > 0.0 ? sd : 1.0);
    }
    return s;
  }

  EncodedDataset apply(const EncodedDataset& data) const {
    Matrix x = data.features();
    for (std::size_t r = 0; r < x.rows(); ++r) {
      for (std::size_t k = 0; k < columns.size(); ++k) {
        x(r, columns[k]) = (x(r, columns[k]) - mean[k]) / scale[k];
      }
    }
    return data.with_features(std::move(x), data.labels());
  }

  bool operator==(const Standardizer&) const = default;
};

struct SplitTriple {
  static constexpr double kTrainFraction = 0.70;
  static constexpr double kValidationFraction = 0.15;
  static constexpr double kTestFraction = 0.15;

  EncodedDataset train;
  EncodedDataset validation;
  EncodedDataset test;
  std::uint64_t seed = 0;
  Standardizer standardizer;
  // Source row of each split row, in split order.
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> validation_rows;
  std::vector<std::size_t> test_rows;
};

inline constexpr std::size_t kMinSplitRows = 20;

// Train gets floor(0.70 n) rows, validation floor(0.15 n), test the rest.
inline std::array<std::size_t, 3> split_sizes(std::size_t n) {
  const std::size_t train = n * 70 / 100;
  const std::size_t validation = n * 15 / 100;
  return {train, validation, n - train - validation};
}

struct SplitOptions {
  bool standardize = true;
};

// Shuffle rows with a PRNG seeded by seed, then cut into train, validation
// and test. Numeric columns are standardized with train statistics.
inline SplitTriple split(const EncodedDataset& data, std::uint64_t seed,
                         SplitOptions options = {}) {
  const std::size_t n = data.rows();
  if (n < kMinSplitRows) {
    throw TooFewRows("split needs at least " + std::to_string(kMinSplitRows) +
                     " rows, got " + std::to_string(n));
  }
  std::vector<std::size_t> order = iota_indices(n);
  Rng rng(seed);
  shuffle_in_place(order, rng);
  const auto sizes = split_sizes(n);

  SplitTriple out;
  out.seed = seed;
  out.train_rows.assign(order.begin(), order.begin() + sizes[0]);
  out.validation_rows.assign(order.begin() + sizes[0],
                             order.begin() + sizes[0] + sizes[1]);
  out.test_rows.assign(order.begin() + sizes[0] + sizes[1], order.end());

  EncodedDataset train = data.subset(out.train_rows);
  EncodedDataset validation = data.subset(out.validation_rows);
  EncodedDataset test = data.subset(out.test_rows);
  if (options.standardize) {
    out.standardizer = Standardizer::fit(train);
    train = out.standardizer.apply(train);
    validation = out.standardizer.apply(validation);
    test = out.standardizer.apply(test);
  }
  out.train = std::move(train);
  out.validation = std::move(validation);
  out.test = std::move(test);
  return out;
}

// Copy with the attribute's indicator complemented; every other value
// unchanged.
inline EncodedDataset flip_protected(const EncodedDataset& data,
                                     std::string_view attr) {
  const std::size_t col = data.protected_column_index(attr);
  Matrix x = data.features();
  for (std::size_t r = 0; r < x.rows(); ++r) x(r, col) = 1.0 - x(r, col);
  return data.with_features(std::move(x), data.labels());
}

}  // namespace fairway

#endif  // FAIRWAY_DATASET_HPP_
