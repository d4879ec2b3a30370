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

#ifndef FAIRWAY_REPORT_HPP_
#define FAIRWAY_REPORT_HPP_

#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "fairway/csv.hpp"
#include "fairway/error.hpp"
#include "fairway/pipeline.hpp"
#include "json.hpp"

namespace fairway {

inline constexpr int kReportFormatVersion = 1;

using Json = nlohmann::ordered_json;

namespace detail {

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

inline Json measures_json(const MeasureSet& m) {
  return Json{{"recall", m.recall},
              {"false_alarm", m.false_alarm},
              {"aod", m.aod},
              {"eod", m.eod}};
}

inline MeasureSet measures_from(const Json& j) {
  return {j.at("recall").get<double>(), j.at("false_alarm").get<double>(),
          j.at("aod").get<double>(), j.at("eod").get<double>()};
}

inline Json hyper_json(const LrHyper& h) {
  return Json{{"c", h.c}, {"max_iter", h.max_iter}, {"tol", h.tol}};
}

inline LrHyper hyper_from(const Json& j) {
  return {j.at("c").get<double>(), j.at("max_iter").get<int>(),
          j.at("tol").get<double>()};
}

}  // namespace detail

inline Json to_json(const RunConfig& c) {
  return Json{{"spec_path", c.spec_path},
              {"attribute", c.attribute},
              {"mode", to_string(c.mode)},
              {"repeats", c.repeats},
              {"base_seed", c.base_seed},
              {"weights",
               {{"recall", c.weights.recall},
                {"false_alarm", c.weights.false_alarm},
                {"aod", c.weights.aod},
                {"eod", c.weights.eod}}},
              {"filter_mode", to_string(c.filter_mode)},
              {"budget",
               {{"initial_pool", c.budget.initial_pool},
                {"life", c.budget.life}}},
              {"output_path", c.output_path}};
}

inline Json to_json(const RepeatResult& r) {
  Json trace = Json::array();
  for (const auto& e : r.trace) {
    trace.push_back(Json{
        {"config", e.config},
        {"score", e.score},
        {"predicted", detail::optional_json(e.predicted)},
        {"measures",
         e.measures ? detail::measures_json(*e.measures) : Json(nullptr)}});
  }
  return Json{
      {"repeat", r.repeat},
      {"seed", r.seed},
      {"rows", {{"train", r.train_rows},
                {"validation", r.validation_rows},
                {"test", r.test_rows}}},
      {"test", detail::measures_json(r.test)},
      {"dropped_rows", r.dropped_rows},
      {"dropped_fraction", r.dropped_fraction},
      {"situation_fail_pre", r.situation_fail_pre},
      {"situation_fail_post", detail::optional_json(r.situation_fail_post)},
      {"situation_fail_test", r.situation_fail_test},
      {"chosen_config",
       r.chosen ? Json{{"index", r.chosen->index},
                       {"hyper", detail::hyper_json(r.chosen->hyper)}}
                : Json(nullptr)},
      {"trace", std::move(trace)}};
}

inline Json to_json(const FairnessReport& report) {
  Json repeats = Json::array();
  for (const auto& r : report.repeats) repeats.push_back(to_json(r));
  const Medians& m = report.medians;
  return Json{
      {"format_version", kReportFormatVersion},
      {"tool_version", report.tool_version},
      {"dataset", report.dataset},
      {"run_config", to_json(report.config)},
      {"ingest",
       {{"rows_read", report.ingest.rows_read},
        {"rows_dropped_filter", report.ingest.rows_dropped_filter},
        {"rows_dropped_missing", report.ingest.rows_dropped_missing},
        {"d", report.ingest.d}}},
      {"per_repeat", std::move(repeats)},
      {"medians",
       {{"recall", m.recall},
        {"false_alarm", m.false_alarm},
        {"aod", m.aod},
        {"eod", m.eod},
        {"dropped_fraction", m.dropped_fraction},
        {"situation_fail_pre", m.situation_fail_pre},
        {"situation_fail_post", detail::optional_json(m.situation_fail_post)},
        {"situation_fail_test", m.situation_fail_test}}}};
}

inline FairnessReport report_from_json(const Json& j) {
  FairnessReport out;
  try {
    if (j.at("format_version").get<int>() != kReportFormatVersion) {
      throw ConfigError("unsupported report format_version");
    }
    out.tool_version = j.at("tool_version").get<std::string>();
    out.dataset = j.at("dataset").get<std::string>();
    const Json& c = j.at("run_config");
    out.config.spec_path = c.at("spec_path").get<std::string>();
    out.config.attribute = c.at("attribute").get<std::string>();
    out.config.mode = parse_mode(c.at("mode").get<std::string>());
    out.config.repeats = c.at("repeats").get<std::size_t>();
    out.config.base_seed = c.at("base_seed").get<std::uint64_t>();
    const Json& w = c.at("weights");
    out.config.weights = {w.at("recall").get<double>(),
                          w.at("false_alarm").get<double>(),
                          w.at("aod").get<double>(), w.at("eod").get<double>()};
    out.config.filter_mode =
        parse_filter_mode(c.at("filter_mode").get<std::string>());
    out.config.budget = {c.at("budget").at("initial_pool").get<std::size_t>(),
                         c.at("budget").at("life").get<std::size_t>()};
    out.config.output_path = c.at("output_path").get<std::string>();
    const Json& in = j.at("ingest");
    out.ingest = {in.at("rows_read").get<std::size_t>(),
                  in.at("rows_dropped_filter").get<std::size_t>(),
                  in.at("rows_dropped_missing").get<std::size_t>(),
                  in.at("d").get<std::size_t>()};
    for (const Json& r : j.at("per_repeat")) {
      RepeatResult rr;
      rr.repeat = r.at("repeat").get<std::size_t>();
      rr.seed = r.at("seed").get<std::uint64_t>();
      rr.train_rows = r.at("rows").at("train").get<std::size_t>();
      rr.validation_rows = r.at("rows").at("validation").get<std::size_t>();
      rr.test_rows = r.at("rows").at("test").get<std::size_t>();
      rr.test = detail::measures_from(r.at("test"));
      rr.dropped_rows = r.at("dropped_rows").get<std::size_t>();
      rr.dropped_fraction = r.at("dropped_fraction").get<double>();
      rr.situation_fail_pre = r.at("situation_fail_pre").get<double>();
      rr.situation_fail_post =
          detail::optional_from<double>(r, "situation_fail_post");
      rr.situation_fail_test = r.at("situation_fail_test").get<double>();
      if (!r.at("chosen_config").is_null()) {
        const Json& cc = r.at("chosen_config");
        rr.chosen = ChosenConfig{cc.at("index").get<std::size_t>(),
                                 detail::hyper_from(cc.at("hyper"))};
      }
      for (const Json& e : r.at("trace")) {
        FlashTraceEntry entry;
        entry.config = e.at("config").get<std::size_t>();
        entry.score = e.at("score").get<double>();
        entry.predicted = detail::optional_from<double>(e, "predicted");
        if (!e.at("measures").is_null()) {
          entry.measures = detail::measures_from(e.at("measures"));
        }
        rr.trace.push_back(entry);
      }
      out.repeats.push_back(std::move(rr));
    }
    const Json& m = j.at("medians");
    out.medians.recall = m.at("recall").get<double>();
    out.medians.false_alarm = m.at("false_alarm").get<double>();
    out.medians.aod = m.at("aod").get<double>();
    out.medians.eod = m.at("eod").get<double>();
    out.medians.dropped_fraction = m.at("dropped_fraction").get<double>();
    out.medians.situation_fail_pre = m.at("situation_fail_pre").get<double>();
    out.medians.situation_fail_post =
        detail::optional_from<double>(m, "situation_fail_post");
    out.medians.situation_fail_test =
        m.at("situation_fail_test").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  return out;
}

inline std::string report_json_text(const FairnessReport& report) {
  return to_json(report).dump(2) + "\n";
}

namespace detail {

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

inline std::string fmt_optional(const std::optional<double>& v) {
  return v ? fmt_double(*v) : std::string();
}

}  // namespace detail

// One row per repeat plus a final "median" row.
inline std::string report_csv_text(const FairnessReport& report) {
  std::ostringstream os;
  os << "repeat,seed,recall,false_alarm,aod,eod,dropped_fraction,"
        "situation_fail_pre,situation_fail_post,situation_fail_test,"
        "chosen_c,chosen_max_iter,chosen_tol\n";
  for (const auto& r : report.repeats) {
    os << r.repeat << ',' << r.seed << ',' << detail::fmt_double(r.test.recall)
       << ',' << detail::fmt_double(r.test.false_alarm) << ','
       << detail::fmt_double(r.test.aod) << ','
       << detail::fmt_double(r.test.eod) << ','
       << detail::fmt_double(r.dropped_fraction) << ','
       << detail::fmt_double(r.situation_fail_pre) << ','
       << detail::fmt_optional(r.situation_fail_post) << ','
       << detail::fmt_double(r.situation_fail_test) << ',';
    if (r.chosen) {
      os << detail::fmt_double(r.chosen->hyper.c) << ','
         << r.chosen->hyper.max_iter << ','
         << detail::fmt_double(r.chosen->hyper.tol);
    } else {
      os << ",,";
    }
    os << '\n';
  }
  const Medians& m = report.medians;
  os << "median,," << detail::fmt_double(m.recall) << ','
     << detail::fmt_double(m.false_alarm) << ',' << detail::fmt_double(m.aod)
     << ',' << detail::fmt_double(m.eod) << ','
     << detail::fmt_double(m.dropped_fraction) << ','
     << detail::fmt_double(m.situation_fail_pre) << ','
     << detail::fmt_optional(m.situation_fail_post) << ','
     << detail::fmt_double(m.situation_fail_test) << ",,,\n";
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoFailure("write to " + path + " failed");
}

// Writes the JSON report to path and, when csv_path is non-empty, the
// flattened CSV next to it.
inline void emit_report(const FairnessReport& report, const std::string& path,
                        const std::string& csv_path = {}) {
  write_text_file(path, report_json_text(report));
  if (!csv_path.empty()) write_text_file(csv_path, report_csv_text(report));
}

inline FairnessReport read_report(const std::string& path) {
  try {
    return report_from_json(Json::parse(read_text_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace fairway

#endif  // FAIRWAY_REPORT_HPP_
