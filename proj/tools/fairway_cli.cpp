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

// Command-line front end:
//
//   fairway run --spec configs/adult.json --attribute sex --mode fairway
//       --repeats 10 --seed 0 --out report.json [--csv report.csv]
//   fairway datasets list [--dir configs]
//   fairway audit --spec configs/adult.json --attribute sex [--seed 0]
//
// Exit codes: 0 success, 2 configuration error, 3 data error,
// 4 degenerate protected group.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairway/fairway.hpp"

#ifndef FAIRWAY_CONFIG_DIR
#define FAIRWAY_CONFIG_DIR "configs"
#endif

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitDegenerate = 4;

int exit_code(fairway::ErrorKind kind) {
  switch (kind) {
    case fairway::ErrorKind::kConfig: return kExitConfig;
    case fairway::ErrorKind::kDegenerate: return kExitDegenerate;
    case fairway::ErrorKind::kData:
    case fairway::ErrorKind::kIo: return kExitData;
  }
  return kExitData;
}

fairway::ObjectiveWeights parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = fairway::parse_number(item);
    if (!v) throw fairway::ConfigError("bad weight '" + item + "'");
    w.push_back(*v);
  }
  if (w.size() != 4) {
    throw fairway::ConfigError("--weights needs four values wr,wf,wa,we");
  }
  fairway::ObjectiveWeights out{w[0], w[1], w[2], w[3]};
  out.validate();
  return out;
}

void print_medians(const fairway::FairnessReport& r) {
  const auto& m = r.medians;
  std::cout << r.dataset << '/' << r.config.attribute << " mode="
            << fairway::to_string(r.config.mode)
            << " repeats=" << r.repeats.size() << '\n'
            << "  recall=" << m.recall << " false_alarm=" << m.false_alarm
            << " aod=" << m.aod << " eod=" << m.eod << '\n'
            << "  dropped_fraction=" << m.dropped_fraction
            << " situation_fail_pre=" << m.situation_fail_pre;
  if (m.situation_fail_post) {
    std::cout << " situation_fail_post=" << *m.situation_fail_post;
  }
  std::cout << " situation_fail_test=" << m.situation_fail_test << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fairway: ambiguity filtering, fairness-aware tuning and "
               "situation testing for logistic regression"};
  app.require_subcommand(1);

  // run
  fairway::RunConfig config;
  std::string mode = "fairway", filter_mode = "single",
              weights = "1,1,1,1", csv_path;
  auto* run = app.add_subcommand("run", "Run one experimental arm");
  run->add_option("--spec", config.spec_path, "Dataset config file")
      ->required();
  run->add_option("--attribute", config.attribute, "Protected attribute")
      ->required();
  run->add_option("--mode", mode, "baseline|preprocess|optimize|fairway")
      ->capture_default_str();
  run->add_option("--repeats", config.repeats, "Shuffled repeats")
      ->capture_default_str();
  run->add_option("--seed", config.base_seed, "Base seed; repeat i uses seed+i")
      ->capture_default_str();
  run->add_option("--filter-mode", filter_mode, "single|joint")
      ->capture_default_str();
  run->add_option("--weights", weights,
                  "Composite weights recall,false_alarm,aod,eod")
      ->capture_default_str();
  run->add_option("--initial-pool", config.budget.initial_pool,
                  "Configs evaluated before the surrogate starts")
      ->capture_default_str();
  run->add_option("--life", config.budget.life,
                  "Non-improving evaluations allowed")
      ->capture_default_str();
  run->add_option("--out", config.output_path, "JSON report path")->required();
  run->add_option("--csv", csv_path, "Optional CSV flattening of the report");

  // datasets list
  std::string config_dir = FAIRWAY_CONFIG_DIR;
  auto* datasets = app.add_subcommand("datasets", "Dataset configs");
  datasets->require_subcommand(1);
  auto* list = datasets->add_subcommand("list", "List dataset configs");
  list->add_option("--dir", config_dir, "Directory of dataset configs")
      ->capture_default_str();

  // audit
  std::string audit_spec, audit_attribute, audit_out;
  std::uint64_t audit_seed = 0;
  auto* audit = app.add_subcommand(
      "audit", "Situation-test a default model before and after filtering");
  audit->add_option("--spec", audit_spec, "Dataset config file")->required();
  audit->add_option("--attribute", audit_attribute, "Protected attribute")
      ->required();
  audit->add_option("--seed", audit_seed, "Split seed")->capture_default_str();
  audit->add_option("--out", audit_out, "Write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      config.mode = fairway::parse_mode(mode);
      config.filter_mode = fairway::parse_filter_mode(filter_mode);
      config.weights = parse_weights(weights);
      const fairway::FairnessReport report = fairway::run(config);
      fairway::emit_report(report, config.output_path, csv_path);
      print_medians(report);
      return 0;
    }

    if (*list) {
      namespace fs = std::filesystem;
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(config_dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        const fairway::DatasetSpec spec = fairway::load_dataset_spec(f.string());
        std::cout << spec.name << "  " << f.string() << "  protected:";
        for (const auto& p : spec.protected_attributes) {
          std::cout << ' ' << p.name;
        }
        std::cout << "\n    " << spec.description << '\n';
      }
      return 0;
    }

    if (*audit) {
      const fairway::DatasetSpec spec = fairway::load_dataset_spec(audit_spec);
      spec.attribute(audit_attribute);
      const fairway::EncodedDataset data = fairway::load_dataset(spec);
      const fairway::SplitTriple parts = fairway::split(data, audit_seed);
      const auto model = fairway::lr_fit(parts.train);
      const auto filtered =
          fairway::filter_single(parts.train, audit_attribute);
      const auto cleaned = fairway::lr_fit(filtered.retained);
      auto result = [&](const fairway::SituationResult& s) {
        return fairway::Json{{"total", s.total},
                             {"flipped", s.flipped},
                             {"fail_rate", s.fail_rate}};
      };
      fairway::Json out{
          {"dataset", spec.name},
          {"attribute", audit_attribute},
          {"seed", audit_seed},
          {"train_before",
           result(fairway::situation_test(model, parts.train,
                                          audit_attribute))},
          {"train_after",
           result(fairway::situation_test(cleaned, filtered.retained,
                                          audit_attribute))},
          {"test_before", result(fairway::situation_test(
                              model, parts.test, audit_attribute))},
          {"test_after", result(fairway::situation_test(
                             cleaned, parts.test, audit_attribute))},
          {"dropped_rows", filtered.dropped_indices.size()},
          {"dropped_fraction", filtered.dropped_fraction}};
      const std::string text = out.dump(2) + "\n";
      if (audit_out.empty()) {
        std::cout << text;
      } else {
        fairway::write_text_file(audit_out, text);
      }
      return 0;
    }
  } catch (const fairway::Error& e) {
    std::cerr << "fairway: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "fairway: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
