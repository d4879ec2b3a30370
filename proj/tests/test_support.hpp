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

#ifndef FAIRWAY_TESTS_TEST_SUPPORT_HPP_
#define FAIRWAY_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fairway/fairway.hpp"

namespace fairway::testing {

inline std::string source_path(const std::string& rel) {
  return std::string(FAIRWAY_SOURCE_DIR) + "/" + rel;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("fairway_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Dataset whose protected indicators are the listed columns; every column
// is numeric except those.
inline EncodedDataset make_dataset(Matrix x, std::vector<int> labels,
                                   std::vector<std::string> protected_names,
                                   std::vector<std::size_t> protected_cols) {
  std::vector<std::string> names;
  std::vector<ColumnRole> roles(x.cols(), ColumnRole::kNumeric);
  for (std::size_t c = 0; c < x.cols(); ++c) {
    names.push_back("x" + std::to_string(c));
  }
  for (std::size_t a = 0; a < protected_names.size(); ++a) {
    names[protected_cols[a]] = protected_names[a];
    roles[protected_cols[a]] = ColumnRole::kProtected;
  }
  return EncodedDataset(std::move(x), std::move(labels), std::move(names),
                        std::move(roles), std::move(protected_names),
                        std::move(protected_cols));
}

// n rows: column 0 is the "s" indicator, the remaining d columns are
// Gaussian; labels come from a noisy linear rule that also depends on s.
inline EncodedDataset synthetic(std::size_t n, std::size_t d,
                                std::uint64_t seed, double bias = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::bernoulli_distribution coin(0.5);
  Matrix x(n, d + 1);
  std::vector<int> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double s = coin(rng) ? 1.0 : 0.0;
    x(r, 0) = s;
    double z = bias * (s - 0.5);
    for (std::size_t c = 1; c <= d; ++c) {
      x(r, c) = gauss(rng);
      z += x(r, c) / static_cast<double>(c);
    }
    y[r] = z + gauss(rng) > 0.0 ? 1 : 0;
  }
  return make_dataset(std::move(x), std::move(y), {"s"}, {0});
}

}  // namespace fairway::testing

#endif  // FAIRWAY_TESTS_TEST_SUPPORT_HPP_
