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

#ifndef FAIRWAY_RANDOM_HPP_
#define FAIRWAY_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace fairway {

// std::uniform_int_distribution and std::shuffle are implementation-defined,
// so shuffles are spelled out here to keep splits identical across
// standard libraries. std::mt19937_64 itself is fully specified.
using Rng = std::mt19937_64;

// Uniform integer in [0, n) by rejection sampling. n must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Fisher-Yates.
template <typename T>
void shuffle_in_place(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(values[i - 1], values[j]);
  }
}

inline std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

// k distinct indices from [0, n), in draw order.
inline std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                           std::size_t k,
                                                           Rng& rng) {
  std::vector<std::size_t> pool = iota_indices(n);
  for (std::size_t i = 0; i < k && i < n; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(std::min(k, n));
  return pool;
}

}  // namespace fairway

#endif  // FAIRWAY_RANDOM_HPP_
