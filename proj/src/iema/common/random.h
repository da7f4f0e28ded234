/*
 * Copyright 2026 The IEMA Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef IEMA_COMMON_RANDOM_H_
#define IEMA_COMMON_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace iema {

// Mixes a seed with a stream identifier (splitmix64 finalizer).
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

// FNV-1a over the bytes of "text". Used to derive streams keyed by names so
// that results do not depend on column order.
uint64_t HashName(std::string_view text);

// Seeded random source with platform-independent output.
//
// std::mt19937_64 is fully specified by the standard, but the std
// distributions are not, so integer and real draws are mapped here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, bound). "bound" must be > 0.
  uint64_t UniformInt(uint64_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double UniformDouble();

  // Fisher-Yates shuffle.
  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (size_t i = values.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(UniformInt(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  // "count" distinct indices from [0, n), returned in increasing order.
  std::vector<size_t> SampleIndices(size_t n, size_t count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace iema

#endif  // IEMA_COMMON_RANDOM_H_
