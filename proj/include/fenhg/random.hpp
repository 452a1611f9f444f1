// Copyright 2026 The fenhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace fenhg {

/// Seeded RNG with an explicit, implementation-independent integer draw.
/// std::uniform_int_distribution is not pinned by the standard, so runs
/// would not reproduce across standard libraries; rejection sampling over
/// the raw mt19937_64 stream is, and is unbiased.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw from [lo, hi], inclusive.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t range = hi - lo + 1;  // hi >= lo; range 0 means the full 2^64 span
    if (range == 0) return engine_();
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + x % range;
  }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform(0, static_cast<std::uint64_t>(hi - lo)));
  }

  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return uniform(1, den) <= num; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fenhg
