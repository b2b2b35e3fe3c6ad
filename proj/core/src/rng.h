// Copyright 2026 The iarstream Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IAR_SRC_RNG_H_
#define IAR_SRC_RNG_H_

#include <cstdint>
#include <random>

namespace iar::internal {

// Independent streams derived from one user seed, so that the same seed can
// drive both the observation times and the simulated values.
enum class Stream : std::uint32_t {
  kTimes = 1,
  kValues = 2,
  kMeasurementNoise = 3,
};

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream);

}  // namespace iar::internal

#endif  // IAR_SRC_RNG_H_
