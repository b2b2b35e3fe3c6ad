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

#ifndef IAR_SAMPLING_H_
#define IAR_SAMPLING_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace iar {

struct RegularGaps {
  double gap = 1.0;
  bool operator==(const RegularGaps&) const = default;
};

struct UniformGaps {
  double a = 0.5;
  double b = 1.5;
  bool operator==(const UniformGaps&) const = default;
};

// Gamma with the given shape and rate (mean shape / rate).
struct GammaGaps {
  double shape = 3.0;
  double rate = 3.0;
  bool operator==(const GammaGaps&) const = default;
};

// Two-component exponential mixture parameterized by component means.
// The second weight is 1 - w1.
struct ExpMixtureGaps {
  double mean1 = 15.0;
  double mean2 = 2.0;
  double w1 = 0.15;
  bool operator==(const ExpMixtureGaps&) const = default;
};

using TimeGapSpec =
    std::variant<RegularGaps, UniformGaps, GammaGaps, ExpMixtureGaps>;

// Throws std::invalid_argument when a parameter is out of range.
void validate(const TimeGapSpec& spec);

double mean_gap(const TimeGapSpec& spec);

// Parses the flag grammar `regular:1`, `unif:0.5,1.5`, `gamma:3,3`,
// `expmix:15,2,0.15`. Throws std::invalid_argument on malformed input.
TimeGapSpec parse_gap_spec(std::string_view text);

// Inverse of parse_gap_spec, using the shortest round-tripping numbers.
std::string format_gap_spec(const TimeGapSpec& spec);

// Short human label (Regular, Unif(0.5,1.5), Gamma(3,3), ExpM(15,2,0.15)).
std::string gap_label(const TimeGapSpec& spec);

// t_1 = 0 and t_j = t_{j-1} + gap_j with i.i.d. gaps drawn from `spec`.
std::vector<double> gen_times(const TimeGapSpec& spec, std::size_t n,
                              std::uint64_t seed);

}  // namespace iar

#endif  // IAR_SAMPLING_H_
