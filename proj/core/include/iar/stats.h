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

#ifndef IAR_STATS_H_
#define IAR_STATS_H_

#include <span>

namespace iar {

double sample_mean(std::span<const double> xs);

// Sample standard deviation with the n - 1 divisor; requires n >= 2.
double sample_sd(std::span<const double> xs);

// Linear-interpolation quantile (type 7) of an unsorted sample; p in [0, 1].
double quantile(std::span<const double> xs, double p);

}  // namespace iar

#endif  // IAR_STATS_H_
