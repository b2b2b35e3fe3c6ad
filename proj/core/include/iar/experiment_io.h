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

#ifndef IAR_EXPERIMENT_IO_H_
#define IAR_EXPERIMENT_IO_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "iar/experiments.h"

namespace iar {

// A JSON experiment document. `gaps` may be a single gap-spec string or an
// array of them; every other key maps onto ExperimentConfig:
//
//   {
//     "n": 400, "reps": 100, "base_seed": 1,
//     "gaps": ["regular:1", "unif:0.5,1.5", "gamma:3,3", "expmix:15,2,0.15"],
//     "scenario": {"type": "sanity_check", "phi": 0.5},
//     "warm_fraction": 0.5,
//     "methods": ["MLE", "OBR", "OGD", "ONS"],
//     "hyper": {"ons": {"eta": 1}, "ogd": {"eta": 50},
//               "obr": {"p1": 0.01, "sigma": 1, "q": 0.001}},
//     "mle_sigma": "from-sample",
//     "batch_refit_every": 1
//   }
//
// Scenario types: sanity_check {phi}, abrupt_change {phi_a, phi_b,
// change_index}, constant_change {phi_start, phi_end}. Missing keys take
// the ExperimentConfig defaults. Unknown keys are rejected.
struct ExperimentPlan {
  ExperimentConfig base;
  std::vector<TimeGapSpec> gaps;

  // One config per gap spec.
  std::vector<ExperimentConfig> expand() const;
};

// Throws std::invalid_argument naming the offending key.
ExperimentPlan parse_experiment_plan(std::string_view json_text);
ExperimentPlan read_experiment_plan(const std::string& path);
std::string to_json(const ExperimentPlan& plan);

// One row per gap spec: obs_time, phi_<method>..., mse_<method>... in the
// order of the config's method list. Summaries must share a method list.
void write_summary_csv(std::ostream& out,
                       const std::vector<ExperimentSummary>& summaries);

// Mean wall-clock seconds per gap spec and method.
void write_timings_csv(std::ostream& out,
                       const std::vector<ExperimentSummary>& summaries);

// index (1 based), true_phi, then <method>_mean, <method>_lo, <method>_hi.
void write_trajectory_csv(std::ostream& out, const ExperimentSummary& summary);

// n, then one mean-seconds column per method.
void write_bench_csv(std::ostream& out, const BenchResult& bench);

}  // namespace iar

#endif  // IAR_EXPERIMENT_IO_H_
