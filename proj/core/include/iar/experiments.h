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

#ifndef IAR_EXPERIMENTS_H_
#define IAR_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iar/model.h"
#include "iar/online.h"
#include "iar/sampling.h"
#include "iar/time_series.h"

namespace iar {

struct SanityCheck {
  double phi = 0.5;
};

// phi_a up to (excluding) the 1-based observation `change_index`, phi_b from
// there on.
struct AbruptChange {
  double phi_a = 0.7;
  double phi_b = 0.3;
  std::size_t change_index = 201;
};

// Linear drift from phi_start at the first observation to phi_end at the
// last.
struct ConstantChange {
  double phi_start = 0.8;
  double phi_end = 0.4;
};

using Scenario = std::variant<SanityCheck, AbruptChange, ConstantChange>;

std::string scenario_name(const Scenario& scenario);

// True parameter path, zero based. Throws std::invalid_argument on invalid
// parameters (phi outside (0, 1), change_index outside [2, n - 1], n < 2).
std::vector<double> make_phi_path(const Scenario& scenario, std::size_t n);

enum class Method { kMle, kObr, kOgd, kOns };

inline constexpr Method kAllMethods[] = {Method::kMle, Method::kObr,
                                         Method::kOgd, Method::kOns};

std::string_view to_string(Method method);
Method parse_method(std::string_view name);
std::optional<OnlineMethod> online_method(Method method);

struct ExperimentConfig {
  std::size_t n = 400;
  std::size_t reps = 100;
  TimeGapSpec gap_spec = RegularGaps{};
  Scenario scenario = SanityCheck{};
  // Process standard deviation of the simulated series.
  double sigma = 1.0;
  // Fraction of the series observed before the online phase; the batch
  // estimate on that prefix initializes the online estimators.
  double warm_fraction = 0.5;
  std::vector<Method> methods = {Method::kMle, Method::kObr, Method::kOgd,
                                 Method::kOns};
  OnlineHyper hyper;
  // Empty: sample standard deviation.
  std::optional<double> mle_sigma;
  std::uint64_t base_seed = 1;
  // Batch trajectory: refit on the growing prefix every k observations of
  // the online segment. 0 skips the refits; the batch trajectory then holds
  // the warm-start estimate before the online segment and the full-series
  // estimate afterwards.
  std::size_t batch_refit_every = 1;
  // Worker threads for independent repetitions; 0 picks default_parallelism().
  std::size_t threads = 0;
};

// Number of observations in the warm-start prefix.
std::size_t warm_count(const ExperimentConfig& config);

// Throws std::invalid_argument when the config is unusable.
void validate(const ExperimentConfig& config);

// IAR_NUM_THREADS if set to a positive integer, otherwise the number of
// hardware threads.
std::size_t default_parallelism();

struct MethodRun {
  Method method;
  std::vector<double> trajectory;
  double final_estimate;
  double mse;
  double seconds;
};

struct RepOutcome {
  TimeSeries series;
  double warm_phi;
  std::vector<MethodRun> runs;
};

// One Monte Carlo repetition: times and values are generated from seed
// base_seed + rep.
RepOutcome run_rep(const ExperimentConfig& config, std::size_t rep);

struct MethodSummary {
  Method method;
  double final_mean = 0.0;
  double mse_mean = 0.0;
  double seconds_mean = 0.0;
  std::vector<double> traj_mean;
  std::vector<double> traj_lo;  // 2.5% quantile over reps
  std::vector<double> traj_hi;  // 97.5% quantile over reps
  std::vector<double> finals;
  std::vector<double> mses;
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::size_t warm_count = 0;
  std::vector<double> true_phi;
  std::vector<MethodSummary> methods;

  const MethodSummary& at(Method method) const;
};

// Repetitions may run in parallel; results are reduced in rep order so the
// summary (timings aside) depends only on the config. A failing rep aborts
// the experiment with its index in the message.
ExperimentSummary run_experiment(const ExperimentConfig& config);

struct BenchResult {
  std::vector<std::size_t> sizes;
  std::vector<Method> methods;
  // seconds[s][m]: mean seconds for sizes[s] and methods[m].
  std::vector<std::vector<double>> seconds;

  double at(std::size_t size, Method method) const;
};

// Times one full estimation pass per method (batch: one fit on n points;
// online: n - 1 single steps) on fresh simulated series, averaged over reps.
// Simulation is outside the timer.
BenchResult bench_runtime(const std::vector<std::size_t>& sizes,
                          std::size_t reps, const TimeGapSpec& gap_spec,
                          const std::vector<Method>& methods,
                          const OnlineHyper& hyper = {},
                          std::uint64_t seed = 1);

// Hyperparameter calibration by grid search. Each candidate is scored by the
// mean fitted MSE over `configs` (all reps); its standard error comes from
// the spread of the per-rep score across reps. The selected candidate is the
// most adaptive one whose score is within one standard error of the best
// score, where adaptivity is given by the caller (for example 1 / eta for
// the gradient methods, q for OBR); ties go to the lower score.
struct CalibrationResult {
  std::vector<OnlineHyper> candidates;
  std::vector<double> mse;
  std::vector<double> se;
  std::size_t best_index = 0;  // lowest score
  std::size_t selected_index = 0;
};

CalibrationResult calibrate(
    OnlineMethod method, const std::vector<OnlineHyper>& candidates,
    const std::vector<ExperimentConfig>& configs,
    const std::function<double(const OnlineHyper&)>& adaptivity);

}  // namespace iar

#endif  // IAR_EXPERIMENTS_H_
