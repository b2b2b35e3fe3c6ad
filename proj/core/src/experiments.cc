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

#include "iar/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "iar/batch_mle.h"
#include "iar/stats.h"

namespace iar {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_open_unit(double phi, const char* what) {
  if (!(phi > 0.0 && phi < 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in (0, 1)");
  }
}

double mse_for_path(std::span<const double> path, double sigma,
                    const TimeSeries& series, std::size_t from) {
  return mean_squared_innovation(fitted_values(path, sigma, series), from);
}

}  // namespace

std::string scenario_name(const Scenario& scenario) {
  return std::visit(
      Overloaded{[](const SanityCheck&) { return std::string("sanity_check"); },
                 [](const AbruptChange&) { return std::string("abrupt_change"); },
                 [](const ConstantChange&) {
                   return std::string("constant_change");
                 }},
      scenario);
}

std::vector<double> make_phi_path(const Scenario& scenario, std::size_t n) {
  if (n < 2) throw std::invalid_argument("make_phi_path: n must be >= 2");
  return std::visit(
      Overloaded{
          [n](const SanityCheck& s) {
            require_open_unit(s.phi, "sanity_check phi");
            return std::vector<double>(n, s.phi);
          },
          [n](const AbruptChange& s) {
            require_open_unit(s.phi_a, "abrupt_change phi_a");
            require_open_unit(s.phi_b, "abrupt_change phi_b");
            if (s.change_index < 2 || s.change_index > n - 1) {
              throw std::invalid_argument(
                  "abrupt_change change_index must lie in [2, n - 1]");
            }
            std::vector<double> path(n, s.phi_b);
            std::fill_n(path.begin(), s.change_index - 1, s.phi_a);
            return path;
          },
          [n](const ConstantChange& s) {
            require_open_unit(s.phi_start, "constant_change phi_start");
            require_open_unit(s.phi_end, "constant_change phi_end");
            std::vector<double> path(n);
            const double span = static_cast<double>(n - 1);
            for (std::size_t j = 0; j < n; ++j) {
              const double w = static_cast<double>(j) / span;
              path[j] = s.phi_start + w * (s.phi_end - s.phi_start);
            }
            path.back() = s.phi_end;
            return path;
          },
      },
      scenario);
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kMle:
      return "MLE";
    case Method::kObr:
      return "OBR";
    case Method::kOgd:
      return "OGD";
    case Method::kOns:
      return "ONS";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(c));
  for (Method m : kAllMethods) {
    if (to_string(m) == upper) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected MLE, OBR, OGD or ONS)");
}

std::optional<OnlineMethod> online_method(Method method) {
  switch (method) {
    case Method::kMle:
      return std::nullopt;
    case Method::kObr:
      return OnlineMethod::kObr;
    case Method::kOgd:
      return OnlineMethod::kOgd;
    case Method::kOns:
      return OnlineMethod::kOns;
  }
  return std::nullopt;
}

std::size_t warm_count(const ExperimentConfig& config) {
  return static_cast<std::size_t>(
      std::llround(config.warm_fraction * static_cast<double>(config.n)));
}

void validate(const ExperimentConfig& config) {
  if (config.reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (!(config.warm_fraction > 0.0 && config.warm_fraction < 1.0)) {
    throw std::invalid_argument("warm_fraction must lie in (0, 1)");
  }
  const std::size_t m = warm_count(config);
  if (m < 2) throw std::invalid_argument("warm_fraction * n must be >= 2");
  if (m >= config.n) {
    throw std::invalid_argument("warm_fraction leaves no online segment");
  }
  if (!(config.sigma > 0.0) || !std::isfinite(config.sigma)) {
    throw std::invalid_argument("sigma must be positive");
  }
  if (config.mle_sigma && !(*config.mle_sigma > 0.0)) {
    throw std::invalid_argument("mle_sigma must be positive");
  }
  if (config.methods.empty()) throw std::invalid_argument("no methods given");
  for (std::size_t i = 0; i < config.methods.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (config.methods[i] == config.methods[k]) {
        throw std::invalid_argument("duplicate method " +
                                    std::string(to_string(config.methods[i])));
      }
    }
  }
  iar::validate(config.gap_spec);
  make_phi_path(config.scenario, config.n);
  // Surface bad hyperparameters before any work is done.
  OnlineEstimator(OnlineMethod::kOns, 0.5, config.hyper);
  OnlineEstimator(OnlineMethod::kOgd, 0.5, config.hyper);
  OnlineEstimator(OnlineMethod::kObr, 0.5, config.hyper);
}

std::size_t default_parallelism() {
  if (const char* env = std::getenv("IAR_NUM_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      return static_cast<std::size_t>(value);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RepOutcome run_rep(const ExperimentConfig& config, std::size_t rep) {
  const std::uint64_t seed = config.base_seed + rep;
  const std::size_t n = config.n;
  const std::size_t m = warm_count(config);

  const std::vector<double> times = gen_times(config.gap_spec, n, seed);
  const std::vector<double> truth = make_phi_path(config.scenario, n);
  TimeSeries series =
      simulate_time_varying(truth, config.sigma, times, seed);

  MleOptions mle_options;
  mle_options.sigma = config.mle_sigma;
  const double warm_phi = fit_mle(series.head(m), mle_options).phi_hat;

  RepOutcome outcome{std::move(series), warm_phi, {}};
  const TimeSeries& y = outcome.series;
  for (Method method : config.methods) {
    MethodRun run{method, {}, 0.0, 0.0, 0.0};
    if (auto online = online_method(method)) {
      const auto start = Clock::now();
      run.trajectory = run_online(*online, y, warm_phi, m, config.hyper);
      run.seconds = seconds_since(start);
      run.final_estimate = run.trajectory.back();
      run.mse = mse_for_path(predictive_path(run.trajectory), config.sigma, y,
                             m);
    } else {
      const auto start = Clock::now();
      const double full_phi = fit_mle(y, mle_options).phi_hat;
      run.seconds = seconds_since(start);
      run.final_estimate = full_phi;
      run.mse = mse_for_path(std::vector<double>(n, full_phi), config.sigma, y,
                             m);

      run.trajectory.assign(n, warm_phi);
      const std::size_t every = config.batch_refit_every;
      double current = full_phi;
      for (std::size_t i = m; i < n; ++i) {
        if (every > 0 && ((i - m) % every == 0 || i == n - 1)) {
          current = i == n - 1 ? full_phi
                               : fit_mle(y.head(i + 1), mle_options).phi_hat;
        }
        run.trajectory[i] = current;
      }
    }
    outcome.runs.push_back(std::move(run));
  }
  return outcome;
}

const MethodSummary& ExperimentSummary::at(Method method) const {
  for (const auto& s : methods) {
    if (s.method == method) return s;
  }
  throw std::out_of_range("method " + std::string(to_string(method)) +
                          " not in summary");
}

ExperimentSummary run_experiment(const ExperimentConfig& config) {
  validate(config);
  const std::size_t reps = config.reps;
  std::vector<std::optional<RepOutcome>> outcomes(reps);
  std::vector<std::exception_ptr> errors(reps);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t r = next.fetch_add(1);
      if (r >= reps) return;
      try {
        outcomes[r] = run_rep(config, r);
      } catch (...) {
        errors[r] = std::current_exception();
        failed.store(true);
      }
    }
  };

  const std::size_t threads =
      std::min(reps, config.threads > 0 ? config.threads : default_parallelism());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (std::size_t r = 0; r < reps; ++r) {
    if (!errors[r]) continue;
    try {
      std::rethrow_exception(errors[r]);
    } catch (const std::exception& e) {
      throw std::runtime_error("experiment rep " + std::to_string(r) +
                               " (seed " +
                               std::to_string(config.base_seed + r) +
                               "): " + e.what());
    }
  }

  ExperimentSummary summary;
  summary.config = config;
  summary.warm_count = warm_count(config);
  summary.true_phi = make_phi_path(config.scenario, config.n);
  const std::size_t n = config.n;
  const auto count = static_cast<double>(reps);

  for (std::size_t k = 0; k < config.methods.size(); ++k) {
    MethodSummary ms;
    ms.method = config.methods[k];
    ms.traj_mean.assign(n, 0.0);
    ms.traj_lo.resize(n);
    ms.traj_hi.resize(n);
    std::vector<double> column(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      const MethodRun& run = outcomes[r]->runs[k];
      ms.finals.push_back(run.final_estimate);
      ms.mses.push_back(run.mse);
      ms.seconds_mean += run.seconds / count;
      for (std::size_t i = 0; i < n; ++i) ms.traj_mean[i] += run.trajectory[i];
    }
    ms.final_mean = sample_mean(ms.finals);
    ms.mse_mean = sample_mean(ms.mses);
    for (std::size_t i = 0; i < n; ++i) {
      ms.traj_mean[i] /= count;
      for (std::size_t r = 0; r < reps; ++r) {
        column[r] = outcomes[r]->runs[k].trajectory[i];
      }
      ms.traj_lo[i] = std::min(quantile(column, 0.025), ms.traj_mean[i]);
      ms.traj_hi[i] = std::max(quantile(column, 0.975), ms.traj_mean[i]);
    }
    summary.methods.push_back(std::move(ms));
  }
  return summary;
}

double BenchResult::at(std::size_t size, Method method) const {
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    if (sizes[s] != size) continue;
    for (std::size_t m = 0; m < methods.size(); ++m) {
      if (methods[m] == method) return seconds[s][m];
    }
  }
  throw std::out_of_range("bench result has no such size/method");
}

BenchResult bench_runtime(const std::vector<std::size_t>& sizes,
                          std::size_t reps, const TimeGapSpec& gap_spec,
                          const std::vector<Method>& methods,
                          const OnlineHyper& hyper, std::uint64_t seed) {
  if (sizes.empty()) throw std::invalid_argument("bench: no sizes given");
  for (std::size_t n : sizes) {
    if (n < 10) throw std::invalid_argument("bench: sizes must be >= 10");
  }
  if (reps < 1) throw std::invalid_argument("bench: reps must be >= 1");
  if (methods.empty()) throw std::invalid_argument("bench: no methods given");
  iar::validate(gap_spec);

  BenchResult result{sizes, methods, {}};
  const IarParams truth(0.5, 1.0);
  for (std::size_t n : sizes) {
    std::vector<double> total(methods.size(), 0.0);
    for (std::size_t r = 0; r < reps; ++r) {
      const auto times = gen_times(gap_spec, n, seed + r);
      const TimeSeries series = simulate(truth, times, seed + r);
      for (std::size_t k = 0; k < methods.size(); ++k) {
        double sink = 0.0;
        const auto start = Clock::now();
        if (auto online = online_method(methods[k])) {
          sink = run_online(*online, series, 0.5, 1, hyper).back();
        } else {
          sink = fit_mle(series).phi_hat;
        }
        total[k] += seconds_since(start);
        // Keeps the estimate observable so the call cannot be elided.
        if (!std::isfinite(sink)) throw std::logic_error("bench: bad estimate");
      }
    }
    for (double& t : total) t /= static_cast<double>(reps);
    result.seconds.push_back(std::move(total));
  }
  return result;
}

CalibrationResult calibrate(
    OnlineMethod method, const std::vector<OnlineHyper>& candidates,
    const std::vector<ExperimentConfig>& configs,
    const std::function<double(const OnlineHyper&)>& adaptivity) {
  if (candidates.empty() || configs.empty()) {
    throw std::invalid_argument("calibrate: empty candidate or config list");
  }
  const Method as_method = method == OnlineMethod::kObr   ? Method::kObr
                           : method == OnlineMethod::kOgd ? Method::kOgd
                                                          : Method::kOns;
  const std::size_t reps = configs.front().reps;
  for (const auto& c : configs) {
    if (c.reps != reps) {
      throw std::invalid_argument("calibrate: configs must share reps");
    }
  }

  CalibrationResult result;
  result.candidates = candidates;
  for (const OnlineHyper& hyper : candidates) {
    std::vector<double> per_rep(reps, 0.0);
    for (ExperimentConfig config : configs) {
      config.methods = {as_method};
      config.batch_refit_every = 0;
      config.hyper = hyper;
      const ExperimentSummary summary = run_experiment(config);
      const auto& mses = summary.at(as_method).mses;
      for (std::size_t r = 0; r < reps; ++r) {
        per_rep[r] += mses[r] / static_cast<double>(configs.size());
      }
    }
    result.mse.push_back(sample_mean(per_rep));
    result.se.push_back(reps > 1 ? sample_sd(per_rep) /
                                       std::sqrt(static_cast<double>(reps))
                                 : 0.0);
  }

  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (result.mse[i] < result.mse[result.best_index]) result.best_index = i;
  }
  const double threshold =
      result.mse[result.best_index] + result.se[result.best_index];
  result.selected_index = result.best_index;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (result.mse[i] > threshold) continue;
    const double a = adaptivity(candidates[i]);
    const double a_sel = adaptivity(candidates[result.selected_index]);
    if (a > a_sel || (a == a_sel && result.mse[i] < result.mse[result.selected_index])) {
      result.selected_index = i;
    }
  }
  return result;
}

}  // namespace iar
