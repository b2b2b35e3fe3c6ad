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

#include "cli.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iar/batch_mle.h"
#include "iar/data_pipeline.h"
#include "iar/errors.h"
#include "iar/experiment_io.h"
#include "iar/experiments.h"
#include "iar/model.h"
#include "iar/online.h"
#include "iar/sampling.h"
#include "json.hpp"

namespace iar::cli {
namespace {

using nlohmann::json;

// A flag combination that CLI11 cannot express on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr const char* kGapHelp =
    "Gap specs (time between consecutive observations):\n"
    "  regular:1            constant gap of 1\n"
    "  unif:0.5,1.5         Uniform(a, b)\n"
    "  gamma:3,3            Gamma(shape, rate), mean shape / rate\n"
    "  expmix:15,2,0.15     exponential mixture: mean 15 with weight 0.15,\n"
    "                       otherwise mean 2\n";

constexpr const char* kFooter =
    "Exit status: 0 success, 1 data or runtime error, 2 usage error.\n"
    "IAR_NUM_THREADS sets the number of worker threads used by `experiment`\n"
    "(default: all hardware threads).\n";

TimeGapSpec gap_flag(const std::string& text) {
  try {
    return parse_gap_spec(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--gaps: " + std::string(e.what()));
  }
}

// "start:stop:step" (inclusive) or a comma separated list.
std::vector<std::size_t> parse_sizes(const std::string& text) {
  auto number = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
      throw UsageError("--sizes: bad number '" + std::string(s) + "'");
    }
    return v;
  };
  std::vector<std::size_t> sizes;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string_view> parts;
    std::string_view rest = text;
    for (std::size_t pos; (pos = rest.find(':')) != std::string_view::npos;) {
      parts.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    parts.push_back(rest);
    if (parts.size() != 3) {
      throw UsageError("--sizes: expected start:stop:step, got '" + text + "'");
    }
    const std::size_t start = number(parts[0]);
    const std::size_t stop = number(parts[1]);
    const std::size_t step = number(parts[2]);
    if (step == 0 || stop < start) {
      throw UsageError("--sizes: empty range '" + text + "'");
    }
    for (std::size_t s = start; s <= stop; s += step) sizes.push_back(s);
  } else {
    std::string_view rest = text;
    while (true) {
      const std::size_t pos = rest.find(',');
      sizes.push_back(number(rest.substr(0, pos)));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
  }
  for (std::size_t s : sizes) {
    if (s < 10) throw UsageError("--sizes: every size must be >= 10");
  }
  return sizes;
}

// Output goes to `path`, or to `out` when the path is empty. Content is
// rendered in memory first so nothing is written if rendering fails.
void emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << content;
  if (!file.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

RawSeries load(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw std::runtime_error("--in: no such file '" + path + "'");
  }
  return read_csv(path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Subcommand handlers. Each receives validated flag values and returns only
// after all output has been written.

struct SimulateArgs {
  double phi = 0.5;
  double sigma = 1.0;
  std::size_t n = 0;
  std::string gaps = "regular:1";
  std::uint64_t seed = 1;
  std::string out;
};

void run_simulate(const SimulateArgs& a, std::ostream& out) {
  const TimeGapSpec spec = gap_flag(a.gaps);
  std::optional<IarParams> params;
  try {
    params.emplace(a.phi, a.sigma);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--phi/--sigma: ") + e.what());
  }
  const std::vector<double> times = gen_times(spec, a.n, a.seed);
  std::ostringstream csv;
  write_csv(csv, simulate(*params, times, a.seed));
  emit(a.out, csv.str(), out);
}

struct GenTimesArgs {
  std::string gaps = "regular:1";
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string out;
};

void run_gen_times(const GenTimesArgs& a, std::ostream& out) {
  const TimeGapSpec spec = gap_flag(a.gaps);
  std::ostringstream csv;
  csv << "time\n";
  char buf[64];
  for (double t : gen_times(spec, a.n, a.seed)) {
    const auto r = std::to_chars(buf, buf + sizeof buf, t);
    csv.write(buf, r.ptr - buf);
    csv << '\n';
  }
  emit(a.out, csv.str(), out);
}

struct FitBatchArgs {
  std::string in;
  std::optional<double> sigma;
};

void run_fit_batch(const FitBatchArgs& a, std::ostream& out) {
  const TimeSeries series = to_time_series(load(a.in));
  MleOptions options;
  options.sigma = a.sigma;
  const MleResult r = fit_mle(series, options);
  json j = {{"n", series.size()},       {"phi_hat", r.phi_hat},
            {"sigma", r.sigma},         {"nll", r.nll},
            {"iterations", r.iterations}, {"converged", r.converged}};
  out << dump(j);
}

struct FitOnlineArgs {
  std::string in;
  std::string method;
  double warm_fraction = 0.5;
  std::optional<double> eta;
  std::optional<double> p1;
  std::optional<double> q;
  std::optional<double> sigma;
  std::string out;
};

void run_fit_online(const FitOnlineArgs& a, std::ostream& out) {
  OnlineMethod method;
  try {
    method = parse_online_method(a.method);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--method: ") + e.what());
  }
  OnlineHyper hyper;
  if (method == OnlineMethod::kObr) {
    if (a.eta) throw UsageError("--eta does not apply to obr");
    if (a.p1) hyper.obr.p1 = *a.p1;
    if (a.q) hyper.obr.q = *a.q;
    if (a.sigma) hyper.obr.sigma = *a.sigma;
  } else {
    if (a.p1 || a.q || a.sigma) {
      throw UsageError("--p1, --q and --sigma only apply to obr");
    }
    if (a.eta) {
      (method == OnlineMethod::kOns ? hyper.ons.eta : hyper.ogd.eta) = *a.eta;
    }
  }

  const RawSeries raw = load(a.in);
  const TimeSeries series = to_time_series(raw);
  const std::size_t n = series.size();
  const auto m = static_cast<std::size_t>(
      std::llround(a.warm_fraction * static_cast<double>(n)));
  if (m < 2 || m >= n) {
    throw DataError("--warm-fraction " + std::to_string(a.warm_fraction) +
                    " leaves " + std::to_string(m) + " of " +
                    std::to_string(n) +
                    " points for the warm start; need 2 <= count < n");
  }

  const MleResult warm = fit_mle(series.head(m));
  const std::vector<double> traj =
      run_online(method, series, warm.phi_hat, m, hyper);
  const OneStepFit fit =
      fitted_values(predictive_path(traj), hyper.obr.sigma, series);
  const double mse = mean_squared_innovation(fit, m);

  if (!a.out.empty()) {
    std::ostringstream csv;
    write_csv(csv, raw,
              {{"prediction", fit.predictions}, {"phi_estimate", traj}});
    emit(a.out, csv.str(), out);
  }
  json j = {{"method", std::string(to_string(method))},
            {"n", n},
            {"warm_count", m},
            {"phi_init", warm.phi_hat},
            {"final_estimate", traj.back()},
            {"mse", mse}};
  out << dump(j);
}

struct ExperimentArgs {
  std::string config;
  std::string out_dir;
  std::optional<std::size_t> reps;
  std::optional<std::size_t> threads;
};

std::string trajectory_file_name(const TimeGapSpec& spec) {
  std::string slug = format_gap_spec(spec);
  for (char& c : slug) {
    if (c == ':' || c == ',') c = '_';
  }
  return "trajectories_" + slug + ".csv";
}

void run_experiment_cmd(const ExperimentArgs& a, std::ostream& out) {
  if (!std::filesystem::exists(a.config)) {
    throw std::runtime_error("--config: no such file '" + a.config + "'");
  }
  ExperimentPlan plan;
  try {
    plan = read_experiment_plan(a.config);
  } catch (const std::invalid_argument& e) {
    throw DataError("--config " + a.config + ": " + e.what());
  }
  if (a.reps) plan.base.reps = *a.reps;
  if (a.threads) plan.base.threads = *a.threads;
  const std::vector<ExperimentConfig> configs = plan.expand();
  std::set<std::string> names;
  for (const auto& c : configs) {
    validate(c);
    if (!names.insert(trajectory_file_name(c.gap_spec)).second) {
      throw DataError("--config " + a.config + ": duplicate gap spec " +
                      format_gap_spec(c.gap_spec));
    }
  }

  std::vector<ExperimentSummary> summaries;
  for (const auto& c : configs) summaries.push_back(run_experiment(c));

  std::ostringstream summary_csv, timings_csv;
  write_summary_csv(summary_csv, summaries);
  write_timings_csv(timings_csv, summaries);

  namespace fs = std::filesystem;
  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("--out-dir: cannot create '" + a.out_dir +
                             "': " + ec.message());
  }
  emit((dir / "summary.csv").string(), summary_csv.str(), out);
  emit((dir / "timings.csv").string(), timings_csv.str(), out);
  for (const auto& s : summaries) {
    std::ostringstream csv;
    write_trajectory_csv(csv, s);
    emit((dir / trajectory_file_name(s.config.gap_spec)).string(), csv.str(),
         out);
  }
  out << "wrote " << 2 + summaries.size() << " files to " << a.out_dir
      << "\n";
}

struct BenchArgs {
  std::string sizes = "50:600:50";
  std::size_t reps = 20;
  std::string gaps = "regular:1";
  std::uint64_t seed = 1;
  std::string out;
};

void run_bench(const BenchArgs& a, std::ostream& out) {
  const std::vector<std::size_t> sizes = parse_sizes(a.sizes);
  const TimeGapSpec spec = gap_flag(a.gaps);
  const BenchResult r =
      bench_runtime(sizes, a.reps, spec,
                    {kAllMethods, kAllMethods + std::size(kAllMethods)}, {},
                    a.seed);
  std::ostringstream csv;
  write_bench_csv(csv, r);
  emit(a.out, csv.str(), out);
}

struct PreprocessArgs {
  std::string in;
  double span = 2.0 / 3.0;
  int robust_iters = 3;
  std::string out;
};

void run_preprocess(const PreprocessArgs& a, std::ostream& out) {
  const RawSeries raw = load(a.in);
  const TimeSeries ts = preprocess(raw, a.span, a.robust_iters);
  RawSeries result{{ts.times().begin(), ts.times().end()},
                   {ts.values().begin(), ts.values().end()},
                   std::nullopt};
  if (raw.err_sd) {
    std::vector<double> sd;
    for (double v : ts.meas_err_var()) sd.push_back(std::sqrt(v));
    result.err_sd = std::move(sd);
  }
  std::ostringstream csv;
  write_csv(csv, result);
  emit(a.out, csv.str(), out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Irregular autoregressive models: simulation, batch and online "
               "estimation, Monte Carlo experiments.",
               "iar"};
  app.footer(std::string(kGapHelp) + "\n" + kFooter);
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Simulate an iAR series");
  c_sim->add_option("--phi", sim.phi, "Autocorrelation in (0, 1)")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  c_sim->add_option("--sigma", sim.sigma, "Process standard deviation")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--n", sim.n, "Number of observations")
      ->required()
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--gaps", sim.gaps, "Gap spec")->capture_default_str();
  c_sim->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  c_sim->add_option("--out", sim.out, "Output CSV (default: stdout)");

  GenTimesArgs gt;
  auto* c_gt = app.add_subcommand("gen-times", "Generate observation times");
  c_gt->add_option("--gaps", gt.gaps, "Gap spec")->capture_default_str();
  c_gt->add_option("--n", gt.n, "Number of times")
      ->required()
      ->check(CLI::PositiveNumber);
  c_gt->add_option("--seed", gt.seed, "Random seed")->capture_default_str();
  c_gt->add_option("--out", gt.out, "Output CSV (default: stdout)");

  FitBatchArgs fb;
  auto* c_fb = app.add_subcommand("fit-batch", "Maximum-likelihood fit of phi");
  c_fb->add_option("--in", fb.in, "Input CSV (time,value[,err_sd])")
      ->required();
  c_fb->add_option("--sigma", fb.sigma,
                   "Fixed sigma (default: sample standard deviation)")
      ->check(CLI::PositiveNumber);

  FitOnlineArgs fo;
  auto* c_fo = app.add_subcommand(
      "fit-online", "Warm-started online estimation of phi");
  c_fo->add_option("--in", fo.in, "Input CSV (time,value[,err_sd])")
      ->required();
  c_fo->add_option("--method", fo.method, "obr, ogd or ons")->required();
  c_fo->add_option("--warm-fraction", fo.warm_fraction,
                   "Fraction of the series used for the batch warm start")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  c_fo->add_option("--eta", fo.eta,
                   "ONS/OGD rate; larger eta means smaller steps")
      ->check(CLI::PositiveNumber);
  c_fo->add_option("--p1", fo.p1, "OBR prior variance of phi")
      ->check(CLI::NonNegativeNumber);
  c_fo->add_option("--q", fo.q, "OBR random-walk variance per step")
      ->check(CLI::NonNegativeNumber);
  c_fo->add_option("--sigma", fo.sigma, "OBR process standard deviation")
      ->check(CLI::PositiveNumber);
  c_fo->add_option("--out", fo.out,
                   "Trajectory CSV with prediction and phi_estimate columns");

  ExperimentArgs ex;
  auto* c_ex = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  c_ex->add_option("--config", ex.config, "Experiment JSON")->required();
  c_ex->add_option("--out-dir", ex.out_dir, "Output directory")->required();
  c_ex->add_option("--reps", ex.reps, "Override the number of repetitions")
      ->check(CLI::PositiveNumber);
  c_ex->add_option("--threads", ex.threads,
                   "Worker threads (default: IAR_NUM_THREADS or all cores)");

  BenchArgs be;
  auto* c_be = app.add_subcommand("bench", "Time batch and online estimation");
  c_be->add_option("--sizes", be.sizes, "start:stop:step or a,b,c")
      ->capture_default_str();
  c_be->add_option("--reps", be.reps, "Repetitions per size")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  c_be->add_option("--gaps", be.gaps, "Gap spec")->capture_default_str();
  c_be->add_option("--seed", be.seed, "Random seed")->capture_default_str();
  c_be->add_option("--out", be.out, "Output CSV (default: stdout)");

  PreprocessArgs pp;
  auto* c_pp = app.add_subcommand(
      "preprocess", "Remove a lowess trend and standardize");
  c_pp->add_option("--in", pp.in, "Input CSV (time,value[,err_sd])")
      ->required();
  c_pp->add_option("--span", pp.span, "Lowess span in (0, 1]")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  c_pp->add_option("--robust-iters", pp.robust_iters,
                   "Robustness iterations")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  c_pp->add_option("--out", pp.out, "Output CSV (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_sim) run_simulate(sim, out);
    if (*c_gt) run_gen_times(gt, out);
    if (*c_fb) run_fit_batch(fb, out);
    if (*c_fo) run_fit_online(fo, out);
    if (*c_ex) run_experiment_cmd(ex, out);
    if (*c_be) run_bench(be, out);
    if (*c_pp) run_preprocess(pp, out);
  } catch (const UsageError& e) {
    err << "iar: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "iar: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace iar::cli
