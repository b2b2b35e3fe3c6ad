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

#include "iar/data_pipeline.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "iar/errors.h"
#include "iar/stats.h"

namespace iar {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

std::string num(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

struct Row {
  double time;
  double value;
  double err_sd;
  std::string time_text;
  std::size_t line;
};

double tricube(double u) {
  const double c = 1.0 - u * u * u;
  return c * c * c;
}

// One lowess pass over sorted x with robustness weights `robust`.
std::vector<double> lowess_pass(const std::vector<double>& x,
                                const std::vector<double>& y,
                                std::size_t neighbours,
                                const std::vector<double>& robust) {
  const std::size_t n = x.size();
  const double range = x.back() - x.front();
  std::vector<double> fitted(n);
  std::vector<double> w(n);
  std::size_t left = 0;
  std::size_t right = neighbours - 1;

  for (std::size_t i = 0; i < n; ++i) {
    // Slide the window of `neighbours` consecutive points closest to x[i].
    while (right < n - 1 && x[i] - x[left] > x[right + 1] - x[i]) {
      ++left;
      ++right;
    }
    const double h = std::max(x[i] - x[left], x[right] - x[i]);
    const double h_hi = 0.999 * h;
    const double h_lo = 0.001 * h;

    double total = 0.0;
    std::size_t last = left;
    for (std::size_t j = left; j < n; ++j) {
      w[j] = 0.0;
      const double r = std::abs(x[j] - x[i]);
      if (r <= h_hi) {
        w[j] = (r <= h_lo ? 1.0 : tricube(r / h)) * robust[j];
        total += w[j];
        last = j;
      } else if (x[j] > x[i]) {
        break;
      }
    }
    if (!(total > 0.0)) {
      fitted[i] = y[i];
      continue;
    }
    for (std::size_t j = left; j <= last; ++j) w[j] /= total;
    if (h > 0.0) {
      double a = 0.0;
      for (std::size_t j = left; j <= last; ++j) a += w[j] * x[j];
      double b = x[i] - a;
      double c = 0.0;
      for (std::size_t j = left; j <= last; ++j) {
        c += w[j] * (x[j] - a) * (x[j] - a);
      }
      if (std::sqrt(c) > 0.001 * range) {
        b /= c;
        for (std::size_t j = left; j <= last; ++j) {
          w[j] *= b * (x[j] - a) + 1.0;
        }
      }
    }
    double value = 0.0;
    for (std::size_t j = left; j <= last; ++j) value += w[j] * y[j];
    fitted[i] = value;
  }
  return fitted;
}

}  // namespace

RawSeries parse_csv(std::istream& in, const std::string& source_name,
                    const CsvSchema& schema) {
  std::string line;
  if (!std::getline(in, line)) {
    throw SchemaError(source_name + ": empty file, expected a header row");
  }
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  const auto header = split(line);
  auto find_column = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (header[k] == name) return k;
    }
    return std::nullopt;
  };
  const auto time_col = find_column(schema.time_column);
  const auto value_col = find_column(schema.value_column);
  const auto err_col = find_column(schema.err_sd_column);
  if (!time_col) {
    throw SchemaError(source_name + ": missing column '" + schema.time_column +
                      "'");
  }
  if (!value_col) {
    throw SchemaError(source_name + ": missing column '" +
                      schema.value_column + "'");
  }

  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    auto cell = [&](std::size_t col, const std::string& name) {
      if (col >= cells.size()) {
        throw ParseError(source_name + ": line " + std::to_string(line_no) +
                         ": missing value for column '" + name + "'");
      }
      const std::string_view text = cells[col];
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(text.data(), text.data() + text.size(), value);
      if (text.empty() || ec != std::errc() ||
          ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ParseError(source_name + ": line " + std::to_string(line_no) +
                         ": column '" + name + "' is not a number: '" +
                         std::string(text) + "'");
      }
      return value;
    };
    Row row;
    row.time = cell(*time_col, schema.time_column);
    row.value = cell(*value_col, schema.value_column);
    row.err_sd = err_col ? cell(*err_col, schema.err_sd_column) : 0.0;
    if (row.err_sd < 0.0) {
      throw DataError(source_name + ": line " + std::to_string(line_no) +
                      ": negative " + schema.err_sd_column);
    }
    row.time_text = std::string(cells[*time_col]);
    row.line = line_no;
    rows.push_back(std::move(row));
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.time < b.time; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].time == rows[i - 1].time) {
      throw DataError(source_name + ": duplicate time " + rows[i].time_text +
                      " (lines " + std::to_string(rows[i - 1].line) + " and " +
                      std::to_string(rows[i].line) + ")");
    }
  }

  RawSeries out;
  for (const Row& r : rows) {
    out.times.push_back(r.time);
    out.values.push_back(r.value);
  }
  if (err_col) {
    out.err_sd.emplace();
    for (const Row& r : rows) out.err_sd->push_back(r.err_sd);
  }
  return out;
}

RawSeries read_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_csv(in, path, schema);
}

void write_csv(std::ostream& out, const RawSeries& series,
               const std::vector<ExtraColumn>& extra) {
  const std::size_t n = series.values.size();
  if (series.times.size() != n || (series.err_sd && series.err_sd->size() != n)) {
    throw std::invalid_argument("write_csv: column length mismatch");
  }
  for (const auto& col : extra) {
    if (col.values.size() != n) {
      throw std::invalid_argument("write_csv: column '" + col.name +
                                  "' has the wrong length");
    }
  }
  out << "time,value";
  if (series.err_sd) out << ",err_sd";
  for (const auto& col : extra) out << ',' << col.name;
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << num(series.times[i]) << ',' << num(series.values[i]);
    if (series.err_sd) out << ',' << num((*series.err_sd)[i]);
    for (const auto& col : extra) out << ',' << num(col.values[i]);
    out << '\n';
  }
}

void write_csv(std::ostream& out, const TimeSeries& series,
               const std::vector<ExtraColumn>& extra) {
  RawSeries raw{{series.times().begin(), series.times().end()},
                {series.values().begin(), series.values().end()},
                std::nullopt};
  const auto d2 = series.meas_err_var();
  if (std::any_of(d2.begin(), d2.end(), [](double d) { return d > 0.0; })) {
    raw.err_sd.emplace();
    for (double d : d2) raw.err_sd->push_back(std::sqrt(d));
  }
  write_csv(out, raw, extra);
}

TimeSeries to_time_series(const RawSeries& raw) {
  std::vector<double> d2(raw.values.size(), 0.0);
  if (raw.err_sd) {
    if (raw.err_sd->size() != d2.size()) {
      throw std::invalid_argument("err_sd length mismatch");
    }
    for (std::size_t i = 0; i < d2.size(); ++i) {
      d2[i] = (*raw.err_sd)[i] * (*raw.err_sd)[i];
    }
  }
  return TimeSeries(raw.times, raw.values, std::move(d2));
}

std::vector<double> lowess_trend(const std::vector<double>& times,
                                 const std::vector<double>& values,
                                 double span, int robust_iters) {
  const std::size_t n = values.size();
  if (times.size() != n) {
    throw std::invalid_argument("lowess: times and values differ in length");
  }
  if (n < 3) throw std::invalid_argument("lowess: need at least 3 points");
  if (!(span > 0.0 && span <= 1.0)) {
    throw std::invalid_argument("lowess: span must lie in (0, 1]");
  }
  if (robust_iters < 0) {
    throw std::invalid_argument("lowess: robust_iters must be >= 0");
  }
  const auto neighbours = static_cast<std::size_t>(
      std::floor(span * static_cast<double>(n) + 1e-7));
  if (neighbours < 2) {
    throw std::invalid_argument("lowess: span " + num(span) +
                                " is too small for n = " + std::to_string(n));
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("lowess: times must be strictly increasing");
    }
  }

  std::vector<double> robust(n, 1.0);
  std::vector<double> fitted = lowess_pass(times, values, neighbours, robust);
  std::vector<double> abs_res(n);
  for (int iter = 0; iter < robust_iters; ++iter) {
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      abs_res[i] = std::abs(values[i] - fitted[i]);
      scale += abs_res[i];
    }
    scale /= static_cast<double>(n);
    std::vector<double> sorted = abs_res;
    const std::size_t m1 = n / 2;
    std::nth_element(sorted.begin(), sorted.begin() + m1, sorted.end());
    double cmad;
    if (n % 2 == 0) {
      const double upper = sorted[m1];
      const double lower =
          *std::max_element(sorted.begin(), sorted.begin() + m1);
      cmad = 3.0 * (lower + upper);
    } else {
      cmad = 6.0 * sorted[m1];
    }
    if (cmad < 1e-7 * scale) break;
    const double c_hi = 0.999 * cmad;
    const double c_lo = 0.001 * cmad;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = abs_res[i];
      if (r <= c_lo) {
        robust[i] = 1.0;
      } else if (r <= c_hi) {
        const double u = r / cmad;
        robust[i] = (1.0 - u * u) * (1.0 - u * u);
      } else {
        robust[i] = 0.0;
      }
    }
    fitted = lowess_pass(times, values, neighbours, robust);
  }
  return fitted;
}

TimeSeries preprocess(const RawSeries& raw, double span, int robust_iters) {
  const std::size_t n = raw.values.size();
  if (n < 3) throw std::invalid_argument("preprocess: need at least 3 points");
  const std::vector<double> trend =
      lowess_trend(raw.times, raw.values, span, robust_iters);
  std::vector<double> resid(n);
  for (std::size_t i = 0; i < n; ++i) resid[i] = raw.values[i] - trend[i];

  const double mean = sample_mean(resid);
  const double sd = sample_sd(resid);
  double scale = 0.0;
  for (double v : raw.values) scale = std::max(scale, std::abs(v));
  if (!(sd > 1e-12 * std::max(scale, 1.0))) {
    throw DegenerateDataError(
        "preprocess: detrended series has zero variance");
  }
  std::vector<double> standardized(n);
  for (std::size_t i = 0; i < n; ++i) standardized[i] = (resid[i] - mean) / sd;

  std::vector<double> d2(n, 0.0);
  if (raw.err_sd) {
    for (std::size_t i = 0; i < n; ++i) {
      const double e = (*raw.err_sd)[i] / sd;
      d2[i] = e * e;
    }
  }
  return TimeSeries(raw.times, std::move(standardized), std::move(d2));
}

}  // namespace iar
