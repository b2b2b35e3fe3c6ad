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

#ifndef IAR_DATA_PIPELINE_H_
#define IAR_DATA_PIPELINE_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iar/time_series.h"

namespace iar {

// A series as read from disk: sorted by time, no duplicate times, optional
// per-point measurement-error standard deviations.
struct RawSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::optional<std::vector<double>> err_sd;
};

struct CsvSchema {
  std::string time_column = "time";
  std::string value_column = "value";
  // Used when present in the header.
  std::string err_sd_column = "err_sd";
};

// Reads `time,value[,err_sd]` CSV (header required, extra columns ignored).
// Rows are sorted by time.
//   SchemaError  - missing column
//   ParseError   - non-numeric cell (message names the line)
//   DataError    - duplicate timestamp (message names the time)
RawSeries read_csv(const std::string& path, const CsvSchema& schema = {});
RawSeries parse_csv(std::istream& in, const std::string& source_name,
                    const CsvSchema& schema = {});

struct ExtraColumn {
  std::string name;
  std::vector<double> values;
};

// Writes the same schema (err_sd only if present) followed by any extra
// columns. Numbers are printed with round-trip precision.
void write_csv(std::ostream& out, const RawSeries& series,
               const std::vector<ExtraColumn>& extra = {});
void write_csv(std::ostream& out, const TimeSeries& series,
               const std::vector<ExtraColumn>& extra = {});

// Converts without preprocessing; err_sd is squared into meas_err_var.
TimeSeries to_time_series(const RawSeries& raw);

// Locally weighted linear regression (lowess). Each fit uses the
// floor(span * n) nearest neighbours in time with tricube weights. Then
// `robust_iters` bisquare reweighting passes follow; they stop early once
// the residual scale is zero. Requires n >= 3 and span * n >= 2.
std::vector<double> lowess_trend(const std::vector<double>& times,
                                 const std::vector<double>& values,
                                 double span = 2.0 / 3.0,
                                 int robust_iters = 3);

// Removes the lowess trend and standardizes the residuals to zero mean and
// unit sample variance. Measurement-error standard deviations are rescaled
// by the same factor and squared. Throws DegenerateDataError if the
// detrended values have zero variance.
TimeSeries preprocess(const RawSeries& raw, double span = 2.0 / 3.0,
                      int robust_iters = 3);

}  // namespace iar

#endif  // IAR_DATA_PIPELINE_H_
