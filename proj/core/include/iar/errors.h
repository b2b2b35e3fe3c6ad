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

#ifndef IAR_ERRORS_H_
#define IAR_ERRORS_H_

#include <stdexcept>
#include <string>

namespace iar {

// Invalid arguments (bad parameters, precondition violations) are reported
// with std::invalid_argument. The types below cover problems with input data.

// A required CSV column is missing or the header is malformed.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A cell could not be parsed as a number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The data is well formed but unusable (duplicate timestamps, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The data carries no information after preprocessing (zero variance).
class DegenerateDataError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace iar

#endif  // IAR_ERRORS_H_
