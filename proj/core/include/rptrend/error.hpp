// Copyright 2026 The rptrend Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RPTREND_ERROR_HPP_
#define RPTREND_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rptrend {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid input data. `line()` is 0 when not tied to a line.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Invalid parameter passed to a library routine.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Base class for failures of a numerical procedure on otherwise valid input.
class NumericError : public Error {
 public:
  using Error::Error;
};

// An estimator is undefined on the given sample (too few gaps, negative
// variance estimate). `value()` carries the offending quantity when there
// is one.
class EstimatorUndefined : public NumericError {
 public:
  explicit EstimatorUndefined(const std::string& what, double value = 0.0)
      : NumericError(what), value_(value) {}

  double value() const noexcept { return value_; }

 private:
  double value_;
};

// A statistic is infinite or algebraically undefined for the data.
class UndefinedStatistic : public NumericError {
 public:
  using NumericError::NumericError;
};

// An iterative solver hit its iteration cap. `last_iterate()` is the best
// point reached.
class NonConvergence : public NumericError {
 public:
  NonConvergence(const std::string& what, double last_iterate)
      : NumericError(what), last_iterate_(last_iterate) {}

  double last_iterate() const noexcept { return last_iterate_; }

 private:
  double last_iterate_;
};

// A configured resource cap (memory, time, table size) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace rptrend

#endif  // RPTREND_ERROR_HPP_
