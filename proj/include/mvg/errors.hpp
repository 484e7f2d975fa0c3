// Copyright 2026 The mvg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MVG_ERRORS_HPP_
#define MVG_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvg {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input was readable but violated a contract. The CLI maps these to exit 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read or written. The CLI maps these to exit 2.
class IoError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BoundsError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyPoolError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyLabelError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Errors tied to one line of a line-oriented input file.
class LineError : public ValidationError {
 public:
  LineError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SchemaError : public LineError {
 public:
  using LineError::LineError;
};

class DuplicateIdError : public LineError {
 public:
  using LineError::LineError;
};

class BoxOutOfBoundsError : public LineError {
 public:
  using LineError::LineError;
};

class TooFewPatientsError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class AlignmentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IndivisibleError : public ShapeError {
 public:
  IndivisibleError(long rows, long group)
      : ShapeError("token count " + std::to_string(rows) +
                   " is not divisible by group " + std::to_string(group)),
        rows_(rows),
        group_(group) {}
  long rows() const noexcept { return rows_; }
  long group() const noexcept { return group_; }

 private:
  long rows_;
  long group_;
};

class StepOutOfRangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace mvg

#endif  // MVG_ERRORS_HPP_
