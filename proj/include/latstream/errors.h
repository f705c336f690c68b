// Copyright 2026 The Authors.
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

#ifndef LATSTREAM_ERRORS_H_
#define LATSTREAM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace latstream {

// Base class for every error the library raises on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A gain oracle was asked to evaluate a vector outside its declared box.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A vector violates the box or cardinality constraint of an instance.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input. `category` is "format" for syntax and
// reference problems, "config" for values outside their allowed range.
class InputError : public Error {
 public:
  InputError(std::string category, const std::string& message,
             std::size_t line = 0)
      : Error(message), category_(std::move(category)), line_(line) {}

  const std::string& category() const { return category_; }
  // 1-based line number in the offending file, 0 when not applicable.
  std::size_t line() const { return line_; }

 private:
  std::string category_;
  std::size_t line_;
};

// The instance is too large for exhaustive enumeration.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

}  // namespace latstream

#endif  // LATSTREAM_ERRORS_H_
