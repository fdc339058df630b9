// Copyright 2026 The hwalks Authors.
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

#ifndef HWALKS_ERRORS_H_
#define HWALKS_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hwalks {

// Malformed text input. `line` is 1-based and 0 when the input is a single
// token (ordinal or tuple strings on the command line); `column` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(Format(what, line, column)),
        detail_(what),
        line_(line),
        column_(column) {}

  const std::string& detail() const { return detail_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string Format(const std::string& what, std::size_t line,
                            std::size_t column) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ", ";
    out += "column " + std::to_string(column) + ": " + what;
    return out;
  }

  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

// A precondition on an argument failed (wrong arity, non-limit ordinal, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation hit a configured resource limit (node cap, expansion cap).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hwalks

#endif  // HWALKS_ERRORS_H_
