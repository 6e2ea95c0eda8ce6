// Copyright 2026 The sheetalg Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sheetalg {

// Base of every failure the library reports. Subclasses name the failing rule
// so callers (and tests) can tell a conflict from a bad coordinate.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SHEETALG_DEFINE_ERROR(Name)    \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

SHEETALG_DEFINE_ERROR(DomainError);
SHEETALG_DEFINE_ERROR(BoundednessError);
SHEETALG_DEFINE_ERROR(AnchorError);
SHEETALG_DEFINE_ERROR(OutOfGridError);
SHEETALG_DEFINE_ERROR(CrossSheetError);
SHEETALG_DEFINE_ERROR(SubstitutionError);
SHEETALG_DEFINE_ERROR(ConflictError);
SHEETALG_DEFINE_ERROR(CardinalityError);
SHEETALG_DEFINE_ERROR(CollisionError);
SHEETALG_DEFINE_ERROR(TypeError);
SHEETALG_DEFINE_ERROR(EquivalenceError);
SHEETALG_DEFINE_ERROR(NotFoundError);
SHEETALG_DEFINE_ERROR(LayoutError);
SHEETALG_DEFINE_ERROR(IoError);
SHEETALG_DEFINE_ERROR(UnsupportedFormatError);

#undef SHEETALG_DEFINE_ERROR

// Parse failure. `offset` is a byte offset into the parsed text; line and
// column are 1-based. `at_end` is set when the input ran out before the
// construct was complete (the REPL uses it to ask for another line).
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset, std::size_t line,
              std::size_t column, bool at_end = false)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        offset_(offset),
        line_(line),
        column_(column),
        at_end_(at_end) {}

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  bool at_end() const { return at_end_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
  bool at_end_;
};

}  // namespace sheetalg
