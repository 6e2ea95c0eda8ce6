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
#include <optional>
#include <string>
#include <string_view>

#include "sheetalg/address.hpp"
#include "sheetalg/formula.hpp"

namespace sheetalg {

enum class Dialect { A1, R1C1 };

struct ParseOptions {
  Dialect dialect = Dialect::A1;
  // Sheet for references written without a "Sheet!" prefix.
  std::string default_sheet{kDefaultSheet};
  // Read `Sheet[ HERE+a, HERE+b ]` naming `default_sheet` as a relative
  // reference (column offset a, row offset b). Used for cell equations in
  // listings and documents.
  bool sheet_here_refs = false;
  // Treat `#` to end of line as whitespace (formulas embedded in scripts).
  bool comments = false;
};

// Parses a whole formula. Throws SyntaxError with the failing position.
Formula parse_formula(std::string_view src, Dialect dialect = Dialect::A1);
Formula parse_formula(std::string_view src, const ParseOptions& options);

// Parses the longest formula starting at `pos` and reports where it stopped.
struct FormulaPrefix {
  Formula formula;
  std::size_t end;
};
FormulaPrefix parse_formula_prefix(std::string_view src, std::size_t pos,
                                   const ParseOptions& options);

// Ranges written on their own, as in "B2:B9", "A:C", "C5" or "(A:A,C:D)".
struct RangePrefix {
  CellRange range;
  std::size_t end;
};
RangePrefix parse_range_prefix(std::string_view src, std::size_t pos, const ParseOptions& options);
CellRange parse_range(std::string_view src, const ParseOptions& options = {});

struct PrintOptions {
  Dialect dialect = Dialect::A1;
  // Resolves relative references when printing A1; its sheet is the context
  // sheet whose references print without a prefix.
  std::optional<CellAddr> anchor;
  // Print relative references as `Sheet[ HERE+a, HERE+b ]` instead.
  bool here_notation = false;
};

// Canonical text: minimal parentheses, no whitespace, upper-case function
// names. Throws AnchorError for a relative reference in A1 without an anchor.
std::string print_formula(const Formula& f, Dialect dialect,
                          const std::optional<CellAddr>& anchor = std::nullopt);
std::string print_formula(const Formula& f, const PrintOptions& options);

// Shortest text that reads back to the same double.
std::string format_number(double v);
// Double-quoted with embedded quotes doubled.
std::string quote_text(std::string_view text);

// Line and column (1-based) of a byte offset.
std::pair<std::size_t, std::size_t> line_column(std::string_view src, std::size_t offset);

}  // namespace sheetalg
