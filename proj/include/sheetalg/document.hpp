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

#include <string>
#include <string_view>

#include "sheetalg/equation_set.hpp"
#include "sheetalg/layout.hpp"

namespace sheetalg {

// Equations together with the layout statements that came with them.
struct Workbook {
  EquationSet equations;
  LayoutSet layouts;

  friend bool operator==(const Workbook&, const Workbook&) = default;
};

// Items are what documents, listings and set literals are made of:
//
//   D2 = C2-B2
//   Profit[2000] = Sales[2000]-Expenses[2000]
//   Sheet1[ {1} >< { 37..829 by 33 } ] = Sheet1[ HERE, HERE - 33 ]+1
//   layout Year[2000:2001] as A2 down
//   name B2:B9 as costs
//
// parse_item reads one item starting at `pos` (after whitespace and
// comments) into `into` and returns the position just past it.
std::size_t parse_item(std::string_view src, std::size_t pos, Workbook& into);

// True when the text at `pos` starts an item rather than an expression.
bool starts_item(std::string_view src, std::size_t pos);

// Skips blanks and `#` comments.
std::size_t skip_blank(std::string_view src, std::size_t pos);

// One item per line, each ending in a full stop.
Workbook parse_document(std::string_view src);
std::string save_document(const Workbook& wb);

// Canonical text of one item, without a terminator.
std::string equation_text(const Lhs& lhs, const Formula& rhs);
std::string name_text(const std::string& name, const CellRange& range);

// Only `.exc` files are read; binary spreadsheet formats are refused.
Workbook load_workbook(const std::string& path);
void save_workbook(const Workbook& wb, const std::string& path);

}  // namespace sheetalg
