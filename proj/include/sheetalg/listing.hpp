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

#include "sheetalg/document.hpp"
#include "sheetalg/evaluator.hpp"

namespace sheetalg {

// Human-readable listing, one item per line. Grouped listings merge cells
// that share a relative formula into region lines such as
//
//   Sheet1[ {1} >< { 37..829 by 33 } ] = Sheet1[ HERE, HERE - 33 ]+1
//
// where the first set holds columns and the second rows.
std::string show(const EquationSet& s, bool grouped = false);
std::string show(const Workbook& wb, bool grouped = false);

// Reads a listing back, expanding region lines cell by cell.
Workbook parse_listing(std::string_view text);

// RFC 4180 text covering the grid's bounding box, CRLF line ends. Throws
// DomainError when the grid spans several sheets.
std::string to_csv(const ValueGrid& grid);
void export_csv(const ValueGrid& grid, const std::string& path);

}  // namespace sheetalg
