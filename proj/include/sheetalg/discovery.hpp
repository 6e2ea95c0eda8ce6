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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sheetalg/algebra.hpp"
#include "sheetalg/equation_set.hpp"
#include "sheetalg/layout.hpp"

namespace sheetalg {

// Non-constant formula cells grouped by canonical relative form, largest
// group first, ties broken by first cell.
std::vector<FormulaGroup> discover_groups(const EquationSet& s);

// Rectangles of non-text cells bordered only by blank or text cells, in
// scan order (sheet, top row, left column). Ranges passed to SUM may widen
// a block over cells they cover.
std::vector<Rect> discover_blocks(const EquationSet& s);

struct LabelCandidate {
  std::string name;
  std::optional<CellAddr> source;  // empty for a positional fallback
  std::string text;                // the label as written
};

struct BlockLabels {
  std::vector<LabelCandidate> columns;  // one per block column
  std::vector<LabelCandidate> rows;     // one per block row
};

// Turns free text into an identifier: spaces become underscores, other
// invalid characters are dropped. Empty when nothing usable remains.
std::string sanitize_identifier(std::string_view text);

BlockLabels infer_labels(const EquationSet& s, const Rect& block);

enum class SequenceKind { Arithmetic, Month, Weekday };

struct SubscriptCandidate {
  SequenceKind kind = SequenceKind::Arithmetic;
  // True when the sequence runs down a column (indexing block rows).
  bool runs_down = true;
  Coord first = 1;
  Coord step = 1;
  std::vector<CellAddr> cells;

  Coord last() const { return first + step * static_cast<Coord>(cells.size() - 1); }
};

// Checks whether the cells hold an integer arithmetic sequence with nonzero
// step, or a run of month or weekday names (with their positions in the
// year or week as indices). At least two cells are needed.
std::optional<SubscriptCandidate> detect_sequence(const EquationSet& s,
                                                  const std::vector<CellAddr>& cells);

// Candidates from the column left of the block and the row above it.
std::vector<SubscriptCandidate> infer_subscripts(const EquationSet& s, const Rect& block);

struct NameEvidence {
  std::string text;
  std::optional<CellAddr> source;
};

struct LayoutProposal {
  LayoutSet directives;
  std::map<std::string, NameEvidence> name_evidence;
  std::map<std::string, SubscriptCandidate> subscript_evidence;
};

LayoutProposal propose_layout(const EquationSet& s);

}  // namespace sheetalg
