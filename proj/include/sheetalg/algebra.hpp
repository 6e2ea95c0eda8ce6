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
#include <variant>
#include <vector>

#include "sheetalg/equation_set.hpp"
#include "sheetalg/formula_text.hpp"
#include "sheetalg/rewrite.hpp"

namespace sheetalg {

// Union of two sets. A left-hand side defined in both with different
// right-hand sides throws ConflictError; identical duplicates collapse.
EquationSet unite(const EquationSet& a, const EquationSet& b);

// Moves every cell left-hand side and every absolute reference by (dx, dy),
// including references to cells the set does not define.
EquationSet shift(const EquationSet& s, Coord dx, Coord dy);

// Equations whose left-hand side lies in `r`. Right-hand sides are untouched.
EquationSet extract(const EquationSet& s, const CellRange& r);

// Replaces cells of `src` by the cell at the same position of `dst` (both in
// enumerate_range order) in left-hand sides and references.
EquationSet map_range(const EquationSet& s, const CellRange& src, const CellRange& dst);

// Copies a named-array set along a new final dimension lo..hi.
EquationSet replicate(const EquationSet& s, Coord lo, Coord hi);

// Projects a named-array set through its final dimension lo..hi. Every
// fiber must be complete and every projected formula identical.
EquationSet quotient(const EquationSet& s, Coord lo, Coord hi);

// A formula in the requested representation; Raw yields text.
using LookupResult = std::variant<Formula, std::string>;
LookupResult lookup(const EquationSet& s, const Lhs& ref, Representation repr,
                    Dialect raw_dialect = Dialect::R1C1);
Formula lookup_formula(const EquationSet& s, const Lhs& ref,
                       Representation repr = Representation::Absolute);
std::string lookup_raw(const EquationSet& s, const Lhs& ref, Dialect dialect = Dialect::R1C1);

// Global search-and-replace of a subformula. Cell equations compare in their
// relative form, so a pattern written for one cell matches copies of it.
EquationSet replace(const EquationSet& s, const Formula& pattern, const Formula& replacement);

// Algebraic identities and constant folding, applied bottom-up to a fixpoint.
Formula simplify(const Formula& f);
EquationSet simplify(const EquationSet& s);

enum class DiffMode { Absolute, Relative };

struct FormulaChange {
  Lhs lhs;
  Formula before;
  Formula after;
};

struct DiffReport {
  std::vector<Lhs> added;
  std::vector<Lhs> removed;
  std::vector<FormulaChange> changed;
  DiffMode mode = DiffMode::Absolute;

  bool empty() const { return added.empty() && removed.empty() && changed.empty(); }
};

DiffReport diff(const EquationSet& a, const EquationSet& b, DiffMode mode = DiffMode::Absolute);
std::string to_string(const DiffReport& report);

// Cells on one sheet sharing a canonical relative formula.
struct FormulaGroup {
  std::string sheet;
  std::string canonical_relative;
  std::vector<CellAddr> cells;
};

// Groups cell equations by (sheet, canonical relative form). Constant
// formulas are skipped unless `include_constants`. Groups come out in the
// canonical order of their first cell.
std::vector<FormulaGroup> group_by_relative_form(const EquationSet& s, bool include_constants);

struct StyleViolation {
  std::string sheet;
  std::string canonical_formula;
  std::vector<CellAddr> cells;
};

// One copy of each formula per worksheet: every repeated non-constant
// formula is a violation.
std::vector<StyleViolation> stylecheck_unique(const EquationSet& s);
std::string to_string(const std::vector<StyleViolation>& violations);

}  // namespace sheetalg
