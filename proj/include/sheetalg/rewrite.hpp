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
#include <vector>

#include "sheetalg/equation_set.hpp"
#include "sheetalg/formula.hpp"
#include "sheetalg/formula_text.hpp"

namespace sheetalg {

// The four ways a formula can be looked at.
enum class Representation { Raw, Relative, Absolute, Substituted };

// Fixes up relative references against `anchor`. Throws OutOfGridError when
// a reference lands off the grid and AnchorError on a HERE subscript.
Formula to_absolute(const Formula& f, const CellAddr& anchor);

// Rewrites every absolute reference as an offset from `anchor`. A bounded
// single-rectangle range on the anchor's sheet becomes a relative range;
// other ranges are kept. Throws CrossSheetError for a cell on another sheet.
Formula to_relative(const Formula& f, const CellAddr& anchor);

// Like to_relative, but keeps other-sheet references absolute.
Formula relativize(const Formula& f, const CellAddr& anchor);

// Replaces defined names. Single cells become references; larger ranges are
// only legal as function arguments (SubstitutionError otherwise).
Formula substitute_names(const Formula& f, const NameTable& names);

// Replaces HERE+k subscripts by lhs_subs[i]+k.
Formula resolve_here(const Formula& f, const std::vector<Coord>& lhs_subs);

// Canonical relative raw form: the grouping key for copied formulas.
std::string canonical_relative(const Formula& f, const CellAddr& anchor);

// Moves every absolute reference and bounded range by (dc, dr).
Formula shift_refs(const Formula& f, Coord dc, Coord dr);

}  // namespace sheetalg
