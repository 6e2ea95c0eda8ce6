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

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sheetalg/address.hpp"
#include "sheetalg/formula.hpp"

namespace sheetalg {

// A named-array element such as Profit[2000] or y[1,2001].
struct ArrayElem {
  std::string name;
  std::vector<Coord> subs;

  std::string to_string() const;

  friend bool operator==(const ArrayElem&, const ArrayElem&) = default;
  friend auto operator<=>(const ArrayElem&, const ArrayElem&) = default;
};

// Left-hand side of an equation.
using Lhs = std::variant<CellAddr, ArrayElem>;

// Cells first (sheet, row, column), then array elements (name, subscripts).
struct LhsLess {
  bool operator()(const Lhs& a, const Lhs& b) const;
};

std::string lhs_to_string(const Lhs& lhs);
inline const CellAddr* as_cell(const Lhs& lhs) { return std::get_if<CellAddr>(&lhs); }
inline const ArrayElem* as_elem(const Lhs& lhs) { return std::get_if<ArrayElem>(&lhs); }

struct Equation {
  Lhs lhs;
  Formula rhs;
};

using NameTable = std::map<std::string, CellRange>;

// A spreadsheet as a set of equations: at most one definition per left-hand
// side, plus a defined-name table.
//
// Cell equations are held in the absolute representation: relative
// references are fixed up against the left-hand side when inserted. Array
// equations may not contain relative references.
class EquationSet {
 public:
  using Map = std::map<Lhs, Formula, LhsLess>;
  using const_iterator = Map::const_iterator;

  EquationSet() = default;
  EquationSet(std::initializer_list<Equation> eqs);

  // Adds `lhs = rhs`. Re-adding an identical definition is a no-op; a
  // different right-hand side throws ConflictError.
  void add(const Lhs& lhs, const Formula& rhs);
  // Adds without the conflict check: an existing definition is overwritten.
  void assign(const Lhs& lhs, const Formula& rhs);
  void define_name(const std::string& name, const CellRange& range);
  void set_names(NameTable names) { names_ = std::move(names); }

  const Formula* find(const Lhs& lhs) const;
  bool contains(const Lhs& lhs) const { return eqs_.count(lhs) != 0; }

  std::size_t size() const { return eqs_.size(); }
  bool empty() const { return eqs_.empty(); }
  const_iterator begin() const { return eqs_.begin(); }
  const_iterator end() const { return eqs_.end(); }
  const NameTable& names() const { return names_; }

  friend bool operator==(const EquationSet&, const EquationSet&) = default;

 private:
  Formula normalize(const Lhs& lhs, const Formula& rhs) const;

  Map eqs_;
  NameTable names_;
};

}  // namespace sheetalg
