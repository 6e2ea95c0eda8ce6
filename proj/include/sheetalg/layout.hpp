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

#include <optional>
#include <string>
#include <vector>

#include "sheetalg/address.hpp"
#include "sheetalg/equation_set.hpp"

namespace sheetalg {

enum class Orientation { Down, Right };

struct IndexRange {
  Coord lo = 1;
  Coord hi = 1;

  Coord size() const { return hi - lo + 1; }
  bool contains(Coord k) const { return k >= lo && k <= hi; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

// Places the elements of one array on the grid. A one-dimensional array runs
// down or right from the anchor. For two subscripts the first advances down
// and the second advances right.
struct LayoutDirective {
  std::string array;
  std::vector<IndexRange> box;
  CellAddr anchor;
  Orientation orientation = Orientation::Down;

  // Throws LayoutError for a bad name or an empty range. Arity must be 1 or 2.
  void validate() const;
  Rect footprint() const;
  // `layout Name[lo:hi] as A2 down`, without the trailing full stop.
  std::string to_string() const;

  friend bool operator==(const LayoutDirective&, const LayoutDirective&) = default;
};

CellAddr elem_to_cell(const LayoutDirective& d, const std::vector<Coord>& subs);
// The inverse of elem_to_cell; nullopt when `a` is outside the footprint.
std::optional<std::vector<Coord>> cell_to_elem(const LayoutDirective& d, const CellAddr& a);

// Directives with distinct arrays and pairwise disjoint footprints.
class LayoutSet {
 public:
  LayoutSet() = default;
  explicit LayoutSet(std::vector<LayoutDirective> directives);

  // Validates `d` against the directives already present.
  void add(LayoutDirective d);

  const LayoutDirective* find(const std::string& array) const;
  const LayoutDirective* covering(const CellAddr& a) const;

  // Re-checks every invariant; throws LayoutError.
  void validate() const;

  bool empty() const { return directives_.empty(); }
  std::size_t size() const { return directives_.size(); }
  const std::vector<LayoutDirective>& directives() const { return directives_; }
  auto begin() const { return directives_.begin(); }
  auto end() const { return directives_.end(); }

  // Order of insertion is kept for listing but ignored here.
  friend bool operator==(const LayoutSet& a, const LayoutSet& b);

 private:
  std::vector<LayoutDirective> directives_;
};

// Rewrites array equations into cell equations. Cell equations pass through
// with any array references translated.
EquationSet compile(const EquationSet& spec, const LayoutSet& layouts);

// Rewrites covered cells, on both sides, into array elements. Uncovered
// cells are left alone.
EquationSet decompile(const EquationSet& cells, const LayoutSet& layouts);

}  // namespace sheetalg
