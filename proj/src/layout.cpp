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

#include "sheetalg/layout.hpp"

#include "sheetalg/errors.hpp"
#include "sheetalg/rewrite.hpp"

namespace sheetalg {

namespace {

bool overlaps(const Rect& a, const Rect& b) {
  return a.sheet == b.sheet && *a.col_lo <= *b.col_hi && *b.col_lo <= *a.col_hi &&
         *a.row_lo <= *b.row_hi && *b.row_lo <= *a.row_hi;
}

std::string subs_text(const std::vector<Coord>& subs) {
  std::string out;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(subs[i]);
  }
  return out;
}

}  // namespace

void LayoutDirective::validate() const {
  if (!is_identifier(array)) throw LayoutError("bad array name '" + array + "'");
  if (box.empty() || box.size() > 2)
    throw LayoutError("layout of " + array + " needs one or two index ranges");
  for (const auto& r : box)
    if (r.lo > r.hi)
      throw LayoutError("empty index range " + std::to_string(r.lo) + ":" + std::to_string(r.hi) +
                        " for " + array);
  // The far corner must exist too.
  footprint().validate();
}

Rect LayoutDirective::footprint() const {
  Coord down = 1, right = 1;
  if (box.size() == 2) {
    down = box[0].size();
    right = box[1].size();
  } else if (orientation == Orientation::Down) {
    down = box[0].size();
  } else {
    right = box[0].size();
  }
  return Rect::cells(anchor.sheet, anchor.col, anchor.row, anchor.col + right - 1,
                     anchor.row + down - 1);
}

std::string LayoutDirective::to_string() const {
  std::string out = "layout " + array + "[";
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(box[i].lo) + ":" + std::to_string(box[i].hi);
  }
  out += "] as " + anchor.to_string();
  if (box.size() == 1) out += orientation == Orientation::Down ? " down" : " right";
  return out;
}

CellAddr elem_to_cell(const LayoutDirective& d, const std::vector<Coord>& subs) {
  if (subs.size() != d.box.size())
    throw LayoutError(d.array + "[" + subs_text(subs) + "] has " + std::to_string(subs.size()) +
                      " subscripts but its layout has " + std::to_string(d.box.size()));
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (!d.box[i].contains(subs[i]))
      throw LayoutError(d.array + "[" + subs_text(subs) + "] lies outside its layout box");
  if (subs.size() == 2)
    return CellAddr(d.anchor.sheet, d.anchor.col + (subs[1] - d.box[1].lo),
                    d.anchor.row + (subs[0] - d.box[0].lo));
  Coord k = subs[0] - d.box[0].lo;
  if (d.orientation == Orientation::Down)
    return CellAddr(d.anchor.sheet, d.anchor.col, d.anchor.row + k);
  return CellAddr(d.anchor.sheet, d.anchor.col + k, d.anchor.row);
}

std::optional<std::vector<Coord>> cell_to_elem(const LayoutDirective& d, const CellAddr& a) {
  if (!d.footprint().contains(a)) return std::nullopt;
  Coord dc = a.col - d.anchor.col, dr = a.row - d.anchor.row;
  if (d.box.size() == 2) return std::vector<Coord>{d.box[0].lo + dr, d.box[1].lo + dc};
  return std::vector<Coord>{d.box[0].lo + (d.orientation == Orientation::Down ? dr : dc)};
}

LayoutSet::LayoutSet(std::vector<LayoutDirective> directives) {
  for (auto& d : directives) add(std::move(d));
}

void LayoutSet::add(LayoutDirective d) {
  d.validate();
  if (find(d.array)) throw LayoutError("array " + d.array + " is laid out twice");
  Rect fp = d.footprint();
  for (const auto& other : directives_)
    if (overlaps(fp, other.footprint()))
      throw LayoutError("layouts of " + other.array + " and " + d.array + " overlap");
  directives_.push_back(std::move(d));
}

const LayoutDirective* LayoutSet::find(const std::string& array) const {
  for (const auto& d : directives_)
    if (d.array == array) return &d;
  return nullptr;
}

bool operator==(const LayoutSet& a, const LayoutSet& b) {
  if (a.size() != b.size()) return false;
  for (const auto& d : a) {
    const LayoutDirective* other = b.find(d.array);
    if (!other || !(*other == d)) return false;
  }
  return true;
}

const LayoutDirective* LayoutSet::covering(const CellAddr& a) const {
  for (const auto& d : directives_)
    if (d.footprint().contains(a)) return &d;
  return nullptr;
}

void LayoutSet::validate() const {
  LayoutSet copy;
  for (const auto& d : directives_) copy.add(d);
}

EquationSet compile(const EquationSet& spec, const LayoutSet& layouts) {
  auto translate = [&](const Formula& f) {
    return transform(f, [&](const Formula& n) -> Formula {
      const auto* e = n.as<ElemRef>();
      if (!e) return n;
      const LayoutDirective* d = layouts.find(e->array);
      if (!d) throw LayoutError("array " + e->array + " has no layout");
      std::vector<Coord> subs;
      for (const auto& s : e->subs) {
        if (s.here) throw AnchorError("unresolved HERE subscript in " + e->array);
        subs.push_back(s.value);
      }
      return Formula::abs_ref(elem_to_cell(*d, subs));
    });
  };

  EquationSet out;
  out.set_names(spec.names());
  for (const auto& [lhs, rhs] : spec) {
    Lhs target = lhs;
    Formula f = rhs;
    if (const auto* e = as_elem(lhs)) {
      const LayoutDirective* d = layouts.find(e->name);
      if (!d) throw LayoutError("array " + e->name + " has no layout");
      target = elem_to_cell(*d, e->subs);
      f = resolve_here(rhs, e->subs);
    }
    if (out.contains(target))
      throw CollisionError(lhs_to_string(lhs) + " lands on " + lhs_to_string(target) +
                           ", which is already defined");
    out.add(target, translate(f));
  }
  return out;
}

EquationSet decompile(const EquationSet& cells, const LayoutSet& layouts) {
  if (layouts.empty()) return cells;
  auto element = [&](const CellAddr& a) -> std::optional<ArrayElem> {
    const LayoutDirective* d = layouts.covering(a);
    if (!d) return std::nullopt;
    return ArrayElem{d->array, *cell_to_elem(*d, a)};
  };

  EquationSet out;
  out.set_names(cells.names());
  for (const auto& [lhs, rhs] : cells) {
    Lhs target = lhs;
    if (const auto* c = as_cell(lhs))
      if (auto e = element(*c)) target = *e;
    Formula f = transform(rhs, [&](const Formula& n) -> Formula {
      const auto* a = n.as<AbsRef>();
      if (!a) return n;
      auto e = element(a->addr);
      return e ? Formula::elem_ref(e->name, e->subs) : n;
    });
    out.add(target, f);
  }
  return out;
}

}  // namespace sheetalg
