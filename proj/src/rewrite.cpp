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

#include "sheetalg/rewrite.hpp"

#include "sheetalg/errors.hpp"

namespace sheetalg {

namespace {

Formula relative_impl(const Formula& f, const CellAddr& anchor, bool strict) {
  return transform(f, [&](const Formula& n) -> Formula {
    if (const auto* a = n.as<AbsRef>()) {
      if (a->addr.sheet != anchor.sheet) {
        if (strict)
          throw CrossSheetError("reference " + a->addr.to_string() + " is not on sheet " +
                                anchor.sheet);
        return n;
      }
      return Formula::rel_ref(a->addr.col - anchor.col, a->addr.row - anchor.row);
    }
    if (const auto* r = n.as<RangeArg>()) {
      if (r->range.rects.size() != 1) return n;
      const Rect& rect = r->range.rects.front();
      if (!rect.bounded() || rect.sheet != anchor.sheet) return n;
      return Formula::rel_range(*rect.col_lo - anchor.col, *rect.row_lo - anchor.row,
                                *rect.col_hi - anchor.col, *rect.row_hi - anchor.row);
    }
    return n;
  });
}

std::optional<Coord> shifted(const std::optional<Coord>& v, Coord d) {
  if (!v) return v;
  Coord n = *v + d;
  if (n < 1) throw OutOfGridError("range shifted off the grid");
  return n;
}

}  // namespace

Formula to_absolute(const Formula& f, const CellAddr& anchor) {
  return transform(f, [&](const Formula& n) -> Formula {
    if (const auto* r = n.as<RelRef>()) return Formula::abs_ref(anchor.offset(r->dcol, r->drow));
    if (const auto* r = n.as<RelRangeArg>()) {
      CellAddr lo = anchor.offset(r->dcol_lo, r->drow_lo);
      CellAddr hi = anchor.offset(r->dcol_hi, r->drow_hi);
      return Formula::range(Rect::cells(anchor.sheet, lo.col, lo.row, hi.col, hi.row));
    }
    if (const auto* e = n.as<ElemRef>()) {
      for (const auto& s : e->subs)
        if (s.here) throw AnchorError("HERE subscript in " + e->array + " has no meaning at a cell");
    }
    return n;
  });
}

Formula to_relative(const Formula& f, const CellAddr& anchor) {
  return relative_impl(f, anchor, true);
}

Formula relativize(const Formula& f, const CellAddr& anchor) {
  return relative_impl(f, anchor, false);
}

Formula substitute_names(const Formula& f, const NameTable& names) {
  if (names.empty()) return f;
  auto lookup = [&](const Formula& n, bool as_argument) -> std::optional<Formula> {
    const auto* nr = n.as<NameRef>();
    if (!nr) return std::nullopt;
    auto it = names.find(nr->name);
    if (it == names.end()) return std::nullopt;
    if (auto cell = it->second.single_cell()) return Formula::abs_ref(*cell);
    if (!as_argument)
      throw SubstitutionError("name " + nr->name + " covers several cells and is used outside " +
                              "a function argument");
    return Formula::range(it->second);
  };
  // Walk by hand: whether a name may become a range depends on its parent.
  auto walk = [&](auto&& self, const Formula& n, bool as_argument) -> Formula {
    if (auto r = lookup(n, as_argument)) return *r;
    if (const auto* c = n.as<Call>()) {
      std::vector<Formula> args;
      args.reserve(c->args.size());
      for (const auto& a : c->args) args.push_back(self(self, a, true));
      return Formula::call(c->function, std::move(args));
    }
    auto kids = detail::children(n);
    if (kids.empty()) return n;
    for (auto& k : kids) k = self(self, k, false);
    return detail::with_children(n, std::move(kids));
  };
  return walk(walk, f, false);
}

Formula resolve_here(const Formula& f, const std::vector<Coord>& lhs_subs) {
  return transform(f, [&](const Formula& n) -> Formula {
    const auto* e = n.as<ElemRef>();
    if (!e) return n;
    bool any = false;
    std::vector<Subscript> subs = e->subs;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i].here) continue;
      if (i >= lhs_subs.size())
        throw AnchorError("HERE subscript " + std::to_string(i + 1) + " of " + e->array +
                          " has no matching left-hand subscript");
      subs[i] = Subscript::index(lhs_subs[i] + subs[i].value);
      any = true;
    }
    return any ? Formula::elem_ref(e->array, std::move(subs)) : n;
  });
}

std::string canonical_relative(const Formula& f, const CellAddr& anchor) {
  PrintOptions o;
  o.dialect = Dialect::R1C1;
  o.anchor = anchor;
  return print_formula(relativize(f, anchor), o);
}

Formula shift_refs(const Formula& f, Coord dc, Coord dr) {
  if (dc == 0 && dr == 0) return f;
  return transform(f, [&](const Formula& n) -> Formula {
    if (const auto* a = n.as<AbsRef>()) return Formula::abs_ref(a->addr.offset(dc, dr));
    if (const auto* r = n.as<RangeArg>()) {
      std::vector<Rect> rects;
      for (const auto& rect : r->range.rects) {
        Rect m = rect;
        m.col_lo = shifted(rect.col_lo, dc);
        m.col_hi = shifted(rect.col_hi, dc);
        m.row_lo = shifted(rect.row_lo, dr);
        m.row_hi = shifted(rect.row_hi, dr);
        rects.push_back(std::move(m));
      }
      return Formula::range(CellRange(std::move(rects)));
    }
    return n;
  });
}

}  // namespace sheetalg
