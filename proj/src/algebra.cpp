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

#include "sheetalg/algebra.hpp"

#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "sheetalg/errors.hpp"

namespace sheetalg {

namespace {

std::set<std::string> defined_arrays(const EquationSet& s) {
  std::set<std::string> out;
  for (const auto& [lhs, rhs] : s)
    if (const auto* e = as_elem(lhs)) out.insert(e->name);
  return out;
}

const ArrayElem& require_elem(const Lhs& lhs, const char* op) {
  const auto* e = as_elem(lhs);
  if (!e)
    throw TypeError(std::string(op) + " applies to named-array equations, not cell " +
                    lhs_to_string(lhs));
  return *e;
}

Formula replace_in(const Formula& f, const Formula& pattern, const Formula& replacement) {
  if (f == pattern) return replacement;
  auto kids = detail::children(f);
  if (kids.empty()) return f;
  bool changed = false;
  for (auto& k : kids) {
    Formula n = replace_in(k, pattern, replacement);
    if (!n.same_node(k)) changed = true;
    k = std::move(n);
  }
  return changed ? detail::with_children(f, std::move(kids)) : f;
}

std::optional<double> number(const Formula& f) {
  if (const auto* n = f.as<NumberConst>()) return n->value;
  return std::nullopt;
}

bool is_number(const Formula& f, double v) {
  auto n = number(f);
  return n && *n == v;
}

std::optional<Formula> fold(BinaryOp op, double a, double b) {
  double r;
  switch (op) {
    case BinaryOp::Add: r = a + b; break;
    case BinaryOp::Sub: r = a - b; break;
    case BinaryOp::Mul: r = a * b; break;
    case BinaryOp::Div:
      if (b == 0) return std::nullopt;
      r = a / b;
      break;
    case BinaryOp::Pow: r = std::pow(a, b); break;
    case BinaryOp::Eq: return Formula::boolean(a == b);
    case BinaryOp::Ne: return Formula::boolean(a != b);
    case BinaryOp::Lt: return Formula::boolean(a < b);
    case BinaryOp::Le: return Formula::boolean(a <= b);
    case BinaryOp::Gt: return Formula::boolean(a > b);
    case BinaryOp::Ge: return Formula::boolean(a >= b);
  }
  if (!std::isfinite(r)) return std::nullopt;
  return Formula::number(r);
}

Formula simplify_node(const Formula& n) {
  if (const auto* u = n.as<Unary>()) {
    if (const auto* inner = u->operand.as<Unary>()) return inner->operand;
    if (auto v = number(u->operand)) return Formula::number(-*v);
    return n;
  }
  const auto* b = n.as<Binary>();
  if (!b) return n;
  auto l = number(b->lhs), r = number(b->rhs);
  if (l && r) {
    if (auto folded = fold(b->op, *l, *r)) return *folded;
  }
  switch (b->op) {
    case BinaryOp::Add:
      if (is_number(b->rhs, 0)) return b->lhs;
      if (is_number(b->lhs, 0)) return b->rhs;
      break;
    case BinaryOp::Sub:
      if (is_number(b->rhs, 0)) return b->lhs;
      break;
    case BinaryOp::Mul:
      if (is_number(b->rhs, 1)) return b->lhs;
      if (is_number(b->lhs, 1)) return b->rhs;
      if (is_number(b->rhs, 0) || is_number(b->lhs, 0)) return Formula::number(0);
      break;
    case BinaryOp::Div:
      if (is_number(b->rhs, 1)) return b->lhs;
      break;
    case BinaryOp::Pow:
      if (is_number(b->rhs, 1)) return b->lhs;
      break;
    default: break;
  }
  return n;
}

std::string formula_text(const Lhs& lhs, const Formula& f) {
  PrintOptions o;
  if (const auto* c = as_cell(lhs)) o.anchor = *c;
  return print_formula(f, o);
}

}  // namespace

EquationSet unite(const EquationSet& a, const EquationSet& b) {
  EquationSet out = a;
  for (const auto& [lhs, rhs] : b) out.add(lhs, rhs);
  for (const auto& [name, range] : b.names()) out.define_name(name, range);
  return out;
}

EquationSet shift(const EquationSet& s, Coord dx, Coord dy) {
  if (dx == 0 && dy == 0) return s;
  EquationSet out;
  out.set_names(s.names());
  for (const auto& [lhs, rhs] : s) {
    Lhs moved = lhs;
    if (const auto* c = as_cell(lhs)) moved = c->offset(dx, dy);
    out.add(moved, shift_refs(rhs, dx, dy));
  }
  return out;
}

EquationSet extract(const EquationSet& s, const CellRange& r) {
  EquationSet out;
  out.set_names(s.names());
  for (const auto& [lhs, rhs] : s) {
    if (const auto* c = as_cell(lhs); c && range_contains(r, *c)) out.add(lhs, rhs);
  }
  return out;
}

EquationSet map_range(const EquationSet& s, const CellRange& src, const CellRange& dst) {
  auto from = enumerate_range(src);
  auto to = enumerate_range(dst);
  if (from.size() != to.size())
    throw CardinalityError("mapping " + src.to_string() + " (" + std::to_string(from.size()) +
                           " cells) to " + dst.to_string() + " (" + std::to_string(to.size()) +
                           " cells)");
  std::unordered_map<CellAddr, CellAddr> m;
  for (std::size_t i = 0; i < from.size(); ++i) m.emplace(from[i], to[i]);

  auto map_cell = [&](const CellAddr& a) {
    auto it = m.find(a);
    return it == m.end() ? a : it->second;
  };
  auto rewrite = [&](const Formula& f) {
    return transform(f, [&](const Formula& n) -> Formula {
      if (const auto* a = n.as<AbsRef>()) {
        auto it = m.find(a->addr);
        return it == m.end() ? n : Formula::abs_ref(it->second);
      }
      if (const auto* r = n.as<RangeArg>()) {
        // A rectangle wholly inside the source is remapped when its image is
        // again a full rectangle; anything else is left as written.
        if (r->range.rects.size() != 1 || !r->range.bounded()) return n;
        auto cells = enumerate_range(r->range);
        Coord c_lo = 0, c_hi = 0, r_lo = 0, r_hi = 0;
        std::string sheet;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          auto it = m.find(cells[i]);
          if (it == m.end()) return n;
          const CellAddr& t = it->second;
          if (i == 0) {
            sheet = t.sheet;
            c_lo = c_hi = t.col;
            r_lo = r_hi = t.row;
          } else {
            if (t.sheet != sheet) return n;
            c_lo = std::min(c_lo, t.col);
            c_hi = std::max(c_hi, t.col);
            r_lo = std::min(r_lo, t.row);
            r_hi = std::max(r_hi, t.row);
          }
        }
        if (static_cast<std::size_t>((c_hi - c_lo + 1) * (r_hi - r_lo + 1)) != cells.size())
          return n;
        return Formula::range(Rect::cells(sheet, c_lo, r_lo, c_hi, r_hi));
      }
      return n;
    });
  };

  EquationSet out;
  out.set_names(s.names());
  for (const auto& [lhs, rhs] : s) {
    Lhs target = lhs;
    if (const auto* c = as_cell(lhs)) target = map_cell(*c);
    if (out.contains(target))
      throw CollisionError("mapping sends two equations to " + lhs_to_string(target));
    out.add(target, rewrite(rhs));
  }
  return out;
}

EquationSet replicate(const EquationSet& s, Coord lo, Coord hi) {
  if (lo > hi) throw DomainError("empty replication range " + std::to_string(lo) + ":" +
                                 std::to_string(hi));
  for (const auto& [lhs, rhs] : s) require_elem(lhs, "replicate");
  auto arrays = defined_arrays(s);
  EquationSet out;
  out.set_names(s.names());
  for (Coord k = lo; k <= hi; ++k) {
    for (const auto& [lhs, rhs] : s) {
      ArrayElem e = std::get<ArrayElem>(lhs);
      e.subs.push_back(k);
      Formula f = transform(rhs, [&](const Formula& n) -> Formula {
        const auto* r = n.as<ElemRef>();
        if (!r || !arrays.count(r->array)) return n;
        auto subs = r->subs;
        subs.push_back(Subscript::index(k));
        return Formula::elem_ref(r->array, std::move(subs));
      });
      out.add(e, f);
    }
  }
  return out;
}

EquationSet quotient(const EquationSet& s, Coord lo, Coord hi) {
  if (lo > hi) throw DomainError("empty quotient range " + std::to_string(lo) + ":" +
                                 std::to_string(hi));
  auto arrays = defined_arrays(s);
  // projected lhs -> (final subscript -> projected rhs)
  std::map<ArrayElem, std::map<Coord, Formula>> fibers;
  for (const auto& [lhs, rhs] : s) {
    const ArrayElem& e = require_elem(lhs, "quotient");
    if (e.subs.size() < 2)
      throw TypeError("quotient needs at least two subscripts on " + e.to_string());
    Coord k = e.subs.back();
    if (k < lo || k > hi)
      throw DomainError(e.to_string() + " lies outside the quotient range " + std::to_string(lo) +
                        ":" + std::to_string(hi));
    ArrayElem projected{e.name, {e.subs.begin(), e.subs.end() - 1}};
    Formula f = transform(rhs, [&](const Formula& n) -> Formula {
      const auto* r = n.as<ElemRef>();
      if (!r || !arrays.count(r->array)) return n;
      const Subscript& last = r->subs.back();
      bool same_fiber = last.here ? last.value == 0 : last.value == k;
      if (r->subs.size() < 2 || !same_fiber)
        throw EquivalenceError(e.to_string() + " refers across the quotient dimension");
      return Formula::elem_ref(r->array,
                               std::vector<Subscript>(r->subs.begin(), r->subs.end() - 1));
    });
    fibers[projected].emplace(k, f);
  }
  EquationSet out;
  out.set_names(s.names());
  for (const auto& [projected, fiber] : fibers) {
    if (fiber.size() != static_cast<std::size_t>(hi - lo + 1))
      throw EquivalenceError("fiber of " + projected.to_string() + " is incomplete over " +
                             std::to_string(lo) + ":" + std::to_string(hi));
    const Formula& first = fiber.begin()->second;
    for (const auto& [k, f] : fiber) {
      if (!(f == first))
        throw EquivalenceError("formulas projecting onto " + projected.to_string() +
                               " differ: " + print_formula(first, Dialect::A1) + " vs " +
                               print_formula(f, Dialect::A1));
    }
    out.add(projected, first);
  }
  return out;
}

LookupResult lookup(const EquationSet& s, const Lhs& ref, Representation repr,
                    Dialect raw_dialect) {
  const Formula* rhs = s.find(ref);
  if (!rhs) throw NotFoundError("no equation for " + lhs_to_string(ref));
  const CellAddr* cell = as_cell(ref);
  switch (repr) {
    case Representation::Raw: {
      if (cell && raw_dialect == Dialect::R1C1) {
        PrintOptions o;
        o.dialect = Dialect::R1C1;
        o.anchor = *cell;
        return print_formula(relativize(*rhs, *cell), o);
      }
      PrintOptions o;
      o.dialect = raw_dialect;
      if (cell) o.anchor = *cell;
      return print_formula(*rhs, o);
    }
    case Representation::Relative: return cell ? relativize(*rhs, *cell) : *rhs;
    case Representation::Absolute:
      return cell ? to_absolute(*rhs, *cell) : resolve_here(*rhs, std::get<ArrayElem>(ref).subs);
    case Representation::Substituted: {
      Formula abs = cell ? to_absolute(*rhs, *cell)
                         : resolve_here(*rhs, std::get<ArrayElem>(ref).subs);
      return substitute_names(abs, s.names());
    }
  }
  return *rhs;
}

Formula lookup_formula(const EquationSet& s, const Lhs& ref, Representation repr) {
  if (repr == Representation::Raw) throw TypeError("raw representation is text, not a formula");
  return std::get<Formula>(lookup(s, ref, repr));
}

std::string lookup_raw(const EquationSet& s, const Lhs& ref, Dialect dialect) {
  return std::get<std::string>(lookup(s, ref, Representation::Raw, dialect));
}

EquationSet replace(const EquationSet& s, const Formula& pattern, const Formula& replacement) {
  EquationSet out;
  out.set_names(s.names());
  for (const auto& [lhs, rhs] : s) {
    if (const auto* cell = as_cell(lhs)) {
      Formula rel = relativize(rhs, *cell);
      Formula edited =
          replace_in(rel, relativize(pattern, *cell), relativize(replacement, *cell));
      out.add(lhs, edited.same_node(rel) ? rhs : to_absolute(edited, *cell));
    } else {
      out.add(lhs, replace_in(rhs, pattern, replacement));
    }
  }
  return out;
}

Formula simplify(const Formula& f) {
  Formula cur = f;
  for (;;) {
    Formula next = transform(cur, [](const Formula& n) { return simplify_node(n); });
    if (next == cur) return next;
    cur = std::move(next);
  }
}

EquationSet simplify(const EquationSet& s) {
  EquationSet out;
  out.set_names(s.names());
  for (const auto& [lhs, rhs] : s) out.add(lhs, simplify(rhs));
  return out;
}

DiffReport diff(const EquationSet& a, const EquationSet& b, DiffMode mode) {
  DiffReport report;
  report.mode = mode;
  auto same = [&](const Lhs& lhs, const Formula& x, const Formula& y) {
    if (x == y) return true;
    if (mode == DiffMode::Relative) {
      if (const auto* c = as_cell(lhs)) return relativize(x, *c) == relativize(y, *c);
    }
    return false;
  };
  for (const auto& [lhs, rhs] : a) {
    const Formula* other = b.find(lhs);
    if (!other) {
      report.removed.push_back(lhs);
    } else if (!same(lhs, rhs, *other)) {
      report.changed.push_back({lhs, rhs, *other});
    }
  }
  for (const auto& [lhs, rhs] : b)
    if (!a.contains(lhs)) report.added.push_back(lhs);
  return report;
}

std::string to_string(const DiffReport& report) {
  std::string out;
  for (const auto& l : report.removed) out += "removed " + lhs_to_string(l) + "\n";
  for (const auto& l : report.added) out += "added   " + lhs_to_string(l) + "\n";
  for (const auto& c : report.changed) {
    out += "changed " + lhs_to_string(c.lhs) + ": " + formula_text(c.lhs, c.before) + " -> " +
           formula_text(c.lhs, c.after) + "\n";
  }
  return out;
}

std::vector<FormulaGroup> group_by_relative_form(const EquationSet& s, bool include_constants) {
  // Keyed by sheet and form; the map keeps first-seen order via index.
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::vector<FormulaGroup> groups;
  for (const auto& [lhs, rhs] : s) {
    const auto* cell = as_cell(lhs);
    if (!cell) continue;
    if (!include_constants && rhs.is_constant()) continue;
    std::string key = canonical_relative(rhs, *cell);
    auto [it, inserted] = index.try_emplace({cell->sheet, key}, groups.size());
    if (inserted) groups.push_back({cell->sheet, key, {}});
    groups[it->second].cells.push_back(*cell);
  }
  return groups;
}

std::vector<StyleViolation> stylecheck_unique(const EquationSet& s) {
  std::vector<StyleViolation> out;
  for (auto& g : group_by_relative_form(s, false)) {
    if (g.cells.size() >= 2)
      out.push_back({std::move(g.sheet), std::move(g.canonical_relative), std::move(g.cells)});
  }
  return out;
}

std::string to_string(const std::vector<StyleViolation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    out += v.sheet + ": " + std::to_string(v.cells.size()) + " copies of " + v.canonical_formula +
           " in";
    for (const auto& c : v.cells) out += " " + c.to_string(v.sheet);
    out += "\n";
  }
  return out;
}

}  // namespace sheetalg
