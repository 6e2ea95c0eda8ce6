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

// Random generators and small reference implementations shared by the
// property tests. Everything is seeded so failures reproduce.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sheetalg/algebra.hpp"
#include "sheetalg/document.hpp"
#include "sheetalg/errors.hpp"
#include "sheetalg/evaluator.hpp"
#include "sheetalg/layout.hpp"

namespace testkit {

using namespace sheetalg;
using Rng = std::mt19937_64;

inline Coord uniform(Rng& rng, Coord lo, Coord hi) {
  return std::uniform_int_distribution<Coord>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<Coord>(v.size()) - 1))];
}

inline CellAddr random_cell(Rng& rng, Coord max_col = 8, Coord max_row = 12,
                            double other_sheet = 0.0) {
  std::string sheet = chance(rng, other_sheet) ? "Data" : "Sheet1";
  return CellAddr(sheet, uniform(rng, 1, max_col), uniform(rng, 1, max_row));
}

// A number with a short or a long decimal expansion, sometimes negative.
inline double random_number(Rng& rng) {
  switch (uniform(rng, 0, 3)) {
    case 0: return static_cast<double>(uniform(rng, 0, 2000));
    case 1: return static_cast<double>(uniform(rng, -500, 500)) / 4.0;
    case 2: return std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    default: return std::ldexp(static_cast<double>(uniform(rng, 1, 1 << 20)), -30);
  }
}

inline std::string random_text(Rng& rng) {
  static const std::vector<std::string> words = {"Year", "a,b", "say \"hi\"", "", "x y", "#1"};
  return pick(rng, words);
}

struct FormulaShape {
  int depth = 3;
  Coord max_col = 8;
  Coord max_row = 12;
  double other_sheet = 0.1;
  bool text = true;   // text, booleans and EMPTY()
  bool names = true;  // NameRefs
  bool ranges = true;
};

// A random absolute formula.
inline Formula random_formula(Rng& rng, const FormulaShape& shape) {
  std::function<Formula(int)> gen = [&](int depth) -> Formula {
    int kind = static_cast<int>(uniform(rng, 0, depth <= 0 ? 4 : 9));
    switch (kind) {
      case 0:
      case 1: return Formula::number(random_number(rng));
      case 2:
        if (shape.text) {
          switch (uniform(rng, 0, 2)) {
            case 0: return Formula::text(random_text(rng));
            case 1: return Formula::boolean(chance(rng, 0.5));
            default: return Formula::empty();
          }
        }
        return Formula::number(random_number(rng));
      case 3:
        if (shape.names && chance(rng, 0.3)) return Formula::name(chance(rng, 0.5) ? "rate" : "base");
        [[fallthrough]];
      case 4:
        return Formula::abs_ref(random_cell(rng, shape.max_col, shape.max_row, shape.other_sheet));
      case 5: return Formula::negate(gen(depth - 1));
      case 6:
      case 7: {
        auto op = static_cast<BinaryOp>(uniform(rng, 0, 10));
        return Formula::binary(op, gen(depth - 1), gen(depth - 1));
      }
      case 8:
        if (shape.ranges) {
          CellAddr a = random_cell(rng, shape.max_col, shape.max_row, shape.other_sheet);
          Rect r = Rect::cells(a.sheet, a.col, a.row, a.col + uniform(rng, 0, 2),
                               a.row + uniform(rng, 0, 3));
          static const std::vector<std::string> fns = {"SUM", "MIN", "MAX"};
          return Formula::call(pick(rng, fns), {Formula::range(r)});
        }
        [[fallthrough]];
      default: {
        static const std::vector<std::string> fns = {"IF", "ABS", "MOD", "AND", "SQRT"};
        const std::string& fn = pick(rng, fns);
        std::size_t n = fn == "IF" ? 3 : fn == "MOD" || fn == "AND" ? 2 : 1;
        std::vector<Formula> args;
        for (std::size_t i = 0; i < n; ++i) args.push_back(gen(depth - 1));
        return Formula::call(fn, std::move(args));
      }
    }
  };
  return gen(shape.depth);
}

// A random set of cell equations, with an occasional defined name.
inline EquationSet random_cell_set(Rng& rng, std::size_t max_size, const FormulaShape& shape) {
  EquationSet s;
  std::size_t n = static_cast<std::size_t>(uniform(rng, 0, static_cast<Coord>(max_size)));
  for (std::size_t i = 0; i < n; ++i)
    s.assign(random_cell(rng, shape.max_col, shape.max_row, shape.other_sheet),
             random_formula(rng, shape));
  if (chance(rng, 0.3)) s.define_name("rate", CellRange(Rect::cell(random_cell(rng))));
  if (chance(rng, 0.2)) s.define_name("block", CellRange(Rect::cells("Sheet1", 1, 1, 2, 3)));
  return s;
}

// Random disjoint layouts (one- and two-dimensional) on Sheet1. Arrays are
// placed in separate bands of columns so footprints never overlap.
inline LayoutSet random_layouts(Rng& rng, int max_arrays = 4) {
  LayoutSet out;
  int n = static_cast<int>(uniform(rng, 1, max_arrays));
  Coord col = 1;
  for (int i = 0; i < n; ++i) {
    LayoutDirective d;
    d.array = std::string(1, static_cast<char>('P' + i)) + "arr";
    Coord lo = uniform(rng, -3, 2005);
    Coord row = uniform(rng, 1, 6);
    if (chance(rng, 0.3)) {
      Coord lo2 = uniform(rng, 0, 3);
      d.box = {{lo, lo + uniform(rng, 0, 3)}, {lo2, lo2 + uniform(rng, 0, 2)}};
      d.anchor = CellAddr(col, row);
      col += d.box[1].size() + uniform(rng, 0, 2);
    } else if (chance(rng, 0.5)) {
      d.box = {{lo, lo + uniform(rng, 0, 5)}};
      d.orientation = Orientation::Down;
      d.anchor = CellAddr(col, row);
      col += 1 + uniform(rng, 0, 1);
    } else {
      d.box = {{lo, lo + uniform(rng, 0, 3)}};
      d.orientation = Orientation::Right;
      d.anchor = CellAddr(col, row);
      col += d.box[0].size() + uniform(rng, 0, 1);
    }
    out.add(std::move(d));
  }
  return out;
}

inline std::vector<ArrayElem> elements(const LayoutDirective& d) {
  std::vector<ArrayElem> out;
  for (Coord i = d.box[0].lo; i <= d.box[0].hi; ++i) {
    if (d.box.size() == 1) {
      out.push_back({d.array, {i}});
    } else {
      for (Coord j = d.box[1].lo; j <= d.box[1].hi; ++j) out.push_back({d.array, {i, j}});
    }
  }
  return out;
}

// Array equations filling every element of `layouts`; right-hand sides
// reference random elements and constants.
inline EquationSet random_array_spec(Rng& rng, const LayoutSet& layouts) {
  std::vector<ArrayElem> all;
  for (const auto& d : layouts)
    for (auto& e : elements(d)) all.push_back(e);
  EquationSet s;
  for (const auto& e : all) {
    Formula f = Formula::number(random_number(rng));
    int refs = static_cast<int>(uniform(rng, 0, 2));
    for (int k = 0; k < refs; ++k) {
      const ArrayElem& r = pick(rng, all);
      f = Formula::binary(chance(rng, 0.5) ? BinaryOp::Add : BinaryOp::Mul, f,
                          Formula::elem_ref(r.name, r.subs));
    }
    s.add(e, f);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Reference evaluator: plain recursion with memoisation. Cycle membership
// is decided by asking whether a cell reaches itself.

class OracleEvaluator {
 public:
  explicit OracleEvaluator(const EquationSet& s) : s_(s) {
    for (const auto& [lhs, rhs] : s)
      if (const CellAddr* a = as_cell(lhs)) cells_[*a] = substitute_or_keep(rhs);
  }

  Value value(const CellAddr& a) {
    if (on_cycle(a)) return ErrorTag::Cycle;
    if (auto it = memo_.find(a); it != memo_.end()) return it->second;
    auto it = cells_.find(a);
    Value v = it == cells_.end() ? Value() : eval(it->second);
    memo_[a] = v;
    return v;
  }

  bool on_cycle(const CellAddr& a) {
    if (auto it = cyclic_.find(a); it != cyclic_.end()) return it->second;
    std::set<CellAddr> seen;
    std::vector<CellAddr> todo = reads(a);
    bool found = false;
    while (!todo.empty() && !found) {
      CellAddr c = todo.back();
      todo.pop_back();
      if (c == a) found = true;
      if (!seen.insert(c).second) continue;
      for (auto& n : reads(c)) todo.push_back(n);
    }
    return cyclic_[a] = found;
  }

 private:
  Formula substitute_or_keep(const Formula& f) {
    try {
      return substitute_names(f, s_.names());
    } catch (const Error&) {
      return Formula::call("#BAD", {});
    }
  }

  std::vector<CellAddr> reads(const CellAddr& a) {
    std::vector<CellAddr> out;
    auto it = cells_.find(a);
    if (it == cells_.end()) return out;
    std::function<void(const Formula&)> walk = [&](const Formula& f) {
      if (const auto* r = f.as<AbsRef>()) out.push_back(r->addr);
      if (const auto* r = f.as<RangeArg>())
        for (const auto& [c, _] : cells_)
          if (r->range.contains(c)) out.push_back(c);
      for (const auto& ch : detail::children(f)) walk(ch);
    };
    walk(it->second);
    return out;
  }

  static std::optional<double> number_of(const Value& v) {
    if (v.is_number()) return v.number();
    if (v.is_empty()) return 0.0;
    if (v.is_bool()) return v.boolean() ? 1.0 : 0.0;
    return std::nullopt;
  }

  static Value checked(double x) { return std::isfinite(x) ? Value(x) : Value(ErrorTag::Value); }

  Value eval(const Formula& f) {
    if (const auto* n = f.as<NumberConst>()) return checked(n->value);
    if (const auto* t = f.as<TextConst>()) return t->value;
    if (const auto* b = f.as<BoolConst>()) return b->value;
    if (f.as<EmptyConst>()) return Value();
    if (const auto* r = f.as<AbsRef>()) return value(r->addr);
    if (const auto* u = f.as<Unary>()) {
      Value x = eval(u->operand);
      if (x.is_error()) return x;
      auto n = number_of(x);
      return n ? checked(-*n) : Value(ErrorTag::Value);
    }
    if (const auto* b = f.as<Binary>()) {
      Value l = eval(b->lhs), r = eval(b->rhs);
      if (l.is_error()) return l;
      if (r.is_error()) return r;
      if (is_comparison(b->op)) return Value(ErrorTag::Ref);  // not generated
      auto x = number_of(l), y = number_of(r);
      if (!x || !y) return ErrorTag::Value;
      switch (b->op) {
        case BinaryOp::Add: return checked(*x + *y);
        case BinaryOp::Sub: return checked(*x - *y);
        case BinaryOp::Mul: return checked(*x * *y);
        case BinaryOp::Div: return *y == 0 ? Value(ErrorTag::Div0) : checked(*x / *y);
        default: return checked(std::pow(*x, *y));
      }
    }
    if (const auto* c = f.as<Call>()) {
      if (c->function == "SUM") {
        double total = 0;
        for (const auto& a : c->args) {
          if (const auto* r = a.as<RangeArg>()) {
            for (const auto& [cell, _] : cells_) {
              if (!r->range.contains(cell)) continue;
              Value v = value(cell);
              if (v.is_error()) return v;
              if (v.is_number()) total += v.number();
            }
          } else {
            Value v = eval(a);
            if (v.is_error()) return v;
            auto n = number_of(v);
            if (!n) return ErrorTag::Value;
            total += *n;
          }
        }
        return checked(total);
      }
    }
    return ErrorTag::Value;
  }

  const EquationSet& s_;
  std::map<CellAddr, Formula> cells_;
  std::map<CellAddr, Value> memo_;
  std::map<CellAddr, bool> cyclic_;
};

// Arithmetic-only cell sets for evaluator properties: numbers, references,
// + - * /, negation and SUM over ranges. References may form cycles. With
// `defined_refs` every single-cell reference names a cell the set defines.
inline EquationSet random_arith_set(Rng& rng, std::size_t max_size, Coord side = 6,
                                   bool defined_refs = false) {
  std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<Coord>(max_size)));
  std::vector<CellAddr> cells;
  for (std::size_t i = 0; i < n; ++i) cells.emplace_back(uniform(rng, 1, side), uniform(rng, 1, side));
  std::function<Formula(int)> gen = [&](int depth) -> Formula {
    switch (uniform(rng, 0, depth <= 0 ? 2 : 6)) {
      case 0: return Formula::number(static_cast<double>(uniform(rng, -20, 20)));
      case 1:
      case 2:
        if (defined_refs) return Formula::abs_ref(pick(rng, cells));
        return Formula::abs_ref(CellAddr(uniform(rng, 1, side), uniform(rng, 1, side)));
      case 3: return Formula::negate(gen(depth - 1));
      case 4: {
        CellAddr a(uniform(rng, 1, side), uniform(rng, 1, side));
        return Formula::call("SUM", {Formula::range(Rect::cells("Sheet1", a.col, a.row,
                                                                  a.col + uniform(rng, 0, 2),
                                                                  a.row + uniform(rng, 0, 2)))});
      }
      default: {
        auto op = static_cast<BinaryOp>(uniform(rng, 0, 3));
        Formula l = gen(depth - 1), r = gen(depth - 1);
        // Sprinkle in the simplifier's identity elements.
        if (chance(rng, 0.2)) r = Formula::number(op == BinaryOp::Add || op == BinaryOp::Sub ? 0 : 1);
        if (chance(rng, 0.05)) r = Formula::number(0);
        return Formula::binary(op, l, r);
      }
    }
  };
  EquationSet s;
  for (const auto& lhs : cells)
    s.assign(lhs, chance(rng, 0.35) ? Formula::number(static_cast<double>(uniform(rng, -9, 9)))
                                    : gen(2));
  return s;
}

// Values equal, with numbers compared to a relative tolerance.
inline bool same_value(const Value& a, const Value& b, double tol = 1e-9) {
  if (a.is_number() && b.is_number()) {
    double x = a.number(), y = b.number();
    return std::fabs(x - y) <= tol * std::max({1.0, std::fabs(x), std::fabs(y)});
  }
  return a == b;
}

// ---------------------------------------------------------------------------
// Fixtures built in code.

inline EquationSet accounts() {
  auto n = [](double v) { return Formula::number(v); };
  auto ref = [](Coord c, Coord r) { return Formula::abs_ref(CellAddr(c, r)); };
  EquationSet s;
  s.add(CellAddr(1, 2), n(2000));
  s.add(CellAddr(1, 3), n(2001));
  s.add(CellAddr(2, 2), n(1492));
  s.add(CellAddr(2, 3), n(1560));
  s.add(CellAddr(3, 2), n(971));
  s.add(CellAddr(3, 3), n(1803));
  s.add(CellAddr(4, 2), Formula::binary(BinaryOp::Sub, ref(3, 2), ref(2, 2)));
  s.add(CellAddr(4, 3), Formula::binary(BinaryOp::Sub, ref(3, 3), ref(2, 3)));
  return s;
}

// The cellular-automaton sheet: a generation counter in column A and 30
// state columns B..AE, in 26 blocks of 33 rows. Row 4 holds the first
// generation as constants; every later block's state row reads the row 33
// above it with a rule-90 MOD formula (edge columns see a zero neighbour).
struct AutomatonSheet {
  static constexpr Coord kFirstRow = 4;
  static constexpr Coord kSpacing = 33;
  static constexpr Coord kGenerations = 26;
  static constexpr Coord kStateCols = 30;
};

inline std::string automaton_rule(Coord col, const std::string& op = "+") {
  // Offsets written in R1C1 relative to the cell itself.
  const Coord first = 2, last = first + AutomatonSheet::kStateCols - 1;
  std::string left = "R[-33]C[-1]", right = "R[-33]C[1]";
  if (col == first) return "MOD(" + right + ",2)";
  if (col == last) return "MOD(" + left + ",2)";
  return "MOD(" + left + op + right + ",2)";
}

inline EquationSet automaton_sheet(const std::string& op = "+") {
  using A = AutomatonSheet;
  EquationSet s;
  s.add(CellAddr(1, A::kFirstRow), Formula::number(1));
  for (Coord c = 2; c < 2 + A::kStateCols; ++c)
    s.add(CellAddr(c, A::kFirstRow), Formula::number(c == 2 + A::kStateCols / 2 ? 1 : 0));
  for (Coord g = 1; g < A::kGenerations; ++g) {
    Coord row = A::kFirstRow + g * A::kSpacing;
    CellAddr counter(1, row);
    s.add(counter, to_absolute(parse_formula("R[-33]C+1", Dialect::R1C1), counter));
    for (Coord c = 2; c < 2 + A::kStateCols; ++c) {
      CellAddr cell(c, row);
      s.add(cell, to_absolute(parse_formula(automaton_rule(c, op), Dialect::R1C1), cell));
    }
  }
  return s;
}

}  // namespace testkit
