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

#include "sheetalg/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <queue>
#include <unordered_map>

#include "sheetalg/errors.hpp"
#include "sheetalg/formula_text.hpp"
#include "sheetalg/rewrite.hpp"

namespace sheetalg {

std::string_view error_text(ErrorTag tag) {
  switch (tag) {
    case ErrorTag::Div0: return "#DIV/0!";
    case ErrorTag::Cycle: return "#CYCLE!";
    case ErrorTag::Value: return "#VALUE!";
    case ErrorTag::Ref: return "#REF!";
  }
  return "#VALUE!";
}

std::string Value::to_string() const {
  if (is_number()) return format_number(number());
  if (is_text()) return text();
  if (is_bool()) return boolean() ? "TRUE" : "FALSE";
  if (is_error()) return std::string(error_text(error()));
  return "";
}

namespace {

using Index = std::size_t;

// The set's cell equations in canonical order, with names substituted and
// dependencies resolved to positions.
struct Prepared {
  std::vector<CellAddr> cells;
  std::vector<Formula> formulas;
  std::vector<bool> bad;  // name substitution failed
  std::unordered_map<CellAddr, Index> index;
  std::map<std::string, std::vector<Index>> by_sheet;
  std::vector<std::vector<Index>> deps;

  std::optional<Index> find(const CellAddr& a) const {
    auto it = index.find(a);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  // Defined cells inside `r`, in canonical order.
  std::vector<Index> defined_in(const CellRange& r) const {
    std::vector<Index> out;
    for (const auto& rect : r.rects) {
      auto sheet = by_sheet.find(rect.sheet);
      if (sheet == by_sheet.end()) continue;
      bool small = rect.bounded() &&
                   static_cast<double>(rect.width()) * static_cast<double>(rect.height()) <=
                       static_cast<double>(sheet->second.size());
      if (small) {
        for (const auto& a : enumerate_range(CellRange(rect)))
          if (auto i = find(a)) out.push_back(*i);
      } else {
        for (Index i : sheet->second)
          if (rect.contains(cells[i])) out.push_back(i);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

void visit_refs(const Formula& f, const std::function<void(const CellAddr&)>& on_cell,
                const std::function<void(const CellRange&)>& on_range) {
  if (const auto* a = f.as<AbsRef>()) {
    on_cell(a->addr);
    return;
  }
  if (const auto* r = f.as<RangeArg>()) {
    on_range(r->range);
    return;
  }
  for (const auto& k : detail::children(f)) visit_refs(k, on_cell, on_range);
}

Prepared prepare(const EquationSet& s) {
  Prepared p;
  for (const auto& [lhs, rhs] : s) {
    const auto* c = as_cell(lhs);
    if (!c) continue;
    Index i = p.cells.size();
    p.cells.push_back(*c);
    p.index.emplace(*c, i);
    p.by_sheet[c->sheet].push_back(i);
    try {
      p.formulas.push_back(substitute_names(rhs, s.names()));
      p.bad.push_back(false);
    } catch (const SubstitutionError&) {
      p.formulas.push_back(rhs);
      p.bad.push_back(true);
    }
  }
  p.deps.resize(p.cells.size());
  for (Index i = 0; i < p.cells.size(); ++i) {
    auto& d = p.deps[i];
    visit_refs(
        p.formulas[i],
        [&](const CellAddr& a) {
          if (auto j = p.find(a)) d.push_back(*j);
        },
        [&](const CellRange& r) {
          auto in = p.defined_in(r);
          d.insert(d.end(), in.begin(), in.end());
        });
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
  }
  return p;
}

// Members of strongly connected components that form cycles (size > 1, or a
// self-loop), restricted to `nodes`. Iterative Tarjan.
std::vector<bool> cyclic_nodes(const Prepared& p, const std::vector<Index>& nodes) {
  const Index n = p.cells.size();
  const Index unvisited = static_cast<Index>(-1);
  std::vector<Index> order(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false), cyclic(n, false);
  std::vector<Index> stack;
  Index counter = 0;

  struct Frame {
    Index node;
    Index next_edge;
  };
  for (Index root : nodes) {
    if (order[root] != unvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& fr = frames.back();
      const auto& edges = p.deps[fr.node];
      if (fr.next_edge < edges.size()) {
        Index w = edges[fr.next_edge++];
        if (order[w] == unvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.node] = std::min(low[fr.node], order[w]);
        }
        continue;
      }
      Index v = fr.node;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
      if (low[v] != order[v]) continue;
      std::vector<Index> component;
      Index w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);
      bool self_loop = std::binary_search(p.deps[v].begin(), p.deps[v].end(), v);
      if (component.size() > 1 || self_loop)
        for (Index m : component) cyclic[m] = true;
    }
  }
  return cyclic;
}

// Number coercion for arithmetic: empty is 0, booleans are 0/1, text fails.
std::optional<Value> to_number(const Value& v, double& out) {
  if (v.is_error()) return v;
  if (v.is_number()) {
    out = v.number();
  } else if (v.is_empty()) {
    out = 0;
  } else if (v.is_bool()) {
    out = v.boolean() ? 1 : 0;
  } else {
    return Value(ErrorTag::Value);
  }
  return std::nullopt;
}

std::optional<Value> to_bool(const Value& v, bool& out) {
  if (v.is_error()) return v;
  if (v.is_bool()) {
    out = v.boolean();
  } else if (v.is_number()) {
    out = v.number() != 0;
  } else if (v.is_empty()) {
    out = false;
  } else {
    return Value(ErrorTag::Value);
  }
  return std::nullopt;
}

Value finite(double r) { return std::isfinite(r) ? Value(r) : Value(ErrorTag::Value); }

std::string lower(const std::string& s) {
  std::string out = s;
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Spreadsheet ordering: numbers < text < booleans; empty takes the type of
// the other side.
int compare_values(const Value& a, const Value& b) {
  auto rank = [](const Value& v) { return v.is_number() ? 0 : v.is_text() ? 1 : 2; };
  Value x = a, y = b;
  if (x.is_empty() && y.is_empty()) return 0;
  auto blank_like = [](const Value& other) -> Value {
    if (other.is_text()) return Value(std::string());
    if (other.is_bool()) return Value(false);
    return Value(0.0);
  };
  if (x.is_empty()) x = blank_like(y);
  if (y.is_empty()) y = blank_like(x);
  if (rank(x) != rank(y)) return rank(x) < rank(y) ? -1 : 1;
  if (x.is_number()) return x.number() < y.number() ? -1 : x.number() > y.number() ? 1 : 0;
  if (x.is_bool()) return static_cast<int>(x.boolean()) - static_cast<int>(y.boolean());
  std::string l = lower(x.text()), r = lower(y.text());
  return l < r ? -1 : l > r ? 1 : 0;
}

class Engine {
 public:
  explicit Engine(const Prepared& p) : p_(p), values_(p.cells.size()) {}

  void set(Index i, Value v) { values_[i] = std::move(v); }
  const Value& get(Index i) const { return values_[i]; }

  Value eval_cell(Index i) {
    if (p_.bad[i]) return ErrorTag::Value;
    return eval(p_.formulas[i]);
  }

 private:
  Value eval(const Formula& f) {
    const auto& v = f.node().v;
    if (const auto* n = std::get_if<NumberConst>(&v)) return finite(n->value);
    if (const auto* t = std::get_if<TextConst>(&v)) return t->value;
    if (const auto* b = std::get_if<BoolConst>(&v)) return b->value;
    if (std::holds_alternative<EmptyConst>(v)) return Value();
    if (const auto* a = std::get_if<AbsRef>(&v)) {
      auto i = p_.find(a->addr);
      return i ? values_[*i] : Value();
    }
    if (const auto* u = std::get_if<Unary>(&v)) {
      double x;
      if (auto e = to_number(eval(u->operand), x)) return *e;
      return finite(-x);
    }
    if (const auto* b = std::get_if<Binary>(&v)) return binary(*b);
    if (const auto* c = std::get_if<Call>(&v)) return call(*c);
    // Relative and array references, unresolved names, stray ranges.
    return ErrorTag::Value;
  }

  Value binary(const Binary& b) {
    Value l = eval(b.lhs), r = eval(b.rhs);
    if (l.is_error()) return l;
    if (r.is_error()) return r;
    if (is_comparison(b.op)) {
      int c = compare_values(l, r);
      switch (b.op) {
        case BinaryOp::Eq: return c == 0;
        case BinaryOp::Ne: return c != 0;
        case BinaryOp::Lt: return c < 0;
        case BinaryOp::Le: return c <= 0;
        case BinaryOp::Gt: return c > 0;
        default: return c >= 0;
      }
    }
    double x, y;
    if (auto e = to_number(l, x)) return *e;
    if (auto e = to_number(r, y)) return *e;
    switch (b.op) {
      case BinaryOp::Add: return finite(x + y);
      case BinaryOp::Sub: return finite(x - y);
      case BinaryOp::Mul: return finite(x * y);
      case BinaryOp::Div:
        if (y == 0) return ErrorTag::Div0;
        return finite(x / y);
      case BinaryOp::Pow: return finite(std::pow(x, y));
      default: return ErrorTag::Value;
    }
  }

  // Values of a function's arguments, ranges flattened. Values read from a
  // range are marked so aggregates can skip text and booleans there.
  struct Arg {
    Value value;
    bool from_range;
  };
  std::vector<Arg> flatten(const std::vector<Formula>& args) {
    std::vector<Arg> out;
    for (const auto& a : args) {
      if (const auto* r = a.as<RangeArg>()) {
        for (Index i : p_.defined_in(r->range)) out.push_back({values_[i], true});
      } else {
        out.push_back({eval(a), false});
      }
    }
    return out;
  }

  Value aggregate(const Call& c) {
    std::vector<double> nums;
    for (const auto& [v, from_range] : flatten(c.args)) {
      if (v.is_error()) return v;
      if (v.is_number()) {
        nums.push_back(v.number());
      } else if (v.is_bool() && !from_range) {
        nums.push_back(v.boolean() ? 1 : 0);
      } else if (v.is_text() && !from_range) {
        return ErrorTag::Value;
      }
    }
    if (c.function == "SUM") {
      double sum = 0;
      for (double d : nums) sum += d;
      return finite(sum);
    }
    if (nums.empty()) return 0.0;
    return c.function == "MIN" ? *std::min_element(nums.begin(), nums.end())
                               : *std::max_element(nums.begin(), nums.end());
  }

  Value logical(const Call& c) {
    bool any = false;
    bool result = c.function == "AND";
    for (const auto& [v, from_range] : flatten(c.args)) {
      if (v.is_error()) return v;
      if (from_range && !(v.is_number() || v.is_bool())) continue;
      bool b;
      if (auto e = to_bool(v, b)) return *e;
      any = true;
      result = c.function == "AND" ? (result && b) : (result || b);
    }
    if (!any) return ErrorTag::Value;
    return result;
  }

  Value call(const Call& c) {
    const std::string& fn = c.function;
    if (fn == "SUM" || fn == "MIN" || fn == "MAX") return aggregate(c);
    if (fn == "AND" || fn == "OR") return logical(c);
    for (const auto& a : c.args)
      if (a.as<RangeArg>()) return ErrorTag::Value;
    std::vector<Value> args;
    for (const auto& a : c.args) args.push_back(eval(a));

    if (fn == "IF") {
      if (args.size() < 2 || args.size() > 3) return ErrorTag::Value;
      bool cond;
      if (auto e = to_bool(args[0], cond)) return *e;
      if (cond) return args[1];
      return args.size() == 3 ? args[2] : Value(false);
    }
    if (fn == "NOT") {
      if (args.size() != 1) return ErrorTag::Value;
      bool b;
      if (auto e = to_bool(args[0], b)) return *e;
      return !b;
    }
    if (fn == "MOD") {
      if (args.size() != 2) return ErrorTag::Value;
      double x, y;
      if (auto e = to_number(args[0], x)) return *e;
      if (auto e = to_number(args[1], y)) return *e;
      if (y == 0) return ErrorTag::Div0;
      return finite(x - y * std::floor(x / y));
    }
    if (args.size() != 1) return ErrorTag::Value;
    double x;
    if (auto e = to_number(args[0], x)) return *e;
    if (fn == "ABS") return std::fabs(x);
    if (fn == "SQRT") return x < 0 ? Value(ErrorTag::Value) : finite(std::sqrt(x));
    if (fn == "EXP") return finite(std::exp(x));
    if (fn == "LN") return x <= 0 ? Value(ErrorTag::Value) : finite(std::log(x));
    return ErrorTag::Value;
  }

  const Prepared& p_;
  std::vector<Value> values_;
};

// Evaluates `nodes` (closed under dependencies) into `engine`.
void run(const Prepared& p, const std::vector<Index>& nodes, Engine& engine,
         EvalOptions::TieBreak tie_break) {
  auto cyclic = cyclic_nodes(p, nodes);

  std::unordered_map<Index, std::size_t> pending;
  std::unordered_map<Index, std::vector<Index>> dependents;
  for (Index i : nodes) {
    if (cyclic[i]) {
      engine.set(i, ErrorTag::Cycle);
      continue;
    }
    std::size_t count = 0;
    for (Index d : p.deps[i]) {
      if (cyclic[d]) continue;
      ++count;
      dependents[d].push_back(i);
    }
    pending[i] = count;
  }

  auto later = [tie_break](Index a, Index b) {
    return tie_break == EvalOptions::TieBreak::Ascending ? a > b : a < b;
  };
  std::priority_queue<Index, std::vector<Index>, decltype(later)> ready(later);
  for (const auto& [i, count] : pending)
    if (count == 0) ready.push(i);
  while (!ready.empty()) {
    Index i = ready.top();
    ready.pop();
    engine.set(i, engine.eval_cell(i));
    auto it = dependents.find(i);
    if (it == dependents.end()) continue;
    for (Index d : it->second)
      if (--pending[d] == 0) ready.push(d);
  }
}

}  // namespace

DependencyGraph build_deps(const EquationSet& s) {
  Prepared p = prepare(s);
  DependencyGraph g;
  for (Index i = 0; i < p.cells.size(); ++i) {
    std::vector<CellAddr> refs;
    visit_refs(
        p.formulas[i], [&](const CellAddr& a) { refs.push_back(a); },
        [&](const CellRange& r) {
          std::size_t defined = p.defined_in(r).size();
          if (r.bounded() && r.cell_count() <= std::max<std::size_t>(defined, 4096)) {
            auto cells = enumerate_range(r);
            refs.insert(refs.end(), cells.begin(), cells.end());
          } else {
            for (Index j : p.defined_in(r)) refs.push_back(p.cells[j]);
          }
        });
    std::sort(refs.begin(), refs.end());
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    g.emplace(p.cells[i], std::move(refs));
  }
  return g;
}

ValueGrid evaluate(const EquationSet& s, const EvalOptions& options) {
  Prepared p = prepare(s);
  Engine engine(p);
  std::vector<Index> nodes(p.cells.size());
  for (Index i = 0; i < nodes.size(); ++i) nodes[i] = i;
  run(p, nodes, engine, options.tie_break);
  ValueGrid grid;
  for (Index i = 0; i < p.cells.size(); ++i) grid.emplace_hint(grid.end(), p.cells[i], engine.get(i));
  return grid;
}

Value evaluate_cell(const EquationSet& s, const CellAddr& a) {
  Prepared p = prepare(s);
  auto target = p.find(a);
  if (!target) return Value();
  // The dependency cone of the target.
  std::vector<bool> in_cone(p.cells.size(), false);
  std::vector<Index> cone, todo{*target};
  in_cone[*target] = true;
  while (!todo.empty()) {
    Index i = todo.back();
    todo.pop_back();
    cone.push_back(i);
    for (Index d : p.deps[i])
      if (!in_cone[d]) {
        in_cone[d] = true;
        todo.push_back(d);
      }
  }
  std::sort(cone.begin(), cone.end());
  Engine engine(p);
  run(p, cone, engine, EvalOptions::TieBreak::Ascending);
  return engine.get(*target);
}

}  // namespace sheetalg
