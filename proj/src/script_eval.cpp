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

#include <cmath>
#include <iostream>
#include <sstream>

#include "sheetalg/algebra.hpp"
#include "sheetalg/discovery.hpp"
#include "sheetalg/formula_text.hpp"
#include "sheetalg/layout.hpp"
#include "sheetalg/listing.hpp"
#include "sheetalg/script.hpp"

namespace sheetalg {

namespace {

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

std::string formula_text(const Formula& f) {
  try {
    return print_formula(f, Dialect::A1);
  } catch (const AnchorError&) {
    return print_formula(f, Dialect::R1C1);  // relative form has no anchor
  }
}

std::string truncate_lines(const std::string& text, std::size_t max_lines) {
  if (max_lines == 0) return text;
  std::size_t pos = 0;
  for (std::size_t n = 0; n < max_lines; ++n) {
    pos = text.find('\n', pos);
    if (pos == std::string::npos) return text;
    ++pos;
  }
  if (pos >= text.size()) return text;
  std::size_t rest = 0;
  for (std::size_t i = pos; i < text.size(); ++i) rest += text[i] == '\n';
  if (text.back() != '\n') ++rest;
  return text.substr(0, pos) + "... (" + std::to_string(rest) + " more lines)\n";
}

const Workbook& want_set(const ScriptValue& v, const char* op) {
  if (const auto* wb = v.as<Workbook>()) return *wb;
  throw TypeError(std::string(op) + " expects a set, got " + type_name(v));
}

const std::string& want_text(const ScriptValue& v, const char* op) {
  if (const auto* s = v.as<std::string>()) return *s;
  throw TypeError(std::string(op) + " expects text, got " + type_name(v));
}

Coord want_int(const ScriptValue& v, const char* op) {
  const auto* d = v.as<double>();
  if (!d || std::floor(*d) != *d || std::abs(*d) > 9.0e15)
    throw TypeError(std::string(op) + " expects an integer, got " + type_name(v));
  return static_cast<Coord>(*d);
}

Dialect want_dialect(const ScriptValue& v, const char* op) {
  const std::string& s = want_text(v, op);
  if (s == "A1" || s == "a1") return Dialect::A1;
  if (s == "R1C1" || s == "r1c1") return Dialect::R1C1;
  throw DomainError(std::string(op) + ": unknown dialect \"" + s + "\"");
}

Formula want_formula(const ScriptValue& v, Dialect dialect, const char* op) {
  if (const auto* f = v.as<Formula>()) return *f;
  if (const auto* s = v.as<std::string>()) return parse_formula(*s, dialect);
  if (const auto* d = v.as<double>()) return Formula::number(*d);
  throw TypeError(std::string(op) + " expects a formula, got " + type_name(v));
}

// "D2", "Sheet2!D2" or "Profit[2000]".
Lhs want_lhs(const ScriptValue& v, const char* op) {
  if (const auto* a = v.as<CellAddr>()) return *a;
  const std::string& s = want_text(v, op);
  if (auto a = CellAddr::parse(s)) return *a;
  auto open = s.find('[');
  if (open != std::string::npos && s.back() == ']' && is_identifier(s.substr(0, open))) {
    ArrayElem e{s.substr(0, open), {}};
    std::stringstream subs(s.substr(open + 1, s.size() - open - 2));
    std::string part;
    bool ok = true;
    while (std::getline(subs, part, ',')) {
      try {
        std::size_t used = 0;
        e.subs.push_back(std::stoll(part, &used));
        ok = ok && part.find_first_not_of(" \t", used) == std::string::npos;
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (ok && !e.subs.empty()) return e;
  }
  throw DomainError(std::string(op) + ": \"" + s + "\" is not a cell or array element");
}

LayoutSet merge_layouts(const LayoutSet& a, const LayoutSet& b) {
  LayoutSet out = a;
  for (const auto& d : b) {
    const LayoutDirective* have = out.find(d.array);
    if (have && *have == d) continue;
    out.add(d);
  }
  return out;
}

Workbook merge(const Workbook& a, const Workbook& b) {
  return {unite(a.equations, b.equations), merge_layouts(a.layouts, b.layouts)};
}

void check_arity(const CallExpr& c, std::size_t lo, std::size_t hi) {
  if (c.args.size() < lo || c.args.size() > hi) {
    std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
    throw TypeError(c.function + " takes " + want + " arguments, got " +
                    std::to_string(c.args.size()));
  }
}

}  // namespace

std::string type_name(const ScriptValue& v) {
  static constexpr const char* names[] = {"unit",   "set",    "formula", "value",
                                          "grid",   "text",   "number",  "vector",
                                          "range",  "cell",   "list"};
  return names[v.v.index()];
}

std::string format_value(const ScriptValue& v, std::size_t max_lines) {
  std::string text = std::visit(
      Overload{
          [](const std::monostate&) { return std::string(); },
          [](const Workbook& wb) { return show(wb); },
          [](const Formula& f) { return formula_text(f) + "\n"; },
          [](const Value& x) { return x.to_string() + "\n"; },
          [](const ValueGrid& g) {
            std::string out;
            for (const auto& [a, x] : g) out += a.to_string() + " = " + x.to_string() + "\n";
            return out;
          },
          [](const std::string& s) {
            return s.empty() || s.back() == '\n' ? s : s + "\n";
          },
          [](double d) { return format_number(d) + "\n"; },
          [](const Vector2& p) {
            return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")\n";
          },
          [](const CellRange& r) { return r.to_string() + "\n"; },
          [](const CellAddr& a) { return a.to_string() + "\n"; },
          [](const ScriptList& l) {
            std::string out = "[";
            for (std::size_t i = 0; i < l.size(); ++i) {
              std::string item = format_value(l[i]);
              if (!item.empty() && item.back() == '\n') item.pop_back();
              out += (i ? ", " : "") + item;
            }
            return out + "]\n";
          },
      },
      v.v);
  return truncate_lines(text, max_lines);
}

Interpreter::Interpreter(std::filesystem::path base_dir) : base_dir_(std::move(base_dir)) {}

std::filesystem::path Interpreter::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  return p.is_absolute() ? p : base_dir_ / p;
}

ScriptValue Interpreter::run_source(std::string_view src) { return run(parse_script(src), src); }

ScriptValue Interpreter::run(const Script& script, std::string_view src) {
  std::optional<ScriptValue> last;
  for (std::size_t i = 0; i < script.statements.size(); ++i) {
    const Statement& st = script.statements[i];
    ScriptValue value;
    fail_at_.reset();
    try {
      switch (st.kind) {
        case Statement::Kind::Let:
          value = eval(**st.expr);
          env_[st.name] = value;
          last = value;
          break;
        case Statement::Kind::Eval:
          value = eval(**st.expr);
          last = value;
          break;
        case Statement::Kind::Items:
          document_ = merge(document_, st.items);
          value.v = st.items;
          break;
      }
    } catch (const Error& e) {
      std::size_t at = fail_at_.value_or(st.offset);
      auto [line, col] = src.empty() ? std::pair<std::size_t, std::size_t>{0, 0}
                                     : line_column(src, at);
      throw ScriptError(e.what(), i + 1, line, col);
    }
    if (echo_) *echo_ << format_value(value, echo_lines_);
  }
  if (last) return *last;
  return ScriptValue{document_};
}

ScriptValue Interpreter::eval(const Expr& e) {
  try {
    return std::visit(
        Overload{
            [&](const VarExpr& n) -> ScriptValue {
              if (auto it = env_.find(n.name); it != env_.end()) return it->second;
              if (auto a = CellAddr::parse(n.name)) return {*a};
              throw NotFoundError("unbound name '" + n.name + "'");
            },
            [&](const NumberExpr& n) -> ScriptValue { return {n.value}; },
            [&](const StringExpr& n) -> ScriptValue { return {n.value}; },
            [&](const VectorExpr& n) -> ScriptValue {
              ScriptValue x = eval(*n.x), y = eval(*n.y);
              return {Vector2{want_int(x, "vector"), want_int(y, "vector")}};
            },
            [&](const SetExpr& n) -> ScriptValue { return {n.items}; },
            [&](const UnionExpr& n) -> ScriptValue {
              ScriptValue a = eval(*n.lhs), b = eval(*n.rhs);
              return {merge(want_set(a, "\\/"), want_set(b, "\\/"))};
            },
            [&](const ShiftExpr& n) -> ScriptValue {
              ScriptValue t = eval(*n.target), by = eval(*n.by);
              const Workbook& wb = want_set(t, "shift");
              const auto* v = by.as<Vector2>();
              if (!v) throw TypeError("shift expects a vector, got " + type_name(by));
              Workbook out{shift(wb.equations, v->x, v->y), {}};
              for (auto d : wb.layouts) {
                d.anchor = d.anchor.offset(v->x, v->y);
                out.layouts.add(std::move(d));
              }
              return {std::move(out)};
            },
            [&](const ExtractExpr& n) -> ScriptValue {
              ScriptValue t = eval(*n.target);
              const Workbook& wb = want_set(t, "@");
              return {Workbook{extract(wb.equations, n.range), wb.layouts}};
            },
            [&](const MappingExpr& n) -> ScriptValue {
              ScriptValue t = eval(*n.target);
              const Workbook& wb = want_set(t, "mapping");
              return {Workbook{map_range(wb.equations, n.from, n.to), wb.layouts}};
            },
            [&](const TimesExpr& n) -> ScriptValue {
              ScriptValue t = eval(*n.target);
              const Workbook& wb = want_set(t, "times");
              return {Workbook{replicate(wb.equations, n.lo, n.hi), wb.layouts}};
            },
            [&](const QuotientExpr& n) -> ScriptValue {
              ScriptValue t = eval(*n.target);
              const Workbook& wb = want_set(t, "quotient");
              return {Workbook{quotient(wb.equations, n.lo, n.hi), wb.layouts}};
            },
            [&](const CallExpr& n) -> ScriptValue { return call(n); },
        },
        e.node);
  } catch (const Error&) {
    if (!fail_at_) fail_at_ = e.offset;
    throw;
  }
}

ScriptValue Interpreter::call(const CallExpr& c) {
  std::vector<ScriptValue> args;
  for (const auto& a : c.args) args.push_back(eval(*a));
  const std::string& f = c.function;
  auto arg = [&](std::size_t i) -> const ScriptValue& { return args[i]; };

  if (f == "load" || f == "contents_of") {
    check_arity(c, 1, 1);
    return {load_workbook(resolve(want_text(arg(0), "load")).string())};
  }
  if (f == "save") {
    check_arity(c, 2, 2);
    save_workbook(want_set(arg(0), "save"), resolve(want_text(arg(1), "save")).string());
    return {};
  }
  if (f == "show") {
    check_arity(c, 1, 2);
    bool grouped = false;
    if (args.size() == 2) {
      const std::string& mode = want_text(arg(1), "show");
      if (mode != "grouped" && mode != "plain") throw DomainError("show: unknown mode \"" + mode + "\"");
      grouped = mode == "grouped";
    }
    return {show(want_set(arg(0), "show"), grouped)};
  }
  if (f == "lookup") {
    check_arity(c, 2, 4);
    Representation repr = Representation::Raw;
    if (args.size() >= 3) {
      const std::string& r = want_text(arg(2), "lookup");
      if (r == "raw") repr = Representation::Raw;
      else if (r == "relative") repr = Representation::Relative;
      else if (r == "absolute") repr = Representation::Absolute;
      else if (r == "substituted") repr = Representation::Substituted;
      else throw DomainError("lookup: unknown representation \"" + r + "\"");
    }
    Dialect dialect = args.size() == 4 ? want_dialect(arg(3), "lookup") : Dialect::R1C1;
    LookupResult r = lookup(want_set(arg(0), "lookup").equations, want_lhs(arg(1), "lookup"),
                            repr, dialect);
    if (auto* text = std::get_if<std::string>(&r)) return {std::move(*text)};
    return {std::get<Formula>(r)};
  }
  if (f == "replace") {
    check_arity(c, 3, 4);
    Dialect dialect = args.size() == 4 ? want_dialect(arg(3), "replace") : Dialect::A1;
    const Workbook& wb = want_set(arg(0), "replace");
    return {Workbook{replace(wb.equations, want_formula(arg(1), dialect, "replace"),
                             want_formula(arg(2), dialect, "replace")),
                     wb.layouts}};
  }
  if (f == "simplify") {
    check_arity(c, 1, 1);
    if (const auto* fm = arg(0).as<Formula>()) return {simplify(*fm)};
    const Workbook& wb = want_set(arg(0), "simplify");
    return {Workbook{simplify(wb.equations), wb.layouts}};
  }
  if (f == "evaluate") {
    check_arity(c, 1, 2);
    const Workbook& wb = want_set(arg(0), "evaluate");
    if (args.size() == 2) {
      Lhs at = want_lhs(arg(1), "evaluate");
      const CellAddr* cell = as_cell(at);
      if (!cell) throw TypeError("evaluate expects a cell");
      return {evaluate_cell(wb.equations, *cell)};
    }
    return {evaluate(wb.equations)};
  }
  if (f == "compile" || f == "decompile") {
    check_arity(c, 1, 2);
    const Workbook& wb = want_set(arg(0), f.c_str());
    const LayoutSet& layouts = args.size() == 2 ? want_set(arg(1), f.c_str()).layouts : wb.layouts;
    EquationSet out = f == "compile" ? compile(wb.equations, layouts)
                                     : decompile(wb.equations, layouts);
    return {Workbook{std::move(out), layouts}};
  }
  if (f == "propose_layout") {
    check_arity(c, 1, 1);
    return {Workbook{{}, propose_layout(want_set(arg(0), "propose_layout").equations).directives}};
  }
  if (f == "diff") {
    check_arity(c, 2, 3);
    DiffMode mode = DiffMode::Absolute;
    if (args.size() == 3) {
      const std::string& m = want_text(arg(2), "diff");
      if (m == "relative") mode = DiffMode::Relative;
      else if (m != "absolute") throw DomainError("diff: unknown mode \"" + m + "\"");
    }
    return {to_string(diff(want_set(arg(0), "diff").equations,
                           want_set(arg(1), "diff").equations, mode))};
  }
  if (f == "stylecheck") {
    check_arity(c, 1, 1);
    return {to_string(stylecheck_unique(want_set(arg(0), "stylecheck").equations))};
  }
  if (f == "groups") {
    check_arity(c, 1, 1);
    std::string out;
    for (const auto& g : discover_groups(want_set(arg(0), "groups").equations)) {
      out += g.sheet + ": " + g.canonical_relative + " in";
      for (const auto& a : g.cells) out += " " + a.to_string(g.sheet);
      out += "\n";
    }
    return {std::move(out)};
  }
  if (f == "blocks") {
    check_arity(c, 1, 1);
    ScriptList out;
    for (const auto& r : discover_blocks(want_set(arg(0), "blocks").equations))
      out.push_back({CellRange(r)});
    return {std::move(out)};
  }
  if (f == "csv") {
    check_arity(c, 1, 2);
    const auto* grid = arg(0).as<ValueGrid>();
    if (!grid) throw TypeError("csv expects a grid, got " + type_name(arg(0)));
    if (args.size() == 1) return {to_csv(*grid)};
    export_csv(*grid, resolve(want_text(arg(1), "csv")).string());
    return {};
  }
  if (f == "formula") {
    check_arity(c, 1, 2);
    Dialect dialect = args.size() == 2 ? want_dialect(arg(1), "formula") : Dialect::A1;
    return {parse_formula(want_text(arg(0), "formula"), dialect)};
  }
  if (f == "size") {
    check_arity(c, 1, 1);
    if (const auto* l = arg(0).as<ScriptList>()) return {static_cast<double>(l->size())};
    return {static_cast<double>(want_set(arg(0), "size").equations.size())};
  }
  throw NotFoundError("unknown function '" + f + "'");
}

namespace {

// True when the last significant character is the statement terminator.
bool ends_statement(std::string_view buf) {
  std::size_t pos = skip_blank(buf, 0), last = std::string_view::npos;
  while (pos < buf.size()) {
    last = pos;
    pos = skip_blank(buf, pos + 1);
  }
  return last != std::string_view::npos && buf[last] == '.';
}

}  // namespace

int run_repl(std::istream& in, std::ostream& out, std::ostream& err, bool prompt) {
  constexpr std::size_t kEchoLines = 40;
  Interpreter interp;
  interp.set_echo(&out, kEchoLines);
  int failures = 0;
  std::string buf;

  auto submit = [&](bool at_eof) {
    if (skip_blank(buf, 0) >= buf.size()) {
      buf.clear();
      return;
    }
    Script script;
    try {
      script = parse_script(buf);
    } catch (const SyntaxError& e) {
      if (e.at_end() && !at_eof) return;  // wait for more input
      err << "syntax error: " << e.what() << "\n";
      ++failures;
      buf.clear();
      return;
    }
    if (!at_eof && !ends_statement(buf)) return;
    try {
      interp.run(script, buf);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      ++failures;
    }
    buf.clear();
  };

  std::string line;
  for (;;) {
    if (prompt) out << (buf.empty() ? "sheetalg> " : "...> ") << std::flush;
    if (!std::getline(in, line)) break;
    if (buf.empty() && (line == ":quit" || line == ":q")) return failures;
    buf += line;
    buf += '\n';
    submit(false);
  }
  submit(true);
  return failures;
}

}  // namespace sheetalg
