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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sheetalg/document.hpp"
#include "sheetalg/errors.hpp"
#include "sheetalg/evaluator.hpp"

namespace sheetalg {

// ---------------------------------------------------------------------------
// Syntax tree

struct Expr;

// Shared, immutable subexpression. Compares by content.
struct ExprRef {
  std::shared_ptr<const Expr> ptr;
  const Expr& operator*() const { return *ptr; }
  const Expr* operator->() const { return ptr.get(); }
  friend bool operator==(const ExprRef& a, const ExprRef& b);
};

struct VarExpr {
  std::string name;
  friend bool operator==(const VarExpr&, const VarExpr&) = default;
};
struct NumberExpr {
  double value;
  friend bool operator==(const NumberExpr&, const NumberExpr&) = default;
};
struct StringExpr {
  std::string value;
  friend bool operator==(const StringExpr&, const StringExpr&) = default;
};
struct VectorExpr {
  ExprRef x, y;
  friend bool operator==(const VectorExpr&, const VectorExpr&) = default;
};
struct SetExpr {
  Workbook items;
  friend bool operator==(const SetExpr&, const SetExpr&) = default;
};
struct UnionExpr {
  ExprRef lhs, rhs;
  friend bool operator==(const UnionExpr&, const UnionExpr&) = default;
};
struct ShiftExpr {
  ExprRef target, by;
  friend bool operator==(const ShiftExpr&, const ShiftExpr&) = default;
};
struct ExtractExpr {
  ExprRef target;
  CellRange range;
  friend bool operator==(const ExtractExpr&, const ExtractExpr&) = default;
};
struct MappingExpr {
  ExprRef target;
  CellRange from, to;
  friend bool operator==(const MappingExpr&, const MappingExpr&) = default;
};
struct TimesExpr {
  ExprRef target;
  Coord lo, hi;
  friend bool operator==(const TimesExpr&, const TimesExpr&) = default;
};
struct QuotientExpr {
  ExprRef target;
  Coord lo, hi;
  friend bool operator==(const QuotientExpr&, const QuotientExpr&) = default;
};
struct CallExpr {
  std::string function;
  std::vector<ExprRef> args;
  friend bool operator==(const CallExpr&, const CallExpr&) = default;
};

struct Expr {
  using Node = std::variant<VarExpr, NumberExpr, StringExpr, VectorExpr, SetExpr, UnionExpr,
                            ShiftExpr, ExtractExpr, MappingExpr, TimesExpr, QuotientExpr,
                            CallExpr>;
  Node node;
  std::size_t offset = 0;  // where it starts in the source; not compared

  friend bool operator==(const Expr& a, const Expr& b) { return a.node == b.node; }
};

struct Statement {
  enum class Kind { Let, Eval, Items } kind = Kind::Eval;
  std::string name;       // Let
  std::optional<ExprRef> expr;  // Let and Eval
  Workbook items;         // Items: equations and layouts at top level
  std::size_t offset = 0;

  friend bool operator==(const Statement& a, const Statement& b) {
    return a.kind == b.kind && a.name == b.name && a.expr == b.expr && a.items == b.items;
  }
};

struct Script {
  std::vector<Statement> statements;
  friend bool operator==(const Script&, const Script&) = default;
};

// Throws SyntaxError with line and column.
Script parse_script(std::string_view src);
// Source text that parses back to the same script.
std::string print_script(const Script& script);
std::string print_expr(const Expr& e);

// ---------------------------------------------------------------------------
// Values

struct Vector2 {
  Coord x = 0, y = 0;
  friend bool operator==(const Vector2&, const Vector2&) = default;
};

struct ScriptValue;
using ScriptList = std::vector<ScriptValue>;

struct ScriptValue {
  using Variant = std::variant<std::monostate, Workbook, Formula, Value, ValueGrid, std::string,
                               double, Vector2, CellRange, CellAddr, ScriptList>;
  Variant v;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&v);
  }
  bool is_unit() const { return std::holds_alternative<std::monostate>(v); }
};

std::string type_name(const ScriptValue& v);

// Text for a value. Equation sets print as a listing; `max_lines` > 0
// truncates it with a continuation marker.
std::string format_value(const ScriptValue& v, std::size_t max_lines = 0);

// A failure while running a statement, located at that statement.
class ScriptError : public Error {
 public:
  ScriptError(const std::string& message, std::size_t statement, std::size_t line,
              std::size_t column)
      : Error("statement " + std::to_string(statement) + " (line " + std::to_string(line) +
              ", column " + std::to_string(column) + "): " + message),
        statement_(statement) {}
  std::size_t statement() const { return statement_; }

 private:
  std::size_t statement_;
};

// ---------------------------------------------------------------------------
// Interpreter

class Interpreter {
 public:
  // Relative paths given to load and save resolve against `base_dir`.
  explicit Interpreter(std::filesystem::path base_dir = ".");

  // Runs every statement in order and returns the script's value: the last
  // let or expression, or the accumulated top-level items when there is
  // none. `src` is the text the script came from, for error locations.
  ScriptValue run(const Script& script, std::string_view src = {});
  ScriptValue run_source(std::string_view src);

  // Print each statement's value to `out` as it is produced (the REPL).
  void set_echo(std::ostream* out, std::size_t max_lines) {
    echo_ = out;
    echo_lines_ = max_lines;
  }

  const Workbook& document() const { return document_; }
  const std::map<std::string, ScriptValue>& bindings() const { return env_; }

 private:
  ScriptValue eval(const Expr& e);
  ScriptValue call(const CallExpr& c);
  std::filesystem::path resolve(const std::string& path) const;

  std::filesystem::path base_dir_;
  std::map<std::string, ScriptValue> env_;
  Workbook document_;
  std::ostream* echo_ = nullptr;
  std::size_t echo_lines_ = 0;
  std::optional<std::size_t> fail_at_;  // offset of the innermost failing expression
};

// Interactive loop: reads statements (continuing over lines until one is
// complete), evaluates them and prints each value. Returns the number of
// statements that failed.
int run_repl(std::istream& in, std::ostream& out, std::ostream& err, bool prompt = true);

}  // namespace sheetalg
