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

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "sheetalg/equation_set.hpp"

namespace sheetalg {

enum class ErrorTag { Div0, Cycle, Value, Ref };

std::string_view error_text(ErrorTag tag);  // "#DIV/0!" and so on

struct EmptyValue {
  friend bool operator==(EmptyValue, EmptyValue) { return true; }
};

// The result of evaluating one cell.
class Value {
 public:
  using Variant = std::variant<EmptyValue, double, std::string, bool, ErrorTag>;

  Value() = default;
  Value(double v) : v_(v) {}  // NOLINT
  Value(std::string v) : v_(std::move(v)) {}  // NOLINT
  Value(bool v) : v_(v) {}  // NOLINT
  Value(ErrorTag e) : v_(e) {}  // NOLINT

  bool is_empty() const { return std::holds_alternative<EmptyValue>(v_); }
  bool is_number() const { return std::holds_alternative<double>(v_); }
  bool is_text() const { return std::holds_alternative<std::string>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_error() const { return std::holds_alternative<ErrorTag>(v_); }

  double number() const { return std::get<double>(v_); }
  const std::string& text() const { return std::get<std::string>(v_); }
  bool boolean() const { return std::get<bool>(v_); }
  ErrorTag error() const { return std::get<ErrorTag>(v_); }
  const Variant& variant() const { return v_; }

  // Numbers print in shortest round-trip form; an empty value prints as "".
  std::string to_string() const;

  friend bool operator==(const Value&, const Value&) = default;

 private:
  Variant v_;
};

using ValueGrid = std::map<CellAddr, Value>;

// Each defined cell and the cells its formula reads. Ranges contribute
// their cells (only the defined ones when a range is unbounded or huge).
using DependencyGraph = std::map<CellAddr, std::vector<CellAddr>>;
DependencyGraph build_deps(const EquationSet& s);

struct EvalOptions {
  // Which ready cell goes first when several could. The result must not
  // depend on it.
  enum class TieBreak { Ascending, Descending } tie_break = TieBreak::Ascending;
};

// Evaluates every cell equation. Cells on a dependency cycle become
// #CYCLE!; everything else evaluates in dependency order. Array equations
// are ignored.
ValueGrid evaluate(const EquationSet& s, const EvalOptions& options = {});

// Evaluates only what `a` depends on. Empty when `a` is undefined.
Value evaluate_cell(const EquationSet& s, const CellAddr& a);

}  // namespace sheetalg
