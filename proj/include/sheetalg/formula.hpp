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

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sheetalg/address.hpp"

namespace sheetalg {

enum class UnaryOp { Negate };
enum class BinaryOp { Add, Sub, Mul, Div, Pow, Eq, Ne, Lt, Le, Gt, Ge };

std::string_view op_symbol(BinaryOp op);
bool is_comparison(BinaryOp op);

// An array subscript: a plain index, or HERE+offset relative to the
// corresponding subscript of the equation's left-hand side.
struct Subscript {
  bool here = false;
  Coord value = 0;

  static Subscript index(Coord v) { return {false, v}; }
  static Subscript relative(Coord offset) { return {true, offset}; }

  friend bool operator==(const Subscript&, const Subscript&) = default;
};

struct FormulaNode;

// Immutable expression tree with value semantics. Copies share structure.
class Formula {
 public:
  Formula();  // the empty constant

  static Formula number(double v);
  static Formula text(std::string v);
  static Formula boolean(bool v);
  static Formula empty();
  static Formula abs_ref(CellAddr a);
  static Formula rel_ref(Coord dcol, Coord drow);
  static Formula elem_ref(std::string array, std::vector<Subscript> subs);
  static Formula elem_ref(std::string array, const std::vector<Coord>& subs);
  static Formula name(std::string id);
  static Formula negate(Formula operand);
  static Formula binary(BinaryOp op, Formula lhs, Formula rhs);
  static Formula call(std::string function, std::vector<Formula> args);
  static Formula range(CellRange r);
  static Formula rel_range(Coord dcol_lo, Coord drow_lo, Coord dcol_hi, Coord drow_hi);

  const FormulaNode& node() const { return *node_; }

  template <typename T>
  const T* as() const;

  // No relative references and no HERE subscripts.
  bool is_absolute() const;
  // No references of any kind: literals and operators only.
  bool is_constant() const;

  // True when both handles share one node (cheap identity test).
  bool same_node(const Formula& o) const { return node_ == o.node_; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct NumberConst {
  double value;
};
struct TextConst {
  std::string value;
};
struct BoolConst {
  bool value;
};
struct EmptyConst {};
struct AbsRef {
  CellAddr addr;
};
struct RelRef {
  Coord dcol;
  Coord drow;
};
struct ElemRef {
  std::string array;
  std::vector<Subscript> subs;
};
struct NameRef {
  std::string name;
};
struct Unary {
  UnaryOp op;
  Formula operand;
};
struct Binary {
  BinaryOp op;
  Formula lhs;
  Formula rhs;
};
struct Call {
  std::string function;  // stored upper-case
  std::vector<Formula> args;
};
// A range argument to a function. Only legal directly under a Call.
struct RangeArg {
  CellRange range;
};
// A bounded same-sheet rectangle given as offsets from the containing cell.
struct RelRangeArg {
  Coord dcol_lo, drow_lo, dcol_hi, drow_hi;
};

struct FormulaNode {
  using Variant = std::variant<NumberConst, TextConst, BoolConst, EmptyConst, AbsRef, RelRef,
                               ElemRef, NameRef, Unary, Binary, Call, RangeArg, RelRangeArg>;
  Variant v;
};

template <typename T>
const T* Formula::as() const {
  return std::get_if<T>(&node_->v);
}

// Rebuilds `f` bottom-up. `fn` sees every node after its children have been
// rebuilt and returns the node to use in its place.
template <typename Fn>
Formula transform(const Formula& f, Fn&& fn);

namespace detail {
Formula with_children(const Formula& f, std::vector<Formula> children);
std::vector<Formula> children(const Formula& f);
}  // namespace detail

template <typename Fn>
Formula transform(const Formula& f, Fn&& fn) {
  auto kids = detail::children(f);
  if (kids.empty()) return fn(f);
  bool changed = false;
  for (auto& k : kids) {
    Formula n = transform(k, fn);
    if (!n.same_node(k)) changed = true;
    k = std::move(n);
  }
  return fn(changed ? detail::with_children(f, std::move(kids)) : f);
}

}  // namespace sheetalg
