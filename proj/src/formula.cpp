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

#include "sheetalg/formula.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "sheetalg/errors.hpp"

namespace sheetalg {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

bool any_node(const Formula& f, const auto& pred) {
  if (pred(f)) return true;
  for (const auto& k : detail::children(f))
    if (any_node(k, pred)) return true;
  return false;
}

}  // namespace

std::string_view op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "^";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "<>";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
  }
  return "?";
}

bool is_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return true;
    default: return false;
  }
}

Formula::Formula() : node_(std::make_shared<const FormulaNode>(FormulaNode{EmptyConst{}})) {}

Formula Formula::number(double v) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{NumberConst{v}}));
}
Formula Formula::text(std::string v) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{TextConst{std::move(v)}}));
}
Formula Formula::boolean(bool v) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{BoolConst{v}}));
}
Formula Formula::empty() { return Formula(); }
Formula Formula::abs_ref(CellAddr a) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{AbsRef{std::move(a)}}));
}
Formula Formula::rel_ref(Coord dcol, Coord drow) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{RelRef{dcol, drow}}));
}
Formula Formula::elem_ref(std::string array, std::vector<Subscript> subs) {
  if (subs.empty()) throw DomainError("array reference " + array + " needs a subscript");
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{ElemRef{std::move(array), std::move(subs)}}));
}
Formula Formula::elem_ref(std::string array, const std::vector<Coord>& subs) {
  std::vector<Subscript> s;
  s.reserve(subs.size());
  for (Coord c : subs) s.push_back(Subscript::index(c));
  return elem_ref(std::move(array), std::move(s));
}
Formula Formula::name(std::string id) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{NameRef{std::move(id)}}));
}
Formula Formula::negate(Formula operand) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{Unary{UnaryOp::Negate, std::move(operand)}}));
}
Formula Formula::binary(BinaryOp op, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{Binary{op, std::move(lhs), std::move(rhs)}}));
}
Formula Formula::call(std::string function, std::vector<Formula> args) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{Call{upper(std::move(function)), std::move(args)}}));
}
Formula Formula::range(CellRange r) {
  if (r.rects.empty()) throw DomainError("empty range argument");
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{RangeArg{std::move(r)}}));
}
Formula Formula::rel_range(Coord dcol_lo, Coord drow_lo, Coord dcol_hi, Coord drow_hi) {
  if (dcol_hi < dcol_lo || drow_hi < drow_lo) throw DomainError("inverted relative range");
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{RelRangeArg{dcol_lo, drow_lo, dcol_hi, drow_hi}}));
}

bool Formula::is_absolute() const {
  return !any_node(*this, [](const Formula& f) {
    if (f.as<RelRef>() || f.as<RelRangeArg>()) return true;
    if (const auto* e = f.as<ElemRef>())
      return std::any_of(e->subs.begin(), e->subs.end(), [](const Subscript& s) { return s.here; });
    return false;
  });
}

bool Formula::is_constant() const {
  return !any_node(*this, [](const Formula& f) {
    return f.as<AbsRef>() || f.as<RelRef>() || f.as<ElemRef>() || f.as<NameRef>() ||
           f.as<RangeArg>() || f.as<RelRangeArg>();
  });
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.same_node(b)) return true;
  const auto& x = a.node().v;
  const auto& y = b.node().v;
  if (x.index() != y.index()) return false;
  return std::visit(
      Overloaded{
          [&](const NumberConst& n) {
            return std::bit_cast<std::uint64_t>(n.value) ==
                   std::bit_cast<std::uint64_t>(std::get<NumberConst>(y).value);
          },
          [&](const TextConst& t) { return t.value == std::get<TextConst>(y).value; },
          [&](const BoolConst& t) { return t.value == std::get<BoolConst>(y).value; },
          [&](const EmptyConst&) { return true; },
          [&](const AbsRef& r) { return r.addr == std::get<AbsRef>(y).addr; },
          [&](const RelRef& r) {
            const auto& o = std::get<RelRef>(y);
            return r.dcol == o.dcol && r.drow == o.drow;
          },
          [&](const ElemRef& e) {
            const auto& o = std::get<ElemRef>(y);
            return e.array == o.array && e.subs == o.subs;
          },
          [&](const NameRef& n) { return n.name == std::get<NameRef>(y).name; },
          [&](const Unary& u) {
            const auto& o = std::get<Unary>(y);
            return u.op == o.op && u.operand == o.operand;
          },
          [&](const Binary& bn) {
            const auto& o = std::get<Binary>(y);
            return bn.op == o.op && bn.lhs == o.lhs && bn.rhs == o.rhs;
          },
          [&](const Call& c) {
            const auto& o = std::get<Call>(y);
            return c.function == o.function && c.args == o.args;
          },
          [&](const RangeArg& r) { return r.range == std::get<RangeArg>(y).range; },
          [&](const RelRangeArg& r) {
            const auto& o = std::get<RelRangeArg>(y);
            return r.dcol_lo == o.dcol_lo && r.drow_lo == o.drow_lo && r.dcol_hi == o.dcol_hi &&
                   r.drow_hi == o.drow_hi;
          },
      },
      x);
}

namespace detail {

std::vector<Formula> children(const Formula& f) {
  if (const auto* u = f.as<Unary>()) return {u->operand};
  if (const auto* b = f.as<Binary>()) return {b->lhs, b->rhs};
  if (const auto* c = f.as<Call>()) return c->args;
  return {};
}

Formula with_children(const Formula& f, std::vector<Formula> kids) {
  if (f.as<Unary>()) return Formula::negate(std::move(kids.at(0)));
  if (const auto* b = f.as<Binary>())
    return Formula::binary(b->op, std::move(kids.at(0)), std::move(kids.at(1)));
  if (const auto* c = f.as<Call>()) return Formula::call(c->function, std::move(kids));
  return f;
}

}  // namespace detail

}  // namespace sheetalg
