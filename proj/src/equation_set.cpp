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

#include "sheetalg/equation_set.hpp"

#include "sheetalg/errors.hpp"
#include "sheetalg/formula_text.hpp"
#include "sheetalg/rewrite.hpp"

namespace sheetalg {

std::string ArrayElem::to_string() const {
  std::string out = name + "[";
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(subs[i]);
  }
  return out + "]";
}

bool LhsLess::operator()(const Lhs& a, const Lhs& b) const {
  if (a.index() != b.index()) return a.index() < b.index();
  if (const auto* ca = as_cell(a)) return *ca < std::get<CellAddr>(b);
  return std::get<ArrayElem>(a) < std::get<ArrayElem>(b);
}

std::string lhs_to_string(const Lhs& lhs) {
  if (const auto* c = as_cell(lhs)) return c->to_string();
  return std::get<ArrayElem>(lhs).to_string();
}

EquationSet::EquationSet(std::initializer_list<Equation> eqs) {
  for (const auto& e : eqs) add(e.lhs, e.rhs);
}

Formula EquationSet::normalize(const Lhs& lhs, const Formula& rhs) const {
  if (const auto* cell = as_cell(lhs)) {
    return rhs.is_absolute() ? rhs : to_absolute(rhs, *cell);
  }
  const auto& elem = std::get<ArrayElem>(lhs);
  if (elem.subs.empty()) throw DomainError("array element " + elem.name + " needs a subscript");
  if (!is_identifier(elem.name)) throw DomainError("bad array name '" + elem.name + "'");
  bool relative = false;
  transform(rhs, [&](const Formula& n) {
    if (n.as<RelRef>() || n.as<RelRangeArg>()) relative = true;
    return n;
  });
  if (relative)
    throw TypeError("array equation " + elem.to_string() + " cannot hold a relative cell reference");
  return rhs;
}

void EquationSet::add(const Lhs& lhs, const Formula& rhs) {
  Formula f = normalize(lhs, rhs);
  auto [it, inserted] = eqs_.try_emplace(lhs, f);
  if (!inserted && !(it->second == f)) {
    PrintOptions o;
    if (const auto* c = as_cell(lhs)) o.anchor = *c;
    throw ConflictError("conflicting definitions of " + lhs_to_string(lhs) + ": " +
                        print_formula(it->second, o) + " vs " + print_formula(f, o));
  }
}

void EquationSet::assign(const Lhs& lhs, const Formula& rhs) {
  eqs_.insert_or_assign(lhs, normalize(lhs, rhs));
}

void EquationSet::define_name(const std::string& name, const CellRange& range) {
  if (!is_identifier(name)) throw DomainError("bad name '" + name + "'");
  auto [it, inserted] = names_.try_emplace(name, range);
  if (!inserted && !(it->second == range))
    throw ConflictError("conflicting definitions of name " + name + ": " +
                        it->second.to_string() + " vs " + range.to_string());
}

const Formula* EquationSet::find(const Lhs& lhs) const {
  auto it = eqs_.find(lhs);
  return it == eqs_.end() ? nullptr : &it->second;
}

}  // namespace sheetalg
