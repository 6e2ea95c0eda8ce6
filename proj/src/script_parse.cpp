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

#include <algorithm>
#include <cctype>
#include <charconv>

#include "sheetalg/formula_text.hpp"
#include "sheetalg/script.hpp"

namespace sheetalg {

bool operator==(const ExprRef& a, const ExprRef& b) {
  if (a.ptr == b.ptr) return true;
  if (!a.ptr || !b.ptr) return false;
  return *a.ptr == *b.ptr;
}

namespace {

constexpr std::string_view kReserved[] = {"let", "shift", "mapping", "to", "times", "quotient"};

bool reserved(std::string_view w) {
  return std::find(std::begin(kReserved), std::end(kReserved), w) != std::end(kReserved);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

ExprRef make(Expr::Node node, std::size_t offset) {
  return ExprRef{std::make_shared<const Expr>(Expr{std::move(node), offset})};
}

class ScriptParser {
 public:
  explicit ScriptParser(std::string_view src) : src_(src) {}

  Script parse() {
    Script script;
    skip();
    while (!eof()) {
      statement(script);
      skip();
      if (eof()) break;
      if (cur() != '.') fail("expected '.' after statement", pos_);
      ++pos_;
      skip();
    }
    return script;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    auto [line, col] = line_column(src_, at);
    throw SyntaxError(msg, at, line, col, at >= src_.size());
  }

  bool eof() const { return pos_ >= src_.size(); }
  char cur() const { return eof() ? '\0' : src_[pos_]; }
  char at(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }
  void skip() { pos_ = skip_blank(src_, pos_); }

  std::string peek_word() const {
    std::size_t end = pos_;
    while (end < src_.size() && ident_char(src_[end])) ++end;
    return std::string(src_.substr(pos_, end - pos_));
  }

  std::string word() {
    std::string w = peek_word();
    pos_ += w.size();
    return w;
  }

  void expect(char c) {
    skip();
    if (cur() != c) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void statement(Script& script) {
    std::size_t start = pos_;
    if (peek_word() == "let") {
      std::size_t save = pos_;
      word();
      skip();
      if (ident_start(cur())) {
        Statement st;
        st.kind = Statement::Kind::Let;
        st.offset = start;
        std::size_t name_at = pos_;
        st.name = word();
        if (reserved(st.name)) fail("'" + st.name + "' is a reserved word", name_at);
        expect('=');
        st.expr = expr();
        script.statements.push_back(std::move(st));
        return;
      }
      pos_ = save;
    }
    if (starts_item(src_, pos_)) {
      Workbook wb;
      pos_ = parse_item(src_, pos_, wb);
      // One statement per equation, layout or name, so that printing and
      // re-reading gives the same statement list.
      for (const auto& d : wb.layouts) {
        Statement st{Statement::Kind::Items, {}, {}, {}, start};
        st.items.layouts.add(d);
        script.statements.push_back(std::move(st));
      }
      for (const auto& [name, range] : wb.equations.names()) {
        Statement st{Statement::Kind::Items, {}, {}, {}, start};
        st.items.equations.define_name(name, range);
        script.statements.push_back(std::move(st));
      }
      for (const auto& [lhs, rhs] : wb.equations) {
        Statement st{Statement::Kind::Items, {}, {}, {}, start};
        st.items.equations.add(lhs, rhs);
        script.statements.push_back(std::move(st));
      }
      return;
    }
    Statement st;
    st.kind = Statement::Kind::Eval;
    st.offset = start;
    st.expr = expr();
    script.statements.push_back(std::move(st));
  }

  ExprRef expr() {
    skip();
    std::size_t start = pos_;
    ExprRef lhs = postfix();
    for (;;) {
      skip();
      if (cur() == '\\' && at(pos_ + 1) == '/') {
        pos_ += 2;
        lhs = make(UnionExpr{lhs, postfix()}, start);
      } else {
        return lhs;
      }
    }
  }

  CellRange range() {
    skip();
    ParseOptions o;
    o.comments = true;
    auto r = parse_range_prefix(src_, pos_, o);
    pos_ = r.end;
    return r.range;
  }

  Coord integer() {
    skip();
    std::size_t start = pos_;
    if (cur() == '-' || cur() == '+') ++pos_;
    if (!digit(cur())) fail("expected an integer", pos_);
    while (digit(cur())) ++pos_;
    Coord v = 0;
    const char* first = src_.data() + start + (src_[start] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_) fail("bad integer", start);
    return v;
  }

  std::pair<Coord, Coord> index_range() {
    Coord lo = integer();
    expect(':');
    Coord hi = integer();
    return {lo, hi};
  }

  ExprRef postfix() {
    skip();
    std::size_t start = pos_;
    ExprRef e = primary();
    for (;;) {
      skip();
      if (cur() == '@') {
        ++pos_;
        e = make(ExtractExpr{e, range()}, start);
        continue;
      }
      std::string w = peek_word();
      if (w == "shift") {
        word();
        e = make(ShiftExpr{e, primary()}, start);
      } else if (w == "mapping") {
        word();
        CellRange from = range();
        skip();
        std::size_t to_at = pos_;
        if (word() != "to") fail("expected 'to'", to_at);
        e = make(MappingExpr{e, from, range()}, start);
      } else if (w == "times") {
        word();
        auto [lo, hi] = index_range();
        e = make(TimesExpr{e, lo, hi}, start);
      } else if (w == "quotient") {
        word();
        auto [lo, hi] = index_range();
        e = make(QuotientExpr{e, lo, hi}, start);
      } else {
        return e;
      }
    }
  }

  ExprRef primary() {
    skip();
    std::size_t start = pos_;
    if (eof()) fail("expected an expression", pos_);
    char c = cur();
    if (c == '(') {
      ++pos_;
      ExprRef first = expr();
      skip();
      if (cur() == ',') {
        ++pos_;
        ExprRef second = expr();
        expect(')');
        return make(VectorExpr{first, second}, start);
      }
      expect(')');
      return first;
    }
    if (c == '{') return set_literal();
    if (c == '"') return make(StringExpr{string_literal()}, start);
    if (digit(c) || ((c == '-' || c == '+') && digit(at(pos_ + 1)))) return number();
    if (!ident_start(c)) fail(std::string("unexpected '") + c + "'", pos_);
    std::string w = word();
    if (reserved(w)) fail("'" + w + "' cannot start an expression", start);
    if (cur() == '!') {  // a cell on another sheet, e.g. Sheet2!A1
      ++pos_;
      w += "!" + word();
      return make(VarExpr{w}, start);
    }
    skip();
    if (cur() == '(') {
      ++pos_;
      CallExpr call{w, {}};
      skip();
      if (cur() != ')') {
        call.args.push_back(expr());
        for (skip(); cur() == ','; skip()) {
          ++pos_;
          call.args.push_back(expr());
        }
      }
      expect(')');
      return make(std::move(call), start);
    }
    return make(VarExpr{w}, start);
  }

  ExprRef number() {
    std::size_t start = pos_;
    if (cur() == '-' || cur() == '+') ++pos_;
    while (digit(cur())) ++pos_;
    if (cur() == '.' && digit(at(pos_ + 1))) {
      ++pos_;
      while (digit(cur())) ++pos_;
    }
    if ((cur() == 'e' || cur() == 'E') &&
        (digit(at(pos_ + 1)) ||
         ((at(pos_ + 1) == '-' || at(pos_ + 1) == '+') && digit(at(pos_ + 2))))) {
      pos_ += 2;
      while (digit(cur())) ++pos_;
    }
    double v = 0;
    const char* first = src_.data() + start + (src_[start] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_) fail("bad number", start);
    return make(NumberExpr{v}, start);
  }

  std::string string_literal() {
    std::size_t start = pos_;
    ++pos_;
    std::string out;
    for (;;) {
      if (eof()) fail("unterminated string", start);
      char c = src_[pos_++];
      if (c != '"') {
        out.push_back(c);
      } else if (cur() == '"') {
        out.push_back('"');
        ++pos_;
      } else {
        return out;
      }
    }
  }

  ExprRef set_literal() {
    std::size_t start = pos_;
    ++pos_;  // {
    Workbook wb;
    skip();
    if (cur() == '}') {
      ++pos_;
      return make(SetExpr{std::move(wb)}, start);
    }
    for (;;) {
      pos_ = parse_item(src_, pos_, wb);
      skip();
      if (cur() == ',') {
        ++pos_;
        skip();
        if (cur() == '}') break;
      } else if (cur() == '}') {
        break;
      } else if (eof() || !starts_item(src_, pos_)) {
        // A missing comma is tolerated when another item clearly follows.
        fail("expected ',' or '}' in set", pos_);
      }
    }
    ++pos_;  // }
    return make(SetExpr{std::move(wb)}, start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string items_text(const Workbook& wb, const char* sep) {
  std::vector<std::string> parts;
  std::vector<const LayoutDirective*> layouts;
  for (const auto& d : wb.layouts) layouts.push_back(&d);
  std::sort(layouts.begin(), layouts.end(),
            [](const auto* a, const auto* b) { return a->array < b->array; });
  for (const auto* d : layouts) parts.push_back(d->to_string());
  for (const auto& [name, range] : wb.equations.names()) parts.push_back(name_text(name, range));
  for (const auto& [lhs, rhs] : wb.equations) parts.push_back(equation_text(lhs, rhs));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool is_union(const Expr& e) { return std::holds_alternative<UnionExpr>(e.node); }

std::string operand(const Expr& e) {
  return is_union(e) ? "(" + print_expr(e) + ")" : print_expr(e);
}

}  // namespace

Script parse_script(std::string_view src) { return ScriptParser(src).parse(); }

std::string print_expr(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarExpr>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, NumberExpr>) {
          return format_number(n.value);
        } else if constexpr (std::is_same_v<T, StringExpr>) {
          return quote_text(n.value);
        } else if constexpr (std::is_same_v<T, VectorExpr>) {
          return "(" + print_expr(*n.x) + ", " + print_expr(*n.y) + ")";
        } else if constexpr (std::is_same_v<T, SetExpr>) {
          std::string body = items_text(n.items, ", ");
          return body.empty() ? "{}" : "{ " + body + " }";
        } else if constexpr (std::is_same_v<T, UnionExpr>) {
          return print_expr(*n.lhs) + " \\/ " + operand(*n.rhs);
        } else if constexpr (std::is_same_v<T, ShiftExpr>) {
          return operand(*n.target) + " shift " + operand(*n.by);
        } else if constexpr (std::is_same_v<T, ExtractExpr>) {
          return operand(*n.target) + " @ " + n.range.to_string();
        } else if constexpr (std::is_same_v<T, MappingExpr>) {
          return operand(*n.target) + " mapping " + n.from.to_string() + " to " + n.to.to_string();
        } else if constexpr (std::is_same_v<T, TimesExpr>) {
          return operand(*n.target) + " times " + std::to_string(n.lo) + ":" + std::to_string(n.hi);
        } else if constexpr (std::is_same_v<T, QuotientExpr>) {
          return operand(*n.target) + " quotient " + std::to_string(n.lo) + ":" +
                 std::to_string(n.hi);
        } else {
          std::string out = n.function + "(";
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            out += print_expr(*n.args[i]);
          }
          return out + ")";
        }
      },
      e.node);
}

std::string print_script(const Script& script) {
  std::string out;
  for (const auto& st : script.statements) {
    switch (st.kind) {
      case Statement::Kind::Let: out += "let " + st.name + " = " + print_expr(**st.expr); break;
      case Statement::Kind::Eval: out += print_expr(**st.expr); break;
      case Statement::Kind::Items: out += items_text(st.items, ".\n"); break;
    }
    out += ".\n";
  }
  return out;
}

}  // namespace sheetalg
