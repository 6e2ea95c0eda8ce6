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

#include "sheetalg/formula_text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cctype>

#include "sheetalg/errors.hpp"

namespace sheetalg {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }
bool all_upper(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// True if every range in `f` sits directly under a Call.
bool ranges_placed(const Formula& f) {
  if (f.as<RangeArg>() || f.as<RelRangeArg>()) return false;
  if (const auto* c = f.as<Call>()) {
    for (const auto& a : c->args) {
      if (a.as<RangeArg>() || a.as<RelRangeArg>()) continue;
      if (!ranges_placed(a)) return false;
    }
    return true;
  }
  for (const auto& k : detail::children(f))
    if (!ranges_placed(k)) return false;
  return true;
}

// One endpoint of an R1C1 reference: each axis absolute or relative.
struct R1C1Part {
  bool row_rel = true;
  bool col_rel = true;
  Coord row = 0;
  Coord col = 0;
};

class FormulaParser {
 public:
  FormulaParser(std::string_view src, std::size_t pos, const ParseOptions& options)
      : src_(src), pos_(pos), opt_(options) {}

  Formula parse() {
    std::size_t start = pos_;
    skip_ws();
    if (eof()) fail("empty formula", pos_, true);
    Formula f = comparison();
    if (!ranges_placed(f)) fail("a range is only allowed as a function argument", start);
    return f;
  }

  std::size_t pos() const { return pos_; }
  CellRange parse_range() { return standalone_range(); }

  void skip_ws() {
    while (!eof()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos_;
      } else if (c == '#' && opt_.comments) {
        while (!eof() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at, bool at_end = false) const {
    auto [line, col] = line_column(src_, at);
    throw SyntaxError(msg, at, line, col, at_end);
  }

  bool eof() const { return pos_ >= src_.size(); }
  char cur() const { return eof() ? '\0' : src_[pos_]; }
  char at(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }

  bool accept(char c) {
    skip_ws();
    if (cur() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (eof()) fail(std::string("expected '") + c + "'", pos_, true);
      fail(std::string("expected '") + c + "'", pos_);
    }
  }

  Formula comparison() {
    Formula lhs = additive();
    for (;;) {
      skip_ws();
      BinaryOp op;
      char c = cur();
      char n = at(pos_ + 1);
      if (c == '=') {
        op = BinaryOp::Eq;
        pos_ += 1;
      } else if (c == '<' && n == '>') {
        op = BinaryOp::Ne;
        pos_ += 2;
      } else if (c == '<' && n == '=') {
        op = BinaryOp::Le;
        pos_ += 2;
      } else if (c == '>' && n == '=') {
        op = BinaryOp::Ge;
        pos_ += 2;
      } else if (c == '<') {
        op = BinaryOp::Lt;
        pos_ += 1;
      } else if (c == '>' && n != '<') {
        op = BinaryOp::Gt;
        pos_ += 1;
      } else {
        return lhs;
      }
      lhs = Formula::binary(op, lhs, additive());
    }
  }

  Formula additive() {
    Formula lhs = multiplicative();
    for (;;) {
      skip_ws();
      if (cur() == '+') {
        ++pos_;
        lhs = Formula::binary(BinaryOp::Add, lhs, multiplicative());
      } else if (cur() == '-') {
        ++pos_;
        lhs = Formula::binary(BinaryOp::Sub, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  Formula multiplicative() {
    Formula lhs = unary();
    for (;;) {
      skip_ws();
      if (cur() == '*') {
        ++pos_;
        lhs = Formula::binary(BinaryOp::Mul, lhs, unary());
      } else if (cur() == '/') {
        ++pos_;
        lhs = Formula::binary(BinaryOp::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  // A minus sign written directly against a numeric literal is part of the
  // literal, unless the literal is the base of `^` (so -2^2 is -(2^2)).
  Formula unary() {
    skip_ws();
    if (cur() == '-') {
      ++pos_;
      if (digit(cur())) {
        std::size_t save = pos_;
        double v = number_literal();
        skip_ws();
        if (cur() != '^') return Formula::number(-v);
        pos_ = save;
      }
      return Formula::negate(unary());
    }
    if (cur() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Formula power() {
    Formula base = primary();
    skip_ws();
    if (cur() == '^') {
      ++pos_;
      return Formula::binary(BinaryOp::Pow, base, unary());
    }
    return base;
  }

  double number_literal() {
    std::size_t start = pos_;
    while (digit(cur())) ++pos_;
    if (cur() == '.' && digit(at(pos_ + 1))) {
      ++pos_;
      while (digit(cur())) ++pos_;
    }
    if ((cur() == 'e' || cur() == 'E') &&
        (digit(at(pos_ + 1)) ||
         ((at(pos_ + 1) == '+' || at(pos_ + 1) == '-') && digit(at(pos_ + 2))))) {
      pos_ += 2;
      while (digit(cur())) ++pos_;
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_) fail("bad number", start);
    return v;
  }

  Coord integer_literal() {
    std::size_t start = pos_;
    while (digit(cur())) ++pos_;
    Coord v = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_) fail("bad integer", start);
    return v;
  }

  Coord signed_integer() {
    skip_ws();
    bool neg = false;
    if (cur() == '-' || cur() == '+') {
      neg = cur() == '-';
      ++pos_;
      skip_ws();
    }
    if (!digit(cur())) fail("expected an integer", pos_, eof());
    Coord v = integer_literal();
    return neg ? -v : v;
  }

  std::string word() {
    std::size_t start = pos_;
    while (ident_char(cur())) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string string_literal() {
    std::size_t start = pos_;
    ++pos_;  // opening quote
    std::string out;
    for (;;) {
      if (eof()) fail("unterminated string", start, true);
      char c = src_[pos_++];
      if (c == '"') {
        if (cur() == '"') {
          out.push_back('"');
          ++pos_;
        } else {
          return out;
        }
      } else {
        out.push_back(c);
      }
    }
  }

  Formula primary() {
    skip_ws();
    std::size_t start = pos_;
    if (eof()) fail("unexpected end of formula", pos_, true);
    char c = cur();
    if (c == '(') {
      ++pos_;
      Formula inner = comparison();
      expect(')');
      return inner;
    }
    if (c == '"') return Formula::text(string_literal());
    if (digit(c)) {
      if (opt_.dialect == Dialect::A1) {
        if (auto rows = row_range(opt_.default_sheet)) return *rows;
      }
      return Formula::number(number_literal());
    }
    if (opt_.dialect == Dialect::R1C1) {
      if (auto r = r1c1_reference(opt_.default_sheet)) return *r;
    }
    if (!ident_start(c)) fail(std::string("unexpected character '") + c + "'", start);

    std::string w = word();
    if (cur() == '!') {
      ++pos_;
      return sheet_reference(w, start);
    }
    skip_ws();
    if (cur() == '(') return call(w);
    if (cur() == '[') return element(w, start);
    std::string up = upper(w);
    if (up == "TRUE") return Formula::boolean(true);
    if (up == "FALSE") return Formula::boolean(false);
    if (opt_.dialect == Dialect::A1) {
      pos_ = start + w.size();
      if (auto r = a1_reference(w, opt_.default_sheet, start)) return *r;
    }
    return Formula::name(w);
  }

  // After "Sheet!": the reference proper.
  Formula sheet_reference(const std::string& sheet, std::size_t start) {
    if (opt_.dialect == Dialect::R1C1) {
      if (auto r = r1c1_reference(sheet)) return *r;
      fail("expected an R1C1 reference after '" + sheet + "!'", pos_);
    }
    if (digit(cur())) {
      if (auto rows = row_range(sheet)) return *rows;
      fail("expected a row range", pos_);
    }
    std::size_t wstart = pos_;
    std::string w = word();
    if (auto r = a1_reference(w, sheet, wstart)) return *r;
    fail("expected a cell reference after '" + sheet + "!'", start);
  }

  // `w` has been consumed. Reads a cell or a range of cells or columns.
  std::optional<Formula> a1_reference(const std::string& w, const std::string& sheet,
                                      std::size_t wstart) {
    if (auto a = CellAddr::parse(w, sheet)) {
      if (cur() == ':') {
        std::size_t save = pos_;
        ++pos_;
        std::string w2 = word();
        if (auto b = CellAddr::parse(w2, sheet)) {
          return Formula::range(Rect::cells(sheet, std::min(a->col, b->col),
                                            std::min(a->row, b->row), std::max(a->col, b->col),
                                            std::max(a->row, b->row)));
        }
        pos_ = save;
        fail("expected a cell after ':'", save + 1);
      }
      return Formula::abs_ref(*a);
    }
    if (all_upper(w) && w.size() <= 13 && cur() == ':') {
      std::size_t save = pos_;
      ++pos_;
      std::string w2 = word();
      if (all_upper(w2) && w2.size() <= 13) {
        Coord c1 = letters_to_col(w), c2 = letters_to_col(w2);
        return Formula::range(Rect::columns(sheet, std::min(c1, c2), std::max(c1, c2)));
      }
      pos_ = save;
    }
    (void)wstart;
    return std::nullopt;
  }

  // "2:3" row range; nullopt (position restored) if not one.
  std::optional<Formula> row_range(const std::string& sheet) {
    std::size_t save = pos_;
    while (digit(cur())) ++pos_;
    if (cur() != ':' || !digit(at(pos_ + 1))) {
      pos_ = save;
      return std::nullopt;
    }
    pos_ = save;
    Coord r1 = integer_literal();
    ++pos_;
    Coord r2 = integer_literal();
    if (ident_char(cur()) || cur() == '.') {
      pos_ = save;
      return std::nullopt;
    }
    if (r1 < 1 || r2 < 1) fail("row numbers must be >= 1", save);
    return Formula::range(Rect::rows(sheet, std::min(r1, r2), std::max(r1, r2)));
  }

  // R/C axis: "[k]" relative, digits absolute, nothing relative zero.
  bool r1c1_axis(bool& rel, Coord& value) {
    if (cur() == '[') {
      ++pos_;
      value = signed_integer();
      skip_ws();
      if (cur() != ']') return false;
      ++pos_;
      rel = true;
      return true;
    }
    if (digit(cur())) {
      value = integer_literal();
      rel = false;
      return true;
    }
    rel = true;
    value = 0;
    return true;
  }

  std::optional<R1C1Part> r1c1_part() {
    std::size_t save = pos_;
    R1C1Part p;
    if (cur() != 'R') return std::nullopt;
    ++pos_;
    if (!r1c1_axis(p.row_rel, p.row) || cur() != 'C') {
      pos_ = save;
      return std::nullopt;
    }
    ++pos_;
    if (!r1c1_axis(p.col_rel, p.col) || ident_char(cur()) || cur() == '(' || cur() == '[') {
      pos_ = save;
      return std::nullopt;
    }
    return p;
  }

  std::optional<Formula> r1c1_reference(const std::string& sheet) {
    std::size_t start = pos_;
    // Whole-row "R2:R3" and whole-column "C1:C3" ranges.
    for (char axis : {'R', 'C'}) {
      if (cur() == axis && digit(at(pos_ + 1))) {
        std::size_t save = pos_;
        ++pos_;
        Coord a = integer_literal();
        if (cur() == ':' && at(pos_ + 1) == axis && digit(at(pos_ + 2))) {
          pos_ += 2;
          Coord b = integer_literal();
          if (!ident_char(cur())) {
            if (a < 1 || b < 1) fail("R1C1 coordinates must be >= 1", save);
            Coord lo = std::min(a, b), hi = std::max(a, b);
            return Formula::range(axis == 'R' ? Rect::rows(sheet, lo, hi)
                                              : Rect::columns(sheet, lo, hi));
          }
        }
        pos_ = save;
      }
    }
    auto first = r1c1_part();
    if (!first) return std::nullopt;
    auto check = [&](const R1C1Part& p) {
      if (p.row_rel != p.col_rel) fail("mixed absolute/relative R1C1 reference", start);
      if (!p.row_rel && (p.row < 1 || p.col < 1)) fail("R1C1 coordinates must be >= 1", start);
      if (p.row_rel && sheet != opt_.default_sheet)
        fail("relative R1C1 reference cannot name another sheet", start);
    };
    check(*first);
    if (cur() == ':') {
      std::size_t save = pos_;
      ++pos_;
      auto second = r1c1_part();
      if (!second) {
        pos_ = save;
        fail("expected an R1C1 reference after ':'", save + 1);
      }
      check(*second);
      if (first->row_rel != second->row_rel) fail("mixed absolute/relative R1C1 range", start);
      if (first->row_rel) {
        return Formula::rel_range(std::min(first->col, second->col),
                                  std::min(first->row, second->row),
                                  std::max(first->col, second->col),
                                  std::max(first->row, second->row));
      }
      return Formula::range(Rect::cells(sheet, std::min(first->col, second->col),
                                        std::min(first->row, second->row),
                                        std::max(first->col, second->col),
                                        std::max(first->row, second->row)));
    }
    if (first->row_rel) return Formula::rel_ref(first->col, first->row);
    return Formula::abs_ref(CellAddr(sheet, first->col, first->row));
  }

  Subscript subscript() {
    skip_ws();
    std::size_t start = pos_;
    if (ident_start(cur())) {
      std::string w = word();
      if (upper(w) != "HERE") fail("expected an integer or HERE in subscript", start);
      skip_ws();
      if (cur() == '+' || cur() == '-') {
        bool neg = cur() == '-';
        ++pos_;
        skip_ws();
        if (!digit(cur())) fail("expected an offset after HERE", pos_, eof());
        Coord k = integer_literal();
        return Subscript::relative(neg ? -k : k);
      }
      return Subscript::relative(0);
    }
    return Subscript::index(signed_integer());
  }

  Formula element(const std::string& name, std::size_t start) {
    expect('[');
    std::vector<Subscript> subs;
    subs.push_back(subscript());
    while (accept(',')) subs.push_back(subscript());
    expect(']');
    if (opt_.sheet_here_refs && name == opt_.default_sheet && subs.size() == 2 && subs[0].here &&
        subs[1].here) {
      if (cur() == ':') {
        std::size_t save = pos_;
        ++pos_;
        std::size_t wstart = pos_;
        std::string w2 = word();
        skip_ws();
        if (w2 != name || cur() != '[') fail("expected " + name + "[ HERE, HERE ] after ':'", wstart);
        expect('[');
        Subscript c2 = subscript();
        expect(',');
        Subscript r2 = subscript();
        expect(']');
        if (!c2.here || !r2.here) fail("relative range ends must both use HERE", save);
        return Formula::rel_range(std::min(subs[0].value, c2.value),
                                  std::min(subs[1].value, r2.value),
                                  std::max(subs[0].value, c2.value),
                                  std::max(subs[1].value, r2.value));
      }
      return Formula::rel_ref(subs[0].value, subs[1].value);
    }
    (void)start;
    return Formula::elem_ref(name, std::move(subs));
  }

  // A range on its own: "B2:B9", "A:C", "C5" or "(A:A,C:D)".
  CellRange standalone_range() {
    skip_ws();
    std::size_t start = pos_;
    if (cur() == '(') {
      if (auto r = range_list(true)) return r->as<RangeArg>()->range;
      fail("expected a range", start);
    }
    Formula f = primary();
    if (const auto* r = f.as<RangeArg>()) return r->range;
    if (const auto* a = f.as<AbsRef>()) return CellRange(Rect::cell(a->addr));
    // A bare column letter, as in "accounts2 @ B".
    if (const auto* n = f.as<NameRef>(); n && all_upper(n->name) && n->name.size() <= 13) {
      Coord c = letters_to_col(n->name);
      return CellRange(Rect::columns(opt_.default_sheet, c, c));
    }
    fail("expected a range", start);
  }

  // "(A1:A2,C1:C2)" as one multi-rectangle argument.
  std::optional<Formula> range_list(bool standalone = false) {
    std::size_t save = pos_;
    try {
      expect('(');
      std::vector<Rect> rects;
      do {
        Formula part = primary();
        if (const auto* r = part.as<RangeArg>()) {
          rects.insert(rects.end(), r->range.rects.begin(), r->range.rects.end());
        } else if (const auto* a = part.as<AbsRef>()) {
          rects.push_back(Rect::cell(a->addr));
        } else {
          throw SyntaxError("not a range", pos_, 0, 0);
        }
      } while (accept(','));
      expect(')');
      skip_ws();
      if (standalone || (rects.size() >= 2 && (cur() == ',' || cur() == ')')))
        return Formula::range(CellRange(std::move(rects)));
    } catch (const SyntaxError&) {
    }
    pos_ = save;
    return std::nullopt;
  }

  Formula call(const std::string& name) {
    expect('(');
    std::vector<Formula> args;
    if (!accept(')')) {
      do {
        skip_ws();
        if (cur() == '(') {
          if (auto r = range_list()) {
            args.push_back(*r);
            continue;
          }
        }
        args.push_back(comparison());
      } while (accept(','));
      expect(')');
    }
    if (upper(name) == "EMPTY" && args.empty()) return Formula::empty();
    return Formula::call(name, std::move(args));
  }

  std::string_view src_;
  std::size_t pos_;
  const ParseOptions& opt_;
};

std::string here_offset(Coord k, bool spaced) {
  if (k == 0) return "HERE";
  std::string sep = spaced ? " " : "";
  return "HERE" + sep + (k > 0 ? "+" : "-") + sep + std::to_string(k > 0 ? k : -k);
}

std::string r1c1_axis(char axis, Coord delta) {
  std::string out(1, axis);
  if (delta != 0) out += "[" + std::to_string(delta) + "]";
  return out;
}

class Printer {
 public:
  explicit Printer(const PrintOptions& o)
      : opt_(o), ctx_(o.anchor ? o.anchor->sheet : std::string(kDefaultSheet)) {}

  std::string print(const Formula& f) const {
    if (const auto* n = f.as<NumberConst>()) return format_number(n->value);
    if (const auto* t = f.as<TextConst>()) return quote_text(t->value);
    if (const auto* b = f.as<BoolConst>()) return b->value ? "TRUE" : "FALSE";
    if (f.as<EmptyConst>()) return "EMPTY()";
    if (const auto* a = f.as<AbsRef>()) return cell(a->addr);
    if (const auto* r = f.as<RelRef>()) return relative(r->dcol, r->drow);
    if (const auto* e = f.as<ElemRef>()) {
      std::string out = e->array + "[";
      for (std::size_t i = 0; i < e->subs.size(); ++i) {
        if (i) out += ",";
        const auto& s = e->subs[i];
        out += s.here ? here_offset(s.value, false) : std::to_string(s.value);
      }
      return out + "]";
    }
    if (const auto* n = f.as<NameRef>()) return n->name;
    if (const auto* u = f.as<Unary>()) {
      const Formula& x = u->operand;
      if (const auto* num = x.as<NumberConst>(); num && !std::signbit(num->value))
        return "-(" + print(x) + ")";
      return "-" + wrap(x, precedence(x) < kUnary);
    }
    if (const auto* b = f.as<Binary>()) {
      int p = precedence(f);
      bool lp, rp;
      if (b->op == BinaryOp::Pow) {
        lp = precedence(b->lhs) <= kPow;
        rp = precedence(b->rhs) < kUnary;
      } else {
        lp = precedence(b->lhs) < p;
        rp = precedence(b->rhs) <= p;
      }
      return wrap(b->lhs, lp) + std::string(op_symbol(b->op)) + wrap(b->rhs, rp);
    }
    if (const auto* c = f.as<Call>()) {
      std::string out = c->function + "(";
      for (std::size_t i = 0; i < c->args.size(); ++i) {
        if (i) out += ",";
        out += print(c->args[i]);
      }
      return out + ")";
    }
    if (const auto* r = f.as<RangeArg>()) {
      if (r->range.rects.size() == 1) return rect(r->range.rects.front());
      std::string out = "(";
      for (std::size_t i = 0; i < r->range.rects.size(); ++i) {
        if (i) out += ",";
        out += rect(r->range.rects[i]);
      }
      return out + ")";
    }
    const auto& rr = *f.as<RelRangeArg>();
    return relative(rr.dcol_lo, rr.drow_lo) + ":" + relative(rr.dcol_hi, rr.drow_hi);
  }

 private:
  static constexpr int kCompare = 1, kAdd = 2, kMul = 3, kUnary = 4, kPow = 5, kAtom = 6;

  static int precedence(const Formula& f) {
    if (const auto* b = f.as<Binary>()) {
      switch (b->op) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return kAdd;
        case BinaryOp::Mul:
        case BinaryOp::Div: return kMul;
        case BinaryOp::Pow: return kPow;
        default: return kCompare;
      }
    }
    if (f.as<Unary>()) return kUnary;
    if (const auto* n = f.as<NumberConst>(); n && std::signbit(n->value)) return kUnary;
    return kAtom;
  }

  std::string wrap(const Formula& f, bool parens) const {
    return parens ? "(" + print(f) + ")" : print(f);
  }

  std::string prefix(const std::string& sheet) const {
    return sheet == ctx_ ? std::string() : sheet + "!";
  }

  std::string cell(const CellAddr& a) const {
    if (opt_.dialect == Dialect::R1C1)
      return prefix(a.sheet) + "R" + std::to_string(a.row) + "C" + std::to_string(a.col);
    return a.to_string(ctx_);
  }

  std::string rect(const Rect& r) const {
    std::string p = prefix(r.sheet);
    bool r1c1 = opt_.dialect == Dialect::R1C1;
    if (r.bounded()) {
      if (r1c1) {
        return p + "R" + std::to_string(*r.row_lo) + "C" + std::to_string(*r.col_lo) + ":R" +
               std::to_string(*r.row_hi) + "C" + std::to_string(*r.col_hi);
      }
      return p + col_to_letters(*r.col_lo) + std::to_string(*r.row_lo) + ":" +
             col_to_letters(*r.col_hi) + std::to_string(*r.row_hi);
    }
    if (r.col_lo) {
      if (r1c1) return p + "C" + std::to_string(*r.col_lo) + ":C" + std::to_string(*r.col_hi);
      return p + col_to_letters(*r.col_lo) + ":" + col_to_letters(*r.col_hi);
    }
    if (r.row_lo) {
      if (r1c1) return p + "R" + std::to_string(*r.row_lo) + ":R" + std::to_string(*r.row_hi);
      return p + std::to_string(*r.row_lo) + ":" + std::to_string(*r.row_hi);
    }
    throw DomainError("cannot print a range unbounded on every side");
  }

  std::string relative(Coord dc, Coord dr) const {
    if (opt_.here_notation)
      return ctx_ + "[ " + here_offset(dc, true) + ", " + here_offset(dr, true) + " ]";
    if (opt_.dialect == Dialect::R1C1) return r1c1_axis('R', dr) + r1c1_axis('C', dc);
    if (!opt_.anchor) throw AnchorError("relative reference needs an anchor cell to print as A1");
    return opt_.anchor->offset(dc, dr).to_string(ctx_);
  }

  const PrintOptions& opt_;
  std::string ctx_;
};

}  // namespace

std::pair<std::size_t, std::size_t> line_column(std::string_view src, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < src.size(); ++i) {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Formula parse_formula(std::string_view src, Dialect dialect) {
  ParseOptions o;
  o.dialect = dialect;
  return parse_formula(src, o);
}

Formula parse_formula(std::string_view src, const ParseOptions& options) {
  FormulaParser p(src, 0, options);
  Formula f = p.parse();
  p.skip_ws();
  if (p.pos() != src.size()) {
    auto [line, col] = line_column(src, p.pos());
    throw SyntaxError("unexpected '" + std::string(src.substr(p.pos(), 1)) + "'", p.pos(), line,
                      col);
  }
  return f;
}

FormulaPrefix parse_formula_prefix(std::string_view src, std::size_t pos,
                                   const ParseOptions& options) {
  FormulaParser p(src, pos, options);
  Formula f = p.parse();
  return {std::move(f), p.pos()};
}

RangePrefix parse_range_prefix(std::string_view src, std::size_t pos,
                               const ParseOptions& options) {
  FormulaParser p(src, pos, options);
  CellRange r = p.parse_range();
  return {std::move(r), p.pos()};
}

CellRange parse_range(std::string_view src, const ParseOptions& options) {
  auto [r, end] = parse_range_prefix(src, 0, options);
  FormulaParser tail(src, end, options);
  tail.skip_ws();
  if (tail.pos() != src.size()) {
    auto [line, col] = line_column(src, tail.pos());
    throw SyntaxError("unexpected '" + std::string(src.substr(tail.pos(), 1)) + "' after range",
                      tail.pos(), line, col);
  }
  return r;
}

std::string print_formula(const Formula& f, Dialect dialect,
                          const std::optional<CellAddr>& anchor) {
  PrintOptions o;
  o.dialect = dialect;
  o.anchor = anchor;
  return print_formula(f, o);
}

std::string print_formula(const Formula& f, const PrintOptions& options) {
  return Printer(options).print(f);
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "#NUM!";
  if (std::signbit(v)) return "-" + format_number(-v);
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string quote_text(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace sheetalg
