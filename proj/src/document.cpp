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

#include "sheetalg/document.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "sheetalg/errors.hpp"
#include "sheetalg/formula_text.hpp"

namespace sheetalg {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

struct Segment {
  Coord lo, hi, step;
};

class ItemReader {
 public:
  ItemReader(std::string_view src, std::size_t pos) : src_(src), pos_(pos) {}

  std::size_t pos() const { return pos_; }

  void item(Workbook& into) {
    skip();
    std::size_t start = pos_;
    if (!ident_start(cur())) fail("expected an equation, layout or name", start, eof());
    std::string w = word();
    if ((w == "layout" || w == "name") && keyword_item(w)) {
      if (w == "layout") {
        into.layouts.add(layout());
      } else {
        named_range(into.equations);
      }
      return;
    }
    skip();
    if (cur() == '[') {
      std::size_t bracket = pos_;
      ++pos_;
      skip();
      bool group = cur() == '{';
      pos_ = bracket;
      if (group) {
        group_item(w, into.equations);
      } else {
        array_item(w, into.equations);
      }
      return;
    }
    cell_item(w, start, into.equations);
  }

  // Whether an item starts here, judged without consuming anything.
  bool looks_like_item() {
    skip();
    if (!ident_start(cur())) return false;
    std::string w = word();
    if (w == "layout" || w == "name") {
      std::size_t save = pos_;
      bool yes = keyword_item(w);
      pos_ = save;
      if (yes) return true;
    }
    if (cur() == '!') {
      ++pos_;
      word();
    }
    skip();
    if (cur() == '[') return true;
    return cur() == '=' && at(pos_ + 1) != '=';
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at, bool at_end = false) const {
    auto [line, col] = line_column(src_, at);
    throw SyntaxError(msg, at, line, col, at_end);
  }

  bool eof() const { return pos_ >= src_.size(); }
  char cur() const { return eof() ? '\0' : src_[pos_]; }
  char at(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }
  void skip() { pos_ = skip_blank(src_, pos_); }

  std::string word() {
    std::size_t start = pos_;
    while (ident_char(cur())) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip();
    if (cur() != c) fail(std::string("expected '") + c + "'", pos_, eof());
    ++pos_;
  }

  void expect_word(std::string_view w) {
    skip();
    std::size_t start = pos_;
    if (word() != w) fail("expected '" + std::string(w) + "'", start, eof());
  }

  Coord integer() {
    skip();
    std::size_t start = pos_;
    bool neg = false;
    if (cur() == '-' || cur() == '+') {
      neg = cur() == '-';
      ++pos_;
    }
    if (!digit(cur())) fail("expected an integer", pos_, eof());
    Coord v = 0;
    while (digit(cur())) {
      if (v > (static_cast<Coord>(1) << 58)) fail("integer too large", start);
      v = v * 10 + (cur() - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }

  // After the keyword: a layout needs `Name[`, a name needs `RANGE as`.
  bool keyword_item(const std::string& w) {
    std::size_t save = pos_;
    skip();
    bool yes = false;
    if (w == "layout") {
      if (ident_start(cur())) {
        word();
        skip();
        yes = cur() == '[';
      }
    } else if (cur() != '=' && cur() != '[') {
      try {
        ParseOptions o;
        o.comments = true;
        auto r = parse_range_prefix(src_, pos_, o);
        pos_ = skip_blank(src_, r.end);
        yes = word() == "as";
      } catch (const SyntaxError&) {
      }
    }
    pos_ = save;
    return yes;
  }

  ParseOptions formula_options(const std::string& sheet) const {
    ParseOptions o;
    o.default_sheet = sheet;
    o.sheet_here_refs = true;
    o.comments = true;
    return o;
  }

  Formula formula(const std::string& sheet) {
    auto p = parse_formula_prefix(src_, pos_, formula_options(sheet));
    pos_ = p.end;
    return p.formula;
  }

  LayoutDirective layout() {
    LayoutDirective d;
    skip();
    d.array = word();
    expect('[');
    do {
      Coord lo = integer();
      expect(':');
      skip();
      if (cur() == ']' || cur() == ',') fail("layout ranges need an upper bound", pos_);
      Coord hi = integer();
      d.box.push_back({lo, hi});
      skip();
    } while (cur() == ',' && (++pos_, true));
    expect(']');
    expect_word("as");
    skip();
    std::size_t at_anchor = pos_;
    d.anchor = cell_address(at_anchor);
    skip();
    std::size_t save = pos_;
    std::string dir = word();
    if (dir == "down") {
      d.orientation = Orientation::Down;
    } else if (dir == "right") {
      d.orientation = Orientation::Right;
    } else {
      pos_ = save;
    }
    return d;
  }

  CellAddr cell_address(std::size_t start) {
    std::string w = word();
    std::string sheet(kDefaultSheet);
    if (cur() == '!') {
      ++pos_;
      sheet = w;
      w = word();
    }
    auto a = CellAddr::parse(w, sheet);
    if (!a) fail("expected a cell reference", start, eof());
    return *a;
  }

  void named_range(EquationSet& into) {
    ParseOptions o;
    o.comments = true;
    auto r = parse_range_prefix(src_, pos_, o);
    pos_ = r.end;
    expect_word("as");
    skip();
    std::size_t start = pos_;
    std::string id = word();
    if (id.empty()) fail("expected a name after 'as'", start, eof());
    into.define_name(id, r.range);
  }

  void array_item(const std::string& name, EquationSet& into) {
    ArrayElem e{name, {}};
    expect('[');
    e.subs.push_back(integer());
    for (skip(); cur() == ','; skip()) {
      ++pos_;
      e.subs.push_back(integer());
    }
    expect(']');
    expect('=');
    into.add(e, formula(std::string(kDefaultSheet)));
  }

  void cell_item(std::string w, std::size_t start, EquationSet& into) {
    std::string sheet(kDefaultSheet);
    if (cur() == '!') {
      ++pos_;
      sheet = w;
      w = word();
    }
    auto a = CellAddr::parse(w, sheet);
    if (!a) fail("expected a cell reference or array element", start);
    expect('=');
    into.add(*a, formula(a->sheet));
  }

  std::vector<Segment> axis() {
    expect('{');
    std::vector<Segment> out;
    do {
      Segment s;
      s.lo = s.hi = integer();
      s.step = 1;
      skip();
      if (cur() == '.' && at(pos_ + 1) == '.') {
        pos_ += 2;
        s.hi = integer();
        skip();
        std::size_t save = pos_;
        if (word() == "by") {
          s.step = integer();
          if (s.step <= 0) fail("step must be positive", save);
        } else {
          pos_ = save;
        }
        if (s.hi < s.lo) fail("descending range in group", save);
      }
      out.push_back(s);
      skip();
    } while (cur() == ',' && (++pos_, true));
    expect('}');
    return out;
  }

  void group_item(const std::string& sheet, EquationSet& into) {
    if (!is_identifier(sheet)) fail("bad sheet name", pos_);
    expect('[');
    auto cols = axis();
    skip();
    if (cur() != '>' || at(pos_ + 1) != '<') fail("expected '><'", pos_, eof());
    pos_ += 2;
    auto rows = axis();
    expect(']');
    expect('=');
    Formula f = formula(sheet);
    for (const auto& cs : cols)
      for (Coord c = cs.lo; c <= cs.hi; c += cs.step)
        for (const auto& rs : rows)
          for (Coord r = rs.lo; r <= rs.hi; r += rs.step) into.add(CellAddr(sheet, c, r), f);
  }

  std::string_view src_;
  std::size_t pos_;
};

bool has_suffix(const std::string& s, std::string_view suffix) {
  if (s.size() < suffix.size()) return false;
  std::string tail = s.substr(s.size() - suffix.size());
  std::transform(tail.begin(), tail.end(), tail.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return tail == suffix;
}

}  // namespace

std::size_t skip_blank(std::string_view src, std::size_t pos) {
  while (pos < src.size()) {
    char c = src[pos];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++pos;
    } else if (c == '#') {
      while (pos < src.size() && src[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  return pos;
}

std::size_t parse_item(std::string_view src, std::size_t pos, Workbook& into) {
  ItemReader r(src, pos);
  r.item(into);
  return r.pos();
}

bool starts_item(std::string_view src, std::size_t pos) {
  ItemReader r(src, pos);
  return r.looks_like_item();
}

Workbook parse_document(std::string_view src) {
  Workbook wb;
  std::size_t pos = skip_blank(src, 0);
  while (pos < src.size()) {
    pos = skip_blank(src, parse_item(src, pos, wb));
    if (pos < src.size()) {
      if (src[pos] != '.') {
        auto [line, col] = line_column(src, pos);
        throw SyntaxError("expected '.' after item", pos, line, col);
      }
      pos = skip_blank(src, pos + 1);
    }
  }
  return wb;
}

std::string equation_text(const Lhs& lhs, const Formula& rhs) {
  PrintOptions o;
  if (const auto* c = as_cell(lhs)) {
    o.anchor = *c;
    return c->to_string() + " = " + print_formula(rhs, o);
  }
  return std::get<ArrayElem>(lhs).to_string() + " = " + print_formula(rhs, o);
}

std::string name_text(const std::string& name, const CellRange& range) {
  return "name " + range.to_string() + " as " + name;
}

std::string save_document(const Workbook& wb) {
  std::string out = "# sheetalg document\n";
  std::vector<const LayoutDirective*> layouts;
  for (const auto& d : wb.layouts) layouts.push_back(&d);
  std::sort(layouts.begin(), layouts.end(),
            [](const auto* a, const auto* b) { return a->array < b->array; });
  for (const auto* d : layouts) out += d->to_string() + ".\n";
  for (const auto& [name, range] : wb.equations.names()) out += name_text(name, range) + ".\n";
  for (const auto& [lhs, rhs] : wb.equations) out += equation_text(lhs, rhs) + ".\n";
  return out;
}

Workbook load_workbook(const std::string& path) {
  for (std::string_view ext : {".xls", ".xlsx", ".xlsm", ".xlsb", ".ods"}) {
    if (has_suffix(path, ext))
      throw UnsupportedFormatError(path + ": binary spreadsheet formats are unsupported; " +
                                   "export the sheet as an .exc text document");
  }
  if (!has_suffix(path, ".exc"))
    throw UnsupportedFormatError(path + ": expected an .exc document");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

void save_workbook(const Workbook& wb, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << save_document(wb);
  if (!out) throw IoError("error writing " + path);
}

}  // namespace sheetalg
