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

#include "sheetalg/listing.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <tuple>

#include "sheetalg/algebra.hpp"
#include "sheetalg/errors.hpp"
#include "sheetalg/formula_text.hpp"
#include "sheetalg/rewrite.hpp"

namespace sheetalg {

namespace {

struct Progression {
  Coord lo, hi, step;
  auto operator<=>(const Progression&) const = default;
};

// Greedy split of a sorted list into arithmetic runs.
std::vector<Progression> progressions(const std::vector<Coord>& v) {
  std::vector<Progression> out;
  std::size_t i = 0;
  while (i < v.size()) {
    if (i + 1 == v.size()) {
      out.push_back({v[i], v[i], 1});
      break;
    }
    Coord step = v[i + 1] - v[i];
    std::size_t j = i + 1;
    while (j + 1 < v.size() && v[j + 1] - v[j] == step) ++j;
    out.push_back({v[i], v[j], step});
    i = j + 1;
  }
  return out;
}

std::string axis_text(const Progression& p) {
  if (p.lo == p.hi) return "{" + std::to_string(p.lo) + "}";
  std::string out = "{ " + std::to_string(p.lo) + ".." + std::to_string(p.hi);
  if (p.step != 1) out += " by " + std::to_string(p.step);
  return out + " }";
}

struct Line {
  CellAddr first;
  std::string text;
};

void group_lines(const EquationSet& s, std::vector<Line>& out) {
  for (const auto& g : group_by_relative_form(s, true)) {
    const CellAddr& origin = g.cells.front();
    std::map<Coord, std::vector<Coord>> rows_by_col;
    for (const auto& c : g.cells) rows_by_col[c.col].push_back(c.row);

    std::map<Progression, std::vector<Coord>> cols_by_rows;
    for (auto& [col, rows] : rows_by_col) {
      std::sort(rows.begin(), rows.end());
      for (const auto& p : progressions(rows)) cols_by_rows[p].push_back(col);
    }

    PrintOptions here;
    here.anchor = origin;
    here.here_notation = true;
    std::string formula;  // printed on first use

    for (const auto& [rows, cols] : cols_by_rows) {
      for (const auto& cp : progressions(cols)) {
        CellAddr first(g.sheet, cp.lo, rows.lo);
        if (cp.lo == cp.hi && rows.lo == rows.hi) {
          out.push_back({first, equation_text(first, *s.find(first))});
          continue;
        }
        if (formula.empty()) formula = print_formula(relativize(*s.find(origin), origin), here);
        out.push_back({first, g.sheet + "[ " + axis_text(cp) + " >< " + axis_text(rows) +
                                  " ] = " + formula});
      }
    }
  }
}

std::string header_lines(const Workbook& wb) {
  std::string out;
  std::vector<const LayoutDirective*> layouts;
  for (const auto& d : wb.layouts) layouts.push_back(&d);
  std::sort(layouts.begin(), layouts.end(),
            [](const auto* a, const auto* b) { return a->array < b->array; });
  for (const auto* d : layouts) out += d->to_string() + "\n";
  for (const auto& [name, range] : wb.equations.names()) out += name_text(name, range) + "\n";
  return out;
}

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\r\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string show(const EquationSet& s, bool grouped) { return show(Workbook{s, {}}, grouped); }

std::string show(const Workbook& wb, bool grouped) {
  const EquationSet& s = wb.equations;
  std::string out = header_lines(wb);
  if (!grouped) {
    for (const auto& [lhs, rhs] : s) out += equation_text(lhs, rhs) + "\n";
    return out;
  }
  std::vector<Line> lines;
  group_lines(s, lines);
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return std::tie(a.first, a.text) < std::tie(b.first, b.text);
  });
  for (const auto& l : lines) out += l.text + "\n";
  for (const auto& [lhs, rhs] : s)
    if (as_elem(lhs)) out += equation_text(lhs, rhs) + "\n";
  return out;
}

Workbook parse_listing(std::string_view text) {
  Workbook wb;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    // The parser sees text only up to the end of this line.
    std::string_view upto = text.substr(0, line_end);
    std::size_t pos = skip_blank(upto, line_start);
    if (pos < upto.size()) {
      pos = skip_blank(upto, parse_item(upto, pos, wb));
      if (pos < upto.size() && upto[pos] == '.') pos = skip_blank(upto, pos + 1);
      if (pos < upto.size()) {
        auto [line, col] = line_column(text, pos);
        throw SyntaxError("unexpected text after item", pos, line, col);
      }
    }
    line_start = line_end + 1;
  }
  return wb;
}

std::string to_csv(const ValueGrid& grid) {
  if (grid.empty()) return "";
  const std::string& sheet = grid.begin()->first.sheet;
  Coord c_lo = grid.begin()->first.col, c_hi = c_lo;
  Coord r_lo = grid.begin()->first.row, r_hi = r_lo;
  for (const auto& [a, v] : grid) {
    if (a.sheet != sheet)
      throw DomainError("CSV export needs a single sheet, found " + sheet + " and " + a.sheet);
    c_lo = std::min(c_lo, a.col);
    c_hi = std::max(c_hi, a.col);
    r_lo = std::min(r_lo, a.row);
    r_hi = std::max(r_hi, a.row);
  }
  std::string out;
  for (Coord r = r_lo; r <= r_hi; ++r) {
    for (Coord c = c_lo; c <= c_hi; ++c) {
      if (c > c_lo) out += ',';
      auto it = grid.find(CellAddr(sheet, c, r));
      if (it != grid.end()) out += csv_field(it->second.to_string());
    }
    out += "\r\n";
  }
  return out;
}

void export_csv(const ValueGrid& grid, const std::string& path) {
  std::string text = to_csv(grid);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("error writing " + path);
}

}  // namespace sheetalg
