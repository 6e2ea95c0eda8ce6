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

#include "sheetalg/address.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "sheetalg/errors.hpp"

namespace sheetalg {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// 26^13 still fits in an int64; 14 letters would not.
constexpr std::size_t kMaxLetters = 13;
constexpr std::size_t kMaxDigits = 18;

}  // namespace

std::string col_to_letters(Coord n) {
  if (n < 1) throw DomainError("column number must be >= 1, got " + std::to_string(n));
  std::string out;
  while (n > 0) {
    --n;
    out.push_back(static_cast<char>('A' + n % 26));
    n /= 26;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Coord letters_to_col(std::string_view letters) {
  if (letters.empty() || letters.size() > kMaxLetters)
    throw DomainError("invalid column letters '" + std::string(letters) + "'");
  Coord n = 0;
  for (char c : letters) {
    if (!is_upper(c)) throw DomainError("invalid column letters '" + std::string(letters) + "'");
    n = n * 26 + (c - 'A' + 1);
  }
  return n;
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto head = static_cast<unsigned char>(text.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

CellAddr::CellAddr(std::string sheet_name, Coord c, Coord r)
    : sheet(std::move(sheet_name)), col(c), row(r) {
  if (col < 1 || row < 1)
    throw OutOfGridError("cell coordinates must be >= 1 (col " + std::to_string(col) +
                         ", row " + std::to_string(row) + ")");
}

std::optional<CellAddr> CellAddr::parse(std::string_view text, std::string_view default_sheet) {
  std::string sheet(default_sheet);
  if (auto bang = text.find('!'); bang != std::string_view::npos) {
    if (!is_identifier(text.substr(0, bang))) return std::nullopt;
    sheet = std::string(text.substr(0, bang));
    text.remove_prefix(bang + 1);
  }
  std::size_t i = 0;
  while (i < text.size() && is_upper(text[i])) ++i;
  std::size_t letters = i;
  if (letters == 0 || letters > kMaxLetters) return std::nullopt;
  if (i >= text.size() || text[i] == '0') return std::nullopt;
  while (i < text.size() && is_digit(text[i])) ++i;
  if (i != text.size() || i - letters > kMaxDigits) return std::nullopt;
  Coord row = std::stoll(std::string(text.substr(letters)));
  return CellAddr(std::move(sheet), letters_to_col(text.substr(0, letters)), row);
}

std::string CellAddr::to_string(std::string_view context_sheet) const {
  std::string out;
  if (sheet != context_sheet) out = sheet + "!";
  out += col_to_letters(col);
  out += std::to_string(row);
  return out;
}

CellAddr CellAddr::offset(Coord dc, Coord dr) const { return CellAddr(sheet, col + dc, row + dr); }

std::strong_ordering operator<=>(const CellAddr& a, const CellAddr& b) {
  if (auto c = a.sheet <=> b.sheet; c != 0) return c;
  if (auto c = a.row <=> b.row; c != 0) return c;
  return a.col <=> b.col;
}

Rect Rect::cells(std::string sheet, Coord c1, Coord r1, Coord c2, Coord r2) {
  Rect r{std::move(sheet), c1, c2, r1, r2};
  r.validate();
  return r;
}

Rect Rect::cell(const CellAddr& a) { return cells(a.sheet, a.col, a.row, a.col, a.row); }

Rect Rect::columns(std::string sheet, Coord c1, Coord c2) {
  Rect r{std::move(sheet), c1, c2, std::nullopt, std::nullopt};
  r.validate();
  return r;
}

Rect Rect::rows(std::string sheet, Coord r1, Coord r2) {
  Rect r{std::move(sheet), std::nullopt, std::nullopt, r1, r2};
  r.validate();
  return r;
}

void Rect::validate() const {
  auto check = [](const std::optional<Coord>& lo, const std::optional<Coord>& hi,
                  const char* axis) {
    if (lo.has_value() != hi.has_value())
      throw DomainError(std::string("half-bounded ") + axis + " range");
    if (lo && (*lo < 1 || *hi < *lo))
      throw DomainError(std::string("invalid ") + axis + " bounds " + std::to_string(*lo) +
                        ".." + std::to_string(*hi));
  };
  check(col_lo, col_hi, "column");
  check(row_lo, row_hi, "row");
}

bool Rect::contains(const CellAddr& a) const {
  if (a.sheet != sheet) return false;
  if (col_lo && (a.col < *col_lo || a.col > *col_hi)) return false;
  if (row_lo && (a.row < *row_lo || a.row > *row_hi)) return false;
  return true;
}

bool Rect::single_cell() const { return bounded() && *col_lo == *col_hi && *row_lo == *row_hi; }

CellAddr Rect::top_left() const {
  if (!bounded()) throw BoundednessError("rectangle " + to_string() + " is unbounded");
  return CellAddr(sheet, *col_lo, *row_lo);
}

std::string Rect::to_string(std::string_view context_sheet) const {
  std::string out;
  if (sheet != context_sheet) out = sheet + "!";
  if (bounded()) {
    out += col_to_letters(*col_lo) + std::to_string(*row_lo);
    if (!single_cell()) out += ":" + col_to_letters(*col_hi) + std::to_string(*row_hi);
  } else if (col_lo) {
    out += col_to_letters(*col_lo) + ":" + col_to_letters(*col_hi);
  } else if (row_lo) {
    out += std::to_string(*row_lo) + ":" + std::to_string(*row_hi);
  } else {
    out += "*";
  }
  return out;
}

CellRange::CellRange(std::vector<Rect> r) : rects(std::move(r)) {
  for (const auto& rect : rects) rect.validate();
}

bool CellRange::bounded() const {
  return std::all_of(rects.begin(), rects.end(), [](const Rect& r) { return r.bounded(); });
}

bool CellRange::contains(const CellAddr& a) const {
  return std::any_of(rects.begin(), rects.end(), [&](const Rect& r) { return r.contains(a); });
}

std::size_t CellRange::cell_count() const { return enumerate_range(*this).size(); }

std::optional<CellAddr> CellRange::single_cell() const {
  if (rects.size() != 1 || !rects.front().single_cell()) return std::nullopt;
  return rects.front().top_left();
}

std::string CellRange::to_string(std::string_view context_sheet) const {
  if (rects.size() == 1) return rects.front().to_string(context_sheet);
  std::string out = "(";
  for (std::size_t i = 0; i < rects.size(); ++i) {
    if (i) out += ",";
    out += rects[i].to_string(context_sheet);
  }
  return out + ")";
}

std::vector<CellAddr> enumerate_range(const CellRange& r) {
  if (!r.bounded()) throw BoundednessError("cannot enumerate unbounded range " + r.to_string());
  std::vector<CellAddr> out;
  std::unordered_set<CellAddr> seen;
  for (const auto& rect : r.rects) {
    for (Coord row = *rect.row_lo; row <= *rect.row_hi; ++row) {
      for (Coord col = *rect.col_lo; col <= *rect.col_hi; ++col) {
        CellAddr a(rect.sheet, col, row);
        if (r.rects.size() == 1 || seen.insert(a).second) out.push_back(std::move(a));
      }
    }
  }
  return out;
}

bool range_contains(const CellRange& r, const CellAddr& a) { return r.contains(a); }

}  // namespace sheetalg
