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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sheetalg {

using Coord = std::int64_t;

// Sheet assumed by a bare A1-style reference.
inline constexpr std::string_view kDefaultSheet = "Sheet1";

// Bijective base-26 column names: 1 -> "A", 26 -> "Z", 27 -> "AA".
std::string col_to_letters(Coord n);
Coord letters_to_col(std::string_view letters);

bool is_identifier(std::string_view text);

// An absolute cell position. Column first, row second, both >= 1.
struct CellAddr {
  std::string sheet{kDefaultSheet};
  Coord col = 1;
  Coord row = 1;

  CellAddr() = default;
  CellAddr(std::string sheet_name, Coord c, Coord r);
  CellAddr(Coord c, Coord r) : CellAddr(std::string(kDefaultSheet), c, r) {}

  // Parses "B7" or "Sheet2!B7". Returns nullopt if `text` is not a reference.
  static std::optional<CellAddr> parse(std::string_view text,
                                       std::string_view default_sheet = kDefaultSheet);

  // "B7", with a "Sheet!" prefix when the sheet differs from `context_sheet`.
  std::string to_string(std::string_view context_sheet = kDefaultSheet) const;

  // Moves by (dc, dr); throws OutOfGridError if a coordinate drops below 1.
  CellAddr offset(Coord dc, Coord dr) const;

  friend bool operator==(const CellAddr&, const CellAddr&) = default;
};

// Canonical order: sheet, then row, then column.
std::strong_ordering operator<=>(const CellAddr& a, const CellAddr& b);

// One rectangle of a range. A missing bound is unbounded on that side, so
// "A:C" has no row bounds and "2:3" has no column bounds.
struct Rect {
  std::string sheet{kDefaultSheet};
  std::optional<Coord> col_lo, col_hi, row_lo, row_hi;

  static Rect cells(std::string sheet, Coord c1, Coord r1, Coord c2, Coord r2);
  static Rect cell(const CellAddr& a);
  static Rect columns(std::string sheet, Coord c1, Coord c2);
  static Rect rows(std::string sheet, Coord r1, Coord r2);

  bool bounded() const { return col_lo && col_hi && row_lo && row_hi; }
  bool contains(const CellAddr& a) const;
  bool single_cell() const;
  CellAddr top_left() const;  // requires bounded()
  Coord width() const { return *col_hi - *col_lo + 1; }
  Coord height() const { return *row_hi - *row_lo + 1; }

  // Throws DomainError when a bounded side is inverted or below 1.
  void validate() const;

  std::string to_string(std::string_view context_sheet = kDefaultSheet) const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

// A possibly non-contiguous region: the union of its rectangles.
struct CellRange {
  std::vector<Rect> rects;

  CellRange() = default;
  explicit CellRange(std::vector<Rect> r);
  CellRange(Rect r) : CellRange(std::vector<Rect>{std::move(r)}) {}  // NOLINT

  bool bounded() const;
  bool contains(const CellAddr& a) const;
  std::size_t cell_count() const;  // requires bounded()
  std::optional<CellAddr> single_cell() const;

  std::string to_string(std::string_view context_sheet = kDefaultSheet) const;

  friend bool operator==(const CellRange&, const CellRange&) = default;
};

// Cells rectangle by rectangle, row-major inside each; later duplicates dropped.
// Throws BoundednessError for an unbounded range.
std::vector<CellAddr> enumerate_range(const CellRange& r);

bool range_contains(const CellRange& r, const CellAddr& a);

}  // namespace sheetalg

template <>
struct std::hash<sheetalg::CellAddr> {
  std::size_t operator()(const sheetalg::CellAddr& a) const noexcept {
    std::size_t h = std::hash<std::string>{}(a.sheet);
    h ^= std::hash<std::int64_t>{}(a.col) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::int64_t>{}(a.row) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};
