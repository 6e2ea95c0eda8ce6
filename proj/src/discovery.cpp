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

#include "sheetalg/discovery.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace sheetalg {

namespace {

constexpr std::array<std::string_view, 12> kMonths = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};
constexpr std::array<std::string_view, 7> kWeekdays = {
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// 1-based position of a full or three-letter name, or 0.
template <std::size_t N>
int word_position(const std::array<std::string_view, N>& words, std::string_view text) {
  std::string w = lower(text);
  for (std::size_t i = 0; i < N; ++i) {
    if (w == words[i] || (w.size() == 3 && words[i].substr(0, 3) == w))
      return static_cast<int>(i + 1);
  }
  return 0;
}

template <std::size_t N>
std::optional<Coord> word_run(const std::array<std::string_view, N>& words,
                              const std::vector<std::string>& texts) {
  int first = word_position(words, texts[0]);
  if (!first) return std::nullopt;
  int prev = first;
  for (std::size_t i = 1; i < texts.size(); ++i) {
    int p = word_position(words, texts[i]);
    if (p != prev % static_cast<int>(N) + 1) return std::nullopt;
    prev = p;
  }
  return first;
}

bool side_adjacent(const Rect& r, const CellAddr& a) {
  if (a.sheet != r.sheet || r.contains(a)) return false;
  bool in_cols = a.col >= *r.col_lo && a.col <= *r.col_hi;
  bool in_rows = a.row >= *r.row_lo && a.row <= *r.row_hi;
  return (in_cols && (a.row == *r.row_lo - 1 || a.row == *r.row_hi + 1)) ||
         (in_rows && (a.col == *r.col_lo - 1 || a.col == *r.col_hi + 1));
}

bool rects_meet(const Rect& a, const Rect& b) {
  // Overlapping or sharing an edge.
  return a.sheet == b.sheet && *a.col_lo <= *b.col_hi + 1 && *b.col_lo <= *a.col_hi + 1 &&
         *a.row_lo <= *b.row_hi + 1 && *b.row_lo <= *a.row_hi + 1 &&
         !((*a.col_lo == *b.col_hi + 1 || *b.col_lo == *a.col_hi + 1) &&
           (*a.row_lo == *b.row_hi + 1 || *b.row_lo == *a.row_hi + 1));
}

bool rects_overlap(const Rect& a, const Rect& b) {
  return a.sheet == b.sheet && *a.col_lo <= *b.col_hi && *b.col_lo <= *a.col_hi &&
         *a.row_lo <= *b.row_hi && *b.row_lo <= *a.row_hi;
}

Rect hull(const Rect& a, const Rect& b) {
  return Rect::cells(a.sheet, std::min(*a.col_lo, *b.col_lo), std::min(*a.row_lo, *b.row_lo),
                     std::max(*a.col_hi, *b.col_hi), std::max(*a.row_hi, *b.row_hi));
}

struct Block {
  Rect box;
  std::vector<CellAddr> cells;  // the non-text cells inside
};

void collect_sum_ranges(const Formula& f, std::vector<Rect>& out) {
  if (const auto* c = f.as<Call>(); c && c->function == "SUM") {
    for (const auto& a : c->args) {
      const auto* r = a.as<RangeArg>();
      if (r && r->range.rects.size() == 1 && r->range.bounded()) out.push_back(r->range.rects[0]);
    }
  }
  for (const auto& k : detail::children(f)) collect_sum_ranges(k, out);
}

std::string unique_name(std::string base, std::set<std::string>& used) {
  std::string name = base;
  for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
  used.insert(name);
  return name;
}

}  // namespace

std::vector<FormulaGroup> discover_groups(const EquationSet& s) {
  auto groups = group_by_relative_form(s, false);
  std::stable_sort(groups.begin(), groups.end(), [](const FormulaGroup& a, const FormulaGroup& b) {
    return a.cells.size() > b.cells.size();
  });
  return groups;
}

std::vector<Rect> discover_blocks(const EquationSet& s) {
  std::unordered_map<CellAddr, bool> occupied;  // cell -> holds text
  std::vector<CellAddr> solid;
  for (const auto& [lhs, rhs] : s) {
    const auto* c = as_cell(lhs);
    if (!c) continue;
    bool text = rhs.as<TextConst>() != nullptr;
    occupied.emplace(*c, text);
    if (!text) solid.push_back(*c);
  }
  auto is_solid = [&](const CellAddr& a) {
    auto it = occupied.find(a);
    return it != occupied.end() && !it->second;
  };
  auto is_text = [&](const CellAddr& a) {
    auto it = occupied.find(a);
    return it != occupied.end() && it->second;
  };

  // Connected components of non-text cells (edge neighbours).
  std::vector<Block> blocks;
  std::unordered_set<CellAddr> seen;
  for (const auto& start : solid) {
    if (!seen.insert(start).second) continue;
    Block b{Rect::cell(start), {}};
    std::deque<CellAddr> queue{start};
    while (!queue.empty()) {
      CellAddr a = queue.front();
      queue.pop_front();
      b.cells.push_back(a);
      b.box = hull(b.box, Rect::cell(a));
      const std::array<std::pair<Coord, Coord>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
      for (auto [dc, dr] : steps) {
        if (a.col + dc < 1 || a.row + dr < 1) continue;
        CellAddr n(a.sheet, a.col + dc, a.row + dr);
        if (is_solid(n) && seen.insert(n).second) queue.push_back(n);
      }
    }
    blocks.push_back(std::move(b));
  }

  // A SUM over text-free cells widens the blocks it covers, and the block
  // holding the SUM when the range touches it.
  for (const auto& [lhs, rhs] : s) {
    const auto* c = as_cell(lhs);
    if (!c || is_text(*c)) continue;
    std::vector<Rect> ranges;
    collect_sum_ranges(rhs, ranges);
    for (const auto& r : ranges) {
      if (r.sheet != c->sheet || r.width() * r.height() > 100000) continue;
      bool clean = true;
      for (const auto& a : enumerate_range(r))
        if (is_text(a)) clean = false;
      if (!clean) continue;
      for (auto& b : blocks)
        if (rects_overlap(b.box, r) || (b.box.contains(*c) && rects_meet(b.box, r)))
          b.box = hull(b.box, r);
    }
  }

  // Merge blocks that overlap or have a non-text cell against each other's edge.
  auto interact = [&](const Block& a, const Block& b) {
    if (a.box.sheet != b.box.sheet) return false;
    if (rects_overlap(a.box, b.box)) return true;
    for (const auto& c : b.cells)
      if (side_adjacent(a.box, c)) return true;
    for (const auto& c : a.cells)
      if (side_adjacent(b.box, c)) return true;
    return false;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < blocks.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        if (!interact(blocks[i], blocks[j])) continue;
        blocks[i].box = hull(blocks[i].box, blocks[j].box);
        blocks[i].cells.insert(blocks[i].cells.end(), blocks[j].cells.begin(),
                               blocks[j].cells.end());
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
  }

  std::vector<Rect> out;
  for (auto& b : blocks) out.push_back(std::move(b.box));
  std::sort(out.begin(), out.end(), [](const Rect& a, const Rect& b) {
    return std::tie(a.sheet, *a.row_lo, *a.col_lo) < std::tie(b.sheet, *b.row_lo, *b.col_lo);
  });
  return out;
}

std::string sanitize_identifier(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == ' ') {
      out.push_back('_');
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      out.push_back(c);
    }
  }
  // Trim underscores left by leading or trailing spaces.
  auto first = out.find_first_not_of('_');
  if (first == std::string::npos) return "";
  out = out.substr(first, out.find_last_not_of('_') - first + 1);
  if (std::isdigit(static_cast<unsigned char>(out[0]))) out.insert(out.begin(), '_');
  return out;
}

BlockLabels infer_labels(const EquationSet& s, const Rect& block) {
  auto label_at = [&](Coord col, Coord row) -> std::optional<LabelCandidate> {
    if (col < 1 || row < 1) return std::nullopt;
    CellAddr a(block.sheet, col, row);
    const Formula* f = s.find(a);
    const auto* t = f ? f->as<TextConst>() : nullptr;
    if (!t) return std::nullopt;
    std::string name = sanitize_identifier(t->value);
    if (name.empty()) return std::nullopt;
    return LabelCandidate{name, a, t->value};
  };

  BlockLabels out;
  for (Coord col = *block.col_lo; col <= *block.col_hi; ++col) {
    std::optional<LabelCandidate> found;
    for (Coord up = 1; up <= 2 && !found; ++up) found = label_at(col, *block.row_lo - up);
    out.columns.push_back(found ? *found : LabelCandidate{"col_" + col_to_letters(col), {}, ""});
  }
  for (Coord row = *block.row_lo; row <= *block.row_hi; ++row) {
    std::optional<LabelCandidate> found;
    for (Coord left = 1; left <= 2 && !found; ++left) found = label_at(*block.col_lo - left, row);
    out.rows.push_back(found ? *found : LabelCandidate{"row_" + std::to_string(row), {}, ""});
  }
  return out;
}

std::optional<SubscriptCandidate> detect_sequence(const EquationSet& s,
                                                  const std::vector<CellAddr>& cells) {
  if (cells.size() < 2) return std::nullopt;
  SubscriptCandidate cand;
  cand.cells = cells;
  cand.runs_down = cells[0].col == cells[1].col;

  std::vector<Coord> numbers;
  std::vector<std::string> texts;
  for (const auto& a : cells) {
    const Formula* f = s.find(a);
    if (!f) return std::nullopt;
    if (const auto* n = f->as<NumberConst>()) {
      double v = n->value;
      if (!std::isfinite(v) || v != std::floor(v) || std::fabs(v) > 9.0e15) return std::nullopt;
      numbers.push_back(static_cast<Coord>(v));
    } else if (const auto* t = f->as<TextConst>()) {
      texts.push_back(t->value);
    } else {
      return std::nullopt;
    }
  }
  if (numbers.size() == cells.size()) {
    Coord step = numbers[1] - numbers[0];
    if (step == 0) return std::nullopt;
    for (std::size_t i = 2; i < numbers.size(); ++i)
      if (numbers[i] - numbers[i - 1] != step) return std::nullopt;
    cand.first = numbers[0];
    cand.step = step;
    return cand;
  }
  if (texts.size() != cells.size()) return std::nullopt;
  if (auto first = word_run(kMonths, texts)) {
    cand.kind = SequenceKind::Month;
    cand.first = *first;
    return cand;
  }
  if (auto first = word_run(kWeekdays, texts)) {
    cand.kind = SequenceKind::Weekday;
    cand.first = *first;
    return cand;
  }
  return std::nullopt;
}

std::vector<SubscriptCandidate> infer_subscripts(const EquationSet& s, const Rect& block) {
  std::vector<SubscriptCandidate> out;
  if (*block.col_lo > 1) {
    std::vector<CellAddr> cells;
    for (Coord row = *block.row_lo; row <= *block.row_hi; ++row)
      cells.emplace_back(block.sheet, *block.col_lo - 1, row);
    if (auto c = detect_sequence(s, cells)) out.push_back(std::move(*c));
  }
  if (*block.row_lo > 1) {
    std::vector<CellAddr> cells;
    for (Coord col = *block.col_lo; col <= *block.col_hi; ++col)
      cells.emplace_back(block.sheet, col, *block.row_lo - 1);
    if (auto c = detect_sequence(s, cells)) out.push_back(std::move(*c));
  }
  return out;
}

LayoutProposal propose_layout(const EquationSet& s) {
  LayoutProposal proposal;
  std::set<std::string> used;

  for (const Rect& block : discover_blocks(s)) {
    BlockLabels labels = infer_labels(s, block);
    std::optional<SubscriptCandidate> down, across;
    for (auto& c : infer_subscripts(s, block)) {
      if (c.step != 1) continue;  // only unit steps index adjacent cells
      (c.runs_down ? down : across) = c;
    }
    // Split into rows only when the evidence points that way.
    bool by_rows = across && !down;

    std::optional<SubscriptCandidate> index = by_rows ? across : down;
    if (!index) {
      // The block's own leading column (or row) may be the index, as with years.
      std::vector<CellAddr> lead;
      if (by_rows) {
        for (Coord col = *block.col_lo; col <= *block.col_hi; ++col)
          lead.emplace_back(block.sheet, col, *block.row_lo);
      } else {
        for (Coord row = *block.row_lo; row <= *block.row_hi; ++row)
          lead.emplace_back(block.sheet, *block.col_lo, row);
      }
      if (auto c = detect_sequence(s, lead); c && c->step == 1) index = c;
    }
    Coord lo = index ? index->first : 1;
    Coord length = by_rows ? block.width() : block.height();

    const auto& lines = by_rows ? labels.rows : labels.columns;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      LayoutDirective d;
      d.array = unique_name(lines[i].name, used);
      d.box = {IndexRange{lo, lo + length - 1}};
      Coord k = static_cast<Coord>(i);
      d.anchor = by_rows ? CellAddr(block.sheet, *block.col_lo, *block.row_lo + k)
                         : CellAddr(block.sheet, *block.col_lo + k, *block.row_lo);
      d.orientation = by_rows ? Orientation::Right : Orientation::Down;
      proposal.name_evidence[d.array] = NameEvidence{lines[i].text, lines[i].source};
      if (index) proposal.subscript_evidence[d.array] = *index;
      proposal.directives.add(std::move(d));
    }
  }
  proposal.directives.validate();
  return proposal;
}

}  // namespace sheetalg
