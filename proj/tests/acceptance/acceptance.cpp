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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
//   acceptance <fixtures-dir> [<sheetalg-cli>]
//
// Without the CLI path the exit-status half of criterion 6 is skipped.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "sheetalg/algebra.hpp"
#include "sheetalg/discovery.hpp"
#include "sheetalg/document.hpp"
#include "sheetalg/errors.hpp"
#include "sheetalg/evaluator.hpp"
#include "sheetalg/formula_text.hpp"
#include "sheetalg/layout.hpp"
#include "sheetalg/listing.hpp"
#include "sheetalg/rewrite.hpp"
#include "testkit.hpp"

using namespace sheetalg;
using testkit::Rng;

namespace {

constexpr double kTol = 1e-9;
constexpr int kLawCases = 500;

std::string g_fixtures;
std::string g_cli;

// Thrown by expect() to abandon a criterion with a reason.
struct Miss {
  std::string why;
};

void expect(bool ok, const std::string& why) {
  if (!ok) throw Miss{why};
}

EquationSet eqs(std::string_view text) { return parse_document(text).equations; }
Workbook fixture(const std::string& name) { return load_workbook(g_fixtures + "/" + name); }

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::optional<EquationSet> try_unite(const EquationSet& a, const EquationSet& b) {
  try {
    return unite(a, b);
  } catch (const ConflictError&) {
    return std::nullopt;
  }
}

ValueGrid translate(const ValueGrid& g, Coord dx, Coord dy) {
  ValueGrid out;
  for (const auto& [a, v] : g) out[a.offset(dx, dy)] = v;
  return out;
}

int cli_status(const std::string& args) {
  std::string cmd = "\"" + g_cli + "\" " + args + " >/dev/null 2>&1";
  int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

// Criterion 1: golden examples of the set operators.
std::string golden_examples() {
  auto start = std::chrono::steady_clock::now();
  EquationSet accounts = testkit::accounts();

  EquationSet labels = eqs(R"(A1 = "Year". B1 = "Expenses". C1 = "Sales". D1 = "Profit")");
  expect(save_document({unite(labels, accounts), {}}) ==
             "# sheetalg document\n"
             "A1 = \"Year\".\nB1 = \"Expenses\".\nC1 = \"Sales\".\nD1 = \"Profit\".\n"
             "A2 = 2000.\nB2 = 1492.\nC2 = 971.\nD2 = C2-B2.\n"
             "A3 = 2001.\nB3 = 1560.\nC3 = 1803.\nD3 = C3-B3.\n",
         "label union");

  expect(extract(accounts, parse_range("A1:D2")) ==
             eqs("A2 = 2000. B2 = 1492. C2 = 971. D2 = C2-B2"),
         "extract A1:D2");

  EquationSet rotated = map_range(eqs("A1 = 1492. A2 = 1560"), parse_range("A1:A2"),
                                  parse_range("B2:B3"));
  expect(rotated == eqs("B2 = 1492. B3 = 1560"), "mapping A1:A2 to B2:B3");

  EquationSet replicated = replicate(eqs("y[1] = 1"), 2000, 2001);
  expect(replicated == eqs("y[1,2000] = 1. y[1,2001] = 1"), "replicate");
  expect(quotient(replicated, 2000, 2001) == eqs("y[1] = 1"), "quotient");

  // Every cell and reference moves by the same offset.
  EquationSet moved = shift(eqs("D3 = C3-B3. D2 = C2-B2"), 2, 10);
  expect(moved == eqs("F13 = E13-D13. F12 = E12-D12"), "shift by (2, 10)");
  expect(!moved.contains(CellAddr(5, 12)), "shift leaves nothing at E12");

  double secs = elapsed(start);
  expect(secs < 1.0, "took " + std::to_string(secs) + " s");
  return "6 goldens, shift is a uniform translation";
}

// Criterion 2: compile and decompile the accounts array equations.
std::string compile_decompile() {
  Workbook spec = fixture("accounts_spec.exc");
  EquationSet cells = testkit::accounts();
  expect(compile(spec.equations, spec.layouts) == cells, "compile gives the cell equations");
  expect(decompile(cells, spec.layouts) == spec.equations, "decompile gives the array equations");
  expect(decompile(compile(spec.equations, spec.layouts), spec.layouts) == spec.equations,
         "decompile after compile");
  expect(compile(decompile(cells, spec.layouts), spec.layouts) == cells, "compile after decompile");

  Rng rng(71);
  for (int i = 0; i < 500; ++i) {
    LayoutSet layouts = testkit::random_layouts(rng);
    EquationSet arrays = testkit::random_array_spec(rng, layouts);
    EquationSet sheet = compile(arrays, layouts);
    expect(compile(decompile(sheet, layouts), layouts) == sheet,
           "random covered sheet " + std::to_string(i));
  }
  return "accounts arrays both ways, 500 random sheets";
}

// Criterion 3: evaluation values and cycle marking.
std::string evaluation() {
  ValueGrid g = evaluate(unite(fixture("accounts.exc").equations, fixture("tax.exc").equations));
  const std::pair<const char*, double> want[] = {
      {"D2", -521}, {"D3", 243}, {"E2", -171.93}, {"E3", 80.19}};
  for (const auto& [cell, value] : want) {
    const Value& v = g.at(*CellAddr::parse(cell));
    expect(v.is_number() && std::abs(v.number() - value) <= kTol,
           std::string(cell) + " = " + v.to_string());
  }

  ValueGrid cyc = evaluate(fixture("cycle.exc").equations);
  for (const auto& [a, v] : cyc) {
    bool member = a == CellAddr(1, 1) || a == CellAddr(2, 1) || a == CellAddr(3, 1);
    bool marked = v.is_error() && v.error() == ErrorTag::Cycle;
    expect(member == marked, a.to_string() + " = " + v.to_string());
  }
  expect(cyc.at(CellAddr(5, 1)) == Value(6.0), "E1 off the cycle evaluates");
  return "4 values within 1e-9, cycle marks A1 B1 C1 only";
}

// Criterion 4: the algebraic laws.
std::string laws() {
  testkit::FormulaShape shape;
  shape.other_sheet = 0;
  Rng rng(404);

  for (int i = 0; i < kLawCases; ++i) {
    EquationSet a = testkit::random_cell_set(rng, 12, shape);
    EquationSet b0 = testkit::random_cell_set(rng, 12, shape);
    EquationSet c = testkit::random_cell_set(rng, 6, shape);
    EquationSet b;
    b.set_names(a.names());
    for (const auto& [lhs, rhs] : b0) b.add(lhs, a.contains(lhs) ? *a.find(lhs) : rhs);
    c.set_names(a.names());
    expect(unite(a, b) == unite(b, a), "union commutes");
    expect(unite(a, a) == a, "union idempotent");
    expect(unite(a, EquationSet{}) == a, "empty set is the identity");
    auto ab = try_unite(a, b), bc = try_unite(b, c);
    auto left = ab ? try_unite(*ab, c) : std::nullopt;
    auto right = bc ? try_unite(a, *bc) : std::nullopt;
    expect(left == right, "union associates");
  }

  for (int i = 0; i < kLawCases; ++i) {
    EquationSet s = testkit::random_cell_set(rng, 12, shape);
    Coord a = testkit::uniform(rng, 0, 5), b = testkit::uniform(rng, 0, 5);
    Coord c = testkit::uniform(rng, -a, 5), d = testkit::uniform(rng, -b, 5);
    expect(shift(s, 0, 0) == s, "shift (0, 0)");
    expect(shift(shift(s, a, b), c, d) == shift(s, a + c, b + d), "shift composes");
  }

  for (int i = 0; i < kLawCases; ++i) {
    EquationSet s = testkit::random_cell_set(rng, 15, shape);
    Coord k = testkit::uniform(rng, 1, shape.max_col);
    EquationSet l = extract(s, CellRange(Rect::columns("Sheet1", 1, k)));
    EquationSet r = extract(s, CellRange(Rect::columns("Sheet1", k + 1, shape.max_col + 10)));
    expect(l.size() + r.size() == s.size() && unite(l, r) == s, "extract partition");
  }

  for (int i = 0; i < kLawCases; ++i) {
    EquationSet s = testkit::random_cell_set(rng, 12, shape);
    Coord c = testkit::uniform(rng, 1, shape.max_col - 1), r = testkit::uniform(rng, 1, 8);
    Coord w = testkit::uniform(rng, 1, 2), h = testkit::uniform(rng, 1, 4);
    CellRange src(Rect::cells("Sheet1", c, r, c + w - 1, r + h - 1));
    CellRange dst(Rect::cells("Sheet1", 30, 40, 30 + h - 1, 40 + w - 1));
    expect(map_range(map_range(s, src, dst), dst, src) == s, "mapping back");
  }

  for (int i = 0; i < kLawCases; ++i) {
    LayoutSet layouts = testkit::random_layouts(rng);
    EquationSet s = testkit::random_array_spec(rng, layouts);
    Coord lo = testkit::uniform(rng, -5, 2000), hi = lo + testkit::uniform(rng, 0, 3);
    expect(quotient(replicate(s, lo, hi), lo, hi) == s, "quotient after replicate");
  }

  // Simplification assumes numeric operands, so the law is checked on sets
  // that evaluate without blanks, text or errors.
  for (int checked = 0, attempt = 0; checked < kLawCases; ++attempt) {
    expect(attempt < 50 * kLawCases, "too few error-free sets");
    EquationSet s = testkit::random_arith_set(rng, 12, 6, true);
    ValueGrid before = evaluate(s);
    if (!std::all_of(before.begin(), before.end(),
                     [](const auto& kv) { return kv.second.is_number(); }))
      continue;
    ++checked;
    ValueGrid after = evaluate(simplify(s));
    expect(after.size() == before.size(), "simplify keeps cells");
    for (const auto& [a, v] : before)
      expect(testkit::same_value(after.at(a), v, 0), "simplify changes " + a.to_string());
  }

  for (int i = 0; i < kLawCases; ++i) {
    EquationSet s = testkit::random_arith_set(rng, 14);
    Coord dx = testkit::uniform(rng, 0, 6), dy = testkit::uniform(rng, 0, 40);
    expect(evaluate(shift(s, dx, dy)) == translate(evaluate(s), dx, dy), "evaluate after shift");
  }
  return "7 laws x " + std::to_string(kLawCases) + " cases";
}

// Criterion 5: the grouped listing of a large repetitive sheet.
std::string automaton() {
  auto start = std::chrono::steady_clock::now();
  EquationSet sheet = testkit::automaton_sheet();
  std::string listing = show(sheet, true);
  std::size_t lines = static_cast<std::size_t>(std::count(listing.begin(), listing.end(), '\n'));
  expect(lines <= 20, std::to_string(lines) + " lines");
  const std::string counter =
      "Sheet1[ {1} >< { 37..829 by 33 } ] = Sheet1[ HERE, HERE - 33 ]+1\n";
  expect(listing.find(counter) != std::string::npos, "counter line missing");
  expect(parse_listing(listing).equations == sheet, "listing does not re-expand to the sheet");

  // Edit the interior state rule in the listing and read it back.
  const std::string from = "MOD(Sheet1[ HERE - 1, HERE - 33 ]+Sheet1[ HERE + 1, HERE - 33 ],2)";
  const std::string to = "MOD(Sheet1[ HERE - 1, HERE - 33 ]-Sheet1[ HERE + 1, HERE - 33 ],2)";
  auto at = listing.find(from);
  expect(at != std::string::npos, "state rule line missing");
  std::string edited = listing;
  edited.replace(at, from.size(), to);
  auto line_start = listing.rfind('\n', at) + 1;
  std::string group_head = listing.substr(line_start, at - line_start);
  expect(group_head.find("{ 3..30 }") != std::string::npos, "state rule is not the interior group");

  EquationSet changed_sheet = parse_listing(edited).equations;
  DiffReport d = diff(sheet, changed_sheet);
  expect(d.added.empty() && d.removed.empty(), "edit added or removed cells");
  std::size_t expected = 28 * (testkit::AutomatonSheet::kGenerations - 1);
  expect(d.changed.size() == expected, std::to_string(d.changed.size()) + " cells changed");
  for (const auto& c : d.changed) {
    const auto* a = as_cell(c.lhs);
    expect(a && a->col >= 3 && a->col <= 30 && a->row >= 37 && (a->row - 4) % 33 == 0,
           "changed cell outside the group");
  }
  expect(changed_sheet == testkit::automaton_sheet("-"), "edited sheet differs from the variant");

  double secs = elapsed(start);
  expect(secs < 5.0, "took " + std::to_string(secs) + " s");
  std::ostringstream out;
  out << sheet.size() << " cells, " << lines << " lines, " << d.changed.size()
      << " cells edited";
  return out.str();
}

// Criterion 6: diff and stylecheck workflows.
std::string workflows() {
  EquationSet accounts = fixture("accounts.exc").equations;
  EquationSet tampered = fixture("accounts_tampered.exc").equations;
  DiffReport d = diff(accounts, tampered);
  expect(d.added.empty() && d.removed.empty() && d.changed.size() == 1, "diff is not one change");
  expect(d.changed[0].lhs == Lhs(CellAddr(4, 3)), "diff names the wrong cell");

  auto v = stylecheck_unique(accounts);
  expect(v.size() == 1 && v[0].cells == std::vector<CellAddr>{CellAddr(4, 2), CellAddr(4, 3)},
         "stylecheck on accounts");
  expect(stylecheck_unique(fixture("one_copy.exc").equations).empty(), "stylecheck on one copy");

  if (g_cli.empty()) return "library checks only";
  std::string a = "\"" + g_fixtures + "/accounts.exc\"";
  expect(cli_status("diff " + a + " \"" + g_fixtures + "/accounts_tampered.exc\"") != 0,
         "diff exits zero on a difference");
  expect(cli_status("diff " + a + " " + a) == 0, "diff exits nonzero on identical files");
  return "diff reports D3, stylecheck {D2, D3}, CLI exit status checked";
}

// Criterion 7: structure discovery on the labeled accounts.
std::string discovery() {
  EquationSet labeled = fixture("accounts_labeled.exc").equations;
  LayoutProposal p = propose_layout(labeled);
  const std::vector<std::string> names{"Year", "Expenses", "Sales", "Profit"};
  expect(p.directives.size() == names.size(), std::to_string(p.directives.size()) + " directives");
  for (std::size_t i = 0; i < names.size(); ++i) {
    const LayoutDirective* d = p.directives.find(names[i]);
    expect(d != nullptr, "no directive for " + names[i]);
    expect(d->orientation == Orientation::Down, names[i] + " not down");
    expect(d->anchor == CellAddr(static_cast<Coord>(i) + 1, 2), names[i] + " anchor");
    expect(d->box.size() == 1 && d->box[0] == IndexRange{2000, 2001}, names[i] + " range");
  }

  EquationSet arrays = decompile(labeled, p.directives);
  EquationSet spec = fixture("accounts_spec.exc").equations;
  for (const auto& [lhs, rhs] : spec) {
    const Formula* got = arrays.find(lhs);
    expect(got && *got == rhs, "decompiled " + equation_text(lhs, rhs));
  }
  return "Year Expenses Sales Profit at A2..D2, 2000:2001";
}

// Criterion 8: round-trips and scale.
std::string round_trips() {
  Rng rng(808);
  testkit::FormulaShape shape;
  for (int i = 0; i < 1000; ++i) {
    Workbook wb{testkit::random_cell_set(rng, 15, shape), {}};
    if (testkit::chance(rng, 0.4)) {
      LayoutSet layouts = testkit::random_layouts(rng, 2);
      EquationSet spec = testkit::random_array_spec(rng, layouts);
      for (auto d : layouts) {
        d.anchor = d.anchor.offset(20, 0);
        wb.layouts.add(d);
      }
      for (const auto& [lhs, rhs] : spec) wb.equations.assign(lhs, rhs);
    }
    std::string text = save_document(wb);
    expect(parse_document(text) == wb, "load after save, case " + std::to_string(i));
  }

  for (int i = 0; i < 1000; ++i) {
    Formula f = testkit::random_formula(rng, shape);
    std::string a1 = print_formula(f, Dialect::A1);
    expect(parse_formula(a1, Dialect::A1) == f, "A1 round-trip: " + a1);
    Formula rel = relativize(f, testkit::random_cell(rng, 20, 40));
    std::string r1c1 = print_formula(rel, Dialect::R1C1);
    expect(parse_formula(r1c1, Dialect::R1C1) == rel, "R1C1 round-trip: " + r1c1);
  }

  EquationSet big;
  for (Coord r = 1; r <= 10000; ++r) {
    big.add(CellAddr(1, r), Formula::number(static_cast<double>(r)));
    for (Coord c = 2; c <= 10; ++c)
      big.add(CellAddr(c, r), Formula::binary(BinaryOp::Mul, Formula::abs_ref(CellAddr(c - 1, r)),
                                              Formula::number(1.5)));
  }
  std::string text = save_document({big, {}});
  auto start = std::chrono::steady_clock::now();
  Workbook parsed = parse_document(text);
  std::string listing = show(parsed);
  double secs = elapsed(start);
  expect(parsed.equations.size() == 100000, "lost equations");
  expect(secs < 10.0, "100k parse+show took " + std::to_string(secs) + " s");
  std::ostringstream out;
  out << "1000 documents, 1000 formulas x 2 dialects, 100k parse+show " << secs << " s";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <fixtures-dir> [<sheetalg-cli>]\n";
    return 2;
  }
  g_fixtures = argv[1];
  if (argc > 2) g_cli = argv[2];

  const std::pair<const char*, std::function<std::string()>> criteria[] = {
      {"AC1 golden examples", golden_examples},
      {"AC2 compile/decompile", compile_decompile},
      {"AC3 evaluation", evaluation},
      {"AC4 algebraic laws", laws},
      {"AC5 grouped listing of the automaton sheet", automaton},
      {"AC6 diff and stylecheck", workflows},
      {"AC7 structure discovery", discovery},
      {"AC8 round-trips and scale", round_trips},
  };

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    std::string detail;
    bool ok = false;
    try {
      detail = check();
      ok = true;
    } catch (const Miss& m) {
      detail = m.why;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
  }
  return failures == 0 ? 0 : 1;
}
