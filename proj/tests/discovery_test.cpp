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

#include <gtest/gtest.h>

#include "sheetalg/discovery.hpp"
#include "sheetalg/document.hpp"
#include "testkit.hpp"

using namespace sheetalg;

namespace {

EquationSet eqs(std::string_view text) { return parse_document(text).equations; }

EquationSet labeled_accounts() {
  return unite(eqs(R"(A1 = "Year". B1 = "Expenses". C1 = "Sales". D1 = "Profit")"),
               testkit::accounts());
}

}  // namespace

TEST(Discovery, GroupsLargestFirst) {
  EquationSet s = unite(testkit::accounts(),
                        eqs("E2 = D2*0.33. E3 = D3*0.33. E4 = D4*0.33. F2 = 1+1"));
  auto groups = discover_groups(s);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].cells.size(), 3u);
  EXPECT_EQ(groups[0].canonical_relative, "RC[-1]*0.33");
  EXPECT_EQ(groups[1].cells.size(), 2u);
}

TEST(Discovery, BlocksBorderedByText) {
  auto blocks = discover_blocks(labeled_accounts());
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0], Rect::cells("Sheet1", 1, 2, 4, 3));

  EquationSet two = eqs(R"(A1 = 1. A2 = 2. B5 = "x". D5 = 3. D6 = 4. E6 = 5)");
  auto b2 = discover_blocks(two);
  ASSERT_EQ(b2.size(), 2u);
  EXPECT_EQ(b2[0], Rect::cells("Sheet1", 1, 1, 1, 2));
  EXPECT_EQ(b2[1], Rect::cells("Sheet1", 4, 5, 5, 6));
}

TEST(Discovery, SumRangeWidensBlock) {
  // The summed range bridges the gap at A3; the blank A5 still separates A6.
  auto gap = discover_blocks(eqs("A1 = 1. A2 = 2. A4 = 4. A6 = SUM(A1:A4)"));
  ASSERT_EQ(gap.size(), 2u);
  EXPECT_EQ(gap[0], Rect::cells("Sheet1", 1, 1, 1, 4));
  EXPECT_EQ(gap[1], Rect::cells("Sheet1", 1, 6, 1, 6));

  auto total = discover_blocks(eqs("A1 = 1. A2 = 2. A4 = 4. A5 = SUM(A1:A4)"));
  ASSERT_EQ(total.size(), 1u);
  EXPECT_EQ(total[0], Rect::cells("Sheet1", 1, 1, 1, 5));
}

TEST(Discovery, SanitizeIdentifier) {
  EXPECT_EQ(sanitize_identifier("Net profit"), "Net_profit");
  EXPECT_EQ(sanitize_identifier("Sales ($)"), "Sales");
  EXPECT_EQ(sanitize_identifier("2004 total"), "_2004_total");
  EXPECT_EQ(sanitize_identifier("%%"), "");
}

TEST(Discovery, LabelsFromHeaderRow) {
  EquationSet s = labeled_accounts();
  BlockLabels labels = infer_labels(s, Rect::cells("Sheet1", 1, 2, 4, 3));
  ASSERT_EQ(labels.columns.size(), 4u);
  EXPECT_EQ(labels.columns[0].name, "Year");
  EXPECT_EQ(labels.columns[3].name, "Profit");
  EXPECT_EQ(labels.columns[3].source, CellAddr(4, 1));
  // No labels to the left: positional fallback.
  EXPECT_EQ(labels.rows[0].name, "row_2");
  EXPECT_FALSE(labels.rows[0].source);
}

TEST(Discovery, Sequences) {
  EquationSet s = eqs(R"(A2 = 2000. A3 = 2001. A4 = 2002. B1 = "Jan". C1 = "February". D1 = "Mar")");
  auto years = detect_sequence(s, {CellAddr(1, 2), CellAddr(1, 3), CellAddr(1, 4)});
  ASSERT_TRUE(years);
  EXPECT_EQ(years->kind, SequenceKind::Arithmetic);
  EXPECT_EQ(years->first, 2000);
  EXPECT_EQ(years->last(), 2002);
  auto months = detect_sequence(s, {CellAddr(2, 1), CellAddr(3, 1), CellAddr(4, 1)});
  ASSERT_TRUE(months);
  EXPECT_EQ(months->kind, SequenceKind::Month);
  EXPECT_EQ(months->first, 1);
  EXPECT_FALSE(detect_sequence(s, {CellAddr(1, 2)}));
  EXPECT_FALSE(detect_sequence(s, {CellAddr(1, 2), CellAddr(2, 1)}));
}

TEST(Discovery, SubscriptsLeftOfBlock) {
  EquationSet s = eqs("A2 = 2000. A3 = 2001. B2 = 5. B3 = 6. C2 = B2*2. C3 = B3*2");
  auto cands = infer_subscripts(s, Rect::cells("Sheet1", 2, 2, 3, 3));
  ASSERT_FALSE(cands.empty());
  EXPECT_TRUE(cands[0].runs_down);
  EXPECT_EQ(cands[0].first, 2000);
}

TEST(Discovery, ProposalForLabeledAccounts) {
  EquationSet s = labeled_accounts();
  LayoutProposal p = propose_layout(s);
  std::vector<std::string> names;
  for (const auto& d : p.directives) {
    names.push_back(d.array);
    EXPECT_EQ(d.orientation, Orientation::Down);
    ASSERT_EQ(d.box.size(), 1u);
    EXPECT_EQ(d.box[0], (IndexRange{2000, 2001}));
  }
  EXPECT_EQ(names, (std::vector<std::string>{"Year", "Expenses", "Sales", "Profit"}));
  EXPECT_EQ(p.directives.find("Profit")->anchor, CellAddr(4, 2));
  EXPECT_EQ(p.name_evidence.at("Sales").source, CellAddr(3, 1));

  EquationSet arrays = decompile(s, p.directives);
  EXPECT_EQ(*arrays.find(ArrayElem{"Profit", {2000}}), parse_formula("Sales[2000]-Expenses[2000]"));
  EXPECT_EQ(compile(arrays, p.directives), s);
}

TEST(Discovery, ProposalFallsBackToPositions) {
  EquationSet s = eqs("B2 = 1. B3 = 2. B4 = 3. C2 = B2*2. C3 = B3*7. C4 = B4*9");
  LayoutProposal p = propose_layout(s);
  ASSERT_EQ(p.directives.size(), 2u);
  for (const auto& d : p.directives) EXPECT_EQ(d.box[0], (IndexRange{1, 3}));
}

// Whatever the sheet, the proposal is valid input to decompile and the
// result compiles back to the original.
TEST(DiscoveryProperty, ProposalsRoundTrip) {
  testkit::Rng rng(3001);
  testkit::FormulaShape shape;
  shape.other_sheet = 0;
  shape.names = false;
  for (int i = 0; i < 300; ++i) {
    EquationSet s = testkit::random_cell_set(rng, 20, shape);
    s.set_names({});
    LayoutProposal p = propose_layout(s);
    ASSERT_NO_THROW(p.directives.validate());
    ASSERT_EQ(compile(decompile(s, p.directives), p.directives), s);
  }
}
