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

#include "sheetalg/errors.hpp"
#include "sheetalg/formula_text.hpp"
#include "sheetalg/rewrite.hpp"
#include "testkit.hpp"

using namespace sheetalg;

namespace {

std::string a1(std::string_view src) { return print_formula(parse_formula(src), Dialect::A1); }

}  // namespace

TEST(FormulaParse, CanonicalPrinting) {
  EXPECT_EQ(a1("C2 - B2"), "C2-B2");
  EXPECT_EQ(a1("D2 * 0.33"), "D2*0.33");
  EXPECT_EQ(a1("d2*0.33"), "d2*0.33");  // lowercase words are names
  EXPECT_EQ(a1("(1+2)*3"), "(1+2)*3");
  EXPECT_EQ(a1("1+(2*3)"), "1+2*3");
  EXPECT_EQ(a1("1-(2-3)"), "1-(2-3)");
  EXPECT_EQ(a1("(1-2)-3"), "1-2-3");
  EXPECT_EQ(a1("2^3^2"), "2^3^2");
  EXPECT_EQ(a1("(2^3)^2"), "(2^3)^2");
  EXPECT_EQ(a1("sum( A1:A3 )"), "SUM(A1:A3)");
  EXPECT_EQ(a1("\"say \"\"hi\"\"\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(a1("true"), "TRUE");
  EXPECT_EQ(a1("A1<>B1"), "A1<>B1");
  EXPECT_EQ(a1("Data!B3+1"), "Data!B3+1");
  EXPECT_EQ(a1("EMPTY()"), "EMPTY()");
  EXPECT_EQ(a1("Profit[2000]"), "Profit[2000]");
  EXPECT_EQ(a1("y[1,2001]"), "y[1,2001]");
}

TEST(FormulaParse, Precedence) {
  Formula f = parse_formula("1+2*3^2");
  const auto* add = f.as<Binary>();
  ASSERT_TRUE(add);
  EXPECT_EQ(add->op, BinaryOp::Add);
  const auto* mul = add->rhs.as<Binary>();
  ASSERT_TRUE(mul);
  EXPECT_EQ(mul->op, BinaryOp::Mul);
  EXPECT_EQ(mul->rhs.as<Binary>()->op, BinaryOp::Pow);

  Formula cmp = parse_formula("1+2=3");
  EXPECT_EQ(cmp.as<Binary>()->op, BinaryOp::Eq);
}

TEST(FormulaParse, NegativeLiteralsAndPower) {
  EXPECT_EQ(parse_formula("-5"), Formula::number(-5));
  // Power binds tighter than a leading minus.
  EXPECT_EQ(parse_formula("-2^2"),
            Formula::negate(Formula::binary(BinaryOp::Pow, Formula::number(2), Formula::number(2))));
  EXPECT_EQ(print_formula(Formula::negate(Formula::number(5)), Dialect::A1), "-(5)");
}

TEST(FormulaParse, R1C1) {
  Formula f = parse_formula("RC[-1]-RC[-2]", Dialect::R1C1);
  EXPECT_EQ(f, Formula::binary(BinaryOp::Sub, Formula::rel_ref(-1, 0), Formula::rel_ref(-2, 0)));
  EXPECT_EQ(parse_formula("R[-33]C+1", Dialect::R1C1),
            Formula::binary(BinaryOp::Add, Formula::rel_ref(0, -33), Formula::number(1)));
  EXPECT_EQ(parse_formula("R2C3", Dialect::R1C1), Formula::abs_ref(CellAddr(3, 2)));
  EXPECT_THROW(parse_formula("R2C[1]", Dialect::R1C1), SyntaxError);
}

TEST(FormulaParse, A1RelativePrintingNeedsAnchor) {
  Formula rel = Formula::rel_ref(-1, 0);
  EXPECT_THROW(print_formula(rel, Dialect::A1), AnchorError);
  EXPECT_EQ(print_formula(rel, Dialect::A1, CellAddr(4, 2)), "C2");
  EXPECT_EQ(print_formula(rel, Dialect::R1C1), "RC[-1]");
}

TEST(FormulaParse, HereNotation) {
  PrintOptions o;
  o.anchor = CellAddr(1, 37);
  o.here_notation = true;
  Formula f = parse_formula("R[-33]C+1", Dialect::R1C1);
  EXPECT_EQ(print_formula(f, o), "Sheet1[ HERE, HERE - 33 ]+1");

  ParseOptions p;
  p.sheet_here_refs = true;
  EXPECT_EQ(parse_formula("Sheet1[ HERE, HERE - 33 ]+1", p), f);
}

TEST(FormulaParse, SyntaxErrorsCarryPosition) {
  try {
    parse_formula("1+\n2*");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_TRUE(e.at_end());
  }
  try {
    parse_formula("A1 + )");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 6u);
    EXPECT_FALSE(e.at_end());
  }
  EXPECT_THROW(parse_formula(""), SyntaxError);
  EXPECT_THROW(parse_formula("SUM(A1:A3"), SyntaxError);
  EXPECT_THROW(parse_formula("\"open"), SyntaxError);
}

TEST(FormulaParse, RangesOnlyAsArguments) {
  EXPECT_NO_THROW(parse_formula("SUM(A:A)"));
  EXPECT_THROW(parse_formula("A1:A3+1"), SyntaxError);
}

TEST(FormulaParse, StandaloneRanges) {
  EXPECT_EQ(parse_range("A1:D2"), CellRange(Rect::cells("Sheet1", 1, 1, 4, 2)));
  EXPECT_EQ(parse_range("B"), CellRange(Rect::columns("Sheet1", 2, 2)));
  EXPECT_EQ(parse_range("C5"), CellRange(Rect::cell(CellAddr(3, 5))));
  CellRange two = parse_range("(A:A,C:D)");
  ASSERT_EQ(two.rects.size(), 2u);
  EXPECT_EQ(two.rects[1], Rect::columns("Sheet1", 3, 4));
}

TEST(FormulaNumbers, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.33), "0.33");
  EXPECT_EQ(format_number(-521), "-521");
  EXPECT_EQ(format_number(1e21), "1e+21");
  testkit::Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    double v = testkit::random_number(rng);
    ASSERT_EQ(parse_formula(format_number(v)), Formula::number(v)) << format_number(v);
  }
}

// Every random formula reads back to the same tree, in both dialects.
TEST(FormulaProperty, RoundTripA1) {
  testkit::Rng rng(101);
  testkit::FormulaShape shape;
  for (int i = 0; i < 1000; ++i) {
    Formula f = testkit::random_formula(rng, shape);
    std::string text = print_formula(f, Dialect::A1);
    Formula back = parse_formula(text, Dialect::A1);
    ASSERT_EQ(back, f) << text;
    ASSERT_EQ(print_formula(back, Dialect::A1), text);
  }
}

TEST(FormulaProperty, RoundTripR1C1Relative) {
  testkit::Rng rng(202);
  testkit::FormulaShape shape;
  for (int i = 0; i < 1000; ++i) {
    CellAddr anchor = testkit::random_cell(rng, 20, 40);
    Formula f = relativize(testkit::random_formula(rng, shape), anchor);
    std::string text = print_formula(f, Dialect::R1C1);
    Formula back = parse_formula(text, Dialect::R1C1);
    ASSERT_EQ(back, f) << text;
  }
}

TEST(FormulaProperty, ParserNeverCrashesOnMutatedText) {
  testkit::Rng rng(303);
  testkit::FormulaShape shape;
  const std::string junk = "()+-*/^,:!\"[]<>=A1 $";
  for (int i = 0; i < 1000; ++i) {
    std::string text = print_formula(testkit::random_formula(rng, shape), Dialect::A1);
    auto at = static_cast<std::size_t>(testkit::uniform(rng, 0, static_cast<Coord>(text.size())));
    text.insert(at, 1, junk[static_cast<std::size_t>(
                            testkit::uniform(rng, 0, static_cast<Coord>(junk.size()) - 1))]);
    try {
      Formula f = parse_formula(text);
      // Whatever was accepted must print and read back stably.
      std::string again = print_formula(f, Dialect::A1);
      ASSERT_EQ(parse_formula(again), f) << text;
    } catch (const SyntaxError& e) {
      ASSERT_GE(e.line(), 1u);
    } catch (const Error&) {
      // Semantic rejections (for example an out-of-grid cell) are fine too.
    }
  }
}
