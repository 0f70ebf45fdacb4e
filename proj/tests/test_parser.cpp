#include <doctest.h>

#include "pilab/ncpoly.hpp"
#include "pilab/parser.hpp"

using namespace pilab;

static NcPoly x(uint32_t i) { return NcPoly::var(i); }

TEST_CASE("atoms and products") {
  CHECK(parse_poly("x1") == x(1));
  CHECK(parse_poly("x12") == x(12));
  CHECK(parse_poly("3") == Rat(3) * NcPoly::one());
  CHECK(parse_poly("1/2 x1") == Rat(1, 2) * x(1));
  CHECK(parse_poly("x1*x2") == x(1) * x(2));
  CHECK(parse_poly("x1 x2") == x(1) * x(2)); // juxtaposition
  CHECK(parse_poly("2x1x2") == Rat(2) * x(1) * x(2));
}

TEST_CASE("sums, signs, parentheses") {
  CHECK(parse_poly("x1 + x2 - x3") == x(1) + x(2) - x(3));
  CHECK(parse_poly("-x1") == -x(1));
  CHECK(parse_poly("(x1 + x2)*x3") == (x(1) + x(2)) * x(3));
  CHECK(parse_poly("x1 - 2*(x2 - x3)") == x(1) - Rat(2) * (x(2) - x(3)));
}

TEST_CASE("commutator brackets are left-normed") {
  CHECK(parse_poly("[x1,x2]") == commutator({x(1), x(2)}));
  CHECK(parse_poly("[x1,x2,x3]") == commutator({x(1), x(2), x(3)}));
  CHECK(parse_poly("[x1,x2,x3][x4,x5,x6]") ==
        commutator({x(1), x(2), x(3)}) * commutator({x(4), x(5), x(6)}));
  CHECK(parse_poly("[x1 + x2, x3]") == commutator({x(1) + x(2), x(3)}));
  CHECK(parse_poly("[[x1,x2],[x3,x4]]") ==
        commutator({commutator({x(1), x(2)}), commutator({x(3), x(4)})}));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_poly(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("[x1]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("(x1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("x1 +"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("x1 $ x2"), std::invalid_argument);
}

TEST_CASE("printer output parses back") {
  auto polys = {
      commutator({x(1), x(2), x(3)}) * commutator({x(4), x(5), x(6)}),
      Rat(3, 2) * (x(1) * x(2)) - x(7) + NcPoly::one(),
      x(1) * x(1) * x(2) - Rat(1, 3) * x(2),
  };
  for (const auto &p : polys)
    CHECK(parse_poly(p.to_string()) == p);
}
