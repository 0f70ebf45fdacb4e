#include <doctest.h>

#include "pilab/grassmann.hpp"

using namespace pilab;

TEST_CASE("merge signs from masked popcounts") {
  CHECK(subset_merge_sign(0b01, 0b10) == 1);  // e1 * e2, no inversion
  CHECK(subset_merge_sign(0b10, 0b01) == -1); // e2 * e1
  CHECK(subset_merge_sign(0b101, 0b010) == -1); // e1e3 * e2: (3,2) inverts
  CHECK(subset_merge_sign(0, 0b111) == 1);
  // brute-force oracle on small masks
  for (uint64_t a = 0; a < 32; ++a)
    for (uint64_t b = 0; b < 32; ++b) {
      if (a & b)
        continue;
      int inv = 0;
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          if ((a >> i & 1) && (b >> j & 1) && i > j)
            ++inv;
      CHECK(subset_merge_sign(a, b) == ((inv % 2) ? -1 : 1));
    }
}

TEST_CASE("generators square to zero and anticommute") {
  int k = 4;
  for (int i = 1; i <= k; ++i) {
    auto ei = GrassmannElement::generator(k, i);
    CHECK((ei * ei).is_zero());
    for (int j = i + 1; j <= k; ++j) {
      auto ej = GrassmannElement::generator(k, j);
      CHECK(ei * ej + ej * ei == GrassmannElement(k));
    }
  }
}

TEST_CASE("associativity and supercommutativity, exhaustive k=4") {
  int k = 4;
  int dim = 1 << k;
  auto b = [&](int m) { return GrassmannElement::basis(k, m); };
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q) {
      // supercommutativity: uv = (-1)^{|u||v|} vu on homogeneous elements
      int pu = __builtin_popcount(p) & 1, pv = __builtin_popcount(q) & 1;
      auto uv = b(p) * b(q), vu = b(q) * b(p);
      CHECK(uv == ((pu && pv) ? vu * Rat(-1) : vu));
      for (int r = 0; r < dim; ++r)
        CHECK((b(p) * b(q)) * b(r) == b(p) * (b(q) * b(r)));
    }
}

TEST_CASE("triple commutator vanishes on basis triples, k<=4") {
  for (int k = 1; k <= 4; ++k) {
    int dim = 1 << k;
    for (int p = 0; p < dim; ++p)
      for (int q = 0; q < dim; ++q)
        for (int r = 0; r < dim; ++r) {
          auto a = GrassmannElement::basis(k, p);
          auto b = GrassmannElement::basis(k, q);
          auto c = GrassmannElement::basis(k, r);
          auto comm = [](const GrassmannElement &u, const GrassmannElement &v) {
            return u * v - v * u;
          };
          CHECK(comm(comm(a, b), c).is_zero());
        }
  }
}

TEST_CASE("even and odd parts") {
  auto eb = envelope_basis(3);
  CHECK(eb.even == std::vector<uint64_t>{0b000, 0b011, 0b101, 0b110});
  CHECK(eb.odd == std::vector<uint64_t>{0b001, 0b010, 0b100, 0b111});

  CHECK(GrassmannElement::basis(3, 0b011).homogeneous_parity() == 0);
  CHECK(GrassmannElement::basis(3, 0b100).homogeneous_parity() == 1);
  auto mixed = GrassmannElement::basis(3, 1) + GrassmannElement::basis(3, 3);
  CHECK(mixed.homogeneous_parity() == -1);
}

TEST_CASE("printer and parser") {
  auto e13 = GrassmannElement::basis(4, 0b101) * Rat(2);
  CHECK(e13.to_string() == "2*e{1,3}");
  CHECK(parse_grassmann("2*e{1,3}", 4) == e13);
  CHECK(parse_grassmann("e{} - e{2,4}", 4) ==
        GrassmannElement::basis(4, 0) - GrassmannElement::basis(4, 0b1010));
  CHECK_THROWS_AS(parse_grassmann("e{9}", 4), std::invalid_argument);
}

TEST_CASE("free supercommutative algebra K[X;Y]") {
  auto x1 = SuperPoly::x(1), x2 = SuperPoly::x(2);
  auto y1 = SuperPoly::y(1), y2 = SuperPoly::y(2), y3 = SuperPoly::y(3);

  CHECK(x1 * x2 == x2 * x1);
  CHECK((y1 * y1).is_zero());
  CHECK(y1 * y2 + y2 * y1 == SuperPoly());
  CHECK(y2 * y1 * y3 == y1 * y2 * y3 * Rat(-1));
  CHECK(x1 * y2 == y2 * x1);

  // canonical form: y-part strictly ascending
  auto p = y3 * y1;
  REQUIRE(p.terms().size() == 1);
  auto &[m, c] = *p.terms().begin();
  CHECK(m.ypart == std::vector<uint32_t>{1, 3});
  CHECK(c == -1);

  // distributivity & associativity spot check
  auto a = x1 * y1 + y2, b = y3 - x2, cc = y1 * y3;
  CHECK((a * b) * cc == a * (b * cc));
  CHECK(a * (b + cc) == a * b + a * cc);
}
