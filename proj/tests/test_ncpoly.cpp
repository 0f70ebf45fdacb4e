#include <doctest.h>

#include "pilab/ncpoly.hpp"

#include <random>

using namespace pilab;

static NcPoly x(uint32_t i) { return NcPoly::var(i); }

TEST_CASE("word arithmetic and ordering") {
  Word a({1, 2}), b({3});
  CHECK((a * b).letters == std::vector<uint32_t>{1, 2, 3});
  WordLess lt;
  CHECK(lt(Word({9}), Word({1, 1})));  // length first
  CHECK(lt(Word({1, 2}), Word({2, 1}))); // then lex
}

TEST_CASE("basic polynomial arithmetic") {
  auto f = x(1) * x(2) - x(2) * x(1);
  CHECK(f.degree() == 2);
  CHECK(f.term_count() == 2);
  CHECK(f.coeff(Word({1, 2})) == 1);
  CHECK(f.coeff(Word({2, 1})) == -1);
  CHECK((f - f).is_zero());
  CHECK((f * NcPoly::one()) == f);
  CHECK((NcPoly::one() * f) == f);

  // (x1+x2)^2 = x1x1 + x1x2 + x2x1 + x2x2
  auto s = (x(1) + x(2)) * (x(1) + x(2));
  CHECK(s.term_count() == 4);
  CHECK(s.coeff(Word({2, 1})) == 1);
}

TEST_CASE("left-normed commutators") {
  auto c2 = commutator({x(1), x(2)});
  CHECK(c2 == x(1) * x(2) - x(2) * x(1));

  auto c3 = commutator({x(1), x(2), x(3)});
  // [[x1,x2],x3] expands to 4 terms
  CHECK(c3.term_count() == 4);
  CHECK(c3.coeff(Word({1, 2, 3})) == 1);
  CHECK(c3.coeff(Word({3, 2, 1})) == 1);
  CHECK(c3.coeff(Word({2, 1, 3})) == -1);
  CHECK(c3.coeff(Word({3, 1, 2})) == -1);

  // Jacobi: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
  auto jac = commutator({x(1), x(2), x(3)}) + commutator({x(2), x(3), x(1)}) +
             commutator({x(3), x(1), x(2)});
  CHECK(jac.is_zero());
}

TEST_CASE("associativity on random polynomials") {
  std::mt19937 rng(7);
  auto rand_poly = [&]() {
    NcPoly p;
    for (int t = 0; t < 4; ++t) {
      Word w;
      int len = static_cast<int>(rng() % 3);
      for (int i = 0; i < len; ++i)
        w.letters.push_back(1 + rng() % 3);
      p.add_term(w, Rat(static_cast<int>(rng() % 7) - 3));
    }
    return p;
  };
  for (int it = 0; it < 50; ++it) {
    auto a = rand_poly(), b = rand_poly(), c = rand_poly();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("substitution is an endomorphism") {
  auto f = commutator({x(1), x(2)});
  std::map<uint32_t, NcPoly> im{{1, x(3) * x(4)}, {2, x(5)}};
  auto g = substitute(f, im);
  CHECK(g == x(3) * x(4) * x(5) - x(5) * x(3) * x(4));
  CHECK_THROWS_AS(substitute(f, {{1, x(3)}}), std::invalid_argument);

  std::mt19937 rng(11);
  for (int it = 0; it < 20; ++it) {
    NcPoly a = x(1 + rng() % 2) * x(1 + rng() % 2) + x(2);
    NcPoly b = x(1) - x(2) * x(1 + rng() % 2);
    std::map<uint32_t, NcPoly> s{{1, x(4) + x(5)}, {2, x(4) * x(6)}};
    CHECK(substitute(a * b, s) == substitute(a, s) * substitute(b, s));
    CHECK(substitute(a + b, s) == substitute(a, s) + substitute(b, s));
  }
}

TEST_CASE("multilinear component") {
  auto f = x(1) * x(2) + x(2) * x(1) * x(2) + Rat(3) * (x(2) * x(1));
  auto m = multilinear_part(f, 2);
  CHECK(m.degree == 2);
  CHECK(m.coeffs.size() == 2);
  CHECK(m.coeffs.at({2, 1}) == 3);

  CHECK_THROWS_AS(as_multilinear(f, 2), std::invalid_argument);
  auto ok = as_multilinear(commutator({x(1), x(2), x(3)}), 3);
  CHECK(ok.coeffs.size() == 4);
  CHECK(ok.to_ncpoly() == commutator({x(1), x(2), x(3)}));
}

TEST_CASE("permutation ranking") {
  CHECK(factorial(6) == 720);
  CHECK(perm_rank({1, 2, 3}) == 0);
  CHECK(perm_rank({3, 2, 1}) == 5);
  for (uint64_t r = 0; r < 24; ++r)
    CHECK(perm_rank(perm_unrank(r, 4)) == r);
}

TEST_CASE("printing round-trips through coefficients") {
  auto f = Rat(3, 2) * (x(1) * x(2)) - x(7);
  CHECK(f.to_string() == "-x7 + 3/2*x1*x2");
  CHECK(NcPoly::zero().to_string() == "0");
}
