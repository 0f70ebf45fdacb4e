#include <doctest.h>

#include "pilab/fdalgebra.hpp"
#include "pilab/grassmann.hpp"

using namespace pilab;

TEST_CASE("grassmann_fd mirrors GrassmannElement") {
  for (int k = 1; k <= 5; ++k) {
    auto A = grassmann_fd(k);
    CHECK(A.dim() == (1 << k));
    CHECK(A.monomial_flag());
    CHECK(A.graded());
    REQUIRE(A.zero_support().has_value());
    for (int i = 0; i < A.dim(); ++i)
      for (int j = 0; j < A.dim(); ++j) {
        auto direct = GrassmannElement::basis(k, i) *
                      GrassmannElement::basis(k, j);
        const auto &row = A.product(i, j);
        if (direct.is_zero()) {
          CHECK(row.empty());
        } else {
          REQUIRE(row.size() == 1);
          CHECK(static_cast<uint64_t>(row[0].first) ==
                direct.terms().begin()->first);
          CHECK(row[0].second == direct.terms().begin()->second);
        }
      }
  }
}

TEST_CASE("even part of G is central among basis elements") {
  auto A = grassmann_fd(4);
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j) {
      if (A.grade(i) != 0)
        continue;
      auto ab = A.mul(A.basis_elem(i), A.basis_elem(j));
      auto ba = A.mul(A.basis_elem(j), A.basis_elem(i));
      CHECK(ab == ba);
    }
}

TEST_CASE("UT_2(K[u]) structure") {
  auto A = ut2_ku();
  CHECK(A.dim() == 6);
  CHECK(A.monomial_flag());
  REQUIRE(A.unit().has_value());
  // labels fix the basis order
  CHECK(A.label(0) == "e11");
  CHECK(A.label(1) == "e12");
  CHECK(A.label(2) == "e22");
  CHECK(A.label(3) == "ue11");
  CHECK(A.label(4) == "ue12");
  CHECK(A.label(5) == "ue22");
  // u*e11 * u*e12 = e12 (u^2 = 1)
  CHECK(A.mono_to(3, 4) == 1);
  CHECK(A.mono_sign(3, 4) == 1);
  // e12 * u*e22 = u*e12
  CHECK(A.mono_to(1, 5) == 4);
  // e12 * e11 = 0
  CHECK(A.mono_to(1, 0) == -1);
  // grading: u-multiples odd
  CHECK(A.grade(1) == 0);
  CHECK(A.grade(4) == 1);
}

TEST_CASE("ut_n over K") {
  auto A = ut_n_k(2);
  CHECK(A.dim() == 3);
  REQUIRE(A.unit().has_value());
  auto B = ut_n_k(3);
  CHECK(B.dim() == 6);
  // e12 e23 = e13, e23 e12 = 0
  int e12 = -1, e23 = -1, e13 = -1;
  for (int i = 0; i < B.dim(); ++i) {
    if (B.label(i) == "e12")
      e12 = i;
    if (B.label(i) == "e23")
      e23 = i;
    if (B.label(i) == "e13")
      e13 = i;
  }
  REQUIRE(e12 >= 0);
  CHECK(B.mono_to(e12, e23) == e13);
  CHECK(B.mono_to(e23, e12) == -1);
}

TEST_CASE("grassmann envelope of a graded algebra") {
  // G^(k)(K[u]) = G_0 (x) 1 + G_1 (x) u is isomorphic to G^(k) itself via
  // e_S (x) u^{|S|} -> e_S: the u's square away and every sign comes from
  // the Grassmann factor.
  auto E = grassmann_envelope(ku_superalgebra(), 3);
  auto G = grassmann_fd(3);
  REQUIRE(E.dim() == 8);
  // basis i of E carries the same subset mask as basis i of G
  for (int i = 0; i < E.dim(); ++i)
    for (int j = 0; j < E.dim(); ++j)
      CHECK(E.product(i, j) == G.product(i, j));
}

TEST_CASE("envelope isomorphism with UT_2(G^(k))") {
  for (int k = 1; k <= 3; ++k) {
    auto rep = check_isomorphic_envelope(k);
    CHECK(rep.isomorphic);
    CHECK(rep.rank == k);
    CHECK(rep.dim == 3 * (1 << k));
    CHECK(rep.products_checked ==
          static_cast<size_t>(rep.dim) * static_cast<size_t>(rep.dim));
    CHECK(rep.counterexample.empty());
  }
}

TEST_CASE("builtin registry") {
  CHECK(builtin_algebra("g3").dim() == 8);
  CHECK(builtin_algebra("ut2-g2").dim() == 12);
  CHECK(builtin_algebra("ut2-k").dim() == 3);
  CHECK(builtin_algebra("ut3-k").dim() == 6);
  CHECK(builtin_algebra("ut2-ku").dim() == 6);
  CHECK(builtin_algebra("env(ut2-ku,2)").dim() == 12);
  CHECK(builtin_algebra("m11-g2").dim() == 8);
  CHECK_THROWS_AS(builtin_algebra("nope"), std::invalid_argument);
}

TEST_CASE("json round trip") {
  for (const char *name : {"ut2-ku", "g2", "ut2-g2"}) {
    auto A = builtin_algebra(name);
    auto B = FdAlgebra::from_json(A.to_json());
    CHECK(B.dim() == A.dim());
    CHECK(B.labels() == A.labels());
    CHECK(B.content_hash() == A.content_hash());
    for (int i = 0; i < A.dim(); ++i)
      for (int j = 0; j < A.dim(); ++j)
        CHECK(B.product(i, j) == A.product(i, j));
  }
}

TEST_CASE("associativity validation rejects bad structure constants") {
  // 2-dim "algebra" with b*b = a, a*b = b, otherwise 0: (bb)b = ab = b but
  // b(bb) = ba = 0.
  std::vector<std::vector<FdAlgebra::Row>> s(2, std::vector<FdAlgebra::Row>(2));
  s[1][1] = {{0, Rat(1)}};
  s[0][1] = {{1, Rat(1)}};
  CHECK_THROWS_AS(FdAlgebra(2, {"a", "b"}, s), std::invalid_argument);
}

TEST_CASE("zero support masks validated") {
  auto A = grassmann_fd(3);
  // masks are the subsets themselves
  auto &sup = *A.zero_support();
  for (int i = 0; i < A.dim(); ++i)
    CHECK(sup[i] == static_cast<uint64_t>(i));
  auto B = ut2_ku();
  std::vector<uint64_t> bad(6, 0);
  bad[1] = 1; // e12*e12 = 0 but masks 1 & 0 pass the overlap rule
  CHECK_THROWS_AS(B.set_zero_support(bad), std::invalid_argument);
}
