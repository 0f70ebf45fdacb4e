#include <doctest.h>

#include "pilab/fdalgebra.hpp"
#include "pilab/identity.hpp"
#include "pilab/parser.hpp"

#include <random>

using namespace pilab;

static MultilinearPoly ml(const std::string &text, uint32_t n) {
  return as_multilinear(parse_poly(text), n);
}

TEST_CASE("witness for [x1,x2] on G^(2)") {
  auto G2 = grassmann_fd(2);
  auto w = find_witness(ml("[x1,x2]", 2), G2);
  REQUIRE(w.has_value());
  // first tuple in enumeration order: (e1, e2); value 2*e1e2
  CHECK(w->tuple == std::vector<int>{1, 2});
  CHECK(w->labels == std::vector<std::string>{"e{1}", "e{2}"});
  auto expected = G2.zero_elem();
  expected[3] = 2;
  CHECK(w->value == expected);
  CHECK(replay_witness(ml("[x1,x2]", 2), G2, *w));
}

TEST_CASE("[x1,x2,x3] is an identity of G^(4)") {
  CHECK(is_identity(ml("[x1,x2,x3]", 3), grassmann_fd(4)));
  CHECK(!is_identity(ml("[x1,x2,x3]", 3), ut_n_k(2)));
}

TEST_CASE("[x1,x2,x3][x4,x5,x6] is an identity of UT_2(G^(2))") {
  auto A = builtin_algebra("ut2-g2");
  std::vector<MultilinearPoly> factors{ml("[x1,x2,x3]", 3), ml("[x1,x2,x3]", 3)};
  CHECK(is_identity_product(factors, A));
  // and of UT_2(G^(3))
  CHECK(is_identity_product(factors, builtin_algebra("ut2-g3")));
  // but not of UT_3(K)
  auto w = find_witness_product(factors, ut_n_k(3));
  CHECK(w.has_value());
}

TEST_CASE("factored and plain evaluation agree") {
  auto A = builtin_algebra("ut2-g2");
  auto plain = parse_poly("[x1,x2][x3,x4]");
  std::vector<MultilinearPoly> factors{ml("[x1,x2]", 2), ml("[x1,x2]", 2)};
  auto w1 = find_witness(as_multilinear(plain, 4), A);
  auto w2 = find_witness_product(factors, A);
  REQUIRE(w1.has_value());
  REQUIRE(w2.has_value());
  // both witnesses replay against the plain polynomial
  CHECK(eval_multilinear(as_multilinear(plain, 4), A, w2->tuple) == w2->value);
}

TEST_CASE("identity verdicts survive random dense tuples") {
  auto A = grassmann_fd(4);
  auto f = parse_poly("[x1,x2,x3]");
  std::mt19937 rng(17);
  for (int it = 0; it < 200; ++it) {
    std::map<uint32_t, FdAlgebra::Elem> im;
    for (uint32_t v = 1; v <= 3; ++v) {
      auto e = A.zero_elem();
      for (int k = 0; k < A.dim(); ++k)
        e[k] = Rat(static_cast<int>(rng() % 5) - 2);
      im[v] = e;
    }
    CHECK(FdAlgebra::is_zero(eval_poly(f, A, im)));
  }
}

TEST_CASE("eval_poly matches eval_multilinear on basis tuples") {
  auto A = ut2_ku();
  auto f = parse_poly("[x1,x2,x3] + 2*x3*x1*x2");
  auto fm = as_multilinear(f, 3);
  std::mt19937 rng(23);
  for (int it = 0; it < 100; ++it) {
    std::vector<int> tuple{static_cast<int>(rng() % 6),
                           static_cast<int>(rng() % 6),
                           static_cast<int>(rng() % 6)};
    std::map<uint32_t, FdAlgebra::Elem> im;
    for (uint32_t v = 1; v <= 3; ++v)
      im[v] = A.basis_elem(tuple[v - 1]);
    CHECK(eval_poly(f, A, im) == eval_multilinear(fm, A, tuple));
  }
}

TEST_CASE("codimensions of G^(n)") {
  // c_n(G) = 2^{n-1}; degree-n multilinear computations live in G^(n)
  for (uint32_t n = 1; n <= 5; ++n)
    CHECK(codimension(grassmann_fd(n), n) == (uint64_t(1) << (n - 1)));
}

TEST_CASE("codimension basics") {
  CHECK(codimension(ut_n_k(2), 1) == 1);
  CHECK(codimension(ut2_ku(), 1) == 1);
  CHECK(codimension(ut_n_k(2), 2) == 2); // no degree-2 identity
  CHECK(codimension(grassmann_fd(2), 2) == 2);
}

TEST_CASE("P_3 evaluation on G^(3): codimension 4, kernel dim 2") {
  SubspaceStats st;
  auto comp = identities_subspace(grassmann_fd(3), 3, {}, &st);
  CHECK(st.rank == 4); // = c_3(G)
  CHECK(comp.dim() == 2);
  CHECK(comp.provenance == Provenance::EvaluationNullspace);
  // every nullspace vector is an identity of G^(3)
  for (auto &v : comp.basis)
    CHECK(is_identity(vector_to_multilinear(v, 3), grassmann_fd(3)));
  // [x1,x2,x3] lies in the subspace
  auto cmp = subspace_compare(
      component_from_polys({parse_poly("[x1,x2,x3]")}, 3,
                           Provenance::ExplicitList),
      comp);
  CHECK(cmp.verdict == CompareVerdict::UsubV);
}

TEST_CASE("c_n(G^(2)) = c_n(G^(3)) for n <= 5") {
  for (uint32_t n = 2; n <= 5; ++n)
    CHECK(codimension(grassmann_fd(2), n) == codimension(grassmann_fd(3), n));
}

TEST_CASE("monotonicity under subalgebra embedding") {
  // G^(2) embeds into G^(4): identities of the big algebra hold in the small
  for (uint32_t n = 2; n <= 4; ++n) {
    auto big = identities_subspace(grassmann_fd(4), n);
    auto small = identities_subspace(grassmann_fd(2), n);
    auto cmp = subspace_compare(big, small);
    CHECK((cmp.verdict == CompareVerdict::Equal ||
           cmp.verdict == CompareVerdict::UsubV));
  }
}

TEST_CASE("subspace_compare verdicts and witnesses") {
  auto U = component_from_polys({parse_poly("[x1,x2]")}, 2,
                                Provenance::ExplicitList);
  CHECK(subspace_compare(U, U).verdict == CompareVerdict::Equal);

  DegreeComponent empty;
  empty.degree = 2;
  auto cmp = subspace_compare(empty, U);
  CHECK(cmp.verdict == CompareVerdict::UsubV);
  REQUIRE(cmp.witness_in_v.has_value());
  CHECK(vector_to_multilinear(*cmp.witness_in_v, 2).to_ncpoly() ==
        parse_poly("x1*x2 - x2*x1"));

  auto V = component_from_polys({parse_poly("x1*x2")}, 2,
                                Provenance::ExplicitList);
  CHECK(subspace_compare(U, V).verdict == CompareVerdict::Incomparable);
  DegreeComponent wrong_degree;
  wrong_degree.degree = 3;
  CHECK_THROWS_AS(subspace_compare(U, wrong_degree), std::invalid_argument);

  auto W =
      component_from_polys({parse_poly("x1*x2"), parse_poly("x2*x1")}, 2,
                           Provenance::ExplicitList);
  CHECK(subspace_compare(U, W).verdict == CompareVerdict::UsubV);
  CHECK(subspace_compare(W, U).verdict == CompareVerdict::VsubU);
}

TEST_CASE("budget errors are explicit") {
  CHECK_THROWS_AS(
      identities_subspace(grassmann_fd(3), 4, {.seed = 1, .budget_ops = 10}),
      BudgetExceeded);
}

TEST_CASE("support pruning does not change the answer") {
  // strip the support annotation and compare subspaces
  auto A = grassmann_fd(3);
  auto stripped = FdAlgebra::from_json(A.to_json()); // json drops supports
  REQUIRE(!stripped.zero_support().has_value());
  for (uint32_t n = 2; n <= 4; ++n) {
    auto a = identities_subspace(A, n);
    auto b = identities_subspace(stripped, n);
    CHECK(a.basis == b.basis);
  }
}
