#pragma once

#include "pilab/identity.hpp"
#include "pilab/ncpoly.hpp"
#include "pilab/parser.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace pilab {

// --- T-ideal presentations ---------------------------------------------------

struct TIdealPresentation {
  std::string name;
  std::vector<NcPoly> generators; // nonzero, multilinear

  TIdealPresentation(std::string nm, std::vector<NcPoly> gens);
};

// T_1 = <[x1,x2,x3]>, T_2 = <[x1,x2,x3][x4,x5,x6]> (section-5 notation)
TIdealPresentation t_ideal_T1();
TIdealPresentation t_ideal_T2();
// calT(m) = <[x1,x2,x3][x4,x5,x6], [x1,x2]...[x_{2m+3},x_{2m+4}]>
TIdealPresentation t_ideal_calT(int m);

// Product of t length-2 commutators [x1,x2][x3,x4]...[x_{2t-1},x_{2t}].
NcPoly pair_product(uint32_t t);

// --- Multilinear consequence span --------------------------------------------

// P_n cap <T>: span of u * g(w_1,...,w_d) * v over multilinear generators g,
// ordered set partitions of a variable subset into the arguments w_i and the
// flanking words u, v on the rest. Deterministic lexicographic enumeration;
// basis is the streaming RREF of the instance vectors.
DegreeComponent consequences_multilinear(const TIdealPresentation &T,
                                         uint32_t n,
                                         const SubspaceOptions &opts = {},
                                         SubspaceStats *stats = nullptr);

// All substitution instances of the multilinear generator g landing in the
// (multi)homogeneous component with the given variable content (var ->
// multiplicity). Used by consequences_multilinear (multilinear content) and by
// the normal-form solver.
std::vector<NcPoly>
ideal_component_instances(const NcPoly &g,
                          const std::map<uint32_t, uint32_t> &content,
                          uint64_t budget = 5'000'000);

// --- Normal form modulo [x1,x2]...[x_{2nb-1},x_{2nb}] ------------------------

// Basis element x_1^{a_1}...x_m^{a_m} c_1...c_r of the relatively free
// algebra of the variety [x1,x2]...[x_{2nb-1},x_{2nb}] = 0: sorted prefix
// followed by <= nb-1 left-normed commutators with index pattern
// i_1 > i_2 <= i_3 <= ... <= i_p.
struct UtnBasisElement {
  std::vector<uint32_t> prefix;                 // ascending
  std::vector<std::vector<uint32_t>> commutators; // each in pattern form
  NcPoly expand() const;
  std::string to_string() const;
};

// All basis elements with the given content, in deterministic order.
std::vector<UtnBasisElement>
utn_basis(const std::map<uint32_t, uint32_t> &content, int n_bound);

// Rewrites f modulo the T-ideal of [x1,x2]...[x_{2 n_bound - 1},x_{2 n_bound}]
// into the span of utn_basis elements (per multihomogeneous component, by
// exact linear algebra against the ideal component). Idempotent.
NcPoly ut_normal_form(const NcPoly &f, int n_bound);

// --- T_2 certificates --------------------------------------------------------

// coeff * u * [a1,a2,a3] * [b1,b2,b3] * v : one substitution instance of
// [x1,x2,x3][x4,x5,x6] with polynomial arguments and flanks.
struct T2Instance {
  Rat coeff;
  NcPoly u;
  std::array<NcPoly, 3> a;
  std::array<NcPoly, 3> b;
  NcPoly v;
  NcPoly expand() const;
};
using T2Certificate = std::vector<T2Instance>;

NcPoly certificate_total(const T2Certificate &cert);

// u*[c1]*mid*[c2]*v as a sum of two T2 instances:
//   u*[[c1_1,c1_2],c1_3,mid]*[c2]*v + (u*mid)*[c1]*[c2]*v.
T2Certificate cert_two_sep(const NcPoly &u, const std::array<NcPoly, 3> &c1,
                           const NcPoly &mid, const std::array<NcPoly, 3> &c2,
                           const NcPoly &v, const Rat &coeff = Rat(1));

// coeff * u * [a1,a2,a3] * v : instance of [x1,x2,x3].
struct T1Instance {
  Rat coeff;
  NcPoly u;
  std::array<NcPoly, 3> a;
  NcPoly v;
  NcPoly expand() const;
};

// Fixed combination of T1 instances summing to [x1,x2][x3,x4]+[x1,x3][x2,x4]
// (solved once by linear algebra at degree 4 and memoized).
const std::vector<T1Instance> &t1_swap_template();

// The template with x1..x4 replaced by arbitrary polynomials.
std::vector<T1Instance> instantiate_swap(const std::array<NcPoly, 4> &args);

// --- Lemma-lem1-style consequences, by certificate ---------------------------

// item 1: [y1,y2,y3] p [z1,z2,z3]
// item 2: ([y1,y2][y3,y4]+[y1,y3][y2,y4]) p [z1,z2,z3]
// item 3: [y1,y2,y3] p ([z1,z2][z3,z4]+[z1,z3][z2,z4])
// item 4: ([y1,y2][y3,y4]+[y1,y3][y2,y4]) p ([z1,z2][z3,z4]+[z1,z3][z2,z4])
// with p = x_{a+1} x_{a+2} ... x_{a+t} a single multilinear word; variables
// numbered y's first, then p's, then z's.
NcPoly lem1_poly(int item, uint32_t t);
T2Certificate cert_lem1(int item, uint32_t t);

// --- Lemma `reordering`: rewriting mod T_2 -----------------------------------

// Input must be a signed sum of products, each product a sequence of plain
// variables, exactly one leading length-3 commutator, and length-2 commutators
// (all commutator entries plain variables). Output is the canonical form
// (-1)^sigma u_0 [v1,v2,v3][w_1,w_2]...[w_{2n-1},w_{2n}] u_1...u_{n+1} with
// the pair entries globally ascending. When cert is given, it accumulates T_2
// instances with f - result = certificate_total(*cert), an exact identity.
NcPoly reorder_mod_T2(const ExprPtr &f, T2Certificate *cert = nullptr);

// --- Section-4 polynomial families -------------------------------------------

// Family pol1: [x_{i1},x_{i2}]..[x_{i_{2r-1}},x_{i_{2r}}] [x_{j1},..,x_{js}]
// [x_{k1},x_{k2}]..[x_{k_{2t-1}},x_{k_{2t}}] with i's and k's ascending and
// j-pattern j1 > j2 < j3 < ... < js; all distributions of {1..n}.
std::vector<MultilinearPoly> family_pol1(int m, uint32_t n, uint32_t r,
                                         uint32_t s, uint32_t t);

// Family pol3: all products of t descending pairs partitioning {1..2t},
// factors ordered by their smaller entry; (2t-1)!! polynomials.
std::vector<MultilinearPoly> family_pol3(uint32_t t, uint32_t n);

// All 2t-variable pair products [x_{s(1)},x_{s(2)}]...[x_{s(2t-1)},x_{s(2t)}]
// over s in S_2t, in lexicographic s order.
std::vector<MultilinearPoly> all_pair_products(uint32_t t);

// Basis of Span{pair products} + T(UT_2(G^(2m))) / T(UT_2(G^(2m))): greedy
// first-seen independent pair products modulo the evaluation nullspace.
DegreeComponent compute_Bm(int m, uint32_t t, const SubspaceOptions &opts = {},
                           std::vector<MultilinearPoly> *chosen = nullptr);

} // namespace pilab
