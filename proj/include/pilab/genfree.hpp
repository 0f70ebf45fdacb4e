#pragma once

#include "pilab/fdalgebra.hpp"
#include "pilab/grassmann.hpp"
#include "pilab/identity.hpp"
#include "pilab/ncpoly.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace pilab {

// --- Relatively free algebra of the Grassmann algebra ------------------------

// Normal-form monomial of F(G): commutative part x_{a1}^{e1}...x_{ar}^{er}
// (ascending variables) times a wedge of length-2 commutators
// [x_{s1},x_{s2}][x_{s3},x_{s4}]... encoded by the strictly ascending letter
// sequence s (even length). The wedge is fully alternating in its letters:
// [a,b][c,d] = -[a,c][b,d] modulo the triple commutator.
struct FgTerm {
  std::vector<std::pair<uint32_t, uint32_t>> xpart; // (var, exp), ascending
  std::vector<uint32_t> wedge;                      // strictly ascending
  auto operator<=>(const FgTerm &) const = default;
};

// Element of F(G), optionally reduced at Grassmann rank N (trunc): wedge terms
// with more than floor(N/2) commutator factors vanish in G^(N), so terms with
// wedge length > 2*floor(N/2) are dropped. trunc == 0 means no reduction.
class FreeGrassmannElement {
public:
  explicit FreeGrassmannElement(int trunc = 0) : trunc_(trunc) {}
  static FreeGrassmannElement one(int trunc = 0);
  static FreeGrassmannElement variable(uint32_t a, int trunc = 0);

  int trunc() const { return trunc_; }
  const std::map<FgTerm, Rat> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds c * t, canonicalizing the wedge (sorting with sign, zero on repeats)
  // and applying the rank reduction.
  void add_term(const FgTerm &t, const Rat &c);

  FreeGrassmannElement operator+(const FreeGrassmannElement &o) const;
  FreeGrassmannElement operator-(const FreeGrassmannElement &o) const;
  FreeGrassmannElement operator*(const FreeGrassmannElement &o) const;
  FreeGrassmannElement operator*(const Rat &c) const;
  bool operator==(const FreeGrassmannElement &o) const {
    return terms_ == o.terms_;
  }

  using LabelFn = std::function<std::string(uint32_t)>;
  std::string to_string(const LabelFn &label = {}) const;

private:
  int trunc_;
  std::map<FgTerm, Rat> terms_;
};

FreeGrassmannElement fg_commutator(const FreeGrassmannElement &a,
                                   const FreeGrassmannElement &b);

// Evaluation homomorphism into G^(rank): x_a -> images[a]; terms evaluated
// literally (sorted word times commutator product). Well-defined because the
// imposed relations are identities of G^(rank) (rank <= trunc when truncated).
GrassmannElement eval_fg(const FreeGrassmannElement &f,
                         const std::map<uint32_t, GrassmannElement> &images,
                         int rank);

// --- Generic upper-triangular matrices over F(G) ------------------------------

// Entry variable ids for the i-th generic matrix (i >= 1): x11^(i), x12^(i),
// x22^(i) get consecutive ids 3(i-1)+1..3(i-1)+3.
uint32_t gm_var(int i, int row, int col);
std::string gm_var_label(uint32_t id);

struct GenericMatrix {
  FreeGrassmannElement a11, a12, a22; // strictly lower part is zero

  explicit GenericMatrix(int trunc = 0) : a11(trunc), a12(trunc), a22(trunc) {}

  bool is_zero() const {
    return a11.is_zero() && a12.is_zero() && a22.is_zero();
  }
  GenericMatrix operator+(const GenericMatrix &o) const;
  GenericMatrix operator-(const GenericMatrix &o) const;
  GenericMatrix operator*(const GenericMatrix &o) const;
  GenericMatrix operator*(const Rat &c) const;
  bool operator==(const GenericMatrix &o) const {
    return a11 == o.a11 && a12 == o.a12 && a22 == o.a22;
  }
  std::string to_string() const;
};

GenericMatrix gm_commutator(const GenericMatrix &a, const GenericMatrix &b);

// The i-th generic matrix of the rank-k model of UT_2(G), entries reduced at
// Grassmann rank trunc (0 = unreduced). Requires 1 <= i <= k.
GenericMatrix xi_generic(int i, int k, int trunc = 0);

// --- Generic elements of the Grassmann envelope -------------------------------

// Element of B (x) K[X;Y] over the basis of a graded algebra B: coordinate
// polynomials are supercommutative, even basis elements carry even
// coordinates and odd basis elements odd ones.
struct EnvelopeGeneric {
  const FdAlgebra *B = nullptr;
  std::vector<SuperPoly> coords; // indexed by the basis of B

  EnvelopeGeneric() = default;
  explicit EnvelopeGeneric(const FdAlgebra &alg)
      : B(&alg), coords(alg.dim()) {}

  bool is_zero() const;
  EnvelopeGeneric operator+(const EnvelopeGeneric &o) const;
  EnvelopeGeneric operator-(const EnvelopeGeneric &o) const;
  EnvelopeGeneric operator*(const EnvelopeGeneric &o) const;
  std::string to_string() const;
};

// xi_i = sum_j u_j (x) x_j^(i) + sum_j v_j (x) y_j^(i) over the homogeneous
// basis of B (u_j even, v_j odd); x/y ids are (i-1)*r + pos + 1 within each
// parity class. Requires B graded.
EnvelopeGeneric xi_envelope(int i, const FdAlgebra &B);

// --- Truncated identity checking for F_k(UT_2(G)) -----------------------------

struct TruncatedCheckResult {
  bool verified = false;
  int k = 0, D = 0, N = 0;
  // Witness: the word in xi_1..xi_k substituted for each variable of f.
  std::vector<std::vector<int>> witness_words;
  std::string witness_value;
  uint64_t products = 0; // matrix multiplications performed
};

// Substitutes every tuple of words of length <= D in xi_1..xi_k into the
// multilinear f, reducing at Grassmann rank N (default n*D, which loses no
// terms at total degree <= n*D). "verified" is a bounded verification up to
// word degree D, not a proof of identity. f is factored into consecutive
// variable blocks when possible; partial products are deduplicated up to
// scalar for pruning. Throws BudgetExceeded past the multiplication budget.
TruncatedCheckResult check_truncated_identity(const NcPoly &f, int k, int D,
                                              int N = 0,
                                              uint64_t budget = 50'000'000);

// --- Direct vs generic-model cross-check --------------------------------------

struct CrossCheckOptions {
  int max_D = 3;
  // Per (polynomial, D) cap on substitution tuples; a D whose full
  // enumeration exceeds it is recorded as skipped, not failed.
  uint64_t tuple_budget = 100'000;
};

struct CrossCheckReport {
  uint32_t n = 0;
  uint64_t polys_checked = 0;
  uint64_t tuples_checked = 0;
  bool agree = true;
  std::vector<std::string> discrepancies; // offending poly/tuple descriptions
  std::vector<std::string> skipped;       // "(poly, D)" budget skips
};

// Structure-constant generic element xi_i of A: sum_j b_j (x) t_j^(i) with
// commuting coordinates t (ids (i-1)*dim + j + 1).
EnvelopeGeneric generic_element(const FdAlgebra &A, int i);

// For every monomial of P_n and every basis vector of T(A) cap P_n: compares
// the direct verdict (basis-tuple evaluation in A) against vanishing under
// substitution of words of length <= D in the rank-n generic elements of A,
// for D = 1..max_D. Agreement is the expected outcome; discrepancies carry
// the offending word tuple.
CrossCheckReport cross_check_lemma_lem(const FdAlgebra &A, uint32_t n,
                                       const CrossCheckOptions &opts = {});

} // namespace pilab
