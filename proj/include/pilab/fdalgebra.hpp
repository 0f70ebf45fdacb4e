#pragma once

#include "pilab/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pilab {

// Finite-dimensional associative algebra given by labeled basis and structure
// constants, with optional Z2-grading and a fast path for monomial algebras
// (every basis product is 0 or +-(single basis element)).
class FdAlgebra {
public:
  using Row = std::vector<std::pair<int, Rat>>; // (basis index, coefficient)

  FdAlgebra(int dim, std::vector<std::string> labels,
            std::vector<std::vector<Row>> structure,
            std::optional<std::vector<int>> grading = std::nullopt,
            std::optional<std::vector<Rat>> unit = std::nullopt,
            bool skip_assoc_check = false);

  int dim() const { return dim_; }
  const std::string &label(int i) const { return labels_[i]; }
  const std::vector<std::string> &labels() const { return labels_; }
  const Row &product(int i, int j) const { return structure_[i][j]; }
  bool graded() const { return grading_.has_value(); }
  int grade(int i) const { return (*grading_)[i]; }
  const std::optional<std::vector<int>> &grading() const { return grading_; }
  const std::optional<std::vector<Rat>> &unit() const { return unit_; }

  bool monomial_flag() const { return monomial_flag_; }
  // Monomial fast path: product of basis i, j is mono_sign * basis mono_to,
  // or zero when mono_to < 0. Valid only when monomial_flag().
  int32_t mono_to(int i, int j) const { return mono_to_[i * dim_ + j]; }
  int8_t mono_sign(int i, int j) const { return mono_sign_[i * dim_ + j]; }

  // Optional annotation: if present, basis products vanish whenever supports
  // overlap, and support(b_i b_j) = support(i) | support(j) otherwise.
  // Used to restrict evaluation-tuple enumeration soundly.
  const std::optional<std::vector<uint64_t>> &zero_support() const {
    return zero_support_;
  }
  void set_zero_support(std::vector<uint64_t> s);

  // Dense element arithmetic (coordinates over the basis).
  using Elem = std::vector<Rat>;
  Elem zero_elem() const { return Elem(dim_, Rat(0)); }
  Elem basis_elem(int i) const;
  Elem mul(const Elem &a, const Elem &b) const;
  static bool is_zero(const Elem &a);
  std::string elem_to_string(const Elem &a) const;

  // FNV-1a over dim, labels and structure constants; identifies the algebra
  // in reports.
  uint64_t content_hash() const;

  std::string to_json() const;
  static FdAlgebra from_json(const std::string &text);

private:
  int dim_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Row>> structure_;
  std::optional<std::vector<int>> grading_;
  std::optional<std::vector<Rat>> unit_;
  bool monomial_flag_ = false;
  std::vector<int32_t> mono_to_;
  std::vector<int8_t> mono_sign_;
  std::optional<std::vector<uint64_t>> zero_support_;

  void detect_monomial();
  void check_associativity(bool skip) const;
  void check_grading() const;
};

// --- Constructions ----------------------------------------------------------

// G^(k) as an FdAlgebra; basis = generator subsets in mask order, graded by
// subset parity, with zero-support masks.
FdAlgebra grassmann_fd(int k);

// The 6-dimensional superalgebra UT_2(K[u]), u^2 = 1. Basis
// {e11, e12, e22, u*e11, u*e12, u*e22}; u-multiples are odd.
FdAlgebra ut2_ku();

// K[u] itself, u^2 = 1, graded (1 even, u odd). Small fixture.
FdAlgebra ku_superalgebra();

// M_2(K) with even part {e11,e22}, odd part {e12,e21}; the M_{1,1} grading.
FdAlgebra m11_superalgebra();

// G^(k)_0 (x) B_0 + G^(k)_1 (x) B_1. Requires B graded; result ungraded.
FdAlgebra grassmann_envelope(const FdAlgebra &B, int k);

// Upper-triangular n x n matrices over A; basis {a * e_ij : i <= j}.
FdAlgebra ut_n(const FdAlgebra &A, int n);

// UT_n(K) via ut_n on the 1-dimensional algebra.
FdAlgebra ut_n_k(int n);

// Exhaustive structure-constant comparison of G^(k)(UT_2(K[u])) with
// UT_2(G^(k)) under the basis bijection e_A (x) v e_ij -> e_A e_ij.
struct EnvelopeIsoReport {
  bool isomorphic = false;
  int rank = 0;
  int dim = 0;
  size_t products_checked = 0;
  std::vector<std::pair<std::string, std::string>> bijection;
  std::string counterexample; // empty when isomorphic
};
EnvelopeIsoReport check_isomorphic_envelope(int k);

// Builtin algebra registry for the CLI: g{k}, ut2-g{k}, ut2-k, ut2-ku,
// ut{n}-k, env(ut2-ku,{k}), m11-g{k}.
FdAlgebra builtin_algebra(const std::string &name);

} // namespace pilab
