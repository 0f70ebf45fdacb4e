#pragma once

#include "pilab/fdalgebra.hpp"
#include "pilab/linalg.hpp"
#include "pilab/ncpoly.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pilab {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- Subspaces of the multilinear component P_n ------------------------------

enum class Provenance { EvaluationNullspace, ConsequenceSpan, ExplicitList };

std::string provenance_name(Provenance p);

// Subspace of P_n: independent coefficient vectors indexed by permutation rank
// (lexicographic rank of the monomial's letter sequence).
struct DegreeComponent {
  uint32_t degree = 0;
  std::vector<std::vector<Rat>> basis;
  Provenance provenance = Provenance::ExplicitList;

  uint32_t dim() const { return static_cast<uint32_t>(basis.size()); }
  uint64_t ambient_dim() const { return factorial(degree); }
};

// Builds a DegreeComponent from spanning polynomials (reduced to an
// independent basis in RREF form; input order decides the pivots).
DegreeComponent component_from_polys(const std::vector<NcPoly> &span,
                                     uint32_t n, Provenance prov);
DegreeComponent component_from_vectors(std::vector<std::vector<Rat>> span,
                                       uint32_t n, Provenance prov);

MultilinearPoly vector_to_multilinear(const std::vector<Rat> &v, uint32_t n);
std::vector<Rat> multilinear_to_vector(const MultilinearPoly &f);

// --- Identity testing by evaluation ------------------------------------------

struct EvaluationWitness {
  std::vector<int> tuple; // basis index substituted for x_1, ..., x_n
  std::vector<std::string> labels;
  FdAlgebra::Elem value; // nonzero
};

// Enumerates the evaluation tuples (b_1,...,b_n) in mixed-radix order,
// restricted to pairwise disjoint supports when A carries zero_support masks
// (any tuple with an overlap evaluates every multilinear monomial to zero).
// Stops early when the callback returns false.
void for_each_tuple(const FdAlgebra &A, uint32_t n,
                    const std::function<bool(const std::vector<int> &)> &fn);

FdAlgebra::Elem eval_multilinear(const MultilinearPoly &f, const FdAlgebra &A,
                                 const std::vector<int> &tuple);

// Evaluates f at arbitrary algebra elements (images keyed by variable index;
// every variable of f must be mapped). Used for explicit substitutions and
// randomized confirmation of identity verdicts.
FdAlgebra::Elem eval_poly(const NcPoly &f, const FdAlgebra &A,
                          const std::map<uint32_t, FdAlgebra::Elem> &images);

// Decides f in T(A) by exhausting basis tuples; returns the first witness in
// enumeration order, or nullopt if f is an identity.
std::optional<EvaluationWitness> find_witness(const MultilinearPoly &f,
                                              const FdAlgebra &A);

// Same decision for a factored polynomial f = f_1 f_2 ... f_r with pairwise
// variable-disjoint multilinear factors (e.g. products of commutators).
// Evaluates factor-by-factor with memoized factor values and early zero exit;
// exponentially faster than expanding the product.
std::optional<EvaluationWitness>
find_witness_product(const std::vector<MultilinearPoly> &factors,
                     const FdAlgebra &A);

bool is_identity(const MultilinearPoly &f, const FdAlgebra &A);
bool is_identity_product(const std::vector<MultilinearPoly> &factors,
                         const FdAlgebra &A);

// Re-evaluates a stored witness; true iff it reproduces the stored value.
bool replay_witness(const MultilinearPoly &f, const FdAlgebra &A,
                    const EvaluationWitness &w);

// --- The full multilinear identity subspace ----------------------------------

struct SubspaceOptions {
  uint64_t seed = 1;
  // Budget on tuple-monomial operations; exceeding it raises BudgetExceeded.
  uint64_t budget_ops = 1'000'000'000ull;
};

struct SubspaceStats {
  uint64_t tuples = 0;
  uint64_t ops = 0;
  uint64_t constraint_rows = 0; // distinct rows fed to the rank engine
  uint32_t rank = 0;
  std::vector<uint64_t> filter_primes;
};

// T(A) cap P_n as the exact nullspace of the evaluation map; provenance
// evaluation-nullspace. c_n(A) = n! - dim(result).
DegreeComponent identities_subspace(const FdAlgebra &A, uint32_t n,
                                    const SubspaceOptions &opts = {},
                                    SubspaceStats *stats = nullptr);

uint64_t codimension(const FdAlgebra &A, uint32_t n,
                     const SubspaceOptions &opts = {});

// --- Subspace comparison ------------------------------------------------------

enum class CompareVerdict { Equal, UsubV, VsubU, Incomparable };

std::string verdict_name(CompareVerdict v);

struct CompareResult {
  CompareVerdict verdict = CompareVerdict::Equal;
  // Witness in U with nonzero residue against V (resp. in V against U);
  // empty when the corresponding inclusion holds.
  std::optional<std::vector<Rat>> witness_in_u;
  std::optional<std::vector<Rat>> witness_in_v;
};

CompareResult subspace_compare(const DegreeComponent &U,
                               const DegreeComponent &V);

} // namespace pilab
