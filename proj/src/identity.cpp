#include "pilab/identity.hpp"

#include <algorithm>
#include <set>

namespace pilab {

std::string provenance_name(Provenance p) {
  switch (p) {
  case Provenance::EvaluationNullspace:
    return "evaluation-nullspace";
  case Provenance::ConsequenceSpan:
    return "consequence-span";
  case Provenance::ExplicitList:
    return "explicit-list";
  }
  return "?";
}

std::string verdict_name(CompareVerdict v) {
  switch (v) {
  case CompareVerdict::Equal:
    return "equal";
  case CompareVerdict::UsubV:
    return "U-proper-subspace-of-V";
  case CompareVerdict::VsubU:
    return "V-proper-subspace-of-U";
  case CompareVerdict::Incomparable:
    return "incomparable";
  }
  return "?";
}

std::vector<Rat> multilinear_to_vector(const MultilinearPoly &f) {
  std::vector<Rat> v(factorial(f.degree), Rat(0));
  for (auto &[perm, c] : f.coeffs)
    v[perm_rank(perm)] = c;
  return v;
}

MultilinearPoly vector_to_multilinear(const std::vector<Rat> &v, uint32_t n) {
  MultilinearPoly f;
  f.degree = n;
  for (uint64_t r = 0; r < v.size(); ++r)
    if (v[r] != 0)
      f.coeffs.emplace(perm_unrank(r, n), v[r]);
  return f;
}

DegreeComponent component_from_vectors(std::vector<std::vector<Rat>> span,
                                       uint32_t n, Provenance prov) {
  ExactRref rref(static_cast<uint32_t>(factorial(n)));
  for (auto &v : span)
    rref.insert(std::move(v));
  DegreeComponent c;
  c.degree = n;
  c.basis = rref.rows();
  c.provenance = prov;
  return c;
}

DegreeComponent component_from_polys(const std::vector<NcPoly> &span,
                                     uint32_t n, Provenance prov) {
  std::vector<std::vector<Rat>> vecs;
  vecs.reserve(span.size());
  for (auto &f : span)
    vecs.push_back(multilinear_to_vector(as_multilinear(f, n)));
  return component_from_vectors(std::move(vecs), n, prov);
}

// --- Tuple enumeration -------------------------------------------------------

void for_each_tuple(const FdAlgebra &A, uint32_t n,
                    const std::function<bool(const std::vector<int> &)> &fn) {
  const auto &support = A.zero_support();
  std::vector<int> tuple(n, 0);
  bool stop = false;
  auto rec = [&](auto &&self, uint32_t pos, uint64_t mask) -> void {
    if (stop)
      return;
    if (pos == n) {
      if (!fn(tuple))
        stop = true;
      return;
    }
    for (int b = 0; b < A.dim() && !stop; ++b) {
      uint64_t m = 0;
      if (support) {
        m = (*support)[b];
        if (m & mask)
          continue; // any full product through this tuple vanishes
      }
      tuple[pos] = b;
      self(self, pos + 1, mask | m);
    }
  };
  rec(rec, 0, 0);
}

// --- Evaluation --------------------------------------------------------------

FdAlgebra::Elem eval_multilinear(const MultilinearPoly &f, const FdAlgebra &A,
                                 const std::vector<int> &tuple) {
  FdAlgebra::Elem acc = A.zero_elem();
  if (A.monomial_flag()) {
    for (auto &[perm, c] : f.coeffs) {
      int cur = tuple[perm[0] - 1];
      int sign = 1;
      for (size_t i = 1; i < perm.size() && cur >= 0; ++i) {
        int b = tuple[perm[i] - 1];
        sign *= A.mono_sign(cur, b);
        cur = A.mono_to(cur, b);
      }
      if (cur >= 0)
        acc[cur] += sign > 0 ? c : -c;
    }
    return acc;
  }
  for (auto &[perm, c] : f.coeffs) {
    FdAlgebra::Elem v = A.basis_elem(tuple[perm[0] - 1]);
    for (size_t i = 1; i < perm.size(); ++i)
      v = A.mul(v, A.basis_elem(tuple[perm[i] - 1]));
    for (int k = 0; k < A.dim(); ++k)
      if (v[k] != 0)
        acc[k] += c * v[k];
  }
  return acc;
}

FdAlgebra::Elem eval_poly(const NcPoly &f, const FdAlgebra &A,
                          const std::map<uint32_t, FdAlgebra::Elem> &images) {
  FdAlgebra::Elem acc = A.zero_elem();
  for (auto &[w, c] : f.terms()) {
    if (w.empty()) {
      if (!A.unit())
        throw std::invalid_argument("constant term in a non-unital algebra");
      for (int k = 0; k < A.dim(); ++k)
        acc[k] += c * (*A.unit())[k];
      continue;
    }
    auto img = [&](uint32_t x) -> const FdAlgebra::Elem & {
      auto it = images.find(x);
      if (it == images.end())
        throw std::invalid_argument("no image for variable x" +
                                    std::to_string(x));
      return it->second;
    };
    FdAlgebra::Elem v = img(w.letters[0]);
    for (size_t i = 1; i < w.letters.size(); ++i)
      v = A.mul(v, img(w.letters[i]));
    for (int k = 0; k < A.dim(); ++k)
      if (v[k] != 0)
        acc[k] += c * v[k];
  }
  return acc;
}

static EvaluationWitness make_witness(const FdAlgebra &A,
                                      const std::vector<int> &tuple,
                                      FdAlgebra::Elem value) {
  EvaluationWitness w;
  w.tuple = tuple;
  for (int b : tuple)
    w.labels.push_back(A.label(b));
  w.value = std::move(value);
  return w;
}

std::optional<EvaluationWitness> find_witness(const MultilinearPoly &f,
                                              const FdAlgebra &A) {
  std::optional<EvaluationWitness> found;
  for_each_tuple(A, f.degree, [&](const std::vector<int> &tuple) {
    auto v = eval_multilinear(f, A, tuple);
    if (!FdAlgebra::is_zero(v)) {
      found = make_witness(A, tuple, std::move(v));
      return false;
    }
    return true;
  });
  return found;
}

// --- Factored products -------------------------------------------------------

namespace {

// Nonzero values of one factor over all internally support-disjoint tuples.
struct FactorTable {
  uint32_t nvars = 0;
  struct Entry {
    std::vector<int> tuple;
    uint64_t mask = 0;
    std::vector<std::pair<int, Rat>> value; // sparse, by basis index
  };
  std::vector<Entry> entries; // mixed-radix tuple order
};

FactorTable build_factor_table(const MultilinearPoly &f, const FdAlgebra &A) {
  FactorTable tab;
  tab.nvars = f.degree;
  const auto &support = A.zero_support();
  for_each_tuple(A, f.degree, [&](const std::vector<int> &tuple) {
    auto v = eval_multilinear(f, A, tuple);
    if (FdAlgebra::is_zero(v))
      return true;
    FactorTable::Entry e;
    e.tuple = tuple;
    if (support)
      for (int b : tuple)
        e.mask |= (*support)[b];
    for (int k = 0; k < A.dim(); ++k)
      if (v[k] != 0)
        e.value.emplace_back(k, v[k]);
    tab.entries.push_back(std::move(e));
    return true;
  });
  return tab;
}

std::vector<std::pair<int, Rat>>
sparse_mul(const FdAlgebra &A, const std::vector<std::pair<int, Rat>> &a,
           const std::vector<std::pair<int, Rat>> &b) {
  std::map<int, Rat> acc;
  for (auto &[i, ci] : a)
    for (auto &[j, cj] : b)
      for (auto &[k, s] : A.product(i, j)) {
        Rat &slot = acc[k];
        slot += ci * cj * s;
        if (slot == 0)
          acc.erase(k);
      }
  return {acc.begin(), acc.end()};
}

} // namespace

std::optional<EvaluationWitness>
find_witness_product(const std::vector<MultilinearPoly> &factors,
                     const FdAlgebra &A) {
  std::vector<FactorTable> tabs;
  uint32_t n = 0;
  for (auto &f : factors) {
    tabs.push_back(build_factor_table(f, A));
    n += f.degree;
  }
  std::optional<EvaluationWitness> found;
  std::vector<const FactorTable::Entry *> chosen(factors.size(), nullptr);
  auto rec = [&](auto &&self, size_t fi, uint64_t mask,
                 const std::vector<std::pair<int, Rat>> &acc) -> bool {
    if (fi == factors.size()) {
      std::vector<int> tuple;
      tuple.reserve(n);
      for (auto *e : chosen)
        tuple.insert(tuple.end(), e->tuple.begin(), e->tuple.end());
      FdAlgebra::Elem value = A.zero_elem();
      for (auto &[k, c] : acc)
        value[k] = c;
      found = make_witness(A, tuple, std::move(value));
      return false;
    }
    for (auto &e : tabs[fi].entries) {
      if (e.mask & mask)
        continue;
      auto next = fi == 0 ? e.value : sparse_mul(A, acc, e.value);
      if (next.empty())
        continue;
      chosen[fi] = &e;
      if (!self(self, fi + 1, mask | e.mask, next))
        return false;
    }
    return true;
  };
  rec(rec, 0, 0, {});
  return found;
}

bool is_identity(const MultilinearPoly &f, const FdAlgebra &A) {
  return !find_witness(f, A).has_value();
}

bool is_identity_product(const std::vector<MultilinearPoly> &factors,
                         const FdAlgebra &A) {
  return !find_witness_product(factors, A).has_value();
}

bool replay_witness(const MultilinearPoly &f, const FdAlgebra &A,
                    const EvaluationWitness &w) {
  auto v = eval_multilinear(f, A, w.tuple);
  return !FdAlgebra::is_zero(v) && v == w.value;
}

// --- identities_subspace -----------------------------------------------------

DegreeComponent identities_subspace(const FdAlgebra &A, uint32_t n,
                                    const SubspaceOptions &opts,
                                    SubspaceStats *stats) {
  const uint64_t ncols = factorial(n);
  if (ncols > (uint64_t(1) << 31))
    throw BudgetExceeded("degree too large: n! overflows the column index");
  StreamingRank ranker(static_cast<uint32_t>(ncols), opts.seed);
  std::set<std::vector<std::pair<uint32_t, Rat>>> seen_rows;
  uint64_t ops = 0, tuples = 0;
  auto charge = [&](uint64_t c) {
    ops += c;
    if (ops > opts.budget_ops)
      throw BudgetExceeded("tuple-monomial operation budget exceeded (" +
                           std::to_string(opts.budget_ops) + ")");
  };

  // Per tuple: DFS over monomial prefixes sharing partial products, zero
  // pruning; one constraint row per basis coordinate that gets hit.
  std::vector<uint32_t> perm;
  perm.reserve(n);
  std::map<int, std::vector<std::pair<uint32_t, Rat>>> rows;
  const bool mono = A.monomial_flag();

  for_each_tuple(A, n, [&](const std::vector<int> &tuple) {
    ++tuples;
    rows.clear();
    if (mono) {
      auto dfs = [&](auto &&self, uint32_t used, int cur, int sign) -> void {
        charge(1);
        if (perm.size() == n) {
          rows[cur].emplace_back(static_cast<uint32_t>(perm_rank(perm)),
                                 Rat(sign));
          return;
        }
        for (uint32_t j = 1; j <= n; ++j) {
          if (used & (1u << j))
            continue;
          int b = tuple[j - 1];
          int nxt = cur < 0 ? b : A.mono_to(cur, b);
          if (cur >= 0 && nxt < 0)
            continue;
          int nsign = cur < 0 ? sign : sign * A.mono_sign(cur, b);
          perm.push_back(j);
          self(self, used | (1u << j), nxt, nsign);
          perm.pop_back();
        }
      };
      dfs(dfs, 0, -1, 1);
    } else {
      auto dfs = [&](auto &&self, uint32_t used,
                     const FdAlgebra::Elem &cur) -> void {
        charge(A.dim());
        if (perm.size() == n) {
          auto rank = static_cast<uint32_t>(perm_rank(perm));
          for (int k = 0; k < A.dim(); ++k)
            if (cur[k] != 0)
              rows[k].emplace_back(rank, cur[k]);
          return;
        }
        for (uint32_t j = 1; j <= n; ++j) {
          if (used & (1u << j))
            continue;
          auto nxt = perm.empty() ? A.basis_elem(tuple[j - 1])
                                  : A.mul(cur, A.basis_elem(tuple[j - 1]));
          if (!perm.empty() && FdAlgebra::is_zero(nxt))
            continue;
          perm.push_back(j);
          self(self, used | (1u << j), nxt);
          perm.pop_back();
        }
      };
      dfs(dfs, 0, A.zero_elem());
    }
    for (auto &[k, entries] : rows) {
      if (seen_rows.insert(entries).second) {
        SparseVec row;
        row.entries.assign(entries.begin(), entries.end());
        ranker.add_row(row);
      }
    }
    return true;
  });

  if (stats) {
    stats->tuples = tuples;
    stats->ops = ops;
    stats->constraint_rows = seen_rows.size();
    stats->rank = ranker.rank();
    stats->filter_primes = ranker.primes();
  }
  DegreeComponent c;
  c.degree = n;
  c.basis = ranker.exact().nullspace_basis();
  c.provenance = Provenance::EvaluationNullspace;
  return c;
}

uint64_t codimension(const FdAlgebra &A, uint32_t n,
                     const SubspaceOptions &opts) {
  return factorial(n) - identities_subspace(A, n, opts).dim();
}

// --- subspace_compare --------------------------------------------------------

CompareResult subspace_compare(const DegreeComponent &U,
                               const DegreeComponent &V) {
  if (U.degree != V.degree)
    throw std::invalid_argument("subspace_compare: degree mismatch");
  auto ncols = static_cast<uint32_t>(factorial(U.degree));
  ExactRref ru(ncols), rv(ncols);
  for (auto &r : U.basis)
    ru.insert(r);
  for (auto &r : V.basis)
    rv.insert(r);
  CompareResult res;
  for (auto &r : U.basis)
    if (!rv.in_row_space(r)) {
      res.witness_in_u = r;
      break;
    }
  for (auto &r : V.basis)
    if (!ru.in_row_space(r)) {
      res.witness_in_v = r;
      break;
    }
  bool u_in_v = !res.witness_in_u, v_in_u = !res.witness_in_v;
  if (u_in_v && v_in_u)
    res.verdict = CompareVerdict::Equal;
  else if (u_in_v)
    res.verdict = CompareVerdict::UsubV;
  else if (v_in_u)
    res.verdict = CompareVerdict::VsubU;
  else
    res.verdict = CompareVerdict::Incomparable;
  return res;
}

} // namespace pilab
