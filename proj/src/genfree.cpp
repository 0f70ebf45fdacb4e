#include "pilab/genfree.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pilab {

// --- FreeGrassmannElement ----------------------------------------------------

namespace {

// Insertion sort counting swaps; returns the sign, or 0 on a repeated letter.
int sort_wedge(std::vector<uint32_t> &w) {
  int sign = 1;
  for (size_t i = 1; i < w.size(); ++i) {
    uint32_t v = w[i];
    size_t j = i;
    while (j > 0 && w[j - 1] > v) {
      w[j] = w[j - 1];
      --j;
      sign = -sign;
    }
    w[j] = v;
  }
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1])
      return 0;
  return sign;
}

size_t wedge_cutoff(int trunc) {
  // Products of more than floor(trunc/2) pair commutators vanish in G^(trunc).
  return 2 * (static_cast<size_t>(trunc) / 2);
}

int combine_trunc(int a, int b) {
  if (a == 0)
    return b;
  if (b == 0)
    return a;
  return std::min(a, b);
}

std::vector<uint32_t> expand_word(
    const std::vector<std::pair<uint32_t, uint32_t>> &xpart) {
  std::vector<uint32_t> w;
  for (auto &[v, e] : xpart)
    for (uint32_t i = 0; i < e; ++i)
      w.push_back(v);
  return w;
}

std::vector<std::pair<uint32_t, uint32_t>>
compress_word(const std::vector<uint32_t> &w) {
  std::vector<std::pair<uint32_t, uint32_t>> xp;
  for (uint32_t v : w) {
    if (!xp.empty() && xp.back().first == v)
      ++xp.back().second;
    else
      xp.emplace_back(v, 1);
  }
  return xp;
}

std::string default_label(uint32_t v) { return "x" + std::to_string(v); }

} // namespace

FreeGrassmannElement FreeGrassmannElement::one(int trunc) {
  FreeGrassmannElement r(trunc);
  r.add_term(FgTerm{}, Rat(1));
  return r;
}

FreeGrassmannElement FreeGrassmannElement::variable(uint32_t a, int trunc) {
  FreeGrassmannElement r(trunc);
  r.add_term(FgTerm{{{a, 1}}, {}}, Rat(1));
  return r;
}

void FreeGrassmannElement::add_term(const FgTerm &t, const Rat &c) {
  if (c == 0)
    return;
  FgTerm u = t;
  int sign = sort_wedge(u.wedge);
  if (sign == 0)
    return;
  if (trunc_ > 0 && u.wedge.size() > wedge_cutoff(trunc_))
    return;
  auto it = terms_.find(u);
  if (it == terms_.end()) {
    terms_.emplace(std::move(u), c * sign);
  } else {
    it->second += c * sign;
    if (it->second == 0)
      terms_.erase(it);
  }
}

FreeGrassmannElement
FreeGrassmannElement::operator+(const FreeGrassmannElement &o) const {
  FreeGrassmannElement r(combine_trunc(trunc_, o.trunc_));
  for (auto &[t, c] : terms_)
    r.add_term(t, c);
  for (auto &[t, c] : o.terms_)
    r.add_term(t, c);
  return r;
}

FreeGrassmannElement
FreeGrassmannElement::operator-(const FreeGrassmannElement &o) const {
  FreeGrassmannElement r(combine_trunc(trunc_, o.trunc_));
  for (auto &[t, c] : terms_)
    r.add_term(t, c);
  for (auto &[t, c] : o.terms_)
    r.add_term(t, -c);
  return r;
}

FreeGrassmannElement FreeGrassmannElement::operator*(const Rat &c) const {
  FreeGrassmannElement r(trunc_);
  if (c == 0)
    return r;
  for (auto &[t, k] : terms_)
    r.terms_.emplace(t, k * c);
  return r;
}

namespace {

// x_b x_a = x_a x_b - [x_a,x_b] for a < b, with all pair commutators central
// and fully alternating. Straightens the word by resolving the first adjacent
// inversion; corrections move letter pairs into the wedge.
void straighten(std::vector<uint32_t> w, std::vector<uint32_t> extra,
                const Rat &c, const std::vector<uint32_t> &base_wedge,
                size_t cutoff, FreeGrassmannElement &out) {
  size_t i = 0;
  while (i + 1 < w.size() && w[i] <= w[i + 1])
    ++i;
  if (i + 1 >= w.size()) {
    FgTerm t;
    t.xpart = compress_word(w);
    t.wedge = base_wedge;
    t.wedge.insert(t.wedge.end(), extra.begin(), extra.end());
    out.add_term(t, c);
    return;
  }
  uint32_t b = w[i], a = w[i + 1]; // b > a
  std::vector<uint32_t> swapped = w;
  std::swap(swapped[i], swapped[i + 1]);
  straighten(std::move(swapped), extra, c, base_wedge, cutoff, out);

  // Correction term: drop both letters, multiply by -[x_a,x_b].
  if (std::find(base_wedge.begin(), base_wedge.end(), a) != base_wedge.end() ||
      std::find(base_wedge.begin(), base_wedge.end(), b) != base_wedge.end() ||
      std::find(extra.begin(), extra.end(), a) != extra.end() ||
      std::find(extra.begin(), extra.end(), b) != extra.end())
    return;
  if (cutoff && base_wedge.size() + extra.size() + 2 > cutoff)
    return;
  std::vector<uint32_t> shorter = w;
  shorter.erase(shorter.begin() + i, shorter.begin() + i + 2);
  extra.push_back(a);
  extra.push_back(b);
  straighten(std::move(shorter), std::move(extra), -c, base_wedge, cutoff, out);
}

} // namespace

FreeGrassmannElement
FreeGrassmannElement::operator*(const FreeGrassmannElement &o) const {
  int rt = combine_trunc(trunc_, o.trunc_);
  FreeGrassmannElement r(rt);
  size_t cutoff = rt > 0 ? wedge_cutoff(rt) : 0;
  for (auto &[t1, c1] : terms_) {
    for (auto &[t2, c2] : o.terms_) {
      // Shared wedge letters kill every straightening branch.
      std::vector<uint32_t> base = t1.wedge;
      bool dead = false;
      for (uint32_t v : t2.wedge) {
        if (std::find(base.begin(), base.end(), v) != base.end()) {
          dead = true;
          break;
        }
        base.push_back(v);
      }
      if (dead)
        continue;
      if (cutoff && base.size() > cutoff)
        continue;
      std::vector<uint32_t> w = expand_word(t1.xpart);
      std::vector<uint32_t> w2 = expand_word(t2.xpart);
      w.insert(w.end(), w2.begin(), w2.end());
      straighten(std::move(w), {}, c1 * c2, base, cutoff, r);
    }
  }
  return r;
}

std::string FreeGrassmannElement::to_string(const LabelFn &label) const {
  if (terms_.empty())
    return "0";
  const LabelFn &lab = label ? label : LabelFn(default_label);
  std::string s;
  bool first = true;
  for (auto &[t, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        s += "-";
        a = -a;
      }
    } else {
      s += a < 0 ? " - " : " + ";
      if (a < 0)
        a = -a;
    }
    first = false;
    std::vector<std::string> parts;
    if (a != 1 || (t.xpart.empty() && t.wedge.empty()))
      parts.push_back(rat_to_string(a));
    for (auto &[v, e] : t.xpart)
      parts.push_back(lab(v) + (e > 1 ? "^" + std::to_string(e) : ""));
    for (size_t i = 0; i + 1 < t.wedge.size(); i += 2)
      parts.push_back("[" + lab(t.wedge[i]) + "," + lab(t.wedge[i + 1]) + "]");
    for (size_t i = 0; i < parts.size(); ++i)
      s += (i ? "*" : "") + parts[i];
  }
  return s;
}

FreeGrassmannElement fg_commutator(const FreeGrassmannElement &a,
                                   const FreeGrassmannElement &b) {
  return a * b - b * a;
}

GrassmannElement eval_fg(const FreeGrassmannElement &f,
                         const std::map<uint32_t, GrassmannElement> &images,
                         int rank) {
  auto img = [&](uint32_t v) -> const GrassmannElement & {
    auto it = images.find(v);
    if (it == images.end())
      throw std::invalid_argument("eval_fg: no image for variable " +
                                  std::to_string(v));
    return it->second;
  };
  GrassmannElement total(rank);
  for (auto &[t, c] : f.terms()) {
    GrassmannElement val = GrassmannElement::basis(rank, 0) * c;
    for (auto &[v, e] : t.xpart)
      for (uint32_t i = 0; i < e; ++i)
        val = val * img(v);
    for (size_t i = 0; i + 1 < t.wedge.size(); i += 2) {
      const GrassmannElement &g = img(t.wedge[i]);
      const GrassmannElement &h = img(t.wedge[i + 1]);
      val = val * (g * h - h * g);
    }
    total = total + val;
  }
  return total;
}

// --- GenericMatrix -----------------------------------------------------------

uint32_t gm_var(int i, int row, int col) {
  if (i < 1 || row < 1 || col < row || col > 2)
    throw std::invalid_argument("gm_var: bad entry index");
  int e = (row == 1 && col == 1) ? 0 : (row == 1 ? 1 : 2);
  return static_cast<uint32_t>(3 * (i - 1) + e + 1);
}

std::string gm_var_label(uint32_t id) {
  static const char *entry[3] = {"x11", "x12", "x22"};
  uint32_t i = (id - 1) / 3 + 1;
  return std::string(entry[(id - 1) % 3]) + "^(" + std::to_string(i) + ")";
}

GenericMatrix GenericMatrix::operator+(const GenericMatrix &o) const {
  GenericMatrix r;
  r.a11 = a11 + o.a11;
  r.a12 = a12 + o.a12;
  r.a22 = a22 + o.a22;
  return r;
}

GenericMatrix GenericMatrix::operator-(const GenericMatrix &o) const {
  GenericMatrix r;
  r.a11 = a11 - o.a11;
  r.a12 = a12 - o.a12;
  r.a22 = a22 - o.a22;
  return r;
}

GenericMatrix GenericMatrix::operator*(const GenericMatrix &o) const {
  GenericMatrix r;
  r.a11 = a11 * o.a11;
  r.a12 = a11 * o.a12 + a12 * o.a22;
  r.a22 = a22 * o.a22;
  return r;
}

GenericMatrix GenericMatrix::operator*(const Rat &c) const {
  GenericMatrix r;
  r.a11 = a11 * c;
  r.a12 = a12 * c;
  r.a22 = a22 * c;
  return r;
}

std::string GenericMatrix::to_string() const {
  return "[[" + a11.to_string(gm_var_label) + ", " +
         a12.to_string(gm_var_label) + "], [0, " +
         a22.to_string(gm_var_label) + "]]";
}

GenericMatrix gm_commutator(const GenericMatrix &a, const GenericMatrix &b) {
  return a * b - b * a;
}

GenericMatrix xi_generic(int i, int k, int trunc) {
  if (i < 1 || i > k)
    throw std::invalid_argument("xi_generic: index out of range");
  GenericMatrix m(trunc);
  m.a11 = FreeGrassmannElement::variable(gm_var(i, 1, 1), trunc);
  m.a12 = FreeGrassmannElement::variable(gm_var(i, 1, 2), trunc);
  m.a22 = FreeGrassmannElement::variable(gm_var(i, 2, 2), trunc);
  return m;
}

// --- EnvelopeGeneric ---------------------------------------------------------

bool EnvelopeGeneric::is_zero() const {
  for (auto &p : coords)
    if (!p.is_zero())
      return false;
  return true;
}

EnvelopeGeneric EnvelopeGeneric::operator+(const EnvelopeGeneric &o) const {
  EnvelopeGeneric r(*B);
  for (int j = 0; j < B->dim(); ++j)
    r.coords[j] = coords[j] + o.coords[j];
  return r;
}

EnvelopeGeneric EnvelopeGeneric::operator-(const EnvelopeGeneric &o) const {
  EnvelopeGeneric r(*B);
  for (int j = 0; j < B->dim(); ++j)
    r.coords[j] = coords[j] - o.coords[j];
  return r;
}

EnvelopeGeneric EnvelopeGeneric::operator*(const EnvelopeGeneric &o) const {
  EnvelopeGeneric r(*B);
  for (int a = 0; a < B->dim(); ++a) {
    if (coords[a].is_zero())
      continue;
    for (int b = 0; b < B->dim(); ++b) {
      if (o.coords[b].is_zero())
        continue;
      SuperPoly prod = coords[a] * o.coords[b];
      if (prod.is_zero())
        continue;
      for (auto &[j, c] : B->product(a, b))
        r.coords[j] = r.coords[j] + prod * c;
    }
  }
  return r;
}

std::string EnvelopeGeneric::to_string() const {
  std::string s;
  bool first = true;
  for (int j = 0; j < B->dim(); ++j) {
    if (coords[j].is_zero())
      continue;
    if (!first)
      s += " + ";
    first = false;
    s += B->label(j) + " (x) (" + coords[j].to_string() + ")";
  }
  return first ? "0" : s;
}

EnvelopeGeneric xi_envelope(int i, const FdAlgebra &B) {
  if (!B.graded())
    throw std::invalid_argument("xi_envelope: algebra must be graded");
  if (i < 1)
    throw std::invalid_argument("xi_envelope: index must be positive");
  int r = 0, s = 0;
  for (int j = 0; j < B.dim(); ++j)
    (B.grade(j) == 0 ? r : s)++;
  EnvelopeGeneric e(B);
  int pe = 0, po = 0;
  for (int j = 0; j < B.dim(); ++j) {
    if (B.grade(j) == 0)
      e.coords[j] = SuperPoly::x(static_cast<uint32_t>((i - 1) * r + ++pe));
    else
      e.coords[j] = SuperPoly::y(static_cast<uint32_t>((i - 1) * s + ++po));
  }
  return e;
}

EnvelopeGeneric generic_element(const FdAlgebra &A, int i) {
  if (i < 1)
    throw std::invalid_argument("generic_element: index must be positive");
  EnvelopeGeneric e(A);
  for (int j = 0; j < A.dim(); ++j)
    e.coords[j] = SuperPoly::x(static_cast<uint32_t>((i - 1) * A.dim() + j + 1));
  return e;
}

// --- check_truncated_identity ------------------------------------------------

namespace {

// Splits a multilinear f into factors on consecutive variable blocks when the
// coefficients factor accordingly; otherwise returns {f}.
std::vector<NcPoly> split_factors(const NcPoly &f, uint32_t n) {
  std::vector<size_t> cuts; // positions p with prefix set {1..p} in every word
  for (size_t p = 1; p < n; ++p) {
    bool ok = true;
    for (auto &[w, c] : f.terms()) {
      uint32_t mx = 0;
      for (size_t i = 0; i < p; ++i)
        mx = std::max(mx, w.letters[i]);
      if (mx != p) {
        ok = false;
        break;
      }
    }
    if (ok)
      cuts.push_back(p);
  }
  if (cuts.empty())
    return {f};
  cuts.push_back(n);

  const Word &w0 = f.terms().begin()->first;
  Rat c0 = f.terms().begin()->second;
  std::vector<NcPoly> factors;
  size_t lo = 0;
  for (size_t hi : cuts) {
    NcPoly g;
    std::set<std::vector<uint32_t>> seen;
    for (auto &[w, c] : f.terms()) {
      std::vector<uint32_t> block(w.letters.begin() + lo,
                                  w.letters.begin() + hi);
      if (!seen.insert(block).second)
        continue;
      Word probe = w0;
      std::copy(block.begin(), block.end(), probe.letters.begin() + lo);
      Rat cc = f.coeff(probe);
      if (cc != 0)
        g.add_term(Word(std::move(block)), cc);
    }
    factors.push_back(std::move(g));
    lo = hi;
  }
  // Each factor has coefficient c0 at its block of w0, so the product carries
  // c0^r there; divide r-1 factors by c0 and verify the factorization.
  for (size_t i = 0; i + 1 < factors.size(); ++i)
    factors[i] = factors[i] * (Rat(1) / c0);
  NcPoly prod = NcPoly::one();
  for (auto &g : factors)
    prod = prod * g;
  if (!(prod == f))
    return {f};
  return factors;
}

struct Level {
  // Distinct partial products up to scalar, in first-seen order.
  std::vector<GenericMatrix> values;
  std::vector<std::vector<size_t>> reps; // factor-table row per factor so far
  std::map<std::string, size_t> index;
};

std::string canonical_key(const GenericMatrix &m) {
  // Normalize by the first nonzero coefficient so proportional partials merge.
  const FreeGrassmannElement *entries[3] = {&m.a11, &m.a12, &m.a22};
  Rat lead(0);
  for (auto *e : entries) {
    if (!e->terms().empty()) {
      lead = e->terms().begin()->second;
      break;
    }
  }
  GenericMatrix c = lead == 0 ? m : m * (Rat(1) / lead);
  std::ostringstream os;
  for (auto *e : entries) {
    const FreeGrassmannElement *src = e == entries[0]   ? &c.a11
                                      : e == entries[1] ? &c.a12
                                                        : &c.a22;
    for (auto &[t, coef] : src->terms()) {
      os << rat_to_string(coef) << ":";
      for (auto &[v, ex] : t.xpart)
        os << v << "^" << ex << ".";
      os << "w";
      for (auto v : t.wedge)
        os << v << ".";
      os << ";";
    }
    os << "|";
  }
  return os.str();
}

} // namespace

TruncatedCheckResult check_truncated_identity(const NcPoly &f, int k, int D,
                                              int N, uint64_t budget) {
  if (k < 1 || D < 1)
    throw std::invalid_argument("check_truncated_identity: k, D must be >= 1");
  int deg = f.degree();
  if (deg < 1)
    throw std::invalid_argument("check_truncated_identity: empty polynomial");
  uint32_t n = static_cast<uint32_t>(deg);
  as_multilinear(f, n); // validates multilinearity
  if (N <= 0)
    N = static_cast<int>(n) * D;

  TruncatedCheckResult res;
  res.k = k;
  res.D = D;
  res.N = N;

  // All words of length 1..D over xi_1..xi_k, in (length, lex) order.
  std::vector<std::vector<int>> words;
  for (int len = 1; len <= D; ++len) {
    std::vector<int> w(len, 1);
    while (true) {
      words.push_back(w);
      int i = len - 1;
      while (i >= 0 && w[i] == k)
        w[i--] = 1;
      if (i < 0)
        break;
      ++w[i];
    }
  }
  std::vector<GenericMatrix> xi;
  for (int i = 1; i <= k; ++i)
    xi.push_back(xi_generic(i, k, N));
  uint64_t &ops = res.products;
  auto bump = [&](uint64_t c) {
    ops += c;
    if (ops > budget)
      throw BudgetExceeded("check_truncated_identity: budget exceeded");
  };
  std::vector<GenericMatrix> word_vals;
  for (auto &w : words) {
    GenericMatrix m = xi[w[0] - 1];
    for (size_t i = 1; i < w.size(); ++i) {
      m = m * xi[w[i] - 1];
      bump(1);
    }
    word_vals.push_back(std::move(m));
  }

  std::vector<NcPoly> factors = split_factors(f, n);

  // Per-factor tables of nonzero evaluations over all word assignments.
  struct TableEntry {
    std::vector<size_t> assign; // word index per factor variable
    GenericMatrix value;
  };
  std::vector<std::vector<TableEntry>> tables;
  std::vector<std::vector<uint32_t>> factor_vars;
  for (auto &g : factors) {
    std::set<uint32_t> vset = g.variables();
    std::vector<uint32_t> vars(vset.begin(), vset.end());
    factor_vars.push_back(vars);
    std::vector<TableEntry> table;
    std::vector<size_t> assign(vars.size(), 0);
    while (true) {
      GenericMatrix val(N);
      for (auto &[w, c] : g.terms()) {
        GenericMatrix m(N);
        bool first = true;
        for (uint32_t letter : w.letters) {
          size_t pos =
              std::lower_bound(vars.begin(), vars.end(), letter) - vars.begin();
          const GenericMatrix &img = word_vals[assign[pos]];
          if (first) {
            m = img;
            first = false;
          } else {
            m = m * img;
            bump(1);
          }
        }
        val = val + m * c;
      }
      if (!val.is_zero())
        table.push_back({assign, std::move(val)});
      size_t i = vars.size();
      while (i > 0 && assign[i - 1] == words.size() - 1)
        assign[--i] = 0;
      if (i == 0)
        break;
      ++assign[i - 1];
    }
    tables.push_back(std::move(table));
  }

  // Level-by-level product with deduplication up to scalar.
  Level level;
  for (size_t r = 0; r < tables[0].size(); ++r) {
    std::string key = canonical_key(tables[0][r].value);
    if (level.index.emplace(key, level.values.size()).second) {
      level.values.push_back(tables[0][r].value);
      level.reps.push_back({r});
    }
  }
  for (size_t fi = 1; fi < tables.size(); ++fi) {
    Level next;
    for (size_t vi = 0; vi < level.values.size(); ++vi) {
      for (size_t r = 0; r < tables[fi].size(); ++r) {
        GenericMatrix prod = level.values[vi] * tables[fi][r].value;
        bump(1);
        if (prod.is_zero())
          continue;
        std::string key = canonical_key(prod);
        if (next.index.emplace(key, next.values.size()).second) {
          next.values.push_back(std::move(prod));
          auto rep = level.reps[vi];
          rep.push_back(r);
          next.reps.push_back(std::move(rep));
        }
      }
    }
    level = std::move(next);
  }

  if (level.values.empty()) {
    res.verified = true;
    return res;
  }

  // First surviving value in enumeration order is the reported witness.
  const std::vector<size_t> &rep = level.reps[0];
  res.witness_words.assign(n, {});
  GenericMatrix actual(N);
  bool first = true;
  for (size_t fi = 0; fi < factors.size(); ++fi) {
    const TableEntry &te = tables[fi][rep[fi]];
    for (size_t p = 0; p < factor_vars[fi].size(); ++p)
      res.witness_words[factor_vars[fi][p] - 1] = words[te.assign[p]];
    if (first) {
      actual = te.value;
      first = false;
    } else {
      actual = actual * te.value;
    }
  }
  res.witness_value = actual.to_string();
  return res;
}

// --- cross_check_lemma_lem ---------------------------------------------------

CrossCheckReport cross_check_lemma_lem(const FdAlgebra &A, uint32_t n,
                                       const CrossCheckOptions &opts) {
  CrossCheckReport rep;
  rep.n = n;

  DegreeComponent ids = identities_subspace(A, n);

  std::vector<std::pair<std::string, MultilinearPoly>> span;
  for (uint64_t r = 0; r < factorial(n); ++r) {
    MultilinearPoly m;
    m.degree = n;
    m.coeffs[perm_unrank(r, n)] = Rat(1);
    span.emplace_back("monomial#" + std::to_string(r), std::move(m));
  }
  for (size_t i = 0; i < ids.basis.size(); ++i)
    span.emplace_back("nullvec#" + std::to_string(i),
                      vector_to_multilinear(ids.basis[i], n));

  // Generic elements and their word powers, shared across polynomials.
  std::vector<EnvelopeGeneric> gens;
  for (uint32_t i = 1; i <= n; ++i)
    gens.push_back(generic_element(A, static_cast<int>(i)));
  std::vector<std::vector<EnvelopeGeneric>> words_by_D(opts.max_D + 1);
  std::vector<std::vector<std::vector<int>>> word_names(opts.max_D + 1);
  for (int D = 1; D <= opts.max_D; ++D) {
    std::vector<int> w(D, 1);
    while (true) {
      EnvelopeGeneric m = gens[w[0] - 1];
      for (int i = 1; i < D; ++i)
        m = m * gens[w[i] - 1];
      for (int d = D; d <= opts.max_D; ++d) {
        words_by_D[d].push_back(m);
        word_names[d].push_back(w);
      }
      int i = D - 1;
      while (i >= 0 && w[i] == static_cast<int>(n))
        w[i--] = 1;
      if (i < 0)
        break;
      ++w[i];
    }
  }

  for (auto &[name, f] : span) {
    ++rep.polys_checked;
    bool direct_identity = !find_witness(f, A).has_value();
    for (int D = 1; D <= opts.max_D; ++D) {
      const auto &wv = words_by_D[D];
      double total = 1;
      for (uint32_t i = 0; i < n; ++i)
        total *= static_cast<double>(wv.size());
      if (total > static_cast<double>(opts.tuple_budget)) {
        rep.skipped.push_back(name + " D=" + std::to_string(D));
        continue;
      }
      bool model_identity = true;
      std::string bad_tuple;
      std::vector<size_t> tup(n, 0);
      bool done = false;
      while (!done) {
        ++rep.tuples_checked;
        EnvelopeGeneric val(A);
        for (auto &[perm, c] : f.coeffs) {
          EnvelopeGeneric m = wv[tup[perm[0] - 1]];
          for (uint32_t i = 1; i < n; ++i)
            m = m * wv[tup[perm[i] - 1]];
          for (int j = 0; j < A.dim(); ++j)
            val.coords[j] = val.coords[j] + m.coords[j] * c;
        }
        if (!val.is_zero()) {
          model_identity = false;
          bad_tuple = "(";
          for (uint32_t i = 0; i < n; ++i) {
            if (i)
              bad_tuple += ",";
            bad_tuple += "w";
            for (int letter : word_names[D][tup[i]])
              bad_tuple += std::to_string(letter);
          }
          bad_tuple += ")";
          break;
        }
        size_t i = n;
        while (i > 0 && tup[i - 1] == wv.size() - 1)
          tup[--i] = 0;
        if (i == 0)
          done = true;
        else
          ++tup[i - 1];
      }
      if (model_identity != direct_identity) {
        rep.agree = false;
        rep.discrepancies.push_back(
            name + " D=" + std::to_string(D) + ": direct=" +
            (direct_identity ? "identity" : "non-identity") + ", model=" +
            (model_identity ? "identity" : ("witness " + bad_tuple)));
      }
    }
  }
  return rep;
}

} // namespace pilab
