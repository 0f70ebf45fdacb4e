#include "pilab/tideal.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace pilab {

namespace {

NcPoly monomial_poly(const std::vector<uint32_t> &letters) {
  return NcPoly::monomial(Word(std::vector<uint32_t>(letters)), 1);
}

NcPoly var_poly(uint32_t i) { return NcPoly::var(i); }

std::vector<uint32_t> content_letters(const std::map<uint32_t, uint32_t> &c) {
  std::vector<uint32_t> ls;
  for (auto &[v, m] : c)
    ls.insert(ls.end(), m, v);
  return ls;
}

// All compositions of total into nparts parts, the parts in [min_1..] given by
// mins; deterministic order (first part smallest first).
void for_each_composition(uint32_t total, const std::vector<uint32_t> &mins,
                          const std::function<void(const std::vector<uint32_t> &)> &fn) {
  std::vector<uint32_t> parts(mins.size(), 0);
  std::function<void(size_t, uint32_t)> rec = [&](size_t idx, uint32_t left) {
    if (idx + 1 == parts.size()) {
      if (left < mins[idx])
        return;
      parts[idx] = left;
      fn(parts);
      return;
    }
    for (uint32_t p = mins[idx]; p <= left; ++p) {
      parts[idx] = p;
      rec(idx + 1, left - p);
    }
  };
  if (!parts.empty())
    rec(0, total);
}

} // namespace

// --- Presentations -----------------------------------------------------------

TIdealPresentation::TIdealPresentation(std::string nm, std::vector<NcPoly> gens)
    : name(std::move(nm)), generators(std::move(gens)) {
  for (auto &g : generators) {
    if (g.is_zero())
      throw std::invalid_argument("T-ideal generator is zero");
    as_multilinear(g, static_cast<uint32_t>(g.degree())); // throws if not
  }
}

NcPoly pair_product(uint32_t t) {
  NcPoly p = NcPoly::one();
  for (uint32_t i = 0; i < t; ++i)
    p = p * commutator({var_poly(2 * i + 1), var_poly(2 * i + 2)});
  return p;
}

static NcPoly triple_product() {
  return commutator({var_poly(1), var_poly(2), var_poly(3)}) *
         commutator({var_poly(4), var_poly(5), var_poly(6)});
}

TIdealPresentation t_ideal_T1() {
  return {"T1", {commutator({var_poly(1), var_poly(2), var_poly(3)})}};
}

TIdealPresentation t_ideal_T2() { return {"T2", {triple_product()}}; }

TIdealPresentation t_ideal_calT(int m) {
  if (m < 1)
    throw std::invalid_argument("calT requires m >= 1");
  return {"calT" + std::to_string(m),
          {triple_product(), pair_product(static_cast<uint32_t>(m) + 2)}};
}

// --- Consequence spans -------------------------------------------------------

std::vector<NcPoly>
ideal_component_instances(const NcPoly &g,
                          const std::map<uint32_t, uint32_t> &content,
                          uint64_t budget) {
  const auto d = static_cast<uint32_t>(g.degree());
  as_multilinear(g, d); // validates multilinearity
  auto letters = content_letters(content);
  const auto L = static_cast<uint32_t>(letters.size());
  std::vector<NcPoly> out;
  if (L < d)
    return out;

  std::vector<uint32_t> mins(d + 2, 1);
  mins.front() = mins.back() = 0;
  std::vector<std::vector<uint32_t>> comps;
  for_each_composition(L, mins, [&](const std::vector<uint32_t> &parts) {
    comps.push_back(parts);
  });

  std::sort(letters.begin(), letters.end());
  uint64_t count = 0;
  do {
    for (auto &parts : comps) {
      if (++count > budget)
        throw BudgetExceeded("ideal component instance budget exceeded (" +
                             std::to_string(budget) + ")");
      size_t pos = 0;
      auto take = [&](uint32_t len) {
        std::vector<uint32_t> w(letters.begin() + pos,
                                letters.begin() + pos + len);
        pos += len;
        return w;
      };
      auto u = take(parts.front());
      std::map<uint32_t, NcPoly> images;
      for (uint32_t i = 1; i <= d; ++i)
        images[i] = monomial_poly(take(parts[i]));
      auto v = take(parts.back());
      out.push_back(monomial_poly(u) * substitute(g, images) *
                    monomial_poly(v));
    }
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

DegreeComponent consequences_multilinear(const TIdealPresentation &T,
                                         uint32_t n,
                                         const SubspaceOptions &opts,
                                         SubspaceStats *stats) {
  const auto ncols = static_cast<uint32_t>(factorial(n));
  StreamingRank ranker(ncols, opts.seed);
  std::map<uint32_t, uint32_t> content;
  for (uint32_t i = 1; i <= n; ++i)
    content[i] = 1;
  uint64_t instances = 0;
  for (auto &g : T.generators) {
    if (static_cast<uint32_t>(g.degree()) > n)
      continue;
    for (auto &inst : ideal_component_instances(g, content, opts.budget_ops)) {
      ++instances;
      if (instances > opts.budget_ops)
        throw BudgetExceeded("consequence instance budget exceeded");
      ranker.add_row(dense_to_sparse(
          multilinear_to_vector(as_multilinear(inst, n))));
    }
  }
  if (stats) {
    stats->tuples = instances;
    stats->ops = instances;
    stats->constraint_rows = ranker.rows_seen();
    stats->rank = ranker.rank();
    stats->filter_primes = ranker.primes();
  }
  DegreeComponent c;
  c.degree = n;
  c.basis = ranker.exact().rows();
  c.provenance = Provenance::ConsequenceSpan;
  return c;
}

// --- Normal form for the variety of [x1,x2]...[x_{2nb-1},x_{2nb}] ------------

NcPoly UtnBasisElement::expand() const {
  NcPoly p = prefix.empty() ? NcPoly::one() : monomial_poly(prefix);
  for (auto &c : commutators) {
    std::vector<NcPoly> args;
    args.reserve(c.size());
    for (uint32_t v : c)
      args.push_back(var_poly(v));
    p = p * commutator(args);
  }
  return p;
}

std::string UtnBasisElement::to_string() const {
  std::string s;
  for (uint32_t v : prefix)
    s += "x" + std::to_string(v);
  for (auto &c : commutators) {
    s += "[";
    for (size_t i = 0; i < c.size(); ++i)
      s += (i ? "," : "") + ("x" + std::to_string(c[i]));
    s += "]";
  }
  return s.empty() ? "1" : s;
}

namespace {

using Multiset = std::vector<std::pair<uint32_t, uint32_t>>; // (var, mult)

Multiset to_multiset(const std::map<uint32_t, uint32_t> &c) {
  Multiset m;
  for (auto &[v, k] : c)
    if (k)
      m.emplace_back(v, k);
  return m;
}

uint32_t ms_size(const Multiset &m) {
  uint32_t s = 0;
  for (auto &[v, k] : m)
    s += k;
  return s;
}

std::vector<uint32_t> ms_letters(const Multiset &m) {
  std::vector<uint32_t> ls;
  for (auto &[v, k] : m)
    ls.insert(ls.end(), k, v);
  return ls;
}

// Enumerate sub-multisets in mixed-radix order; fn(sub, rest).
void for_each_submultiset(
    const Multiset &m,
    const std::function<void(const Multiset &, const Multiset &)> &fn) {
  std::vector<uint32_t> take(m.size(), 0);
  while (true) {
    Multiset sub, rest;
    for (size_t i = 0; i < m.size(); ++i) {
      if (take[i])
        sub.emplace_back(m[i].first, take[i]);
      if (take[i] < m[i].second)
        rest.emplace_back(m[i].first, m[i].second - take[i]);
    }
    fn(sub, rest);
    size_t i = 0;
    for (; i < m.size(); ++i) {
      if (take[i] < m[i].second) {
        ++take[i];
        break;
      }
      take[i] = 0;
    }
    if (i == m.size())
      break;
  }
}

// Pattern commutators on the multiset: [v, rest ascending] for each distinct
// value v greater than the minimum.
std::vector<std::vector<uint32_t>> pattern_commutators(const Multiset &m) {
  std::vector<std::vector<uint32_t>> out;
  auto letters = ms_letters(m);
  if (letters.size() < 2)
    return out;
  for (size_t i = 0; i < m.size(); ++i) {
    uint32_t v = m[i].first;
    if (v == letters.front())
      continue; // i1 must exceed i2 = min of the rest
    std::vector<uint32_t> c{v};
    bool skipped = false;
    for (uint32_t l : letters) {
      if (l == v && !skipped) {
        skipped = true;
        continue;
      }
      c.push_back(l);
    }
    out.push_back(std::move(c));
  }
  return out;
}

} // namespace

std::vector<UtnBasisElement>
utn_basis(const std::map<uint32_t, uint32_t> &content, int n_bound) {
  if (n_bound < 1)
    throw std::invalid_argument("n_bound must be >= 1");
  std::vector<UtnBasisElement> out;
  const int max_comms = n_bound - 1;
  auto full = to_multiset(content);

  // choose prefix, then ordered commutator multisets covering the rest
  for_each_submultiset(full, [&](const Multiset &prefix, const Multiset &rest) {
    // sequences of commutator multisets partitioning `rest`
    std::vector<std::vector<std::vector<uint32_t>>> factor_choices;
    std::function<void(const Multiset &, int)> rec = [&](const Multiset &r,
                                                         int left) {
      if (ms_size(r) == 0) {
        // expand the pattern choices of each factor
        std::vector<UtnBasisElement> partial{
            {ms_letters(prefix), {}}};
        for (auto &choices : factor_choices) {
          std::vector<UtnBasisElement> next;
          for (auto &pe : partial)
            for (auto &c : choices) {
              auto e = pe;
              e.commutators.push_back(c);
              next.push_back(std::move(e));
            }
          partial = std::move(next);
        }
        out.insert(out.end(), partial.begin(), partial.end());
        return;
      }
      if (left == 0)
        return;
      for_each_submultiset(r, [&](const Multiset &c, const Multiset &r2) {
        if (ms_size(c) < 2)
          return;
        auto pats = pattern_commutators(c);
        if (pats.empty())
          return; // all letters equal: [v,v,...] has no valid pattern
        factor_choices.push_back(std::move(pats));
        rec(r2, left - 1);
        factor_choices.pop_back();
      });
    };
    rec(rest, max_comms);
  });
  return out;
}

NcPoly ut_normal_form(const NcPoly &f, int n_bound) {
  if (n_bound < 1)
    throw std::invalid_argument("n_bound must be >= 1");
  // split into multihomogeneous components
  std::map<std::map<uint32_t, uint32_t>, NcPoly> comps;
  for (auto &[w, c] : f.terms()) {
    std::map<uint32_t, uint32_t> content;
    for (uint32_t l : w.letters)
      ++content[l];
    comps[content].add_term(w, c);
  }

  NcPoly result;
  for (auto &[content, part] : comps) {
    auto letters = content_letters(content);
    const auto L = static_cast<uint32_t>(letters.size());

    // column index per word of this content
    std::map<Word, uint32_t, WordLess> col;
    {
      auto ls = letters;
      std::sort(ls.begin(), ls.end());
      uint32_t idx = 0;
      do {
        col.emplace(Word(std::vector<uint32_t>(ls)), idx++);
      } while (std::next_permutation(ls.begin(), ls.end()));
    }
    const auto ncols = static_cast<uint32_t>(col.size());
    auto to_vec = [&](const NcPoly &p) {
      std::vector<Rat> v(ncols, Rat(0));
      for (auto &[w, c] : p.terms())
        v[col.at(w)] = c;
      return v;
    };

    // reduce modulo the defining identity's component
    ExactRref ideal(ncols);
    if (2 * static_cast<uint32_t>(n_bound) <= L) {
      auto gen = pair_product(static_cast<uint32_t>(n_bound));
      for (auto &inst : ideal_component_instances(gen, content))
        ideal.insert(to_vec(inst));
    }

    auto basis = utn_basis(content, n_bound);
    const auto nb = static_cast<uint32_t>(basis.size());
    ExactRref solver(ncols + nb);
    for (uint32_t b = 0; b < nb; ++b) {
      auto red = ideal.reduce(to_vec(basis[b].expand()));
      red.resize(ncols + nb, Rat(0));
      red[ncols + b] = 1;
      solver.insert(std::move(red));
    }
    for (auto &pv : solver.pivots())
      if (pv.first >= ncols)
        throw std::logic_error("normal-form basis is dependent modulo the "
                               "ideal at this content");

    auto fred = ideal.reduce(to_vec(part));
    fred.resize(ncols + nb, Rat(0));
    auto rem = solver.reduce(std::move(fred));
    for (uint32_t c = 0; c < ncols; ++c)
      if (rem[c] != 0)
        throw std::logic_error("polynomial does not reduce into the "
                               "normal-form basis");
    for (uint32_t b = 0; b < nb; ++b)
      if (rem[ncols + b] != 0)
        result += basis[b].expand() * (-rem[ncols + b]);
  }
  return result;
}

// --- Certificates ------------------------------------------------------------

NcPoly T2Instance::expand() const {
  return u * commutator({a[0], a[1], a[2]}) * commutator({b[0], b[1], b[2]}) *
         v * coeff;
}

NcPoly certificate_total(const T2Certificate &cert) {
  NcPoly s;
  for (auto &inst : cert)
    s += inst.expand();
  return s;
}

T2Certificate cert_two_sep(const NcPoly &u, const std::array<NcPoly, 3> &c1,
                           const NcPoly &mid, const std::array<NcPoly, 3> &c2,
                           const NcPoly &v, const Rat &coeff) {
  // u*[c1]*mid*[c2]*v = u*[[c1_1,c1_2],c1_3,mid]*[c2]*v + u*mid*[c1]*[c2]*v
  T2Certificate cert;
  cert.push_back(
      {coeff, u, {commutator({c1[0], c1[1]}), c1[2], mid}, c2, v});
  cert.push_back({coeff, u * mid, c1, c2, v});
  return cert;
}

NcPoly T1Instance::expand() const {
  return u * commutator({a[0], a[1], a[2]}) * v * coeff;
}

const std::vector<T1Instance> &t1_swap_template() {
  static const std::vector<T1Instance> tmpl = [] {
    // Solve R = [x1,x2][x3,x4] + [x1,x3][x2,x4] as a combination of the
    // degree-4 multilinear instances u*[w1,w2,w3]*v of [x1,x2,x3].
    // enumerate the instances structurally so the flanks/args are kept
    struct RawInst {
      std::vector<uint32_t> u, w1, w2, w3, v;
    };
    std::vector<RawInst> raw;
    std::vector<uint32_t> letters{1, 2, 3, 4};
    std::vector<uint32_t> mins{0, 1, 1, 1, 0};
    std::vector<std::vector<uint32_t>> comps;
    for_each_composition(4, mins, [&](const std::vector<uint32_t> &parts) {
      comps.push_back(parts);
    });
    do {
      for (auto &parts : comps) {
        size_t pos = 0;
        auto take = [&](uint32_t len) {
          std::vector<uint32_t> w(letters.begin() + pos,
                                  letters.begin() + pos + len);
          pos += len;
          return w;
        };
        RawInst ri;
        ri.u = take(parts[0]);
        ri.w1 = take(parts[1]);
        ri.w2 = take(parts[2]);
        ri.w3 = take(parts[3]);
        ri.v = take(parts[4]);
        raw.push_back(std::move(ri));
      }
    } while (std::next_permutation(letters.begin(), letters.end()));

    const uint32_t ncols = 24;
    auto to_vec = [&](const NcPoly &p) {
      return multilinear_to_vector(as_multilinear(p, 4));
    };
    const auto ni = static_cast<uint32_t>(raw.size());
    ExactRref solver(ncols + ni);
    for (uint32_t i = 0; i < ni; ++i) {
      auto &ri = raw[i];
      auto inst = monomial_poly(ri.u) *
                  commutator({monomial_poly(ri.w1), monomial_poly(ri.w2),
                              monomial_poly(ri.w3)}) *
                  monomial_poly(ri.v);
      auto row = to_vec(inst);
      row.resize(ncols + ni, Rat(0));
      row[ncols + i] = 1;
      solver.insert(std::move(row));
    }
    auto R = commutator({var_poly(1), var_poly(2)}) *
                 commutator({var_poly(3), var_poly(4)}) +
             commutator({var_poly(1), var_poly(3)}) *
                 commutator({var_poly(2), var_poly(4)});
    auto rem = to_vec(R);
    rem.resize(ncols + ni, Rat(0));
    rem = solver.reduce(std::move(rem));
    for (uint32_t c = 0; c < ncols; ++c)
      if (rem[c] != 0)
        throw std::logic_error("pair swap is not a T1 consequence?");
    std::vector<T1Instance> result;
    for (uint32_t i = 0; i < ni; ++i) {
      if (rem[ncols + i] == 0)
        continue;
      auto &ri = raw[i];
      result.push_back({-rem[ncols + i], monomial_poly(ri.u),
                        {monomial_poly(ri.w1), monomial_poly(ri.w2),
                         monomial_poly(ri.w3)},
                        monomial_poly(ri.v)});
    }
    return result;
  }();
  return tmpl;
}

std::vector<T1Instance> instantiate_swap(const std::array<NcPoly, 4> &args) {
  std::map<uint32_t, NcPoly> im{
      {1, args[0]}, {2, args[1]}, {3, args[2]}, {4, args[3]}};
  auto sub = [&](const NcPoly &p) {
    return p.terms().empty() ? p : substitute(p, im);
  };
  std::vector<T1Instance> out;
  for (auto &t : t1_swap_template())
    out.push_back(
        {t.coeff, sub(t.u), {sub(t.a[0]), sub(t.a[1]), sub(t.a[2])}, sub(t.v)});
  return out;
}

// --- Lemma lem1 --------------------------------------------------------------

namespace {

struct Lem1Vars {
  std::vector<uint32_t> y, p, z;
};

Lem1Vars lem1_vars(int item, uint32_t t) {
  if (item < 1 || item > 4)
    throw std::invalid_argument("lem1 item must be 1..4");
  uint32_t ny = (item == 2 || item == 4) ? 4 : 3;
  uint32_t nz = (item == 3 || item == 4) ? 4 : 3;
  Lem1Vars v;
  for (uint32_t i = 1; i <= ny; ++i)
    v.y.push_back(i);
  for (uint32_t i = 0; i < t; ++i)
    v.p.push_back(ny + 1 + i);
  for (uint32_t i = 0; i < nz; ++i)
    v.z.push_back(ny + t + 1 + i);
  return v;
}

NcPoly swap_sum(const std::vector<uint32_t> &v4) {
  auto x = [](uint32_t i) { return var_poly(i); };
  return commutator({x(v4[0]), x(v4[1])}) * commutator({x(v4[2]), x(v4[3])}) +
         commutator({x(v4[0]), x(v4[2])}) * commutator({x(v4[1]), x(v4[3])});
}

} // namespace

NcPoly lem1_poly(int item, uint32_t t) {
  auto v = lem1_vars(item, t);
  auto x = [](uint32_t i) { return var_poly(i); };
  NcPoly left = (v.y.size() == 3)
                    ? commutator({x(v.y[0]), x(v.y[1]), x(v.y[2])})
                    : swap_sum(v.y);
  NcPoly right = (v.z.size() == 3)
                     ? commutator({x(v.z[0]), x(v.z[1]), x(v.z[2])})
                     : swap_sum(v.z);
  return left * monomial_poly(v.p) * right;
}

T2Certificate cert_lem1(int item, uint32_t t) {
  auto v = lem1_vars(item, t);
  auto x = [](uint32_t i) { return var_poly(i); };
  NcPoly p = monomial_poly(v.p);
  NcPoly one = NcPoly::one();
  T2Certificate cert;
  auto append = [&](T2Certificate c) {
    for (auto &i : c)
      cert.push_back(std::move(i));
  };

  std::array<NcPoly, 3> ytriple{}, ztriple{};
  if (v.y.size() == 3)
    ytriple = {x(v.y[0]), x(v.y[1]), x(v.y[2])};
  if (v.z.size() == 3)
    ztriple = {x(v.z[0]), x(v.z[1]), x(v.z[2])};

  auto yswap = [&] {
    return instantiate_swap({x(v.y[0]), x(v.y[1]), x(v.y[2]), x(v.y[3])});
  };
  auto zswap = [&] {
    return instantiate_swap({x(v.z[0]), x(v.z[1]), x(v.z[2]), x(v.z[3])});
  };

  switch (item) {
  case 1:
    append(cert_two_sep(one, ytriple, p, ztriple, one));
    break;
  case 2:
    for (auto &i : yswap())
      append(cert_two_sep(i.u, i.a, i.v * p, ztriple, one, i.coeff));
    break;
  case 3:
    for (auto &i : zswap())
      append(cert_two_sep(one, ytriple, p * i.u, i.a, i.v, i.coeff));
    break;
  case 4:
    for (auto &iy : yswap())
      for (auto &iz : zswap())
        append(cert_two_sep(iy.u, iy.a, iy.v * p * iz.u, iz.a, iz.v,
                            iy.coeff * iz.coeff));
    break;
  }
  return cert;
}

// --- Lemma reordering --------------------------------------------------------

namespace {

struct RItem { // either a word or a pair commutator
  bool is_pair = false;
  std::vector<uint32_t> word;
  std::array<uint32_t, 2> pair{};
};

struct RTerm {
  Rat coeff;
  std::vector<uint32_t> u0;
  std::array<uint32_t, 3> triple{};
  std::vector<RItem> items; // pairs and interleaved words, then tail words
};

uint32_t expect_var(const ExprPtr &e) {
  if (e->kind != Expr::Kind::Var)
    throw std::invalid_argument(
        "reorder_mod_T2: commutator entries must be plain variables");
  return e->var;
}

RTerm parse_rterm(const Rat &coeff, const ExprPtr &prod) {
  std::vector<ExprPtr> factors;
  if (prod->kind == Expr::Kind::Prod)
    factors = prod->children;
  else
    factors = {prod};
  RTerm t;
  t.coeff = coeff;
  bool seen_triple = false;
  for (auto &f : factors) {
    switch (f->kind) {
    case Expr::Kind::Num:
      t.coeff *= f->value;
      break;
    case Expr::Kind::Var:
      if (!seen_triple)
        t.u0.push_back(f->var);
      else if (!t.items.empty() && !t.items.back().is_pair)
        t.items.back().word.push_back(f->var);
      else
        t.items.push_back({false, {f->var}, {}});
      break;
    case Expr::Kind::Comm: {
      if (f->children.size() == 3) {
        if (seen_triple)
          throw std::invalid_argument(
              "reorder_mod_T2: more than one length-3 commutator");
        t.triple = {expect_var(f->children[0]), expect_var(f->children[1]),
                    expect_var(f->children[2])};
        seen_triple = true;
      } else if (f->children.size() == 2) {
        if (!seen_triple)
          throw std::invalid_argument(
              "reorder_mod_T2: length-2 commutator before the triple");
        t.items.push_back(
            {true, {}, {expect_var(f->children[0]), expect_var(f->children[1])}});
      } else {
        throw std::invalid_argument(
            "reorder_mod_T2: commutators must have length 2 or 3");
      }
      break;
    }
    default:
      throw std::invalid_argument(
          "reorder_mod_T2: products of variables and commutators only");
    }
  }
  if (!seen_triple)
    throw std::invalid_argument("reorder_mod_T2: no length-3 commutator");
  return t;
}

NcPoly items_poly(const std::vector<RItem> &items, size_t from, size_t to) {
  NcPoly p = NcPoly::one();
  for (size_t i = from; i < to; ++i) {
    if (items[i].is_pair)
      p = p * commutator({var_poly(items[i].pair[0]), var_poly(items[i].pair[1])});
    else
      p = p * monomial_poly(items[i].word);
  }
  return p;
}

} // namespace

NcPoly reorder_mod_T2(const ExprPtr &f, T2Certificate *cert) {
  // flatten the sum
  std::vector<RTerm> terms;
  if (f->kind == Expr::Kind::Sum) {
    for (size_t i = 0; i < f->children.size(); ++i)
      terms.push_back(parse_rterm(f->weights[i], f->children[i]));
  } else {
    terms.push_back(parse_rterm(Rat(1), f));
  }

  NcPoly result;
  for (auto &t : terms) {
    auto tri = [&] {
      return std::array<NcPoly, 3>{var_poly(t.triple[0]), var_poly(t.triple[1]),
                                   var_poly(t.triple[2])};
    }();
    auto u0p = monomial_poly(t.u0);

    // phase 1: move interleaved words right past the pairs, via
    // u[a,b] = [a,b]u - [a,b,u]; the dropped triple-commutator monomial is a
    // T_2 consequence (two separated triples).
    bool moved = true;
    while (moved) {
      moved = false;
      for (size_t i = 0; i + 1 < t.items.size(); ++i) {
        if (t.items[i].is_pair || !t.items[i + 1].is_pair)
          continue;
        auto w = t.items[i];
        auto P = t.items[i + 1];
        if (cert) {
          // dropped term: -coeff * u0 [v] (pre) [P, w] (post)
          auto mid = items_poly(t.items, 0, i);
          auto post = items_poly(t.items, i + 2, t.items.size());
          auto c2 = std::array<NcPoly, 3>{var_poly(P.pair[0]),
                                          var_poly(P.pair[1]),
                                          monomial_poly(w.word)};
          for (auto &inst :
               cert_two_sep(u0p, tri, mid, c2, post, -t.coeff))
            cert->push_back(inst);
        }
        t.items[i] = P;
        t.items[i + 1] = w;
        moved = true;
        break;
      }
    }

    // now: u0 [triple] P_1 ... P_n tail-words; flatten pair letters and sort
    std::vector<size_t> pair_idx;
    for (size_t i = 0; i < t.items.size(); ++i)
      if (t.items[i].is_pair)
        pair_idx.push_back(i);
    const size_t n = pair_idx.size();
    std::vector<uint32_t> seq;
    for (size_t i : pair_idx) {
      seq.push_back(t.items[i].pair[0]);
      seq.push_back(t.items[i].pair[1]);
    }

    // phase 2: bubble adjacent descents; within-pair swaps flip the sign
    // exactly, cross-pair swaps flip mod T_1 times the leading triple.
    bool sorted = false;
    while (!sorted) {
      sorted = true;
      for (size_t p = 0; p + 1 < seq.size(); ++p) {
        if (seq[p] <= seq[p + 1])
          continue;
        sorted = false;
        bool within = (p % 2 == 0);
        if (!within && cert) {
          // pairs k and k+1 around the boundary: [a,b][c,d] =
          // -[a,c][b,d] + R(a,b,c,d), R a T_1 combination
          size_t k = p / 2;
          NcPoly pre = NcPoly::one();
          for (size_t j = 0; j < k; ++j)
            pre = pre * commutator({var_poly(seq[2 * j]),
                                    var_poly(seq[2 * j + 1])});
          NcPoly post = NcPoly::one();
          for (size_t j = k + 2; j < n; ++j)
            post = post * commutator({var_poly(seq[2 * j]),
                                      var_poly(seq[2 * j + 1])});
          post = post * items_poly(t.items, pair_idx.back() + 1,
                                   t.items.size());
          for (auto &inst : instantiate_swap(
                   {var_poly(seq[2 * k]), var_poly(seq[2 * k + 1]),
                    var_poly(seq[2 * k + 2]), var_poly(seq[2 * k + 3])}))
            for (auto &ci : cert_two_sep(u0p, tri, pre * inst.u, inst.a,
                                         inst.v * post,
                                         t.coeff * inst.coeff))
              cert->push_back(ci);
        }
        std::swap(seq[p], seq[p + 1]);
        t.coeff = -t.coeff;
        break;
      }
    }

    NcPoly term = u0p * commutator({tri[0], tri[1], tri[2]});
    for (size_t k = 0; k < n; ++k)
      term = term *
             commutator({var_poly(seq[2 * k]), var_poly(seq[2 * k + 1])});
    size_t tail_from = pair_idx.empty() ? 0 : pair_idx.back() + 1;
    // any remaining non-pair items are the tail words u_1 ... u_{n+1}
    for (size_t i = tail_from; i < t.items.size(); ++i)
      if (!t.items[i].is_pair)
        term = term * monomial_poly(t.items[i].word);
    result += term * t.coeff;
  }
  return result;
}

// --- Families ----------------------------------------------------------------

namespace {

void combinations(uint32_t n, uint32_t k,
                  const std::function<void(const std::vector<uint32_t> &)> &fn,
                  const std::vector<uint32_t> &pool) {
  std::vector<uint32_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > pool.size())
    return;
  (void)n;
  while (true) {
    std::vector<uint32_t> sel;
    for (uint32_t i : idx)
      sel.push_back(pool[i]);
    fn(sel);
    // next combination
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && idx[i] == pool.size() - k + i)
      --i;
    if (i < 0)
      break;
    ++idx[i];
    for (uint32_t j = i + 1; j < k; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

NcPoly ascending_pairs(const std::vector<uint32_t> &vars) {
  NcPoly p = NcPoly::one();
  for (size_t i = 0; i + 1 < vars.size(); i += 2)
    p = p * commutator({var_poly(vars[i]), var_poly(vars[i + 1])});
  return p;
}

} // namespace

std::vector<MultilinearPoly> family_pol1(int m, uint32_t n, uint32_t r,
                                         uint32_t s, uint32_t t) {
  if (s <= 2)
    throw std::invalid_argument("pol1 requires s > 2");
  if (r + t > static_cast<uint32_t>(m))
    throw std::invalid_argument("pol1 requires r + t <= m");
  if (2 * r + s + 2 * t != n)
    throw std::invalid_argument("pol1 requires 2r + s + 2t = n");

  std::vector<uint32_t> all(n);
  std::iota(all.begin(), all.end(), 1);
  std::vector<MultilinearPoly> out;
  combinations(n, 2 * r, [&](const std::vector<uint32_t> &I) {
    std::vector<uint32_t> rest1;
    std::set_difference(all.begin(), all.end(), I.begin(), I.end(),
                        std::back_inserter(rest1));
    combinations(n, 2 * t, [&](const std::vector<uint32_t> &K) {
      std::vector<uint32_t> J;
      std::set_difference(rest1.begin(), rest1.end(), K.begin(), K.end(),
                          std::back_inserter(J));
      // J ascending: j2 = J[0]; j1 ranges over the rest; tail ascending
      for (size_t a = 1; a < J.size(); ++a) {
        std::vector<NcPoly> args{var_poly(J[a]), var_poly(J[0])};
        for (size_t b = 1; b < J.size(); ++b)
          if (b != a)
            args.push_back(var_poly(J[b]));
        auto poly = ascending_pairs(I) * commutator(args) * ascending_pairs(K);
        out.push_back(as_multilinear(poly, n));
      }
    }, rest1);
  }, all);
  return out;
}

std::vector<MultilinearPoly> family_pol3(uint32_t t, uint32_t n) {
  if (n != 2 * t)
    throw std::invalid_argument("pol3 requires n = 2t");
  std::vector<MultilinearPoly> out;
  std::vector<std::array<uint32_t, 2>> pairs;
  std::vector<bool> used(n + 1, false);
  std::function<void()> rec = [&] {
    uint32_t a = 0;
    for (uint32_t v = 1; v <= n; ++v)
      if (!used[v]) {
        a = v;
        break;
      }
    if (a == 0) {
      NcPoly p = NcPoly::one();
      for (auto &[hi, lo] : pairs)
        p = p * commutator({var_poly(hi), var_poly(lo)});
      out.push_back(as_multilinear(p, n));
      return;
    }
    used[a] = true;
    for (uint32_t b = a + 1; b <= n; ++b) {
      if (used[b])
        continue;
      used[b] = true;
      pairs.push_back({b, a}); // descending pair [x_b, x_a]
      rec();
      pairs.pop_back();
      used[b] = false;
    }
    used[a] = false;
  };
  if (t > 0)
    rec();
  return out;
}

std::vector<MultilinearPoly> all_pair_products(uint32_t t) {
  std::vector<uint32_t> perm(2 * t);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<MultilinearPoly> out;
  do {
    out.push_back(as_multilinear(ascending_pairs(perm), 2 * t));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

DegreeComponent compute_Bm(int m, uint32_t t, const SubspaceOptions &opts,
                           std::vector<MultilinearPoly> *chosen) {
  auto A = ut_n(grassmann_fd(2 * m), 2);
  auto T = identities_subspace(A, 2 * t, opts);
  ExactRref rref(static_cast<uint32_t>(factorial(2 * t)));
  for (auto &v : T.basis)
    rref.insert(v);
  DegreeComponent c;
  c.degree = 2 * t;
  c.provenance = Provenance::ExplicitList;
  for (auto &p : all_pair_products(t)) {
    auto vec = multilinear_to_vector(p);
    if (rref.insert(vec)) {
      c.basis.push_back(std::move(vec));
      if (chosen)
        chosen->push_back(p);
    }
  }
  return c;
}

} // namespace pilab
