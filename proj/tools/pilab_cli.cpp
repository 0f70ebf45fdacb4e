#include "pilab/fdalgebra.hpp"
#include "pilab/genfree.hpp"
#include "pilab/grassmann.hpp"
#include "pilab/identity.hpp"
#include "pilab/linalg.hpp"
#include "pilab/ncpoly.hpp"
#include "pilab/parser.hpp"
#include "pilab/report.hpp"
#include "pilab/tideal.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace pilab;

namespace {

constexpr int EXIT_PASS = 0;
constexpr int EXIT_MATH_FAIL = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_BUDGET = 3;

struct RunConfig {
  std::string algebra = "ut2-g2";
  std::string tideal = "calT1";
  uint32_t degree = 4;
  uint32_t max_degree = 6;
  int rank = 3;
  int trunc_D = 2;
  int trunc_N = 0; // 0: derived as degree * D
  uint64_t budget = 1'000'000'000ull;
  uint64_t seed = 1;
  std::string out = "reports";
  std::string format = "json";

  std::string describe() const {
    std::ostringstream os;
    os << "algebra=" << algebra << " degree=" << degree
       << " max-degree=" << max_degree << " rank=" << rank
       << " trunc-D=" << trunc_D << " trunc-N=" << trunc_N
       << " budget=" << budget << " seed=" << seed;
    return os.str();
  }
};

FdAlgebra load_algebra(const std::string &name) {
  if (std::filesystem::exists(name)) {
    std::ifstream in(name);
    std::stringstream ss;
    ss << in.rdbuf();
    return FdAlgebra::from_json(ss.str());
  }
  return builtin_algebra(name);
}

TIdealPresentation load_tideal(const std::string &name) {
  if (name == "T1")
    return t_ideal_T1();
  if (name == "T2")
    return t_ideal_T2();
  if (name.rfind("calT", 0) == 0)
    return t_ideal_calT(std::stoi(name.substr(4)));
  throw std::invalid_argument("unknown T-ideal '" + name +
                              "' (expected T1, T2 or calT{m})");
}

std::string witness_json(const EvaluationWitness &w, const FdAlgebra &A) {
  std::ostringstream os;
  os << "{\"status\": \"witness\", \"tuple\": [";
  for (size_t i = 0; i < w.labels.size(); ++i)
    os << (i ? ", " : "") << "\"" << w.labels[i] << "\"";
  os << "], \"value\": \"" << A.elem_to_string(w.value) << "\"}";
  return os.str();
}

// --- verify suite ------------------------------------------------------------

void suite_grassmann_kernel(ReportBundle &B) {
  uint64_t triples = 0;
  bool ok = true;
  for (int k = 1; k <= 5 && ok; ++k) {
    uint64_t dim = 1ull << k;
    for (uint64_t a = 0; a < dim && ok; ++a)
      for (uint64_t b = 0; b < dim && ok; ++b) {
        GrassmannElement ea = GrassmannElement::basis(k, a);
        GrassmannElement eb = GrassmannElement::basis(k, b);
        int pa = __builtin_popcountll(a) & 1, pb = __builtin_popcountll(b) & 1;
        GrassmannElement lhs = ea * eb;
        GrassmannElement rhs = eb * ea;
        if (!(lhs == (pa && pb ? rhs * Rat(-1) : rhs)))
          ok = false;
        for (uint64_t c = 0; c < dim; ++c) {
          GrassmannElement ec = GrassmannElement::basis(k, c);
          ++triples;
          if (!((ea * eb) * ec == ea * (eb * ec))) {
            ok = false;
            break;
          }
        }
      }
  }
  B.add("grassmann-kernel", "exterior algebra: associativity and "
                            "supercommutativity, exhaustive for k <= 5",
        ok, "", triples);
}

void suite_envelope_iso(ReportBundle &B) {
  for (int k = 1; k <= 3; ++k) {
    auto rep = check_isomorphic_envelope(k);
    B.add("envelope-iso-k" + std::to_string(k),
          "G^(k)(UT2(K[u])) is isomorphic to UT2(G^(k))", rep.isomorphic,
          rep.isomorphic ? "" : rep.counterexample, rep.products_checked);
  }
}

MultilinearPoly ml(const std::string &text, uint32_t n) {
  return as_multilinear(parse_poly(text), n);
}

void suite_lem2(ReportBundle &B, const RunConfig &cfg) {
  // identity (1): [x1,x2,x3][x4,x5,x6]; identity (2): m+2 pair commutators.
  for (int m = 1; m <= 2; ++m) {
    for (int k = 2 * m; k <= 2 * m + 1; ++k) {
      FdAlgebra A = ut_n(grassmann_fd(k), 2);
      std::string where = " of UT2(G^(" + std::to_string(k) + "))";
      if (cfg.max_degree >= 6) {
        std::vector<MultilinearPoly> f1{ml("[x1,x2,x3]", 3),
                                        ml("[x1,x2,x3]", 3)};
        B.add("triple-commutator-product-m" + std::to_string(m) + "-k" +
                  std::to_string(k),
              "[x1,x2,x3][x4,x5,x6] is an identity" + where,
              is_identity_product(f1, A));
      } else {
        B.add_skipped("triple-commutator-product-m" + std::to_string(m) +
                          "-k" + std::to_string(k),
                      "[x1,x2,x3][x4,x5,x6] is an identity" + where,
                      "needs degree 6 > max-degree");
      }
      uint32_t deg2 = 2 * (m + 2);
      if (cfg.max_degree >= deg2) {
        std::vector<MultilinearPoly> f2(m + 2, ml("[x1,x2]", 2));
        B.add("pair-product-m" + std::to_string(m) + "-k" + std::to_string(k),
              std::to_string(m + 2) +
                  " pair commutators form an identity" + where,
              is_identity_product(f2, A));
      } else {
        B.add_skipped("pair-product-m" + std::to_string(m) + "-k" +
                          std::to_string(k),
                      std::to_string(m + 2) +
                          " pair commutators form an identity" + where,
                      "needs degree " + std::to_string(deg2) +
                          " > max-degree");
      }
    }
  }
}

void suite_lem1(ReportBundle &B) {
  for (int item = 1; item <= 4; ++item)
    for (uint32_t t = 1; t <= 2; ++t) {
      NcPoly f = lem1_poly(item, t);
      NcPoly tot = certificate_total(cert_lem1(item, t));
      B.add("consequence-cert-item" + std::to_string(item) + "-t" +
                std::to_string(t),
            "item (" + std::to_string(item) +
                ") is a consequence of [x1,x2,x3][x4,x5,x6]",
            f == tot, "", cert_lem1(item, t).size());
    }
}

void suite_tm_comparison(ReportBundle &B, const RunConfig &cfg) {
  FdAlgebra A = ut_n(grassmann_fd(2), 2);
  for (uint32_t n = 4; n <= 6; ++n) {
    std::string name = "Tm-equals-identities-n" + std::to_string(n);
    std::string claim = "T(UT2(G^(2))) cap P_" + std::to_string(n) +
                        " equals the multilinear consequence span of calT_1";
    if (n > cfg.max_degree) {
      B.add_skipped(name, claim, "degree > max-degree");
      continue;
    }
    try {
      SubspaceOptions opts;
      opts.seed = cfg.seed;
      opts.budget_ops = cfg.budget;
      SubspaceStats s1, s2;
      DegreeComponent cons = consequences_multilinear(t_ideal_calT(1), n, opts, &s1);
      DegreeComponent ids = identities_subspace(A, n, opts, &s2);
      auto cmp = subspace_compare(cons, ids);
      B.add(name, claim, cmp.verdict == CompareVerdict::Equal,
            "verdict=" + verdict_name(cmp.verdict), s1.ops + s2.ops);
    } catch (const BudgetExceeded &e) {
      B.add_skipped(name, claim, e.what());
    }
  }
}

int basis_by_label(const FdAlgebra &A, const std::string &lab) {
  for (int i = 0; i < A.dim(); ++i)
    if (A.label(i) == lab)
      return i;
  throw std::logic_error("basis label not found: " + lab);
}

void suite_independence(ReportBundle &B, const RunConfig &cfg) {
  // pol3 family: the displayed substitutions isolate exactly one member.
  {
    FdAlgebra A = ut_n(grassmann_fd(2), 2);
    std::map<uint32_t, FdAlgebra::Elem> psi;
    psi[2] = A.basis_elem(basis_by_label(A, "e{1}·e11"));
    psi[1] = A.basis_elem(basis_by_label(A, "e{2}·e11"));
    psi[4] = A.basis_elem(basis_by_label(A, "e12"));
    psi[3] = A.basis_elem(basis_by_label(A, "e22"));
    auto fam = family_pol3(2, 4);
    int nonzero = 0;
    bool target_nonzero = false;
    for (size_t i = 0; i < fam.size(); ++i) {
      auto v = eval_poly(fam[i].to_ncpoly(), A, psi);
      if (!FdAlgebra::is_zero(v)) {
        ++nonzero;
        if (i == 0)
          target_nonzero = true; // [x2,x1][x4,x3] is the first member
      }
    }
    B.add("pol3-isolation-deg4",
          "the degree-4 substitution isolates [x2,x1][x4,x3] among the "
          "descending pairings",
          nonzero == 1 && target_nonzero,
          "nonzero members: " + std::to_string(nonzero), fam.size());
  }
  if (cfg.max_degree >= 6) {
    FdAlgebra A = ut_n(grassmann_fd(6), 2);
    std::map<uint32_t, FdAlgebra::Elem> psi;
    psi[2] = A.basis_elem(basis_by_label(A, "e{1}·e11"));
    psi[1] = A.basis_elem(basis_by_label(A, "e{2}·e11"));
    psi[4] = A.basis_elem(basis_by_label(A, "e12"));
    psi[3] = A.basis_elem(basis_by_label(A, "e22"));
    psi[6] = A.basis_elem(basis_by_label(A, "e{3}·e22"));
    psi[5] = A.basis_elem(basis_by_label(A, "e{4}·e22"));
    auto fam = family_pol3(3, 6);
    int nonzero = 0;
    bool target_nonzero = false;
    for (size_t i = 0; i < fam.size(); ++i) {
      auto v = eval_poly(fam[i].to_ncpoly(), A, psi);
      if (!FdAlgebra::is_zero(v)) {
        ++nonzero;
        if (i == 0)
          target_nonzero = true;
      }
    }
    B.add("pol3-isolation-deg6",
          "the degree-6 substitution isolates [x2,x1][x4,x3][x6,x5] among "
          "the descending pairings",
          nonzero == 1 && target_nonzero,
          "nonzero members: " + std::to_string(nonzero), fam.size());
  } else {
    B.add_skipped("pol3-isolation-deg6", "degree-6 pol3 isolation",
                  "degree > max-degree");
  }

  // pol1 family: the displayed substitution leaves the target nonzero, and
  // the whole family is independent modulo T(UT2(G^(2))), certified by
  // evaluation functionals (which vanish on every identity).
  FdAlgebra A2 = ut_n(grassmann_fd(2), 2);
  for (uint32_t n : {4u, 6u}) {
    std::string name = "pol1-independence-deg" + std::to_string(n);
    std::string claim = "the degree-" + std::to_string(n) +
                        " pol1 family is independent modulo T(UT2(G^(2)))";
    if (n > cfg.max_degree) {
      B.add_skipped(name, claim, "degree > max-degree");
      continue;
    }
    std::vector<MultilinearPoly> fam;
    std::vector<std::array<uint32_t, 3>> classes =
        n == 4 ? std::vector<std::array<uint32_t, 3>>{{0, 4, 0}}
               : std::vector<std::array<uint32_t, 3>>{
                     {0, 6, 0}, {1, 4, 0}, {0, 4, 1}};
    for (auto [r, s, t] : classes) {
      auto f = family_pol1(1, n, r, s, t);
      fam.insert(fam.end(), f.begin(), f.end());
    }
    // target replay: x_{j2} = e12, other J-variables e11, I-pairs g e11
    std::map<uint32_t, FdAlgebra::Elem> psi;
    size_t target = 0;
    if (n == 4) {
      psi[1] = A2.basis_elem(basis_by_label(A2, "e12"));
      for (uint32_t v : {2u, 3u, 4u})
        psi[v] = A2.basis_elem(basis_by_label(A2, "e11"));
    } else {
      psi[1] = A2.basis_elem(basis_by_label(A2, "e{1}·e11"));
      psi[2] = A2.basis_elem(basis_by_label(A2, "e{2}·e11"));
      psi[3] = A2.basis_elem(basis_by_label(A2, "e12"));
      for (uint32_t v : {4u, 5u, 6u})
        psi[v] = A2.basis_elem(basis_by_label(A2, "e11"));
      target = 5; // first member of class (1,4,0): I={1,2}, j1=4
    }
    bool target_nonzero =
        !FdAlgebra::is_zero(eval_poly(fam[target].to_ncpoly(), A2, psi));

    // Independence modulo T(A) equals full rank of the evaluation matrix
    // (family members x tuple coordinates): its column space is cut out by
    // exactly the functionals vanishing on identities. Insert coordinate
    // columns incrementally, one echelon of width |family|.
    ExactRref rr(static_cast<uint32_t>(fam.size()));
    size_t rank = 0;
    uint64_t tuples = 0;
    for_each_tuple(A2, n, [&](const std::vector<int> &tup) -> bool {
      ++tuples;
      std::vector<FdAlgebra::Elem> vals;
      vals.reserve(fam.size());
      for (auto &f : fam)
        vals.push_back(eval_multilinear(f, A2, tup));
      for (int c = 0; c < A2.dim(); ++c) {
        std::vector<Rat> col(fam.size());
        bool nz = false;
        for (size_t i = 0; i < fam.size(); ++i) {
          col[i] = vals[i][c];
          if (col[i] != 0)
            nz = true;
        }
        if (nz && rr.insert(col))
          ++rank;
      }
      return rank < fam.size();
    });
    B.add(name, claim, target_nonzero && rank == fam.size(),
          "members=" + std::to_string(fam.size()) +
              " rank=" + std::to_string(rank),
          tuples);
  }
}

void suite_codim(ReportBundle &B, const RunConfig &cfg) {
  SubspaceOptions opts;
  opts.seed = cfg.seed;
  opts.budget_ops = cfg.budget;
  bool ok = true;
  uint64_t cost = 0;
  std::string detail;
  uint32_t top = std::min<uint32_t>(6, cfg.max_degree);
  try {
    for (uint32_t n = 1; n <= top; ++n) {
      SubspaceStats st;
      uint64_t c = factorial(n) -
                   identities_subspace(grassmann_fd(n), n, opts, &st).dim();
      cost += st.ops;
      if (c != (1ull << (n - 1))) {
        ok = false;
        detail = "c_" + std::to_string(n) + "(G^(n)) = " + std::to_string(c);
      }
    }
    B.add("codim-grassmann", "c_n(G^(n)) = 2^(n-1) for n <= " +
                                 std::to_string(top),
          ok, detail, cost);
    ok = true;
    cost = 0;
    detail.clear();
    for (uint32_t n = 2; n <= top; ++n) {
      SubspaceStats s2, s3;
      uint64_t c2 = factorial(n) -
                    identities_subspace(grassmann_fd(2), n, opts, &s2).dim();
      uint64_t c3 = factorial(n) -
                    identities_subspace(grassmann_fd(3), n, opts, &s3).dim();
      cost += s2.ops + s3.ops;
      if (c2 != c3) {
        ok = false;
        detail = "n=" + std::to_string(n);
      }
    }
    B.add("codim-g2-vs-g3",
          "c_n(G^(2)) = c_n(G^(3)) for n <= " + std::to_string(top), ok,
          detail, cost);
  } catch (const BudgetExceeded &e) {
    B.add_skipped("codim", "Grassmann codimension checks", e.what());
  }
}

// Random shaped input for the reordering lemma: u0 [v1,v2,v3] with pairs and
// word letters interleaved, distinct variables, degree <= max_degree.
std::string random_shaped_expr(std::mt19937_64 &rng, uint32_t max_degree) {
  std::vector<uint32_t> vars(max_degree);
  std::iota(vars.begin(), vars.end(), 1u);
  std::shuffle(vars.begin(), vars.end(), rng);
  size_t pos = 0;
  auto take = [&] { return vars[pos++]; };
  std::string s;
  if (rng() % 2)
    s += "x" + std::to_string(take());
  s += "[x" + std::to_string(take()) + ",x" + std::to_string(take()) + ",x" +
       std::to_string(take()) + "]";
  while (pos + 1 < max_degree) {
    if (rng() % 3 == 0)
      s += "x" + std::to_string(take());
    else
      s += "[x" + std::to_string(take()) + ",x" + std::to_string(take()) + "]";
  }
  return s;
}

void suite_reordering(ReportBundle &B, const RunConfig &cfg) {
  std::mt19937_64 rng(cfg.seed);
  bool ok = true;
  std::string detail;
  int runs = 0;
  for (int it = 0; it < 20; ++it) {
    ExprPtr f = parse_expr(random_shaped_expr(rng, 8));
    T2Certificate cert;
    NcPoly out = reorder_mod_T2(f, &cert);
    NcPoly diff = f->to_poly() - out;
    if (!(diff == certificate_total(cert))) {
      ok = false;
      detail = "instance " + std::to_string(it);
      break;
    }
    ++runs;
  }
  B.add("reordering-certificates",
        "reordering to (-1)^sigma u0 [v1,v2,v3][w1,w2]... holds modulo T_2, "
        "with exact instance certificates",
        ok, detail, runs);
}

void suite_idf2(ReportBundle &B, const RunConfig &cfg) {
  struct Item {
    const char *text;
    uint32_t deg;
  };
  std::vector<Item> items = {{"[x1,x2,x3][x4,x5,x6]", 6},
                             {"[x1,x2,x3][x4,x5][x6,x7]", 7},
                             {"[x1,x2][x3,x4][x5,x6,x7]", 7},
                             {"[x1,x2][x3,x4][x5,x6][x7,x8]", 8}};
  for (size_t i = 0; i < items.size(); ++i) {
    std::string name = "relfree-identity-" + std::to_string(i + 1);
    std::string claim = std::string("polynomial ") + items[i].text +
                        " vanishes on words of the rank-3 generic model";
    if (items[i].deg > cfg.max_degree) {
      B.add_skipped(name, claim, "degree > max-degree");
      continue;
    }
    try {
      auto r = check_truncated_identity(parse_poly(items[i].text), 3,
                                        cfg.trunc_D, cfg.trunc_N, cfg.budget);
      B.add(name, claim + " (bounded, D=" + std::to_string(r.D) + ")",
            r.verified, r.verified ? "" : "witness found", r.products);
    } catch (const BudgetExceeded &e) {
      B.add_skipped(name, claim, e.what());
    }
  }
  if (cfg.max_degree >= 6) {
    auto r = check_truncated_identity(parse_poly("[x1,x2][x3,x4][x5,x6]"), 3,
                                      1, 0, cfg.budget);
    B.add("relfree-negative-control",
          "[x1,x2][x3,x4][x5,x6] is not an identity of the rank-3 generic "
          "model",
          !r.verified, "", r.products);
  } else {
    B.add_skipped("relfree-negative-control", "negative control",
                  "degree > max-degree");
  }
}

void suite_separation(ReportBundle &B, const RunConfig &cfg) {
  // 3 pair commutators: identity of UT2(G^(k)) for k = 2, 3 but not of the
  // rank-k relatively free model, so the two T-ideals differ.
  if (cfg.max_degree < 6) {
    B.add_skipped("tideal-separation",
                  "T(UT2(G^(k))) differs from T of the rank-k relatively "
                  "free algebra",
                  "degree > max-degree");
    return;
  }
  std::vector<MultilinearPoly> pairs3(3, ml("[x1,x2]", 2));
  for (int k = 2; k <= 3; ++k) {
    bool env_identity = is_identity_product(pairs3, ut_n(grassmann_fd(k), 2));
    auto model = check_truncated_identity(
        parse_poly("[x1,x2][x3,x4][x5,x6]"), k, 1, 0, cfg.budget);
    B.add("tideal-separation-k" + std::to_string(k),
          "[x1,x2][x3,x4][x5,x6] separates T(UT2(G^(" + std::to_string(k) +
              "))) from the rank-" + std::to_string(k) +
              " relatively free algebra",
          env_identity && !model.verified,
          std::string("envelope: ") +
              (env_identity ? "identity" : "witness") + ", model: " +
              (model.verified ? "verified" : "witness"),
          model.products);
  }
}

void suite_cross_check(ReportBundle &B, const RunConfig &cfg) {
  struct Case {
    const char *alg;
    uint32_t n;
  };
  for (auto [alg, n] : {Case{"ut2-k", 3}, Case{"g2", 4}}) {
    std::string name =
        std::string("cross-check-") + alg + "-n" + std::to_string(n);
    std::string claim = "direct and generic-model identity verdicts agree on "
                        "P_" + std::to_string(n);
    if (n > cfg.max_degree) {
      B.add_skipped(name, claim, "degree > max-degree");
      continue;
    }
    CrossCheckOptions opts;
    auto rep = cross_check_lemma_lem(load_algebra(alg), n, opts);
    std::string detail = "polys=" + std::to_string(rep.polys_checked) +
                         " skipped=" + std::to_string(rep.skipped.size());
    if (!rep.agree)
      detail += " first=" + rep.discrepancies.front();
    B.add(name, claim, rep.agree, detail, rep.tuples_checked);
  }
}

int run_verify_suite(const RunConfig &cfg) {
  ReportBundle B;
  B.title = "verification suite";
  B.seed = cfg.seed;
  B.config = cfg.describe();

  suite_grassmann_kernel(B);
  suite_envelope_iso(B);
  suite_lem1(B);
  suite_lem2(B, cfg);
  suite_independence(B, cfg);
  suite_tm_comparison(B, cfg);
  suite_codim(B, cfg);
  suite_reordering(B, cfg);
  suite_idf2(B, cfg);
  suite_separation(B, cfg);
  suite_cross_check(B, cfg);

  std::filesystem::create_directories(cfg.out);
  std::string path = cfg.out + "/verify.json";
  B.write_file(path);
  for (auto &c : B.checks)
    std::fprintf(stderr, "%-38s %s\n", c.name.c_str(), c.status.c_str());
  std::printf("%s: %zu checks, %zu failed -> %s\n", path.c_str(),
              B.checks.size(), B.failures(), B.all_passed() ? "PASS" : "FAIL");
  return B.all_passed() ? EXIT_PASS : EXIT_MATH_FAIL;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"workbench for polynomial identities of UT2 over Grassmann "
               "coefficients"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string poly_text, family = "pol3";
  uint32_t fam_r = 0, fam_s = 3, fam_t = 1;
  int fam_m = 1, nf_bound = 2;

  auto add_common = [&](CLI::App *c) {
    c->add_option("--budget", cfg.budget, "operation budget");
    c->add_option("--seed", cfg.seed, "PRNG seed (recorded in artifacts)");
  };

  CLI::App *c_check = app.add_subcommand("check", "identity test by "
                                                  "exhaustive evaluation");
  c_check->add_option("poly", poly_text, "polynomial")->required();
  c_check->add_option("--algebra", cfg.algebra, "builtin name or JSON path");
  add_common(c_check);

  CLI::App *c_free = app.add_subcommand(
      "check-free", "bounded identity test in the rank-k generic model");
  c_free->add_option("poly", poly_text, "polynomial")->required();
  c_free->add_option("--rank", cfg.rank, "number of generic matrices");
  c_free->add_option("--trunc-D", cfg.trunc_D, "word degree bound");
  c_free->add_option("--trunc-N", cfg.trunc_N, "Grassmann rank (0: degree*D)");
  add_common(c_free);

  CLI::App *c_codim = app.add_subcommand("codim", "codimension table");
  c_codim->add_option("--algebra", cfg.algebra, "builtin name or JSON path");
  c_codim->add_option("--max-degree", cfg.max_degree, "largest degree");
  c_codim->add_option("--format", cfg.format, "json|csv");
  add_common(c_codim);

  CLI::App *c_cmp = app.add_subcommand(
      "compare", "consequence span vs evaluation nullspace");
  c_cmp->add_option("--algebra", cfg.algebra, "builtin name or JSON path");
  c_cmp->add_option("--tideal", cfg.tideal, "T1 | T2 | calT{m}");
  c_cmp->add_option("--degree", cfg.degree, "multilinear degree");
  add_common(c_cmp);

  CLI::App *c_env = app.add_subcommand("envelope-iso",
                                       "exhaustive envelope comparison");
  c_env->add_option("--rank", cfg.rank, "Grassmann rank k");

  CLI::App *c_fam = app.add_subcommand("families", "polynomial families");
  c_fam->add_option("--family", family, "pol1 | pol3 | pairs");
  c_fam->add_option("--degree", cfg.degree, "multilinear degree");
  c_fam->add_option("--m", fam_m, "pol1: m parameter");
  c_fam->add_option("--r", fam_r, "pol1: leading pair count");
  c_fam->add_option("--s", fam_s, "pol1: long commutator length");
  c_fam->add_option("--t", fam_t, "pol1/pol3/pairs: trailing pair count");

  CLI::App *c_nf = app.add_subcommand("normal-form",
                                      "rewrite modulo a pair-product identity");
  c_nf->add_option("poly", poly_text, "polynomial")->required();
  c_nf->add_option("--bound", nf_bound, "pair count of the defining identity");

  CLI::App *c_re = app.add_subcommand("reorder",
                                      "canonical form modulo T_2 with "
                                      "certificate");
  c_re->add_option("expr", poly_text, "shaped product expression")->required();

  CLI::App *c_xc = app.add_subcommand("cross-check-lem",
                                      "direct vs generic-model verdicts");
  c_xc->add_option("--algebra", cfg.algebra, "builtin name or JSON path");
  c_xc->add_option("--degree", cfg.degree, "multilinear degree");
  c_xc->add_option("--trunc-D", cfg.trunc_D, "largest word degree");
  add_common(c_xc);

  CLI::App *c_vs = app.add_subcommand("verify-suite",
                                      "run every check and write a bundle");
  c_vs->alias("verify-paper");
  c_vs->add_option("--out", cfg.out, "output directory");
  c_vs->add_option("--max-degree", cfg.max_degree,
                   "skip checks above this degree");
  c_vs->add_option("--trunc-D", cfg.trunc_D, "generic-model word bound");
  add_common(c_vs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : EXIT_USAGE;
  }

  try {
    if (*c_check) {
      FdAlgebra A = load_algebra(cfg.algebra);
      NcPoly f = parse_poly(poly_text);
      uint32_t n = static_cast<uint32_t>(std::max(0, f.degree()));
      MultilinearPoly m = multilinear_part(f, n);
      if (!(m.to_ncpoly() == f))
        std::fprintf(stderr, "note: input projected to its multilinear "
                             "degree-%u part\n", n);
      auto w = find_witness(m, A);
      if (w)
        std::printf("%s\n", witness_json(*w, A).c_str());
      else
        std::printf("{\"status\": \"identity\", \"degree\": %u}\n", n);
      return EXIT_PASS;
    }
    if (*c_free) {
      auto r = check_truncated_identity(parse_poly(poly_text), cfg.rank,
                                        cfg.trunc_D, cfg.trunc_N, cfg.budget);
      if (r.verified) {
        std::printf("{\"status\": \"verified\", \"D\": %d, \"N\": %d, "
                    "\"k\": %d}\n", r.D, r.N, r.k);
      } else {
        std::printf("{\"status\": \"witness\", \"D\": %d, \"N\": %d, "
                    "\"k\": %d, \"tuple\": [", r.D, r.N, r.k);
        for (size_t i = 0; i < r.witness_words.size(); ++i) {
          std::printf("%s\"", i ? ", " : "");
          for (int letter : r.witness_words[i])
            std::printf("%d", letter);
          std::printf("\"");
        }
        std::printf("]}\n");
      }
      return EXIT_PASS;
    }
    if (*c_codim) {
      FdAlgebra A = load_algebra(cfg.algebra);
      SubspaceOptions opts;
      opts.seed = cfg.seed;
      opts.budget_ops = cfg.budget;
      std::printf("n,codim,identity_dim,ops,filter_primes\n");
      for (uint32_t n = 1; n <= cfg.max_degree; ++n) {
        SubspaceStats st;
        try {
          DegreeComponent ids = identities_subspace(A, n, opts, &st);
          std::string primes;
          for (uint64_t p : st.filter_primes)
            primes += (primes.empty() ? "" : " ") + std::to_string(p);
          std::printf("%u,%llu,%u,%llu,%s\n", n,
                      static_cast<unsigned long long>(factorial(n) -
                                                      ids.dim()),
                      ids.dim(), static_cast<unsigned long long>(st.ops),
                      primes.c_str());
        } catch (const BudgetExceeded &) {
          std::printf("%u,budget,,,\n", n);
          return EXIT_BUDGET;
        }
      }
      return EXIT_PASS;
    }
    if (*c_cmp) {
      FdAlgebra A = load_algebra(cfg.algebra);
      SubspaceOptions opts;
      opts.seed = cfg.seed;
      opts.budget_ops = cfg.budget;
      DegreeComponent cons =
          consequences_multilinear(load_tideal(cfg.tideal), cfg.degree, opts);
      DegreeComponent ids = identities_subspace(A, cfg.degree, opts);
      auto cmp = subspace_compare(cons, ids);
      std::printf("{\"verdict\": \"%s\", \"consequence_dim\": %u, "
                  "\"identity_dim\": %u}\n",
                  verdict_name(cmp.verdict).c_str(), cons.dim(), ids.dim());
      return EXIT_PASS;
    }
    if (*c_env) {
      auto rep = check_isomorphic_envelope(cfg.rank);
      std::printf("{\"isomorphic\": %s, \"rank\": %d, \"dim\": %d, "
                  "\"products_checked\": %zu}\n",
                  rep.isomorphic ? "true" : "false", rep.rank, rep.dim,
                  rep.products_checked);
      return rep.isomorphic ? EXIT_PASS : EXIT_MATH_FAIL;
    }
    if (*c_fam) {
      std::vector<MultilinearPoly> fam;
      if (family == "pol1")
        fam = family_pol1(fam_m, cfg.degree, fam_r, fam_s, fam_t);
      else if (family == "pol3")
        fam = family_pol3(fam_t, cfg.degree);
      else if (family == "pairs")
        fam = all_pair_products(fam_t);
      else
        throw std::invalid_argument("unknown family '" + family + "'");
      for (auto &f : fam)
        std::printf("%s\n", f.to_ncpoly().to_string().c_str());
      return EXIT_PASS;
    }
    if (*c_nf) {
      NcPoly nf = ut_normal_form(parse_poly(poly_text), nf_bound);
      std::printf("%s\n", nf.to_string().c_str());
      return EXIT_PASS;
    }
    if (*c_re) {
      T2Certificate cert;
      ExprPtr e = parse_expr(poly_text);
      NcPoly out = reorder_mod_T2(e, &cert);
      bool exact = e->to_poly() - out == certificate_total(cert);
      std::printf("%s\n", out.to_string().c_str());
      std::fprintf(stderr, "certificate: %zu instances, %s\n", cert.size(),
                   exact ? "exact" : "MISMATCH");
      return exact ? EXIT_PASS : EXIT_MATH_FAIL;
    }
    if (*c_xc) {
      CrossCheckOptions opts;
      opts.max_D = cfg.trunc_D;
      auto rep = cross_check_lemma_lem(load_algebra(cfg.algebra), cfg.degree,
                                       opts);
      std::printf("{\"agree\": %s, \"polys\": %llu, \"tuples\": %llu, "
                  "\"skipped\": %zu}\n",
                  rep.agree ? "true" : "false",
                  static_cast<unsigned long long>(rep.polys_checked),
                  static_cast<unsigned long long>(rep.tuples_checked),
                  rep.skipped.size());
      return rep.agree ? EXIT_PASS : EXIT_MATH_FAIL;
    }
    if (*c_vs)
      return run_verify_suite(cfg);
  } catch (const BudgetExceeded &e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return EXIT_BUDGET;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return EXIT_USAGE;
  }
  return EXIT_USAGE;
}
