#include "pilab/fdalgebra.hpp"

#include "pilab/grassmann.hpp"

#include <nlohmann/json.hpp>

#include <random>
#include <sstream>
#include <stdexcept>

namespace pilab {

using json = nlohmann::ordered_json;

FdAlgebra::FdAlgebra(int dim, std::vector<std::string> labels,
                     std::vector<std::vector<Row>> structure,
                     std::optional<std::vector<int>> grading,
                     std::optional<std::vector<Rat>> unit,
                     bool skip_assoc_check)
    : dim_(dim), labels_(std::move(labels)), structure_(std::move(structure)),
      grading_(std::move(grading)), unit_(std::move(unit)) {
  if (dim_ <= 0)
    throw std::invalid_argument("dimension must be positive");
  if (labels_.size() != static_cast<size_t>(dim_) ||
      structure_.size() != static_cast<size_t>(dim_))
    throw std::invalid_argument("inconsistent algebra data sizes");
  for (auto &row : structure_)
    if (row.size() != static_cast<size_t>(dim_))
      throw std::invalid_argument("inconsistent structure table");
  if (grading_ && grading_->size() != static_cast<size_t>(dim_))
    throw std::invalid_argument("grading size mismatch");
  if (unit_ && unit_->size() != static_cast<size_t>(dim_))
    throw std::invalid_argument("unit size mismatch");
  detect_monomial();
  check_associativity(skip_assoc_check);
  if (grading_)
    check_grading();
}

void FdAlgebra::detect_monomial() {
  monomial_flag_ = true;
  for (int i = 0; i < dim_ && monomial_flag_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const Row &r = structure_[i][j];
      if (r.size() > 1 || (r.size() == 1 && r[0].second != 1 && r[0].second != -1)) {
        monomial_flag_ = false;
        break;
      }
    }
  if (!monomial_flag_)
    return;
  mono_to_.assign(static_cast<size_t>(dim_) * dim_, -1);
  mono_sign_.assign(static_cast<size_t>(dim_) * dim_, 0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const Row &r = structure_[i][j];
      if (!r.empty()) {
        mono_to_[i * dim_ + j] = r[0].first;
        mono_sign_[i * dim_ + j] = r[0].second > 0 ? 1 : -1;
      }
    }
}

namespace {

FdAlgebra::Row mul_row_basis(const FdAlgebra::Row &r, int k,
                             const std::vector<std::vector<FdAlgebra::Row>> &st,
                             int dim) {
  std::vector<Rat> acc(dim, Rat(0));
  for (auto &[i, c] : r)
    for (auto &[t, d] : st[i][k])
      acc[t] += c * d;
  FdAlgebra::Row out;
  for (int t = 0; t < dim; ++t)
    if (acc[t] != 0)
      out.emplace_back(t, acc[t]);
  return out;
}

FdAlgebra::Row mul_basis_row(int i, const FdAlgebra::Row &r,
                             const std::vector<std::vector<FdAlgebra::Row>> &st,
                             int dim) {
  std::vector<Rat> acc(dim, Rat(0));
  for (auto &[k, c] : r)
    for (auto &[t, d] : st[i][k])
      acc[t] += c * d;
  FdAlgebra::Row out;
  for (int t = 0; t < dim; ++t)
    if (acc[t] != 0)
      out.emplace_back(t, acc[t]);
  return out;
}

} // namespace

void FdAlgebra::check_associativity(bool skip) const {
  if (skip)
    return;
  auto check_triple = [&](int i, int j, int k) {
    Row lhs = mul_row_basis(structure_[i][j], k, structure_, dim_);
    Row rhs = mul_basis_row(i, structure_[j][k], structure_, dim_);
    if (lhs != rhs)
      throw std::invalid_argument("structure constants are not associative at (" +
                                  labels_[i] + ", " + labels_[j] + ", " +
                                  labels_[k] + ")");
  };
  if (dim_ <= 64) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k)
          check_triple(i, j, k);
  } else {
    std::mt19937_64 rng(0x5eedu);
    std::uniform_int_distribution<int> d(0, dim_ - 1);
    for (int t = 0; t < 10000; ++t)
      check_triple(d(rng), d(rng), d(rng));
  }
}

void FdAlgebra::check_grading() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (auto &[k, c] : structure_[i][j])
        if ((*grading_)[k] != (((*grading_)[i] + (*grading_)[j]) & 1))
          throw std::invalid_argument("structure constants violate the grading");
}

void FdAlgebra::set_zero_support(std::vector<uint64_t> s) {
  if (s.size() != static_cast<size_t>(dim_))
    throw std::invalid_argument("support size mismatch");
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const Row &r = structure_[i][j];
      if ((s[i] & s[j]) != 0) {
        if (!r.empty())
          throw std::invalid_argument("support annotation inconsistent (overlap)");
      } else {
        for (auto &[k, c] : r)
          if (s[k] != (s[i] | s[j]))
            throw std::invalid_argument("support annotation inconsistent (union)");
      }
    }
  zero_support_ = std::move(s);
}

FdAlgebra::Elem FdAlgebra::basis_elem(int i) const {
  Elem e(dim_, Rat(0));
  e[i] = 1;
  return e;
}

FdAlgebra::Elem FdAlgebra::mul(const Elem &a, const Elem &b) const {
  Elem r(dim_, Rat(0));
  for (int i = 0; i < dim_; ++i) {
    if (a[i] == 0)
      continue;
    for (int j = 0; j < dim_; ++j) {
      if (b[j] == 0)
        continue;
      Rat c = a[i] * b[j];
      for (auto &[k, d] : structure_[i][j])
        r[k] += c * d;
    }
  }
  return r;
}

bool FdAlgebra::is_zero(const Elem &a) {
  for (auto &c : a)
    if (c != 0)
      return false;
  return true;
}

std::string FdAlgebra::elem_to_string(const Elem &a) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < dim_; ++i) {
    if (a[i] == 0)
      continue;
    Rat c = a[i];
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0)
        c = -c;
    }
    first = false;
    if (c != 1)
      os << rat_to_string(c) << "*";
    os << labels_[i];
  }
  if (first)
    return "0";
  return os.str();
}

uint64_t FdAlgebra::content_hash() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string &s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  mix(std::to_string(dim_));
  for (auto &l : labels_)
    mix(l);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (auto &[k, c] : structure_[i][j]) {
        mix(std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k));
        mix(rat_to_string(c));
      }
  return h;
}

std::string FdAlgebra::to_json() const {
  json j;
  j["dim"] = dim_;
  j["labels"] = labels_;
  if (grading_)
    j["grading"] = *grading_;
  if (unit_) {
    std::vector<std::string> u;
    for (auto &c : *unit_)
      u.push_back(rat_to_string(c));
    j["unit"] = u;
  }
  json rows = json::array();
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) {
      if (structure_[a][b].empty())
        continue;
      json entries = json::array();
      for (auto &[k, c] : structure_[a][b])
        entries.push_back(json::array({k, rat_to_string(c)}));
      rows.push_back(json::array({a, b, entries}));
    }
  j["structure"] = rows;
  return j.dump(2);
}

FdAlgebra FdAlgebra::from_json(const std::string &text) {
  json j = json::parse(text); // throws with byte position on malformed input
  int dim = j.at("dim").get<int>();
  auto labels = j.at("labels").get<std::vector<std::string>>();
  std::optional<std::vector<int>> grading;
  if (j.contains("grading"))
    grading = j["grading"].get<std::vector<int>>();
  std::optional<std::vector<Rat>> unit;
  if (j.contains("unit")) {
    std::vector<Rat> u;
    for (auto &s : j["unit"])
      u.push_back(rat_from_string(s.get<std::string>()));
    unit = std::move(u);
  }
  std::vector<std::vector<Row>> st(dim, std::vector<Row>(dim));
  for (auto &row : j.at("structure")) {
    int a = row.at(0).get<int>();
    int b = row.at(1).get<int>();
    if (a < 0 || a >= dim || b < 0 || b >= dim)
      throw std::invalid_argument("structure index out of range");
    Row r;
    for (auto &e : row.at(2))
      r.emplace_back(e.at(0).get<int>(), rat_from_string(e.at(1).get<std::string>()));
    st[a][b] = std::move(r);
  }
  return FdAlgebra(dim, std::move(labels), std::move(st), std::move(grading),
                   std::move(unit));
}

// --- Constructions ----------------------------------------------------------

namespace {

std::string mask_label(uint64_t m) {
  if (m == 0)
    return "1";
  std::string s = "e{";
  bool first = true;
  for (int i = 0; i < 64; ++i)
    if (m & (uint64_t(1) << i)) {
      if (!first)
        s += ",";
      first = false;
      s += std::to_string(i + 1);
    }
  return s + "}";
}

} // namespace

FdAlgebra grassmann_fd(int k) {
  if (k < 0 || k > 20)
    throw std::invalid_argument("grassmann rank out of range for FdAlgebra");
  int dim = 1 << k;
  std::vector<std::string> labels(dim);
  std::vector<int> grading(dim);
  std::vector<uint64_t> support(dim);
  std::vector<std::vector<FdAlgebra::Row>> st(dim, std::vector<FdAlgebra::Row>(dim));
  for (int m = 0; m < dim; ++m) {
    labels[m] = mask_label(static_cast<uint64_t>(m));
    grading[m] = __builtin_popcount(static_cast<unsigned>(m)) & 1;
    support[m] = static_cast<uint64_t>(m);
  }
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      if (a & b)
        continue;
      int sign = subset_merge_sign(static_cast<uint64_t>(a), static_cast<uint64_t>(b));
      st[a][b].emplace_back(a | b, sign);
    }
  std::vector<Rat> unit(dim, Rat(0));
  unit[0] = 1;
  FdAlgebra A(dim, std::move(labels), std::move(st), std::move(grading),
              std::move(unit), /*skip_assoc_check=*/k > 6);
  A.set_zero_support(std::move(support));
  return A;
}

FdAlgebra ut2_ku() {
  // basis: 0:e11 1:e12 2:e22 3:ue11 4:ue12 5:ue22
  const int dim = 6;
  std::vector<std::string> labels = {"e11", "e12", "e22", "ue11", "ue12", "ue22"};
  std::vector<int> grading = {0, 0, 0, 1, 1, 1};
  std::vector<std::vector<FdAlgebra::Row>> st(dim, std::vector<FdAlgebra::Row>(dim));
  // matrix unit product table for indices 0..2 (e11,e12,e22): -1 means zero
  auto unit_prod = [](int a, int b) -> int {
    // e11*e11=e11, e11*e12=e12, e12*e22=e12, e22*e22=e22; rest zero
    if (a == 0 && b == 0) return 0;
    if (a == 0 && b == 1) return 1;
    if (a == 1 && b == 2) return 1;
    if (a == 2 && b == 2) return 2;
    return -1;
  };
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      int p = unit_prod(a % 3, b % 3);
      if (p < 0)
        continue;
      // u commutes with the matrix units and u^2 = 1
      st[a][b].emplace_back(((a / 3 + b / 3) % 2) * 3 + p, 1);
    }
  std::vector<Rat> unit(dim, Rat(0));
  unit[0] = 1;
  unit[2] = 1;
  return FdAlgebra(dim, std::move(labels), std::move(st), std::move(grading),
                   std::move(unit));
}

FdAlgebra ku_superalgebra() {
  std::vector<std::vector<FdAlgebra::Row>> st(2, std::vector<FdAlgebra::Row>(2));
  st[0][0].emplace_back(0, 1);
  st[0][1].emplace_back(1, 1);
  st[1][0].emplace_back(1, 1);
  st[1][1].emplace_back(0, 1);
  std::vector<Rat> unit = {Rat(1), Rat(0)};
  return FdAlgebra(2, {"1", "u"}, std::move(st), std::vector<int>{0, 1},
                   std::move(unit));
}

FdAlgebra m11_superalgebra() {
  // 0:e11 1:e12 2:e21 3:e22, even {e11,e22}, odd {e12,e21}
  auto row = [](int i) { return std::pair<int, int>{i / 2 + 1, i % 2 + 1}; };
  std::vector<std::vector<FdAlgebra::Row>> st(4, std::vector<FdAlgebra::Row>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      auto [ai, aj] = row(a);
      auto [bi, bj] = row(b);
      if (aj == bi)
        st[a][b].emplace_back((ai - 1) * 2 + (bj - 1), 1);
    }
  std::vector<Rat> unit = {Rat(1), Rat(0), Rat(0), Rat(1)};
  return FdAlgebra(4, {"e11", "e12", "e21", "e22"}, std::move(st),
                   std::vector<int>{0, 1, 1, 0}, std::move(unit));
}

FdAlgebra grassmann_envelope(const FdAlgebra &B, int k) {
  if (!B.graded())
    throw std::invalid_argument("grassmann_envelope needs a graded algebra");
  if (k < 0 || k > 20)
    throw std::invalid_argument("envelope rank out of range");
  const int masks = 1 << k;
  // basis: (mask, b) with parity(mask) == grade(b), mask-major
  std::vector<int> index(static_cast<size_t>(masks) * B.dim(), -1);
  std::vector<std::pair<int, int>> basis; // (mask, b)
  for (int m = 0; m < masks; ++m)
    for (int b = 0; b < B.dim(); ++b)
      if ((__builtin_popcount(static_cast<unsigned>(m)) & 1) == B.grade(b)) {
        index[static_cast<size_t>(m) * B.dim() + b] =
            static_cast<int>(basis.size());
        basis.emplace_back(m, b);
      }
  const int dim = static_cast<int>(basis.size());
  std::vector<std::string> labels(dim);
  std::vector<uint64_t> support(dim);
  for (int i = 0; i < dim; ++i) {
    auto [m, b] = basis[i];
    labels[i] = mask_label(static_cast<uint64_t>(m)) + "⊗" + B.label(b);
    support[i] = static_cast<uint64_t>(m);
  }
  std::vector<std::vector<FdAlgebra::Row>> st(dim, std::vector<FdAlgebra::Row>(dim));
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q) {
      auto [m1, b1] = basis[p];
      auto [m2, b2] = basis[q];
      if (m1 & m2)
        continue;
      int sign = subset_merge_sign(static_cast<uint64_t>(m1), static_cast<uint64_t>(m2));
      for (auto &[b3, c] : B.product(b1, b2)) {
        int idx = index[(static_cast<size_t>(m1) | m2) * B.dim() + b3];
        st[p][q].emplace_back(idx, sign > 0 ? c : Rat(-c));
      }
    }
  std::optional<std::vector<Rat>> unit;
  if (B.unit()) {
    std::vector<Rat> u(dim, Rat(0));
    bool ok = true;
    for (int b = 0; b < B.dim(); ++b)
      if ((*B.unit())[b] != 0) {
        if (B.grade(b) != 0) {
          ok = false; // unit has an odd component: no unit in the envelope basis
          break;
        }
        u[index[static_cast<size_t>(0) * B.dim() + b]] = (*B.unit())[b];
      }
    if (ok)
      unit = std::move(u);
  }
  FdAlgebra E(dim, std::move(labels), std::move(st), std::nullopt, std::move(unit),
              /*skip_assoc_check=*/dim > 64);
  E.set_zero_support(std::move(support));
  return E;
}

FdAlgebra ut_n(const FdAlgebra &A, int n) {
  if (n < 1)
    throw std::invalid_argument("ut_n needs n >= 1");
  // units (i,j), i <= j, in row-major order; basis unit-major, A inner
  std::vector<std::pair<int, int>> units;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      units.emplace_back(i, j);
  const int nu = static_cast<int>(units.size());
  const int dim = nu * A.dim();
  std::vector<std::string> labels(dim);
  for (int u = 0; u < nu; ++u)
    for (int a = 0; a < A.dim(); ++a)
      labels[u * A.dim() + a] =
          (A.label(a) == "1" ? "" : A.label(a) + "·") + std::string("e") +
          std::to_string(units[u].first) + std::to_string(units[u].second);
  std::vector<std::vector<FdAlgebra::Row>> st(dim, std::vector<FdAlgebra::Row>(dim));
  for (int u = 0; u < nu; ++u)
    for (int v = 0; v < nu; ++v) {
      if (units[u].second != units[v].first)
        continue;
      int w = -1;
      for (int t = 0; t < nu; ++t)
        if (units[t] == std::make_pair(units[u].first, units[v].second))
          w = t;
      for (int a = 0; a < A.dim(); ++a)
        for (int b = 0; b < A.dim(); ++b)
          for (auto &[c, coef] : A.product(a, b))
            st[u * A.dim() + a][v * A.dim() + b].emplace_back(w * A.dim() + c, coef);
    }
  std::optional<std::vector<int>> grading;
  if (A.graded()) {
    std::vector<int> g(dim);
    for (int u = 0; u < nu; ++u)
      for (int a = 0; a < A.dim(); ++a)
        g[u * A.dim() + a] = A.grade(a);
    grading = std::move(g);
  }
  std::optional<std::vector<Rat>> unit;
  if (A.unit()) {
    std::vector<Rat> un(dim, Rat(0));
    for (int u = 0; u < nu; ++u)
      if (units[u].first == units[u].second)
        for (int a = 0; a < A.dim(); ++a)
          un[u * A.dim() + a] = (*A.unit())[a];
    unit = std::move(un);
  }
  FdAlgebra R(dim, std::move(labels), std::move(st), std::move(grading),
              std::move(unit), /*skip_assoc_check=*/dim > 64);
  if (A.zero_support()) {
    std::vector<uint64_t> s(dim);
    for (int u = 0; u < nu; ++u)
      for (int a = 0; a < A.dim(); ++a)
        s[u * A.dim() + a] = (*A.zero_support())[a];
    R.set_zero_support(std::move(s));
  }
  return R;
}

FdAlgebra ut_n_k(int n) {
  std::vector<std::vector<FdAlgebra::Row>> st(1, std::vector<FdAlgebra::Row>(1));
  st[0][0].emplace_back(0, 1);
  FdAlgebra K(1, {"1"}, std::move(st), std::nullopt,
              std::vector<Rat>{Rat(1)});
  return ut_n(K, n);
}

EnvelopeIsoReport check_isomorphic_envelope(int k) {
  EnvelopeIsoReport rep;
  rep.rank = k;
  FdAlgebra E = grassmann_envelope(ut2_ku(), k);
  FdAlgebra U = ut_n(grassmann_fd(k), 2);
  rep.dim = E.dim();
  if (E.dim() != U.dim()) {
    rep.counterexample = "dimension mismatch";
    return rep;
  }
  const int masks = 1 << k;
  // E basis p -> (mask, b); map to U index = unit(b) * masks + mask,
  // where unit(b) = b mod 3 picks e11/e12/e22 and the K[u] factor is dropped.
  std::vector<int> phi(E.dim(), -1);
  {
    int p = 0;
    for (int m = 0; m < masks; ++m)
      for (int b = 0; b < 6; ++b)
        if ((__builtin_popcount(static_cast<unsigned>(m)) & 1) == (b >= 3 ? 1 : 0))
          phi[p++] = (b % 3) * masks + m;
  }
  for (int p = 0; p < E.dim(); ++p)
    rep.bijection.emplace_back(E.label(p), U.label(phi[p]));
  for (int p = 0; p < E.dim(); ++p)
    for (int q = 0; q < E.dim(); ++q) {
      FdAlgebra::Row lhs; // phi applied to E product
      for (auto &[t, c] : E.product(p, q))
        lhs.emplace_back(phi[t], c);
      std::sort(lhs.begin(), lhs.end());
      FdAlgebra::Row rhs = U.product(phi[p], phi[q]);
      std::sort(rhs.begin(), rhs.end());
      ++rep.products_checked;
      if (lhs != rhs) {
        rep.counterexample = E.label(p) + " * " + E.label(q);
        return rep;
      }
    }
  rep.isomorphic = true;
  return rep;
}

FdAlgebra builtin_algebra(const std::string &name) {
  auto suffix_int = [&](const std::string &prefix) -> int {
    return std::stoi(name.substr(prefix.size()));
  };
  if (name == "ut2-k")
    return ut_n_k(2);
  if (name == "ut2-ku")
    return ut2_ku();
  if (name.rfind("ut", 0) == 0 && name.size() > 3 && name.substr(name.size() - 2) == "-k" &&
      name.find("-g") == std::string::npos) {
    int n = std::stoi(name.substr(2, name.size() - 4));
    return ut_n_k(n);
  }
  if (name.rfind("g", 0) == 0 && name.find('-') == std::string::npos)
    return grassmann_fd(suffix_int("g"));
  if (name.rfind("ut2-g", 0) == 0)
    return ut_n(grassmann_fd(suffix_int("ut2-g")), 2);
  if (name.rfind("m11-g", 0) == 0)
    return grassmann_envelope(m11_superalgebra(), suffix_int("m11-g"));
  if (name.rfind("env(ut2-ku,", 0) == 0 && name.back() == ')') {
    int k = std::stoi(name.substr(11, name.size() - 12));
    return grassmann_envelope(ut2_ku(), k);
  }
  throw std::invalid_argument("unknown builtin algebra: " + name);
}

} // namespace pilab
