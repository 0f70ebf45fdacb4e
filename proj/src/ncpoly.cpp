#include "pilab/ncpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pilab {

NcPoly NcPoly::var(uint32_t i) {
  if (i == 0)
    throw std::invalid_argument("variable indices start at 1");
  return monomial(Word{{i}}, 1);
}

NcPoly NcPoly::monomial(Word w, Rat c) {
  NcPoly p;
  if (c != 0)
    p.terms_.emplace(std::move(w), std::move(c));
  return p;
}

int NcPoly::degree() const {
  if (terms_.empty())
    return -1;
  // WordLess is length-first, so the last term has maximal length
  return static_cast<int>(terms_.rbegin()->first.degree());
}

Rat NcPoly::coeff(const Word &w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rat(0) : it->second;
}

std::set<uint32_t> NcPoly::variables() const {
  std::set<uint32_t> vs;
  for (auto &[w, c] : terms_)
    vs.insert(w.letters.begin(), w.letters.end());
  return vs;
}

void NcPoly::add_term(const Word &w, const Rat &c) {
  if (c == 0)
    return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

NcPoly NcPoly::operator+(const NcPoly &o) const {
  NcPoly r(*this);
  r += o;
  return r;
}

NcPoly &NcPoly::operator+=(const NcPoly &o) {
  for (auto &[w, c] : o.terms_)
    add_term(w, c);
  return *this;
}

NcPoly NcPoly::operator-(const NcPoly &o) const {
  NcPoly r(*this);
  r -= o;
  return r;
}

NcPoly &NcPoly::operator-=(const NcPoly &o) {
  for (auto &[w, c] : o.terms_)
    add_term(w, -c);
  return *this;
}

NcPoly NcPoly::operator-() const {
  NcPoly r;
  for (auto &[w, c] : terms_)
    r.terms_.emplace(w, -c);
  return r;
}

NcPoly NcPoly::operator*(const NcPoly &o) const {
  NcPoly r;
  for (auto &[w1, c1] : terms_)
    for (auto &[w2, c2] : o.terms_)
      r.add_term(w1 * w2, c1 * c2);
  return r;
}

NcPoly NcPoly::operator*(const Rat &c) const {
  NcPoly r;
  if (c == 0)
    return r;
  for (auto &[w, k] : terms_)
    r.terms_.emplace(w, k * c);
  return r;
}

NcPoly operator*(const Rat &c, const NcPoly &p) { return p * c; }

std::string NcPoly::to_string() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (auto &[w, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0)
        a = -a;
    }
    first = false;
    bool unit_coeff = (a == 1) && !w.empty();
    if (!unit_coeff)
      os << rat_to_string(a);
    for (size_t i = 0; i < w.letters.size(); ++i) {
      if (i > 0 || !unit_coeff)
        os << "*";
      os << "x" << w.letters[i];
    }
  }
  return os.str();
}

NcPoly commutator(std::span<const NcPoly> args) {
  if (args.size() < 2)
    throw std::invalid_argument("commutator needs at least 2 arguments");
  NcPoly acc = args[0];
  for (size_t i = 1; i < args.size(); ++i)
    acc = acc * args[i] - args[i] * acc;
  return acc;
}

NcPoly commutator(std::initializer_list<NcPoly> args) {
  return commutator(std::span<const NcPoly>(args.begin(), args.size()));
}

NcPoly substitute(const NcPoly &f, const std::map<uint32_t, NcPoly> &images) {
  NcPoly r;
  for (auto &[w, c] : f.terms()) {
    NcPoly prod = NcPoly::one() * c;
    for (uint32_t v : w.letters) {
      auto it = images.find(v);
      if (it == images.end())
        throw std::invalid_argument("substitute: no image for x" +
                                    std::to_string(v));
      prod = prod * it->second;
    }
    r += prod;
  }
  return r;
}

NcPoly MultilinearPoly::to_ncpoly() const {
  NcPoly p;
  for (auto &[perm, c] : coeffs)
    p.add_term(Word{perm}, c);
  return p;
}

MultilinearPoly MultilinearPoly::operator-(const MultilinearPoly &o) const {
  if (degree != o.degree)
    throw std::invalid_argument("degree mismatch");
  MultilinearPoly r{degree, coeffs};
  for (auto &[p, c] : o.coeffs) {
    auto [it, fresh] = r.coeffs.emplace(p, -c);
    if (!fresh) {
      it->second -= c;
      if (it->second == 0)
        r.coeffs.erase(it);
    }
  }
  return r;
}

static bool is_perm_of_1n(const std::vector<uint32_t> &w, uint32_t n) {
  if (w.size() != n)
    return false;
  uint32_t seen = 0; // n <= 20 in practice; bitmask is enough
  if (n > 31)
    throw std::invalid_argument("multilinear degree too large");
  for (uint32_t v : w) {
    if (v < 1 || v > n)
      return false;
    if (seen & (1u << v))
      return false;
    seen |= 1u << v;
  }
  return true;
}

MultilinearPoly multilinear_part(const NcPoly &f, uint32_t n) {
  MultilinearPoly m;
  m.degree = n;
  for (auto &[w, c] : f.terms())
    if (is_perm_of_1n(w.letters, n))
      m.coeffs.emplace(w.letters, c);
  return m;
}

MultilinearPoly as_multilinear(const NcPoly &f, uint32_t n) {
  for (auto &[w, c] : f.terms())
    if (!is_perm_of_1n(w.letters, n))
      throw std::invalid_argument("polynomial is not multilinear in x1..x" +
                                  std::to_string(n));
  return multilinear_part(f, n);
}

uint64_t factorial(uint32_t n) {
  uint64_t r = 1;
  for (uint32_t i = 2; i <= n; ++i)
    r *= i;
  return r;
}

uint64_t perm_rank(const std::vector<uint32_t> &perm) {
  const size_t n = perm.size();
  uint64_t rank = 0;
  for (size_t i = 0; i < n; ++i) {
    uint32_t smaller = 0;
    for (size_t j = i + 1; j < n; ++j)
      if (perm[j] < perm[i])
        ++smaller;
    rank += smaller * factorial(static_cast<uint32_t>(n - 1 - i));
  }
  return rank;
}

std::vector<uint32_t> perm_unrank(uint64_t rank, uint32_t n) {
  std::vector<uint32_t> pool(n);
  for (uint32_t i = 0; i < n; ++i)
    pool[i] = i + 1;
  std::vector<uint32_t> perm;
  perm.reserve(n);
  for (uint32_t i = n; i > 0; --i) {
    uint64_t f = factorial(i - 1);
    size_t idx = static_cast<size_t>(rank / f);
    rank %= f;
    perm.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<long>(idx));
  }
  return perm;
}

} // namespace pilab
