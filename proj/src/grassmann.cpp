#include "pilab/grassmann.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pilab {

GrassmannElement GrassmannElement::basis(int rank, uint64_t mask) {
  GrassmannElement g(rank);
  if (rank < 0 || rank > 62)
    throw std::invalid_argument("grassmann rank out of range");
  if (mask >> rank)
    throw std::invalid_argument("subset exceeds rank");
  g.terms_.emplace(mask, 1);
  return g;
}

GrassmannElement GrassmannElement::generator(int rank, int i) {
  if (i < 1 || i > rank)
    throw std::invalid_argument("generator index out of range");
  return basis(rank, uint64_t(1) << (i - 1));
}

void GrassmannElement::add_term(uint64_t mask, const Rat &c) {
  if (c == 0)
    return;
  auto [it, fresh] = terms_.emplace(mask, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

GrassmannElement GrassmannElement::operator+(const GrassmannElement &o) const {
  if (rank_ != o.rank_)
    throw std::invalid_argument("grassmann rank mismatch");
  GrassmannElement r(*this);
  for (auto &[m, c] : o.terms_)
    r.add_term(m, c);
  return r;
}

GrassmannElement GrassmannElement::operator-(const GrassmannElement &o) const {
  if (rank_ != o.rank_)
    throw std::invalid_argument("grassmann rank mismatch");
  GrassmannElement r(*this);
  for (auto &[m, c] : o.terms_)
    r.add_term(m, -c);
  return r;
}

GrassmannElement GrassmannElement::operator*(const GrassmannElement &o) const {
  if (rank_ != o.rank_)
    throw std::invalid_argument("grassmann rank mismatch");
  GrassmannElement r(rank_);
  for (auto &[a, ca] : terms_)
    for (auto &[b, cb] : o.terms_) {
      if (a & b)
        continue;
      Rat c = ca * cb;
      if (subset_merge_sign(a, b) < 0)
        c = -c;
      r.add_term(a | b, c);
    }
  return r;
}

GrassmannElement GrassmannElement::operator*(const Rat &c) const {
  GrassmannElement r(rank_);
  if (c == 0)
    return r;
  for (auto &[m, k] : terms_)
    r.terms_.emplace(m, k * c);
  return r;
}

int GrassmannElement::homogeneous_parity() const {
  int parity = -1;
  for (auto &[m, c] : terms_) {
    int p = __builtin_popcountll(m) & 1;
    if (parity == -1)
      parity = p;
    else if (parity != p)
      return -1;
  }
  return parity;
}

std::string GrassmannElement::to_string() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (auto &[m, c] : terms_) {
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
    if (a != 1 || m == 0)
      os << rat_to_string(a);
    if (m != 0) {
      if (a != 1)
        os << "*";
      os << "e{";
      bool f2 = true;
      for (int i = 0; i < 64; ++i)
        if (m & (uint64_t(1) << i)) {
          if (!f2)
            os << ",";
          f2 = false;
          os << (i + 1);
        }
      os << "}";
    }
  }
  return os.str();
}

GrassmannElement parse_grassmann(const std::string &text, int rank) {
  GrassmannElement r(rank);
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size())
      break;
    Rat sign = 1;
    if (text[pos] == '+') {
      ++pos;
    } else if (text[pos] == '-') {
      sign = -1;
      ++pos;
    } else if (!first) {
      throw std::invalid_argument("expected '+' or '-' in grassmann literal");
    }
    first = false;
    skip();
    Rat coeff = 1;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
        ++pos;
      coeff = rat_from_string(text.substr(start, pos - start));
      skip();
      if (pos < text.size() && text[pos] == '*')
        ++pos, skip();
    }
    uint64_t mask = 0;
    if (pos < text.size() && text[pos] == 'e') {
      ++pos;
      if (pos >= text.size() || text[pos] != '{')
        throw std::invalid_argument("expected '{' after 'e'");
      ++pos;
      while (true) {
        skip();
        if (pos < text.size() && text[pos] == '}') {
          ++pos;
          break;
        }
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
        if (start == pos)
          throw std::invalid_argument("expected generator index");
        int i = std::stoi(text.substr(start, pos - start));
        if (i < 1 || i > rank)
          throw std::invalid_argument("generator index out of range");
        mask |= uint64_t(1) << (i - 1);
        skip();
        if (pos < text.size() && text[pos] == ',')
          ++pos;
      }
    }
    r.add_term(mask, sign * coeff);
  }
  if (first)
    throw std::invalid_argument("empty grassmann literal");
  return r;
}

EnvelopeBasis envelope_basis(int rank) {
  if (rank < 0 || rank > 30)
    throw std::invalid_argument("rank out of range");
  EnvelopeBasis b;
  for (uint64_t m = 0; m < (uint64_t(1) << rank); ++m)
    ((__builtin_popcountll(m) & 1) ? b.odd : b.even).push_back(m);
  return b;
}

// --- SuperPoly --------------------------------------------------------------

SuperPoly SuperPoly::one() {
  SuperPoly p;
  p.terms_.emplace(SuperMono{}, 1);
  return p;
}

SuperPoly SuperPoly::x(uint32_t i) {
  SuperPoly p;
  p.terms_.emplace(SuperMono{{{i, 1}}, {}}, 1);
  return p;
}

SuperPoly SuperPoly::y(uint32_t i) {
  SuperPoly p;
  p.terms_.emplace(SuperMono{{}, {i}}, 1);
  return p;
}

void SuperPoly::add_term(const SuperMono &m, const Rat &c) {
  if (c == 0)
    return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

SuperPoly SuperPoly::operator+(const SuperPoly &o) const {
  SuperPoly r(*this);
  for (auto &[m, c] : o.terms_)
    r.add_term(m, c);
  return r;
}

SuperPoly SuperPoly::operator-(const SuperPoly &o) const {
  SuperPoly r(*this);
  for (auto &[m, c] : o.terms_)
    r.add_term(m, -c);
  return r;
}

namespace {

// Merge two ascending y-lists; zero on a repeat, sign = parity of the merge
// permutation. Returns {ok, sign}.
std::pair<bool, int> merge_ys(const std::vector<uint32_t> &a,
                              const std::vector<uint32_t> &b,
                              std::vector<uint32_t> &out) {
  out.clear();
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  int inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j])
      return {false, 0};
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      // b[j] jumps over the remaining a-letters
      inversions += static_cast<int>(a.size() - i);
      out.push_back(b[j++]);
    }
  }
  while (i < a.size())
    out.push_back(a[i++]);
  while (j < b.size())
    out.push_back(b[j++]);
  return {true, (inversions & 1) ? -1 : 1};
}

void merge_xs(const std::vector<std::pair<uint32_t, uint32_t>> &a,
              const std::vector<std::pair<uint32_t, uint32_t>> &b,
              std::vector<std::pair<uint32_t, uint32_t>> &out) {
  out.clear();
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first)
      out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
}

} // namespace

SuperPoly SuperPoly::operator*(const SuperPoly &o) const {
  SuperPoly r;
  SuperMono m;
  for (auto &[a, ca] : terms_)
    for (auto &[b, cb] : o.terms_) {
      auto [ok, sign] = merge_ys(a.ypart, b.ypart, m.ypart);
      if (!ok)
        continue;
      merge_xs(a.xpart, b.xpart, m.xpart);
      r.add_term(m, sign < 0 ? Rat(-ca * cb) : Rat(ca * cb));
    }
  return r;
}

SuperPoly SuperPoly::operator*(const Rat &c) const {
  SuperPoly r;
  if (c == 0)
    return r;
  for (auto &[m, k] : terms_)
    r.terms_.emplace(m, k * c);
  return r;
}

std::string SuperPoly::to_string() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (auto &[m, c] : terms_) {
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
    std::ostringstream body;
    bool any = false;
    for (auto &[v, e] : m.xpart) {
      if (any)
        body << "*";
      any = true;
      body << "x" << v;
      if (e > 1)
        body << "^" << e;
    }
    for (auto v : m.ypart) {
      if (any)
        body << "*";
      any = true;
      body << "y" << v;
    }
    if (a != 1 || !any) {
      os << rat_to_string(a);
      if (any)
        os << "*";
    }
    os << body.str();
  }
  return os.str();
}

} // namespace pilab
