#pragma once

#include "pilab/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace pilab {

// Sign of e_A * e_B for disjoint generator subsets: parity of
// #{(i,j) : i in A, j in B, i > j}. Masked-prefix popcounts, one word.
inline int subset_merge_sign(uint64_t a, uint64_t b) {
  int inversions = 0;
  while (b) {
    uint64_t low = b & (~b + 1); // lowest set bit of b
    inversions += __builtin_popcountll(a & ~(low - 1) & ~low);
    b ^= low;
  }
  return (inversions & 1) ? -1 : 1;
}

// Element of the Grassmann algebra G^(k) on generators e_1..e_k.
// Terms map generator subsets (bitmask over bits 0..k-1) to coefficients.
class GrassmannElement {
public:
  explicit GrassmannElement(int rank = 0) : rank_(rank) {}
  static GrassmannElement basis(int rank, uint64_t mask);
  static GrassmannElement generator(int rank, int i); // e_i, 1-based

  int rank() const { return rank_; }
  const std::map<uint64_t, Rat> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(uint64_t mask, const Rat &c);

  GrassmannElement operator+(const GrassmannElement &o) const;
  GrassmannElement operator-(const GrassmannElement &o) const;
  GrassmannElement operator*(const GrassmannElement &o) const;
  GrassmannElement operator*(const Rat &c) const;
  bool operator==(const GrassmannElement &o) const {
    return rank_ == o.rank_ && terms_ == o.terms_;
  }

  // Homogeneous parity if all terms have subsets of equal parity; -1 if mixed
  // or zero.
  int homogeneous_parity() const;

  std::string to_string() const; // e.g. "2*e{1,3} - e{}"

private:
  int rank_;
  std::map<uint64_t, Rat> terms_;
};

GrassmannElement parse_grassmann(const std::string &text, int rank);

// Bases of the even/odd parts of G^(k), masks in increasing order.
struct EnvelopeBasis {
  std::vector<uint64_t> even;
  std::vector<uint64_t> odd;
};
EnvelopeBasis envelope_basis(int rank);

// --- Free supercommutative algebra K[X;Y] ----------------------------------

// Canonical monomial: commuting X-part as a sorted exponent list, Y-part as a
// strictly ascending index list (anticommuting, square-zero).
struct SuperMono {
  std::vector<std::pair<uint32_t, uint32_t>> xpart; // (var, exp), var ascending
  std::vector<uint32_t> ypart;                      // strictly ascending

  auto operator<=>(const SuperMono &) const = default;
};

class SuperPoly {
public:
  SuperPoly() = default;
  static SuperPoly one();
  static SuperPoly x(uint32_t i);
  static SuperPoly y(uint32_t i);

  const std::map<SuperMono, Rat> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const SuperMono &m, const Rat &c);

  SuperPoly operator+(const SuperPoly &o) const;
  SuperPoly operator-(const SuperPoly &o) const;
  SuperPoly operator*(const SuperPoly &o) const;
  SuperPoly operator*(const Rat &c) const;
  bool operator==(const SuperPoly &o) const { return terms_ == o.terms_; }

  std::string to_string() const;

private:
  std::map<SuperMono, Rat> terms_;
};

} // namespace pilab
