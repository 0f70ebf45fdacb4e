#pragma once

#include "pilab/rational.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace pilab {

// A word in the free monoid on variables x1, x2, ... (indices >= 1).
// The empty word is the multiplicative unit.
struct Word {
  std::vector<uint32_t> letters;

  Word() = default;
  explicit Word(std::vector<uint32_t> ls) : letters(std::move(ls)) {}

  size_t degree() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  Word operator*(const Word &o) const {
    Word r(letters);
    r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
    return r;
  }

  bool operator==(const Word &o) const { return letters == o.letters; }
};

// Length-then-lexicographic order; fixes deterministic iteration everywhere.
struct WordLess {
  bool operator()(const Word &a, const Word &b) const {
    if (a.letters.size() != b.letters.size())
      return a.letters.size() < b.letters.size();
    return a.letters < b.letters;
  }
};

// Sparse rational linear combination of words: an element of K<X>.
class NcPoly {
public:
  using TermMap = std::map<Word, Rat, WordLess>;

  NcPoly() = default;

  static NcPoly zero() { return NcPoly(); }
  static NcPoly one() { return monomial(Word{}, 1); }
  static NcPoly var(uint32_t i);
  static NcPoly monomial(Word w, Rat c);

  const TermMap &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  // max word length, -1 for the zero polynomial
  int degree() const;

  Rat coeff(const Word &w) const;
  std::set<uint32_t> variables() const;

  void add_term(const Word &w, const Rat &c);

  NcPoly operator+(const NcPoly &o) const;
  NcPoly operator-(const NcPoly &o) const;
  NcPoly operator-() const;
  NcPoly operator*(const NcPoly &o) const;
  NcPoly &operator+=(const NcPoly &o);
  NcPoly &operator-=(const NcPoly &o);
  NcPoly operator*(const Rat &c) const;

  bool operator==(const NcPoly &o) const { return terms_ == o.terms_; }

  std::string to_string() const;

private:
  TermMap terms_; // invariant: no zero coefficients
};

NcPoly operator*(const Rat &c, const NcPoly &p);

// Left-normed iterated commutator [[...[a1,a2],a3]...,ak]; needs >= 2 args.
NcPoly commutator(std::span<const NcPoly> args);
NcPoly commutator(std::initializer_list<NcPoly> args);

// Algebra endomorphism determined by variable images. Every variable of f
// must have an image.
NcPoly substitute(const NcPoly &f, const std::map<uint32_t, NcPoly> &images);

// --- Multilinear component -------------------------------------------------

// Element of P_n: linear combination of the n! monomials x_{s(1)}..x_{s(n)}.
// Keys are the permutations s, stored as the letter sequence (s(1),...,s(n)).
struct MultilinearPoly {
  uint32_t degree = 0;
  std::map<std::vector<uint32_t>, Rat> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  NcPoly to_ncpoly() const;
  MultilinearPoly operator-(const MultilinearPoly &o) const;
  bool operator==(const MultilinearPoly &o) const {
    return degree == o.degree && coeffs == o.coeffs;
  }
};

// Keeps exactly the words of f that are permutations of x_1..x_n.
MultilinearPoly multilinear_part(const NcPoly &f, uint32_t n);

// Exact conversion: every word of f must be a permutation of 1..n.
MultilinearPoly as_multilinear(const NcPoly &f, uint32_t n);

// Lexicographic rank of a permutation of {1..n} among all n! of them.
uint64_t perm_rank(const std::vector<uint32_t> &perm);
std::vector<uint32_t> perm_unrank(uint64_t rank, uint32_t n);
uint64_t factorial(uint32_t n);

} // namespace pilab
