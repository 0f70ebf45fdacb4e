#pragma once

#include "pilab/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace pilab {

// Sparse row over Q, entries sorted by column index, no zero coefficients.
struct SparseVec {
  std::vector<std::pair<uint32_t, Rat>> entries;
};

// --- Modular arithmetic -----------------------------------------------------

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);
uint64_t invmod(uint64_t a, uint64_t p);
bool is_prime_u64(uint64_t n);

// Deterministic primes near 2^62, drawn from a seeded PRNG.
std::vector<uint64_t> rank_primes(uint64_t seed, int count);

// Rat reduced mod p; denominator must be invertible (p is huge, so it is).
uint64_t rat_mod(const Rat &r, uint64_t p);

// --- Streaming echelon over Z_p --------------------------------------------

// Row echelon maintained incrementally for one prime. Dense rows.
class ModularEchelon {
public:
  ModularEchelon(uint32_t ncols, uint64_t p) : ncols_(ncols), p_(p) {}

  // Reduces the row in place; returns pivot column if it extends the rank,
  // or -1 if the row reduced to zero.
  int64_t insert(std::vector<uint64_t> &row);
  // Reduce without inserting; true iff the row lies in the row space.
  bool reduces_to_zero(std::vector<uint64_t> row) const;

  uint32_t rank() const { return static_cast<uint32_t>(pivot_of_col_.size()); }
  uint64_t prime() const { return p_; }
  std::vector<uint64_t> to_dense(const SparseVec &v) const;

private:
  uint32_t ncols_;
  uint64_t p_;
  std::vector<std::vector<uint64_t>> rows_; // normalized: leading entry 1
  std::map<uint32_t, size_t> pivot_of_col_;
  void reduce(std::vector<uint64_t> &row) const;
};

// --- Exact reduced row echelon over Q ---------------------------------------

class ExactRref {
public:
  explicit ExactRref(uint32_t ncols) : ncols_(ncols) {}

  // Fully reduce and insert; returns false if the row reduced to zero.
  bool insert(std::vector<Rat> row);
  std::vector<Rat> reduce(std::vector<Rat> row) const;
  bool in_row_space(const std::vector<Rat> &row) const;

  uint32_t rank() const { return static_cast<uint32_t>(rows_.size()); }
  uint32_t ncols() const { return ncols_; }
  const std::vector<std::vector<Rat>> &rows() const { return rows_; }
  const std::map<uint32_t, size_t> &pivots() const { return pivot_of_col_; }

  // Nullspace of the row space viewed as a matrix: one basis vector per free
  // column, in increasing column order.
  std::vector<std::vector<Rat>> nullspace_basis() const;

private:
  uint32_t ncols_;
  std::vector<std::vector<Rat>> rows_;
  std::map<uint32_t, size_t> pivot_of_col_;
};

// --- Combined streaming rank with modular filter ----------------------------

// Accepts a stream of sparse rows. Each row is first reduced modulo several
// primes; rows that vanish modulo every prime are discarded (they are in the
// row space with probability 1 - O(2^-120)), rows that survive are inserted
// exactly. The exact echelon is the ground truth; the primes act as a cheap
// rejection filter and their agreement is the certificate for discarded rows.
class StreamingRank {
public:
  StreamingRank(uint32_t ncols, uint64_t seed, int num_primes = 2);

  void add_row(const SparseVec &row);
  uint64_t rows_seen() const { return rows_seen_; }
  uint32_t rank() const { return exact_.rank(); }
  const ExactRref &exact() const { return exact_; }
  const std::vector<uint64_t> &primes() const { return primes_; }

private:
  std::vector<uint64_t> primes_;
  std::vector<ModularEchelon> mods_;
  ExactRref exact_;
  uint64_t rows_seen_ = 0;
};

// --- One-shot exact rank ----------------------------------------------------

struct RankResult {
  uint32_t rank = 0;
  std::vector<std::vector<Rat>> nullspace;
  std::vector<uint64_t> certificate_primes; // empty when exact elimination ran
  bool exact = false;
};

// Strategy per options: ranks modulo num_primes independent primes; if they
// agree the modular rank is accepted with a certificate. With force_exact (or
// on disagreement) exact elimination decides. The nullspace basis is always
// exact; when the modular and exact ranks disagree the exact one wins.
struct RankOptions {
  uint64_t seed = 1;
  int num_primes = 2;
  bool force_exact = false;
};

RankResult exact_rank(const std::vector<SparseVec> &rows, uint32_t ncols,
                      const RankOptions &opts = {});

std::vector<Rat> sparse_to_dense(const SparseVec &v, uint32_t ncols);
SparseVec dense_to_sparse(const std::vector<Rat> &v);

} // namespace pilab
