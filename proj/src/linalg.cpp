#include "pilab/linalg.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace pilab {

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1)
      r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t invmod(uint64_t a, uint64_t p) { return powmod(a % p, p - 2, p); }

bool is_prime_u64(uint64_t n) {
  if (n < 2)
    return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                     29ull, 31ull, 37ull}) {
    if (n % q == 0)
      return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic Miller-Rabin bases for 64-bit integers
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                     29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness)
      return false;
  }
  return true;
}

std::vector<uint64_t> rank_primes(uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> dist(uint64_t(1) << 61,
                                               (uint64_t(1) << 62) - 1);
  std::vector<uint64_t> ps;
  while (static_cast<int>(ps.size()) < count) {
    uint64_t c = dist(rng) | 1;
    if (is_prime_u64(c) && std::find(ps.begin(), ps.end(), c) == ps.end())
      ps.push_back(c);
  }
  return ps;
}

uint64_t rat_mod(const Rat &r, uint64_t p) {
  Int num = numerator(r) % p;
  Int den = denominator(r) % p;
  uint64_t n = static_cast<uint64_t>(num < 0 ? num + p : num);
  uint64_t d = static_cast<uint64_t>(den); // denominators are positive
  if (d == 0)
    throw std::invalid_argument("denominator divisible by the prime");
  return mulmod(n, invmod(d, p), p);
}

// --- ModularEchelon ---------------------------------------------------------

void ModularEchelon::reduce(std::vector<uint64_t> &row) const {
  for (auto &[col, idx] : pivot_of_col_) {
    uint64_t c = row[col];
    if (c == 0)
      continue;
    const auto &pr = rows_[idx];
    // row -= c * pr  (pr normalized with leading 1)
    for (uint32_t j = col; j < ncols_; ++j) {
      if (pr[j] == 0)
        continue;
      uint64_t sub = mulmod(c, pr[j], p_);
      row[j] = row[j] >= sub ? row[j] - sub : row[j] + p_ - sub;
    }
  }
}

int64_t ModularEchelon::insert(std::vector<uint64_t> &row) {
  reduce(row);
  for (uint32_t j = 0; j < ncols_; ++j) {
    if (row[j] == 0)
      continue;
    uint64_t inv = invmod(row[j], p_);
    for (uint32_t t = j; t < ncols_; ++t)
      row[t] = mulmod(row[t], inv, p_);
    pivot_of_col_.emplace(j, rows_.size());
    rows_.push_back(row);
    return j;
  }
  return -1;
}

bool ModularEchelon::reduces_to_zero(std::vector<uint64_t> row) const {
  reduce(row);
  for (uint64_t v : row)
    if (v != 0)
      return false;
  return true;
}

std::vector<uint64_t> ModularEchelon::to_dense(const SparseVec &v) const {
  std::vector<uint64_t> row(ncols_, 0);
  for (auto &[col, c] : v.entries)
    row[col] = rat_mod(c, p_);
  return row;
}

// --- ExactRref --------------------------------------------------------------

std::vector<Rat> ExactRref::reduce(std::vector<Rat> row) const {
  for (auto &[col, idx] : pivot_of_col_) {
    if (row[col] == 0)
      continue;
    Rat c = row[col];
    const auto &pr = rows_[idx];
    for (uint32_t j = col; j < ncols_; ++j)
      if (pr[j] != 0)
        row[j] -= c * pr[j];
  }
  return row;
}

bool ExactRref::in_row_space(const std::vector<Rat> &row) const {
  auto r = reduce(row);
  for (auto &c : r)
    if (c != 0)
      return false;
  return true;
}

bool ExactRref::insert(std::vector<Rat> row) {
  row = reduce(std::move(row));
  for (uint32_t j = 0; j < ncols_; ++j) {
    if (row[j] == 0)
      continue;
    Rat inv = row[j];
    for (uint32_t t = j; t < ncols_; ++t)
      if (row[t] != 0)
        row[t] /= inv;
    // back-substitute to keep reduced form
    for (auto &[col, idx] : pivot_of_col_) {
      auto &pr = rows_[idx];
      if (pr[j] == 0)
        continue;
      Rat c = pr[j];
      for (uint32_t t = j; t < ncols_; ++t)
        if (row[t] != 0)
          pr[t] -= c * row[t];
    }
    pivot_of_col_.emplace(j, rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }
  return false;
}

std::vector<std::vector<Rat>> ExactRref::nullspace_basis() const {
  std::vector<std::vector<Rat>> basis;
  for (uint32_t free_col = 0; free_col < ncols_; ++free_col) {
    if (pivot_of_col_.count(free_col))
      continue;
    std::vector<Rat> v(ncols_, Rat(0));
    v[free_col] = 1;
    for (auto &[col, idx] : pivot_of_col_)
      if (rows_[idx][free_col] != 0)
        v[col] = -rows_[idx][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

// --- StreamingRank ----------------------------------------------------------

StreamingRank::StreamingRank(uint32_t ncols, uint64_t seed, int num_primes)
    : primes_(rank_primes(seed, num_primes)), exact_(ncols) {
  for (uint64_t p : primes_)
    mods_.emplace_back(ncols, p);
}

void StreamingRank::add_row(const SparseVec &row) {
  ++rows_seen_;
  bool survives = false;
  for (auto &m : mods_) {
    if (!m.reduces_to_zero(m.to_dense(row))) {
      survives = true;
      break;
    }
  }
  if (!survives)
    return;
  bool fresh = exact_.insert(sparse_to_dense(row, exact_.ncols()));
  if (fresh) {
    for (auto &m : mods_) {
      auto d = m.to_dense(row);
      m.insert(d);
    }
  }
}

// --- exact_rank -------------------------------------------------------------

std::vector<Rat> sparse_to_dense(const SparseVec &v, uint32_t ncols) {
  std::vector<Rat> d(ncols, Rat(0));
  for (auto &[col, c] : v.entries)
    d[col] = c;
  return d;
}

SparseVec dense_to_sparse(const std::vector<Rat> &v) {
  SparseVec s;
  for (uint32_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      s.entries.emplace_back(i, v[i]);
  return s;
}

RankResult exact_rank(const std::vector<SparseVec> &rows, uint32_t ncols,
                      const RankOptions &opts) {
  RankResult res;
  if (!opts.force_exact) {
    auto primes = rank_primes(opts.seed, opts.num_primes);
    std::vector<uint32_t> ranks;
    std::vector<size_t> pivot_rows; // from the first prime
    for (size_t pi = 0; pi < primes.size(); ++pi) {
      ModularEchelon ech(ncols, primes[pi]);
      for (size_t r = 0; r < rows.size(); ++r) {
        auto d = ech.to_dense(rows[r]);
        if (ech.insert(d) >= 0 && pi == 0)
          pivot_rows.push_back(r);
      }
      ranks.push_back(ech.rank());
    }
    bool agree = std::all_of(ranks.begin(), ranks.end(),
                             [&](uint32_t r) { return r == ranks[0]; });
    if (agree) {
      // exact RREF on the modularly-independent rows for the nullspace
      ExactRref rref(ncols);
      bool consistent = true;
      for (size_t r : pivot_rows)
        if (!rref.insert(sparse_to_dense(rows[r], ncols))) {
          consistent = false; // unlucky prime; fall through to exact path
          break;
        }
      if (consistent && rref.rank() == ranks[0]) {
        res.rank = ranks[0];
        res.nullspace = rref.nullspace_basis();
        res.certificate_primes = primes;
        return res;
      }
    }
  }
  ExactRref rref(ncols);
  for (auto &r : rows)
    rref.insert(sparse_to_dense(r, ncols));
  res.rank = rref.rank();
  res.nullspace = rref.nullspace_basis();
  res.exact = true;
  return res;
}

} // namespace pilab
