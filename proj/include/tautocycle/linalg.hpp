#pragma once

#include <cstdint>
#include <vector>

#include "tautocycle/ring.hpp"

namespace tc {

// sorted by column, no zero entries
using SparseVec = std::vector<std::pair<int, Rat>>;

SparseVec sparse_axpy(const SparseVec& a, const Rat& f, const SparseVec& b);  // a - f*b

// Row echelon form over Q.  Pivot of a row is its smallest column index;
// rows are normalized to leading coefficient 1.
class RowEchelon {
 public:
  explicit RowEchelon(int ncols = 0) : ncols_(ncols) {}

  int ncols() const { return ncols_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseVec>& rows() const { return rows_; }
  std::vector<int> pivots() const;

  SparseVec reduce(SparseVec v) const;
  bool insert(SparseVec v);  // true if v was independent
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  void make_reduced();       // full back substitution
  void sort_rows();          // by pivot
  int pivot_row(int col) const;

 private:
  int ncols_;
  std::vector<SparseVec> rows_;
  std::vector<int> piv_;  // column -> row or -1
  void ensure(int col);
};

// Subspace intersection of two row spaces (same ambient columns).
RowEchelon intersect(const RowEchelon& a, const RowEchelon& b);
// Apply a column permutation: new column = perm[old column].
SparseVec permute(const SparseVec& v, const std::vector<int>& perm);

// ----------------------------------------------------------------- mod p

namespace modp {
constexpr uint64_t P = (uint64_t(1) << 61) - 1;
inline uint64_t add(uint64_t a, uint64_t b) {
  uint64_t r = a + b;
  return r >= P ? r - P : r;
}
inline uint64_t sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + P - b; }
inline uint64_t mul(uint64_t a, uint64_t b) {
  __uint128_t r = static_cast<__uint128_t>(a) * b;
  uint64_t lo = static_cast<uint64_t>(r & P), hi = static_cast<uint64_t>(r >> 61);
  return add(lo, hi);
}
uint64_t inv(uint64_t a);
uint64_t from_long(long long v);
uint64_t from_rat(const Rat& r);
}  // namespace modp

class ModEchelon {
 public:
  explicit ModEchelon(int ncols) : ncols_(ncols), piv_(ncols, -1) {}
  bool insert(std::vector<uint64_t> v);
  int rank() const { return static_cast<int>(rows_.size()); }
  std::vector<int> pivots() const;
  const std::vector<std::vector<uint64_t>>& rows() const { return rows_; }

 private:
  int ncols_;
  std::vector<std::vector<uint64_t>> rows_;
  std::vector<int> piv_;
};

// ------------------------------------------------------- over Q[param]

using PMatrix = std::vector<std::vector<PScalar>>;

// Fraction-free echelon form over Q(A) with rows kept in Q[A], primitive.
class PRowEchelon {
 public:
  explicit PRowEchelon(int ncols = 0) : ncols_(ncols) {}
  bool insert(std::vector<PScalar> v);
  int rank() const { return static_cast<int>(rows_.size()); }
  const PMatrix& rows() const { return rows_; }
  int ncols() const { return ncols_; }

 private:
  int ncols_;
  PMatrix rows_;
  std::vector<int> pivcol_;
};

void make_primitive(std::vector<PScalar>& v);
PScalar pdet(PMatrix m);                  // Bareiss over Q[A]
Rat qdet(std::vector<std::vector<Rat>> m);  // Gaussian elimination over Q
int rank_at(const PMatrix& m, const Rat& a);
// Interpolating polynomial through (xs[i], ys[i]).
PScalar interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

}  // namespace tc
