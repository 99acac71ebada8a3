#include "tautocycle/linalg.hpp"

#include <algorithm>

namespace tc {

SparseVec sparse_axpy(const SparseVec& a, const Rat& f, const SparseVec& b) {
  SparseVec r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.emplace_back(b[j].first, -f * b[j].second);
      ++j;
    } else {
      Rat v = a[i].second - f * b[j].second;
      if (v != 0) r.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return r;
}

void RowEchelon::ensure(int col) {
  if (col >= static_cast<int>(piv_.size())) piv_.resize(std::max(col + 1, ncols_), -1);
}

int RowEchelon::pivot_row(int col) const {
  return col < static_cast<int>(piv_.size()) ? piv_[col] : -1;
}

std::vector<int> RowEchelon::pivots() const {
  std::vector<int> p;
  for (auto& r : rows_) p.push_back(r[0].first);
  return p;
}

SparseVec RowEchelon::reduce(SparseVec work) const {
  SparseVec out;
  size_t i = 0;
  while (i < work.size()) {
    int r = pivot_row(work[i].first);
    if (r < 0) {
      out.push_back(std::move(work[i]));
      ++i;
      continue;
    }
    Rat f = work[i].second;
    SparseVec tail(std::make_move_iterator(work.begin() + i),
                   std::make_move_iterator(work.end()));
    work = sparse_axpy(tail, f, rows_[r]);
    i = 0;
  }
  return out;
}

bool RowEchelon::insert(SparseVec v) {
  SparseVec r = reduce(std::move(v));
  if (r.empty()) return false;
  Rat lead = r[0].second;
  if (lead != 1)
    for (auto& e : r) e.second /= lead;
  ensure(r[0].first);
  piv_[r[0].first] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

void RowEchelon::sort_rows() {
  std::sort(rows_.begin(), rows_.end(),
            [](const SparseVec& a, const SparseVec& b) { return a[0].first < b[0].first; });
  std::fill(piv_.begin(), piv_.end(), -1);
  for (int i = 0; i < rank(); ++i) piv_[rows_[i][0].first] = i;
}

void RowEchelon::make_reduced() {
  sort_rows();
  for (int i = rank() - 1; i >= 0; --i) {
    SparseVec& row = rows_[i];
    if (row.size() == 1) continue;
    SparseVec tail(row.begin() + 1, row.end());
    SparseVec red = reduce(std::move(tail));
    SparseVec nr;
    nr.reserve(red.size() + 1);
    nr.push_back(row[0]);
    for (auto& e : red) nr.push_back(std::move(e));
    row = std::move(nr);
  }
}

RowEchelon intersect(const RowEchelon& a, const RowEchelon& b) {
  int n = std::max(a.ncols(), b.ncols());
  int k = a.rank();
  RowEchelon aug(n + k);
  for (int j = 0; j < k; ++j) {
    SparseVec r = b.reduce(a.rows()[j]);
    r.emplace_back(n + j, Rat(1));
    aug.insert(std::move(r));
  }
  RowEchelon out(n);
  for (auto& row : aug.rows()) {
    if (row[0].first < n) continue;
    SparseVec acc;
    for (auto& [c, v] : row) acc = sparse_axpy(acc, -v, a.rows()[c - n]);
    out.insert(std::move(acc));
  }
  return out;
}

SparseVec permute(const SparseVec& v, const std::vector<int>& perm) {
  SparseVec r;
  r.reserve(v.size());
  for (auto& [c, x] : v) r.emplace_back(perm[c], x);
  std::sort(r.begin(), r.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return r;
}

// ----------------------------------------------------------------- mod p

namespace modp {
uint64_t inv(uint64_t a) {
  uint64_t r = 1, b = a, e = P - 2;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

uint64_t from_long(long long v) {
  if (v >= 0) return static_cast<uint64_t>(v) % P;
  return sub(0, static_cast<uint64_t>(-v) % P);
}

uint64_t from_rat(const Rat& r) {
  Int num = r.get_num() % Int(std::to_string(P));
  if (num < 0) num += Int(std::to_string(P));
  Int den = r.get_den() % Int(std::to_string(P));
  uint64_t n = std::stoull(num.get_str()), d = std::stoull(den.get_str());
  if (d == 0) throw Error("linalg.modp", "denominator divisible by the prime");
  return mul(n, inv(d));
}
}  // namespace modp

bool ModEchelon::insert(std::vector<uint64_t> v) {
  for (int c = 0; c < ncols_; ++c) {
    if (!v[c]) continue;
    int r = piv_[c];
    if (r < 0) {
      uint64_t iv = modp::inv(v[c]);
      for (int j = c; j < ncols_; ++j) v[j] = modp::mul(v[j], iv);
      piv_[c] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(v));
      return true;
    }
    uint64_t f = v[c];
    const auto& row = rows_[r];
    for (int j = c; j < ncols_; ++j)
      if (row[j]) v[j] = modp::sub(v[j], modp::mul(f, row[j]));
  }
  return false;
}

std::vector<int> ModEchelon::pivots() const {
  std::vector<int> p;
  for (int c = 0; c < ncols_; ++c)
    if (piv_[c] >= 0) p.push_back(c);
  return p;
}

// ------------------------------------------------------- over Q[param]

void make_primitive(std::vector<PScalar>& v) {
  PScalar g;
  for (auto& e : v) {
    if (e.is_zero()) continue;
    g = g.is_zero() ? e.monic() : gcd(g, e);
    if (g.degree() == 0) break;
  }
  if (g.is_zero()) return;
  if (g.degree() > 0)
    for (auto& e : v)
      if (!e.is_zero()) e = divexact(e, g);
  for (auto& e : v) {
    if (e.is_zero()) continue;
    Rat l = e.lead();
    if (l != 1)
      for (auto& x : v)
        for (auto& c : x.c) c /= l;
    break;
  }
}

bool PRowEchelon::insert(std::vector<PScalar> v) {
  for (size_t i = 0; i < rows_.size(); ++i) {
    int c = pivcol_[i];
    if (v[c].is_zero()) continue;
    PScalar a = rows_[i][c], b = v[c];
    for (int j = 0; j < ncols_; ++j) {
      if (v[j].is_zero() && rows_[i][j].is_zero()) continue;
      v[j] = a * v[j] - b * rows_[i][j];
    }
    make_primitive(v);
  }
  int p = -1;
  for (int j = 0; j < ncols_; ++j)
    if (!v[j].is_zero()) {
      p = j;
      break;
    }
  if (p < 0) return false;
  make_primitive(v);
  rows_.push_back(std::move(v));
  pivcol_.push_back(p);
  return true;
}

PScalar pdet(PMatrix m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return PScalar(1);
  PScalar prev(1);
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (!m[i][k].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return PScalar();
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

Rat qdet(std::vector<std::vector<Rat>> m) {
  int n = static_cast<int>(m.size());
  Rat det = 1;
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (m[i][k] != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (int i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      Rat f = m[i][k] / m[k][k];
      for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

int rank_at(const PMatrix& m, const Rat& a) {
  int nc = m.empty() ? 0 : static_cast<int>(m[0].size());
  RowEchelon e(nc);
  for (auto& row : m) {
    SparseVec v;
    for (int j = 0; j < nc; ++j) {
      Rat x = row[j].eval(a);
      if (x != 0) v.emplace_back(j, x);
    }
    e.insert(std::move(v));
  }
  return e.rank();
}

PScalar interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  int m = static_cast<int>(xs.size());
  std::vector<Rat> dd = ys;
  for (int j = 1; j < m; ++j)
    for (int i = m - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  PScalar p(dd[m - 1]);
  for (int i = m - 2; i >= 0; --i) {
    PScalar lin;
    lin.c = {-xs[i], Rat(1)};
    p = p * lin + PScalar(dd[i]);
  }
  return p;
}

}  // namespace tc
