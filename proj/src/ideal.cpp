#include "tautocycle/ideal.hpp"

#include <algorithm>
#include <numeric>

namespace tc {

GradedIdeal GradedIdeal::parse(const RingSpec& r, const std::vector<std::string>& gens,
                               const std::string& tag) {
  r.validate();
  if (gens.empty()) throw Error("ideal.empty", "an ideal needs at least one generator");
  GradedIdeal I;
  I.ring = r;
  I.tag = tag;
  for (auto& g : gens) {
    ParamForm f = parse_form(g, r);
    if (!f.is_zero()) I.gens.push_back(std::move(f));
  }
  if (I.gens.empty()) throw Error("ideal.empty", "all generators are zero");
  return I;
}

GradedIdeal GradedIdeal::from_monomials(const RingSpec& r, const std::vector<Monomial>& ms,
                                        const std::string& tag) {
  GradedIdeal I;
  I.ring = r;
  I.tag = tag;
  for (auto& m : ms) I.gens.push_back(ParamForm::monomial(r, m));
  return I;
}

bool GradedIdeal::param_free() const {
  for (auto& g : gens)
    if (!g.param_free()) return false;
  return true;
}

bool GradedIdeal::is_monomial() const {
  for (auto& g : gens)
    if (!g.is_monomial()) return false;
  return true;
}

int GradedIdeal::max_gen_degree() const {
  int d = 0;
  for (auto& g : gens) d = std::max(d, g.degree);
  return d;
}

std::vector<Monomial> GradedIdeal::monomial_gens() const {
  std::vector<Monomial> out;
  for (auto& g : gens) {
    if (!g.is_monomial()) throw Error("ideal.non_monomial", "ideal is not monomial");
    out.push_back(g.terms.begin()->first);
  }
  return out;
}

GradedIdeal GradedIdeal::specialize(const Rat& a) const {
  GradedIdeal J = *this;
  J.gens.clear();
  for (auto& g : gens) {
    ParamForm f = g.specialize(a);
    if (!f.is_zero()) J.gens.push_back(std::move(f));
  }
  for (auto& p : J.parts) p = p.specialize(a);
  return J;
}

std::vector<std::string> GradedIdeal::gen_strings() const {
  std::vector<std::string> out;
  for (auto& g : gens) out.push_back(g.str());
  return out;
}

// ------------------------------------------------------------ conversions

SparseVec form_to_vec(const ParamForm& f) {
  int nv = f.ring.nvars();
  SparseVec v;
  for (auto& [m, s] : f.terms) {
    if (!s.is_const()) throw Error("ideal.parametric", "form depends on the parameter");
    v.emplace_back(mono_index(nv, m), s.constant());
  }
  std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return v;
}

ParamForm vec_to_form(const RingSpec& r, int n, const SparseVec& v) {
  const auto& ms = monomials(r.nvars(), n);
  ParamForm f(r, n);
  for (auto& [c, x] : v) f.add_term(ms[c], PScalar(x));
  return f;
}

std::vector<ParamForm> QSlice::forms(const RingSpec& r) const {
  std::vector<ParamForm> out;
  for (auto& row : basis.rows()) out.push_back(vec_to_form(r, n, row));
  return out;
}

PMatrix DegreePiece::full_rows() const {
  int N = basis.ncols();
  PMatrix out;
  for (int c : unit_cols) {
    std::vector<PScalar> row(N);
    row[c] = PScalar(1);
    out.push_back(std::move(row));
  }
  for (auto& r : basis.rows()) out.push_back(r);
  return out;
}

// ---------------------------------------------------------------- slices

namespace {

std::vector<char> unit_mask(const GradedIdeal& I, int n) {
  int nv = I.nvars();
  std::vector<char> unit(num_monomials(nv, n), 0);
  for (auto& g : I.gens) {
    if (!g.is_monomial() || g.degree > n) continue;
    const Monomial& m0 = g.terms.begin()->first;
    for (auto& m : monomials(nv, n - g.degree)) unit[mono_index(nv, m0 * m)] = 1;
  }
  return unit;
}

}  // namespace

DegreePiece degree_piece(const GradedIdeal& I, int n) {
  int nv = I.nvars();
  int N = static_cast<int>(num_monomials(nv, n));
  DegreePiece P;
  P.ring = I.ring;
  P.n = n;
  P.basis = PRowEchelon(N);
  auto unit = unit_mask(I, n);
  for (int c = 0; c < N; ++c)
    if (unit[c]) P.unit_cols.push_back(c);
  for (auto& g : I.gens) {
    if (g.is_monomial() || g.degree > n) continue;
    for (auto& m : monomials(nv, n - g.degree)) {
      std::vector<PScalar> row(N);
      bool any = false;
      for (auto& [gm, s] : g.terms) {
        int c = mono_index(nv, gm * m);
        if (unit[c]) continue;
        row[c] = s;
        any = true;
      }
      if (any) P.basis.insert(std::move(row));
    }
  }
  return P;
}

QSlice qslice(const GradedIdeal& I, int n) {
  if (!I.param_free()) throw Error("ideal.parametric", "ideal depends on the parameter");
  int nv = I.nvars();
  int N = static_cast<int>(num_monomials(nv, n));
  QSlice S;
  S.nv = nv;
  S.n = n;
  S.basis = RowEchelon(N);
  auto unit = unit_mask(I, n);
  for (int c = 0; c < N; ++c)
    if (unit[c]) S.basis.insert({{c, Rat(1)}});
  for (auto& g : I.gens) {
    if (g.is_monomial() || g.degree > n) continue;
    for (auto& m : monomials(nv, n - g.degree)) {
      SparseVec v;
      for (auto& [gm, s] : g.terms) {
        int c = mono_index(nv, gm * m);
        if (!unit[c]) v.emplace_back(c, s.constant());
      }
      if (v.empty()) continue;
      std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
      S.basis.insert(std::move(v));
    }
  }
  return S;
}

namespace {

QSlice monomial_saturated_piece(const GradedIdeal& I, int n) {
  int nv = I.nvars();
  auto sat = monomial_saturation(I.monomial_gens(), nv);
  QSlice S;
  S.nv = nv;
  S.n = n;
  S.basis = RowEchelon(static_cast<int>(num_monomials(nv, n)));
  const auto& ms = monomials(nv, n);
  for (int c = 0; c < static_cast<int>(ms.size()); ++c)
    if (in_monomial_ideal(ms[c], sat)) S.basis.insert({{c, Rat(1)}});
  return S;
}

// (E : x_i^k) in degree n, where E is a slice of degree n+k
RowEchelon colon_slice(const QSlice& E, int i, int k, int n) {
  int nv = E.nv;
  const auto& big = monomials(nv, E.n);
  int M = static_cast<int>(big.size());
  Monomial xk = Monomial::var(i, k);
  std::vector<int> perm(M);
  int front = 0;
  for (int c = 0; c < M; ++c)
    if (!xk.divides(big[c])) perm[c] = front++;
  int back = front;
  std::vector<int> inv(M);
  for (int c = 0; c < M; ++c) {
    if (xk.divides(big[c])) perm[c] = back++;
    inv[perm[c]] = c;
  }
  RowEchelon R(M);
  for (auto& row : E.basis.rows()) R.insert(permute(row, perm));
  RowEchelon out(static_cast<int>(num_monomials(nv, n)));
  for (auto& row : R.rows()) {
    if (row[0].first < front) continue;
    SparseVec v;
    for (auto& [c, x] : row) v.emplace_back(mono_index(nv, big[inv[c]] / xk), x);
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    out.insert(std::move(v));
  }
  return out;
}

}  // namespace

QSlice saturated_piece(const GradedIdeal& I, int n, int K) {
  if (I.is_monomial()) return monomial_saturated_piece(I, n);
  if (K < 1) throw Error("ideal.bad_cutoff", "saturation cutoff K must be at least 1");
  int nv = I.nvars();
  std::vector<QSlice> E;
  E.push_back(qslice(I, n));
  auto slice_at = [&](int k) -> const QSlice& {
    while (static_cast<int>(E.size()) <= k) E.push_back(qslice(I, n + static_cast<int>(E.size())));
    return E[k];
  };
  QSlice out;
  out.nv = nv;
  out.n = n;
  out.stabilized = true;
  bool first = true;
  // a plateau must last as long as the top generator degree before we trust it
  int window = std::max(2, I.max_gen_degree());
  for (int i = 0; i < nv; ++i) {
    RowEchelon cur = E[0].basis;
    int last_change = 0;
    bool stable = false;
    for (int k = 1; k <= std::max(K, window); ++k) {
      int before = cur.rank();
      cur = colon_slice(slice_at(k), i, k, n);
      if (cur.rank() != before) last_change = k;
      if (k - last_change >= window) {
        stable = true;
        break;
      }
    }
    if (!stable) out.stabilized = false;
    out.basis = first ? cur : intersect(out.basis, cur);
    first = false;
  }
  out.basis.make_reduced();
  return out;
}

QSlice saturated_piece_expect(const GradedIdeal& I, int n, long expected, int K) {
  QSlice S = qslice(I, n);
  if (S.dim() == expected) return S;
  return saturated_piece(I, n, K);
}

std::map<int, long> hilbert_function(const GradedIdeal& I, int lo, int hi, int K) {
  std::map<int, long> hf;
  for (int n = std::max(lo, 0); n <= hi; ++n) {
    if (I.is_monomial()) {
      hf[n] = monomial_ideal_dim(monomial_saturation(I.monomial_gens(), I.nvars()),
                                 I.nvars(), n);
    } else {
      hf[n] = saturated_piece(I, n, K).dim();
    }
  }
  return hf;
}

IntPolynomial hilbert_polynomial(const GradedIdeal& I, int reg_cutoff, int K) {
  int nv = I.nvars();
  auto hf = hilbert_function(I, reg_cutoff, reg_cutoff + nv, K);
  std::vector<std::pair<long long, Rat>> samples;
  for (auto& [n, v] : hf) samples.emplace_back(n, Rat(v));
  try {
    return fit_int_poly(samples, nv - 1);
  } catch (const Error&) {
    throw Error("ideal.cutoff_too_small",
                "Hilbert function is not polynomial from degree " + std::to_string(reg_cutoff));
  }
}

// ----------------------------------------------------------------- Borel

bool is_borel_fixed(const GradedIdeal& I) {
  if (!I.is_monomial()) throw Error("ideal.non_monomial", "Borel test needs a monomial ideal");
  auto gens = minimalize(I.monomial_gens());
  int nv = I.nvars();
  for (auto& m : gens)
    for (int i = 1; i < nv; ++i) {
      if (!m.e[i]) continue;
      for (int j = 0; j < i; ++j) {
        Monomial up = m;
        up.e[i]--;
        up.e[j]++;
        if (!in_monomial_ideal(up, gens)) return false;
      }
    }
  return true;
}

GradedIdeal lex_ideal(const MacaulayData& m) {
  RingSpec r = RingSpec::p3();
  return GradedIdeal::from_monomials(
      r,
      {Monomial{1, 0, 0, 0}, Monomial{0, static_cast<int>(m.a), 0, 0},
       Monomial{0, static_cast<int>(m.a - 1), static_cast<int>(m.c), 0}},
      "lex(" + std::to_string(m.a) + "," + std::to_string(m.b) + ")");
}

GradedIdeal lex_point_ideal(long d) {
  return GradedIdeal::from_monomials(RingSpec::p2(),
                                     {Monomial{1, 0, 0}, Monomial{0, static_cast<int>(d), 0}},
                                     "lex-points(" + std::to_string(d) + ")");
}

// ------------------------------------------------------------ subspaces

QSlice initial_subspace(const QSlice& V, const std::vector<long>& weights, bool to_zero) {
  const auto& ms = monomials(V.nv, V.n);
  int N = static_cast<int>(ms.size());
  std::vector<long> w(N, 0);
  for (int c = 0; c < N; ++c)
    for (int i = 0; i < V.nv; ++i) w[c] += weights[i] * ms[c].e[i];
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return to_zero ? w[a] < w[b] : w[a] > w[b];
  });
  std::vector<int> perm(N);
  for (int p = 0; p < N; ++p) perm[order[p]] = p;
  RowEchelon E(N);
  for (auto& row : V.basis.rows()) E.insert(permute(row, perm));
  QSlice out;
  out.nv = V.nv;
  out.n = V.n;
  out.basis = RowEchelon(N);
  for (auto& row : E.rows()) {
    long w0 = w[order[row[0].first]];
    SparseVec v;
    for (auto& [p, x] : row)
      if (w[order[p]] == w0) v.emplace_back(order[p], x);
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    out.basis.insert(std::move(v));
  }
  out.basis.make_reduced();
  return out;
}

QSlice times_vars(const QSlice& V) {
  const auto& ms = monomials(V.nv, V.n);
  QSlice out;
  out.nv = V.nv;
  out.n = V.n + 1;
  out.basis = RowEchelon(static_cast<int>(num_monomials(V.nv, V.n + 1)));
  for (int i = 0; i < V.nv; ++i) {
    Monomial x = Monomial::var(i);
    for (auto& row : V.basis.rows()) {
      SparseVec v;
      for (auto& [c, a] : row) v.emplace_back(mono_index(V.nv, ms[c] * x), a);
      std::sort(v.begin(), v.end(), [](auto& p, auto& q) { return p.first < q.first; });
      out.basis.insert(std::move(v));
    }
  }
  return out;
}

bool slice_contains(const QSlice& big, const QSlice& small) {
  for (auto& row : small.basis.rows())
    if (!big.basis.contains(row)) return false;
  return true;
}

bool slice_equal(const QSlice& a, const QSlice& b) {
  return a.n == b.n && a.dim() == b.dim() && slice_contains(a, b);
}

std::vector<ParamForm> extract_generators(const RingSpec& r,
                                          const std::vector<QSlice>& slices) {
  std::vector<ParamForm> gens;
  const QSlice* prev = nullptr;
  for (auto& S : slices) {
    RowEchelon have(S.basis.ncols());
    if (prev && prev->n + 1 == S.n) have = times_vars(*prev).basis;
    RowEchelon reduced = S.basis;
    reduced.make_reduced();
    for (auto& row : reduced.rows())
      if (have.insert(row)) gens.push_back(vec_to_form(r, S.n, row));
    prev = &S;
  }
  return gens;
}

// -------------------------------------------------------- monomial ideals

std::vector<Monomial> minimalize(std::vector<Monomial> ms) {
  std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) {
    return a.deg() != b.deg() ? a.deg() < b.deg() : glex_greater(a, b);
  });
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::vector<Monomial> out;
  for (auto& m : ms)
    if (!in_monomial_ideal(m, out)) out.push_back(m);
  return out;
}

bool in_monomial_ideal(const Monomial& m, const std::vector<Monomial>& gens) {
  for (auto& g : gens)
    if (g.divides(m)) return true;
  return false;
}

long monomial_ideal_dim(const std::vector<Monomial>& gens, int nv, int n) {
  if (n < 0) return 0;
  long c = 0;
  for (auto& m : monomials(nv, n))
    if (in_monomial_ideal(m, gens)) ++c;
  return c;
}

std::vector<Monomial> monomial_intersection(const std::vector<Monomial>& a,
                                            const std::vector<Monomial>& b) {
  std::vector<Monomial> out;
  for (auto& p : a)
    for (auto& q : b) out.push_back(p.lcm(q));
  return minimalize(out);
}

std::vector<Monomial> monomial_saturation(const std::vector<Monomial>& gens, int nv) {
  std::vector<Monomial> acc;
  bool first = true;
  for (int i = 0; i < nv; ++i) {
    std::vector<Monomial> colon;
    for (auto m : gens) {
      m.e[i] = 0;
      colon.push_back(m);
    }
    colon = minimalize(colon);
    // colon by x_i^oo contains 1: that variable does not contribute
    if (colon.size() == 1 && colon[0].deg() == 0) continue;
    acc = first ? colon : monomial_intersection(acc, colon);
    first = false;
  }
  if (first) return {Monomial{}};
  return minimalize(acc);
}

}  // namespace tc
