#include "tautocycle/orbits.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <numeric>
#include <random>
#include <thread>

namespace tc {

// ----------------------------------------------------------------- actions

namespace {

PMatrix identity(int nv) {
  PMatrix m(nv, std::vector<PScalar>(nv));
  for (int i = 0; i < nv; ++i) m[i][i] = PScalar(1);
  return m;
}

}  // namespace

OneParamAction OneParamAction::root(int i, int j, int nv) {
  OneParamAction a;
  a.kind = "custom";
  a.nv = nv;
  a.matrix = identity(nv);
  a.matrix[i][j] = PScalar::param();
  return a;
}

OneParamAction OneParamAction::psi(int i, int nv) {
  int top = nv == 4 ? 3 : 2;
  if (i < 1 || i > top)
    throw Error("orbits.bad_action", "psi index out of range for this ring");
  int v = nv - i;
  OneParamAction a = root(v - 1, v, nv);
  a.kind = "psi" + std::to_string(i);
  return a;
}

OneParamAction OneParamAction::sigma(int nv) {
  std::vector<long> w(nv, 0);
  w[nv - 1] = 1;
  OneParamAction a = diagonal(w);
  a.kind = "sigma";
  return a;
}

OneParamAction OneParamAction::tau(int nv) {
  std::vector<long> w(nv, 0);
  w[nv - 2] = 1;
  OneParamAction a = diagonal(w);
  a.kind = "tau";
  return a;
}

OneParamAction OneParamAction::delta(int i) {
  static const int pos[6][2] = {{0, 3}, {1, 3}, {0, 2}, {0, 1}, {1, 2}, {2, 3}};
  if (i < 1 || i > 6) throw Error("orbits.bad_action", "delta index must be 1..6");
  OneParamAction a = root(pos[i - 1][0], pos[i - 1][1], 4);
  a.kind = "delta" + std::to_string(i);
  return a;
}

OneParamAction OneParamAction::diagonal(std::vector<long> w) {
  OneParamAction a;
  a.kind = "diagonal";
  a.nv = static_cast<int>(w.size());
  a.weights = std::move(w);
  return a;
}

OneParamAction OneParamAction::custom(PMatrix m) {
  OneParamAction a;
  a.kind = "custom";
  a.nv = static_cast<int>(m.size());
  a.matrix = std::move(m);
  return a;
}

ParamForm apply_action(const ParamForm& f, const OneParamAction& a) {
  if (!f.param_free())
    throw Error("orbits.param_clash", "form already depends on the parameter");
  int nv = f.ring.nvars();
  if (nv != a.nv) throw Error("orbits.bad_action", "action and ring have different sizes");
  if (a.is_diagonal()) {
    // negative exponents are shifted away; the form changes by a unit
    long lo = 0;
    for (auto& [m, s] : f.terms) {
      long w = 0;
      for (int i = 0; i < nv; ++i) w += a.weights[i] * m.e[i];
      lo = std::min(lo, w);
    }
    ParamForm r(f.ring, f.degree);
    for (auto& [m, s] : f.terms) {
      long w = -lo;
      for (int i = 0; i < nv; ++i) w += a.weights[i] * m.e[i];
      r.add_term(m, PScalar::mono(s.constant(), static_cast<int>(w)));
    }
    return r;
  }
  std::vector<ParamForm> img;
  for (int j = 0; j < nv; ++j) {
    ParamForm l(f.ring, 1);
    for (int i = 0; i < nv; ++i) l.add_term(Monomial::var(i), a.matrix[i][j]);
    img.push_back(l);
  }
  ParamForm r(f.ring, f.degree);
  for (auto& [m, s] : f.terms) {
    ParamForm t = ParamForm::monomial(f.ring, Monomial(), s);
    for (int j = 0; j < nv; ++j)
      for (int k = 0; k < m.e[j]; ++k) t = t * img[j];
    r = r + t;
  }
  return r;
}

GradedIdeal apply_action(const GradedIdeal& I, const OneParamAction& a) {
  GradedIdeal J = I;
  J.gens.clear();
  for (auto& g : I.gens) J.gens.push_back(apply_action(g, a));
  J.parts.clear();
  J.part_kinds.clear();
  return J;
}

std::vector<std::pair<int, int>> stabilizer_roots(int psi_index, int nv) {
  OneParamAction p = OneParamAction::psi(psi_index, nv);
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      if (p.matrix[i][j].is_zero()) out.emplace_back(i, j);
  return out;
}

bool invariant_under(const GradedIdeal& I, const OneParamAction& u) {
  // the stabilizer is closed and A=1 generates a dense subgroup of G_a
  for (auto& g : I.gens) {
    ParamForm h = apply_action(g, u).specialize(Rat(1));
    if (h.is_zero()) continue;
    if (!qslice(I, h.degree).basis.contains(form_to_vec(h))) return false;
  }
  return true;
}

// ------------------------------------------------------------ wedge degrees

namespace {

struct MinorStats {
  long maxdeg = -1;
  PScalar g;
  void add(const PScalar& p) {
    if (p.is_zero()) return;
    maxdeg = std::max(maxdeg, static_cast<long>(p.degree()));
    g = g.is_zero() ? p.monic() : gcd(g, p);
  }
  long result() const {
    if (maxdeg < 0) throw Error("orbits.rank_deficient", "matrix does not have full row rank");
    return maxdeg - g.degree();
  }
};

std::vector<std::vector<Rat>> eval_matrix(const PMatrix& M, const Rat& a) {
  std::vector<std::vector<Rat>> out(M.size());
  for (size_t i = 0; i < M.size(); ++i) {
    out[i].reserve(M[i].size());
    for (auto& e : M[i]) out[i].push_back(e.eval(a));
  }
  return out;
}

}  // namespace

long wedge_degree_exhaustive(const PMatrix& M) {
  int m = static_cast<int>(M.size());
  if (m == 0) return 0;
  int N = static_cast<int>(M[0].size());
  if (m > N) throw Error("orbits.rank_deficient", "more rows than columns");
  MinorStats st;
  std::vector<int> J(m);
  std::iota(J.begin(), J.end(), 0);
  while (true) {
    PMatrix sub(m, std::vector<PScalar>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sub[i][j] = M[i][J[j]];
    st.add(pdet(std::move(sub)));
    int k = m - 1;
    while (k >= 0 && J[k] == N - m + k) --k;
    if (k < 0) break;
    ++J[k];
    for (int j = k + 1; j < m; ++j) J[j] = J[j - 1] + 1;
  }
  return st.result();
}

long wedge_degree_projected(const PMatrix& M, unsigned seed, int retries) {
  int m = static_cast<int>(M.size());
  if (m == 0) return 0;
  int N = static_cast<int>(M[0].size());
  if (m > N) throw Error("orbits.rank_deficient", "more rows than columns");
  long bound = 0;
  for (auto& row : M) {
    int d = 0;
    for (auto& e : row) d = std::max(d, e.degree());
    bound += d;
  }
  std::vector<Rat> xs;
  for (long k = 0; k <= bound; ++k) xs.push_back(Rat(k));
  std::vector<std::vector<std::vector<Rat>>> at;
  for (auto& x : xs) at.push_back(eval_matrix(M, x));

  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-99, 99);
  auto one_triple = [&]() -> std::optional<long> {
    MinorStats st;
    for (int k = 0; k < 3; ++k) {
      std::vector<std::vector<Rat>> R(N, std::vector<Rat>(m));
      for (auto& row : R)
        for (auto& v : row) v = dist(rng);
      std::vector<Rat> ys;
      for (auto& Ma : at) {
        std::vector<std::vector<Rat>> P(m, std::vector<Rat>(m, Rat(0)));
        for (int i = 0; i < m; ++i)
          for (int c = 0; c < N; ++c) {
            if (Ma[i][c] == 0) continue;
            for (int j = 0; j < m; ++j) P[i][j] += Ma[i][c] * R[c][j];
          }
        ys.push_back(qdet(std::move(P)));
      }
      st.add(interpolate(xs, ys));
    }
    if (st.maxdeg < 0) return std::nullopt;
    return st.result();
  };
  std::optional<long> prev = one_triple();
  for (int attempt = 0; attempt < retries; ++attempt) {
    std::optional<long> cur = one_triple();
    if (prev && cur && *prev == *cur) return *cur;
    prev = cur;
  }
  // every projection vanishing means the rows are dependent
  bool full = false;
  for (auto& x : xs)
    if (rank_at(M, x) == m) full = true;
  if (!full) throw Error("orbits.rank_deficient", "matrix does not have full row rank");
  throw Error("orbits.unstable_projection",
              "random projections disagree after " + std::to_string(retries) + " retries");
}

long wedge_degree_greedy(const RowEchelon& V, const std::vector<long>& colw) {
  int N = static_cast<int>(colw.size());
  auto extreme = [&](bool high) {
    std::vector<int> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return high ? colw[a] > colw[b] : colw[a] < colw[b]; });
    std::vector<int> perm(N);
    for (int p = 0; p < N; ++p) perm[order[p]] = p;
    RowEchelon E(N);
    for (auto& row : V.rows()) E.insert(permute(row, perm));
    long s = 0;
    for (int p : E.pivots()) s += colw[order[p]];
    return s;
  };
  return extreme(true) - extreme(false);
}

long isotropy_order(const RowEchelon& V, const std::vector<long>& colw) {
  RowEchelon R = V;
  R.make_reduced();
  long g = 0;
  for (auto& row : R.rows()) {
    long wp = colw[row[0].first];
    for (auto& [c, x] : row) g = std::gcd(g, std::labs(colw[c] - wp));
  }
  return g;
}

std::vector<long> column_weights(int nv, int n, const std::vector<long>& w) {
  const auto& ms = monomials(nv, n);
  std::vector<long> out(ms.size(), 0);
  for (size_t c = 0; c < ms.size(); ++c)
    for (int i = 0; i < nv; ++i) out[c] += w[i] * ms[c].e[i];
  return out;
}

long wedge_alpha_degree(const PMatrix& M0, unsigned seed) {
  int m = static_cast<int>(M0.size());
  if (m == 0) return 0;
  int N = static_cast<int>(M0[0].size());
  std::vector<char> row_alive(m, 1), col_alive(N, 1);
  auto nz = [&](int i, int c) { return col_alive[c] && !M0[i][c].is_zero(); };
  // strip rows with a single entry: they split off a monomial factor of
  // every nonzero minor
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < m; ++i) {
      if (!row_alive[i]) continue;
      int cnt = 0, last = -1;
      for (int c = 0; c < N; ++c)
        if (nz(i, c)) {
          ++cnt;
          last = c;
        }
      if (cnt == 0) throw Error("orbits.rank_deficient", "zero row");
      if (cnt == 1 && M0[i][last].term_count() == 1) {
        row_alive[i] = 0;
        col_alive[last] = 0;
        changed = true;
      }
    }
  }
  // connected components of the row/column incidence graph
  std::vector<int> comp_row(m, -1), comp_col(N, -1);
  int ncomp = 0;
  for (int s = 0; s < m; ++s) {
    if (!row_alive[s] || comp_row[s] >= 0) continue;
    std::vector<int> stack{s};
    comp_row[s] = ncomp;
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int c = 0; c < N; ++c) {
        if (!nz(i, c) || comp_col[c] >= 0) continue;
        comp_col[c] = ncomp;
        for (int k = 0; k < m; ++k)
          if (row_alive[k] && comp_row[k] < 0 && nz(k, c)) {
            comp_row[k] = ncomp;
            stack.push_back(k);
          }
      }
    }
    ++ncomp;
  }
  long total = 0;
  for (int b = 0; b < ncomp; ++b) {
    std::vector<int> rows, cols;
    for (int i = 0; i < m; ++i)
      if (comp_row[i] == b) rows.push_back(i);
    for (int c = 0; c < N; ++c)
      if (comp_col[c] == b) cols.push_back(c);
    if (rows.size() > cols.size())
      throw Error("orbits.rank_deficient", "matrix does not have full row rank");
    PMatrix B(rows.size(), std::vector<PScalar>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) B[i][j] = M0[rows[i]][cols[j]];
    Int count;
    mpz_bin_uiui(count.get_mpz_t(), cols.size(), rows.size());
    if (count <= 5000)
      total += wedge_degree_exhaustive(B);
    else
      total += wedge_degree_projected(B, seed + static_cast<unsigned>(b));
  }
  return total;
}

// ---------------------------------------------------------------- families

IntPolynomial CycleFamily::expected_q() const {
  return plane_points ? q_points(d_points) : q_polynomial(m);
}

int CycleFamily::direct_start() const {
  return static_cast<int>(plane_points ? d_points - 1 : m.b - 1);
}

int CycleFamily::regular_start() const {
  return static_cast<int>(plane_points ? d_points - 1 : m.a - 3);
}

int CycleFamily::embed_degree() const {
  return static_cast<int>(plane_points ? d_points : m.b);
}

std::optional<TorusData> detect_torus(const GradedIdeal& I) {
  int nv = I.nvars();
  int ng = static_cast<int>(I.gens.size());
  // unknowns: c_0..c_{ng-1}, omega_0..omega_{nv-1}; one equation per term:
  // omega . m - c_f = (power of A in that term).  The c_f come first so
  // they absorb what they can and omega stays integral where possible.
  int nu = nv + ng;
  RowEchelon E(nu + 1);
  for (int f = 0; f < ng; ++f)
    for (auto& [m, s] : I.gens[f].terms) {
      if (s.term_count() != 1) return std::nullopt;
      SparseVec row;
      row.emplace_back(f, Rat(-1));
      for (int i = 0; i < nv; ++i)
        if (m.e[i]) row.emplace_back(ng + i, Rat(m.e[i]));
      if (s.degree()) row.emplace_back(nu, Rat(-s.degree()));
      E.insert(row);
    }
  E.make_reduced();
  for (auto& row : E.rows())
    if (row[0].first == nu) return std::nullopt;  // inconsistent
  std::vector<Rat> omega(nv, Rat(0));
  for (auto& row : E.rows()) {
    int p = row[0].first;
    if (p < ng) continue;
    for (auto& [c, x] : row)
      if (c == nu) omega[p - ng] = -x;
  }
  // a fractional solution is scaled up; span and isotropy scale together
  Int den = 1;
  for (auto& w : omega) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.get_den_mpz_t());
  TorusData t;
  t.base = I.specialize(Rat(1));
  t.weights.resize(nv);
  for (int i = 0; i < nv; ++i) {
    Rat v = omega[i] * den;
    t.weights[i] = v.get_num().get_si();
  }
  long lo = *std::min_element(t.weights.begin(), t.weights.end());
  long g = 0;
  for (auto& w : t.weights) g = std::gcd(g, w -= lo);
  if (g > 1)
    for (auto& w : t.weights) w /= g;
  bool any_param = false;
  for (auto& g : I.gens)
    if (!g.param_free()) any_param = true;
  t.constant = !any_param;
  return t;
}

std::string TautCombo::str() const {
  std::string s;
  for (auto& [n, e] : exps) {
    if (!e) continue;
    if (!s.empty()) s += " ";
    s += "M" + std::to_string(n) + "^" + std::to_string(e);
  }
  if (lin) s += (s.empty() ? "" : " ") + std::string("L3^") + std::to_string(lin);
  return s.empty() ? "trivial" : s;
}

FamilyEvaluator::FamilyEvaluator(CycleFamily f, unsigned seed) : fam_(std::move(f)), seed_(seed) {}

void FamilyEvaluator::prepare() {
  if (torus_checked_) return;
  torus_checked_ = true;
  if (fam_.action) {
    if (fam_.action->is_diagonal()) {
      if (!fam_.ideal.param_free())
        throw Error("orbits.param_clash", "orbit base ideal already depends on the parameter");
      TorusData t;
      t.base = fam_.ideal;
      t.weights = fam_.action->weights;
      torus_ = t;
      return;
    }
    GradedIdeal moved = apply_action(fam_.ideal, *fam_.action);
    fam_.ideal = moved;
    fam_.action.reset();
  }
  torus_ = detect_torus(fam_.ideal);
}

std::string FamilyEvaluator::backend() const {
  return torus_ ? "greedy" : "projected";
}

long FamilyEvaluator::isotropy() {
  std::lock_guard<std::mutex> lock(mu_);
  prepare();
  if (ell_) return *ell_;
  if (!torus_ || torus_->constant) {
    ell_ = torus_ ? 0 : 1;
    return *ell_;
  }
  int nv = fam_.ideal.nvars();
  long n = fam_.embed_degree();
  long expect = fam_.expected_q().eval(n).get_num().get_si();
  QSlice W = saturated_piece_expect(torus_->base, static_cast<int>(n), expect, static_cast<int>(n) + 4);
  ell_ = isotropy_order(W.basis, column_weights(nv, static_cast<int>(n), torus_->weights));
  return *ell_;
}

long FamilyEvaluator::span_at(long n) {
  int nv = fam_.ideal.nvars();
  long expect = fam_.expected_q().eval(n).get_num().get_si();
  QSlice W = saturated_piece_expect(torus_->base, static_cast<int>(n), expect,
                                    static_cast<int>(n) + 4);
  if (W.dim() != expect)
    throw Error("orbits.not_flat", fam_.name + ": slice at n=" + std::to_string(n) +
                                       " has dimension " + std::to_string(W.dim()) +
                                       ", expected " + std::to_string(expect));
  return wedge_degree_greedy(W.basis, column_weights(nv, static_cast<int>(n), torus_->weights));
}

Rat FamilyEvaluator::direct(long n) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    prepare();
  }
  if (torus_) {
    if (torus_->constant) return Rat(0);
    long ell = isotropy();
    long span = span_at(n);
    if (ell == 0) {
      if (span != 0) throw Error("orbits.non_integral", "fixed ideal with moving slice");
      return Rat(0);
    }
    if (span % ell != 0)
      throw Error("orbits.non_integral", fam_.name + ": degree " + std::to_string(span) +
                                             " not divisible by isotropy order " +
                                             std::to_string(ell));
    return Rat(span / ell);
  }
  if (!fam_.injective)
    throw Error("orbits.not_injective",
                fam_.name + ": non-torus family without an injectivity guarantee");
  long expect = fam_.expected_q().eval(n).get_num().get_si();
  DegreePiece P = degree_piece(fam_.ideal, static_cast<int>(n));
  if (P.dim() != expect)
    throw Error("orbits.not_flat", fam_.name + ": generated slice at n=" + std::to_string(n) +
                                       " has dimension " + std::to_string(P.dim()) +
                                       " over Q(A), expected " + std::to_string(expect));
  return Rat(wedge_alpha_degree(P.full_rows(), seed_));
}

Rat FamilyEvaluator::degree(long n) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
  }
  if (n < fam_.regular_start())
    throw Error("orbits.out_of_range", "n=" + std::to_string(n) + " below the regular range");
  Rat v;
  if (n >= fam_.direct_start()) {
    v = direct(n);
  } else {
    // below the b-regular range the degree is the quadratic continuation of
    // the values above it
    if (!below_) {
      std::vector<std::pair<long long, Rat>> s;
      for (long k = fam_.direct_start(); k < fam_.direct_start() + 5; ++k) s.emplace_back(k, degree(k));
      below_ = fit_int_poly(s, 2);
    }
    v = below_->eval(n);
  }
  std::lock_guard<std::mutex> lock(mu_);
  cache_[n] = v;
  return v;
}

Rat FamilyEvaluator::linear_degree() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    prepare();
  }
  if (torus_) {
    if (torus_->constant) return Rat(0);
    QSlice W = saturated_piece(torus_->base, 1, 5);
    if (W.dim() != 1) throw Error("orbits.no_linear_form", fam_.name + ": no unique linear form");
    long ell = isotropy();
    long span = wedge_degree_greedy(W.basis, column_weights(fam_.ideal.nvars(), 1, torus_->weights));
    if (ell == 0) return Rat(0);
    if (span % ell) throw Error("orbits.non_integral", "linear-form degree not divisible");
    return Rat(span / ell);
  }
  DegreePiece P = degree_piece(fam_.ideal, 1);
  if (P.dim() != 1) throw Error("orbits.no_linear_form", fam_.name + ": no unique linear form");
  return Rat(wedge_alpha_degree(P.full_rows(), seed_));
}

Rat FamilyEvaluator::combo(const TautCombo& L) {
  Rat s = 0;
  for (auto& [n, e] : L.exps)
    if (e) s += Rat(e) * degree(n);
  if (L.lin) s += Rat(L.lin) * linear_degree();
  return s;
}

Rat orbit_degree(const CycleFamily& F, long n, unsigned seed) {
  FamilyEvaluator ev(F, seed);
  return ev.degree(n);
}

Rat combo_degree(const CycleFamily& F, const TautCombo& L, unsigned seed) {
  FamilyEvaluator ev(F, seed);
  return ev.combo(L);
}

// ------------------------------------------------------------ parallelism

int worker_count() {
  if (const char* s = std::getenv("TAUTOCYCLE_THREADS")) {
    int v = std::atoi(s);
    if (v >= 1) return v;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? static_cast<int>(h) : 1;
}

void parallel_for(int count, const std::function<void(int)>& body) {
  int w = std::min(worker_count(), count);
  if (w <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::future<void>> fs;
  for (int k = 0; k < w; ++k)
    fs.push_back(std::async(std::launch::async, [&] {
      for (int i = next++; i < count; i = next++) body(i);
    }));
  for (auto& f : fs) f.get();
}

}  // namespace tc
