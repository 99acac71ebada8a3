#include "tautocycle/degeneration.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

namespace tc {

namespace {

constexpr int kSatDepth = 8;

// the checks below ask for the same saturated slices many times
QSlice sat(const GradedIdeal& I, int n) {
  static std::mutex mu;
  static std::map<std::string, QSlice> cache;
  std::string key = std::to_string(n);
  for (auto& v : I.ring.vars) key += "," + v;
  for (auto& g : I.gen_strings()) key += ";" + g;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  QSlice S = saturated_piece(I, n, kSatDepth);
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() > 4000) cache.clear();
  cache.emplace(key, S);
  return S;
}

void require_linear(const ParamForm& l, int nv) {
  if (l.degree != 1 || !l.param_free() || l.is_zero() || l.ring.nvars() != nv)
    throw Error("degeneration.bad_form", "expected a nonzero parameter-free linear form");
}

// v (degree n) times x_i
SparseVec mul_var(const SparseVec& v, int nv, int n, int i) {
  const auto& ms = monomials(nv, n);
  Monomial x = Monomial::var(i);
  SparseVec out;
  for (auto& [c, a] : v) out.emplace_back(mono_index(nv, ms[c] * x), a);
  std::sort(out.begin(), out.end(), [](auto& p, auto& q) { return p.first < q.first; });
  return out;
}

RingSpec smaller_ring(const RingSpec& r) {
  RingSpec s = r;
  s.vars.pop_back();
  return s;
}

RingSpec larger_ring(const RingSpec& r) {
  static const std::vector<std::string> names{"x", "y", "z", "t"};
  RingSpec s = r;
  if (s.nvars() >= kMaxVars) throw Error("degeneration.too_many_vars", "ring already has 4 variables");
  for (auto& n : names)
    if (std::find(s.vars.begin(), s.vars.end(), n) == s.vars.end()) {
      s.vars.push_back(n);
      break;
    }
  return s;
}

// substitution killing l: x_k -> -(sum_{i != k} c_i x_i)/c_k, remaining
// variables renumbered in order
struct Restrictor {
  int nv, k;
  RingSpec target;
  std::vector<ParamForm> images;

  Restrictor(const ParamForm& l) : nv(l.ring.nvars()), target(smaller_ring(l.ring)) {
    std::vector<Rat> c(nv, Rat(0));
    for (auto& [m, s] : l.terms)
      for (int i = 0; i < nv; ++i)
        if (m.e[i]) c[i] = s.constant();
    k = nv - 1;
    while (c[k] == 0) --k;
    for (int i = 0, j = 0; i < nv; ++i) {
      if (i == k) {
        images.emplace_back();
        continue;
      }
      images.push_back(ParamForm::monomial(target, Monomial::var(j++)));
    }
    ParamForm sub(target, 1);
    for (int i = 0, j = 0; i < nv; ++i) {
      if (i == k) continue;
      if (c[i] != 0) sub.add_term(Monomial::var(j), PScalar(-c[i] / c[k]));
      ++j;
    }
    images[k] = sub;
  }

  SparseVec apply(const SparseVec& v, int n) const {
    const auto& ms = monomials(nv, n);
    ParamForm acc(target, n);
    for (auto& [c, a] : v) {
      ParamForm t = ParamForm::monomial(target, Monomial(), PScalar(a));
      for (int i = 0; i < nv; ++i)
        for (int e = 0; e < ms[c].e[i]; ++e) t = t * images[i];
      acc = acc + t;
    }
    acc.degree = n;
    return form_to_vec(acc);
  }
};

// degree-n slice of the ideal generated by t-free forms whose saturated
// slices (in one variable less) are given
RowEchelon star_slice(const std::vector<QSlice>& low, int nv, int n) {
  RowEchelon E(static_cast<int>(num_monomials(nv, n)));
  for (int i = 0; i <= n && i < static_cast<int>(low.size()); ++i) {
    const auto& ms = monomials(nv - 1, i);
    Monomial tp = Monomial::var(nv - 1, n - i);
    for (auto& row : low[i].basis.rows()) {
      SparseVec v;
      for (auto& [c, a] : row) {
        Monomial m = ms[c];
        v.emplace_back(mono_index(nv, m * tp), a);
      }
      std::sort(v.begin(), v.end(), [](auto& p, auto& q) { return p.first < q.first; });
      E.insert(std::move(v));
    }
  }
  return E;
}

}  // namespace

bool is_nzd(const GradedIdeal& I, const ParamForm& l, int cutoff) {
  int nv = I.nvars();
  require_linear(l, nv);
  if (!I.param_free()) throw Error("degeneration.parametric", "ideal depends on the parameter");
  QSlice lo = sat(I, 0);
  for (int n = 0; n <= cutoff; ++n) {
    QSlice hi = sat(I, n + 1);
    const auto& ms = monomials(nv, n);
    RowEchelon img(static_cast<int>(num_monomials(nv, n + 1)));
    for (auto& m : ms) {
      SparseVec v = hi.basis.reduce(form_to_vec(l.mul(m)));
      if (!v.empty()) img.insert(std::move(v));
    }
    if (img.rank() != static_cast<long>(ms.size()) - lo.dim()) return false;
    lo = std::move(hi);
  }
  return true;
}

GradedIdeal restrict_mod_linear(const GradedIdeal& I, const ParamForm& l, int cutoff) {
  if (!is_nzd(I, l, cutoff))
    throw Error("degeneration.zero_divisor", "the linear form is a zero divisor modulo the ideal");
  return image_mod_linear(I, l, cutoff);
}

GradedIdeal image_mod_linear(const GradedIdeal& I, const ParamForm& l, int cutoff) {
  Restrictor R(l);
  int nv = I.nvars();
  std::vector<QSlice> out;
  for (int n = 0; n <= cutoff; ++n) {
    QSlice W = sat(I, n);
    QSlice S;
    S.nv = nv - 1;
    S.n = n;
    S.basis = RowEchelon(static_cast<int>(num_monomials(nv - 1, n)));
    for (auto& row : W.basis.rows()) {
      SparseVec v = R.apply(row, n);
      if (!v.empty()) S.basis.insert(std::move(v));
    }
    out.push_back(std::move(S));
  }
  return GradedIdeal(R.target, extract_generators(R.target, out), I.tag.empty() ? "" : I.tag + "'");
}

StarResult star_extension(const GradedIdeal& J, int cutoff) {
  StarResult r;
  RingSpec big = larger_ring(J.ring);
  std::vector<ParamForm> gens;
  for (auto& g : J.gens) {
    ParamForm h(big, g.degree);
    for (auto& [m, s] : g.terms) h.add_term(m, s);
    gens.push_back(h);
  }
  r.ideal = GradedIdeal(big, gens, J.tag.empty() ? "" : J.tag + "*");
  r.verified = true;
  for (int n = 0; n <= cutoff; ++n) {
    long want = 0;
    for (int i = 0; i <= n; ++i) want += qslice(J, i).dim();
    if (qslice(r.ideal, n).dim() != want) r.verified = false;
  }
  return r;
}

LimitResult limit_ideal(const GradedIdeal& I, const std::vector<long>& weights, bool to_zero,
                        int cutoff) {
  if (!I.param_free()) throw Error("degeneration.parametric", "ideal depends on the parameter");
  if (static_cast<int>(weights.size()) != I.nvars())
    throw Error("degeneration.bad_action", "weight vector has the wrong length");
  LimitResult L;
  L.weights = weights;
  L.to_zero = to_zero;
  for (int n = 0; n <= cutoff; ++n) {
    QSlice V = sat(I, n);
    QSlice W = initial_subspace(V, weights, to_zero);
    if (W.dim() != V.dim())
      throw Error("degeneration.not_flat", "limit slice lost dimension at n=" + std::to_string(n));
    L.hf_source[n] = V.dim();
    L.hf_limit[n] = W.dim();
    if (n > 0 && !slice_contains(W, times_vars(L.slices.back())))
      throw Error("degeneration.not_closed",
                  "limit slices are not closed under multiplication at n=" + std::to_string(n));
    L.slices.push_back(std::move(W));
  }
  L.ideal = GradedIdeal(I.ring, extract_generators(I.ring, L.slices),
                        I.tag.empty() ? "limit" : I.tag + "-limit");
  L.certified = true;
  for (int n = 0; n <= cutoff; ++n)
    if (!slice_equal(qslice(L.ideal, n), L.slices[n])) L.certified = false;
  return L;
}

G3Report lemma_g3_check(const GradedIdeal& I, int cutoff) {
  int nv = I.nvars();
  ParamForm t = ParamForm::monomial(I.ring, Monomial::var(nv - 1));
  if (!is_nzd(I, t, cutoff))
    throw Error("degeneration.not_in_u", "the last variable is a zero divisor modulo the ideal");
  std::vector<long> w(nv, 0);
  w[nv - 1] = 1;
  LimitResult L0 = limit_ideal(I, w, true, cutoff);
  GradedIdeal J = restrict_mod_linear(I, t, cutoff);
  std::vector<QSlice> low;
  for (int i = 0; i <= cutoff; ++i) low.push_back(sat(J, i));

  G3Report rep;
  std::vector<RowEchelon> star;
  for (int n = 0; n <= cutoff; ++n) {
    star.push_back(star_slice(low, nv, n));
    for (auto& row : L0.slices[n].basis.rows())
      if (!star[n].contains(row)) rep.contained = false;
    rep.quotient_dims[n] = star[n].rank() - L0.slices[n].dim();
  }
  rep.length = rep.quotient_dims[cutoff];
  if (cutoff < 1 || rep.quotient_dims[cutoff - 1] != rep.length) rep.punctual = false;

  // every class of the star modulo the limit is killed by a power of the
  // first nv-1 variables; decided for degrees up to cutoff - max gen degree
  int top = cutoff - std::max(1, I.max_gen_degree());
  for (int n = 0; n <= top; ++n) {
    RowEchelon cur(star[n].ncols());
    for (auto& row : star[n].rows()) {
      SparseVec v = L0.slices[n].basis.reduce(row);
      if (!v.empty()) cur.insert(std::move(v));
    }
    int k = 0;
    while (cur.rank() > 0 && n + k < cutoff) {
      RowEchelon next(static_cast<int>(num_monomials(nv, n + k + 1)));
      for (auto& row : cur.rows())
        for (int i = 0; i + 1 < nv; ++i) {
          SparseVec v = L0.slices[n + k + 1].basis.reduce(mul_var(row, nv, n + k, i));
          if (!v.empty()) next.insert(std::move(v));
        }
      cur = std::move(next);
      ++k;
    }
    if (cur.rank() > 0) {
      rep.punctual = false;
      break;
    }
    rep.kill_exponent = std::max(rep.kill_exponent, k);
  }
  return rep;
}

// ------------------------------------------------------------------ points

namespace {

Rat dot(const Point& a, const Point& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Rat> solve_columns(const std::vector<Point>& cols, const Point& P) {
  int n = static_cast<int>(P.size());
  std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A[i][j] = cols[j][i];
    A[i][n] = P[i];
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) throw Error("degeneration.singular_basis", "basis points are dependent");
    std::swap(A[p], A[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rat f = A[r][c] / A[c][c];
      for (int k = c; k <= n; ++k) A[r][k] -= f * A[c][k];
    }
  }
  std::vector<Rat> q(n);
  for (int i = 0; i < n; ++i) q[i] = A[i][n] / A[i][i];
  return q;
}

}  // namespace

Point normalize_point(Point p) {
  for (auto& x : p)
    if (x != 0) {
      Rat f = x;
      for (auto& y : p) y /= f;
      return p;
    }
  throw Error("degeneration.bad_point", "the zero vector is not a point");
}

Point project_point(const Point& P, const Point& center, const Point& plane) {
  Rat hc = dot(plane, center);
  if (hc == 0) throw Error("degeneration.bad_center", "the center lies on the plane");
  if (normalize_point(P) == normalize_point(center))
    throw Error("degeneration.bad_point", "the point equals the center");
  Rat f = dot(plane, P) / hc;
  Point r = P;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= f * center[i];
  return normalize_point(r);
}

Point point_limit(const Point& P, const std::vector<Point>& basis, const std::vector<long>& w,
                  bool to_zero) {
  std::vector<Rat> q = solve_columns(basis, P);
  bool found = false;
  long best = 0;
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) continue;
    if (!found || (to_zero ? w[i] < best : w[i] > best)) best = w[i];
    found = true;
  }
  Point r(P.size(), Rat(0));
  for (size_t i = 0; i < q.size(); ++i)
    if (q[i] != 0 && w[i] == best)
      for (size_t j = 0; j < r.size(); ++j) r[j] += q[i] * basis[i][j];
  return normalize_point(r);
}

Point project_point_by_limit(const Point& P, const Point& center, const Point& plane) {
  int n = static_cast<int>(P.size());
  if (dot(plane, center) == 0) throw Error("degeneration.bad_center", "the center lies on the plane");
  if (normalize_point(P) == normalize_point(center))
    throw Error("degeneration.bad_point", "the point equals the center");
  int k = n - 1;
  while (plane[k] == 0) --k;
  std::vector<Point> basis;
  for (int j = 0; j < n; ++j) {
    if (j == k) continue;
    Point v(n, Rat(0));
    v[j] = 1;
    v[k] = -plane[j] / plane[k];
    basis.push_back(v);
  }
  basis.push_back(center);
  // t -> lambda t on forms moves the center coordinate by lambda^-1
  std::vector<long> w(n, 0);
  w[n - 1] = -1;
  return point_limit(P, basis, w, false);
}

D1Report lemma_d1_check(const GradedIdeal& I, long points, int degree, int cutoff) {
  int nv = I.nvars();
  if (cutoff <= 0) cutoff = static_cast<int>(points) + 3;
  if (nv != 3) throw Error("degeneration.bad_ring", "point ideals live in three variables");
  IntPolynomial Q = q_points(points);
  ParamForm t = ParamForm::monomial(I.ring, Monomial::var(nv - 1));
  D1Report r;
  r.in_u = is_nzd(I, t, cutoff);
  if (!r.in_u) throw Error("degeneration.precondition", "the ideal is not in U(t)");
  std::vector<long> w(nv, 0);
  w[nv - 1] = 1;
  LimitResult L0 = limit_ideal(I, w, true, cutoff);
  LimitResult Li = limit_ideal(I, w, false, cutoff);
  r.limit_in_u = is_nzd(Li.ideal, t, cutoff);
  if (!r.limit_in_u)
    throw Error("degeneration.precondition", "the limit at infinity is not in U(t)");
  if (!is_nzd(L0.ideal, t, cutoff))
    throw Error("degeneration.precondition", "the limit at zero is not in U(t)");
  r.reg0 = regularity(L0.ideal, cutoff, 1, &Q);
  r.reg_inf = regularity(Li.ideal, cutoff, 1, &Q);
  int need = std::max(r.reg0, r.reg_inf);
  if (degree < 0) degree = need;
  if (degree < need)
    throw Error("degeneration.precondition",
                "degree " + std::to_string(degree) + " is below the regularity of the limits (" +
                    std::to_string(need) + ")");
  r.degree = degree;
  QSlice W = sat(I, degree);
  RowEchelon tfree(W.basis.ncols());
  const auto& ms = monomials(nv, degree);
  for (int c = 0; c < static_cast<int>(ms.size()); ++c)
    if (ms[c].e[nv - 1] == 0) tfree.insert({{c, Rat(1)}});
  r.dim = intersect(W.basis, tfree).rank();
  r.expected = Rat(Q.eval(degree) - Q.eval(degree - 1)).get_num().get_si();
  return r;
}

GradedIdeal local_point_ideal(long d, unsigned long seed) {
  if (d < 1) throw Error("degeneration.bad_input", "need at least one point");
  std::mt19937_64 rng(seed);
  RingSpec r = RingSpec::p2();
  // random staircase: a partition of d read as column heights
  std::vector<long> cols;
  long left = d;
  while (left > 0) {
    long top = cols.empty() ? left : std::min(left, cols.back());
    long h = std::uniform_int_distribution<long>(1, top)(rng);
    cols.push_back(h);
    left -= h;
  }
  auto rnd = [&](int lo, int hi) { return Rat(std::uniform_int_distribution<int>(lo, hi)(rng)); };
  Rat e = rnd(-3, 3), c = rnd(1, 4);
  if (std::uniform_int_distribution<int>(0, 1)(rng)) c = -c;
  auto var = [&](int i) {
    return ParamForm::monomial(r, Monomial::var(i));
  };
  ParamForm x = var(0), y = var(1), z = var(2);
  // an automorphism of the local ring at (0:0:1) of degree two
  ParamForm X = x + y * PScalar(e);
  ParamForm Y = y * z + X * X * PScalar(c);
  auto power = [&](const ParamForm& f, long k) {
    ParamForm p = ParamForm::monomial(r, Monomial());
    for (long i = 0; i < k; ++i) p = p * f;
    return p;
  };
  std::vector<ParamForm> gens;
  long w = static_cast<long>(cols.size());
  for (long i = 0; i <= w; ++i) {
    long h = i < w ? cols[i] : 0;
    if (i > 0 && h == cols[i - 1]) continue;
    gens.push_back(power(X, i) * power(Y, h));
  }
  // the d-th power of the maximal ideal keeps the support at one point
  for (long i = 0; i <= d; ++i) {
    gens.push_back(ParamForm::monomial(r, Monomial::var(0, static_cast<int>(i)) *
                                              Monomial::var(1, static_cast<int>(d - i))));
  }
  return GradedIdeal(r, gens, "local");
}

}  // namespace tc
