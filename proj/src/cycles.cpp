#include "tautocycle/cycles.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>

namespace tc {

namespace {

ParamForm pform(const RingSpec& r, const std::string& s) { return parse_form(s, r); }

std::string pw(const std::string& v, long e) {
  if (e <= 0) return "";
  return e == 1 ? v : v + "^" + std::to_string(e);
}

// product of factors, dropping empty ones
std::string prod(std::initializer_list<std::string> fs) {
  std::string s;
  for (auto& f : fs) {
    if (f.empty()) continue;
    s += (s.empty() ? "" : "*") + f;
  }
  return s.empty() ? "1" : s;
}

Rat binom_rat(long n, long k) { return poly_binom(n, static_cast<int>(k)); }

CycleFamily curve(const std::string& name, const MacaulayData& m, std::vector<ParamForm> gens) {
  CycleFamily F;
  F.name = name + "(" + std::to_string(m.a) + "," + std::to_string(m.b) + ")";
  F.ideal = GradedIdeal(RingSpec::p3(), std::move(gens), F.name);
  F.m = m;
  return F;
}

// Gaussian elimination on a small square system; throws if singular
std::vector<Rat> solve(std::vector<std::vector<Rat>> A, std::vector<Rat> y) {
  int n = static_cast<int>(y.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) throw Error("cycles.singular", "sample system is singular");
    std::swap(A[p], A[c]);
    std::swap(y[p], y[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rat f = A[r][c] / A[c][c];
      for (int k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      y[r] -= f * y[c];
    }
  }
  for (int c = 0; c < n; ++c) y[c] /= A[c][c];
  return y;
}

// basis degree functions n -> (M_n . basis element)
std::vector<Rat> basis_row(const CycleFamily& F, long n) {
  if (F.plane_points) return {Rat(1), Rat(n - F.d_points + 1)};
  Rat u = n - F.m.b + 1;
  return {Rat(1), u, binom_rat(n - F.m.a + 2, 2) + u};
}

void partitions(long n, long maxpart, std::vector<long>& cur,
                std::vector<std::vector<long>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (long p = std::min(n, maxpart); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<long>> partitions(long n) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  partitions(n, n, cur, out);
  return out;
}

// colength-|lambda| monomial ideal in variables u, v (row i of the
// staircase has lambda[i] boxes in the v direction)
std::vector<Monomial> staircase(const std::vector<long>& lambda, int u, int v) {
  std::vector<Monomial> g;
  for (size_t i = 0; i <= lambda.size(); ++i) {
    long len = i < lambda.size() ? lambda[i] : 0;
    Monomial m;
    m.e[u] = static_cast<uint16_t>(i);
    m.e[v] = static_cast<uint16_t>(len);
    g.push_back(m);
  }
  return minimalize(g);
}

// all saturated monomial ideals of colength d in the plane spanned by
// variables vs (three of them), as generator lists
std::vector<std::vector<Monomial>> plane_monomials(long d, const std::array<int, 3>& vs) {
  std::vector<std::vector<Monomial>> out;
  // coordinate points: (vs0,vs1) = 0, (vs0,vs2) = 0, (vs1,vs2) = 0
  const int pts[3][2] = {{vs[0], vs[1]}, {vs[0], vs[2]}, {vs[1], vs[2]}};
  for (long d0 = 0; d0 <= d; ++d0)
    for (long d1 = 0; d0 + d1 <= d; ++d1) {
      long d2 = d - d0 - d1;
      std::vector<std::vector<long>> p0 = d0 ? partitions(d0) : std::vector<std::vector<long>>{{}};
      std::vector<std::vector<long>> p1 = d1 ? partitions(d1) : std::vector<std::vector<long>>{{}};
      std::vector<std::vector<long>> p2 = d2 ? partitions(d2) : std::vector<std::vector<long>>{{}};
      for (auto& l0 : p0)
        for (auto& l1 : p1)
          for (auto& l2 : p2) {
            std::vector<Monomial> acc{Monomial()};
            const std::vector<long>* ls[3] = {&l0, &l1, &l2};
            for (int k = 0; k < 3; ++k) {
              if (ls[k]->empty()) continue;
              acc = monomial_intersection(acc, staircase(*ls[k], pts[k][0], pts[k][1]));
            }
            out.push_back(minimalize(acc));
          }
    }
  return out;
}

}  // namespace

std::vector<std::string> CycleClass::labels() const {
  if (plane) return {"qE", "qF"};
  return {"q0", "q1", "q2"};
}

std::string CycleClass::str() const {
  std::string s = "(";
  for (size_t i = 0; i < q.size(); ++i) s += (i ? ", " : "") + rat_str(q[i]);
  return s + ")";
}

std::vector<std::string> family_names(bool plane) {
  if (plane) return {"E", "F", "G"};
  return {"C0", "C1", "C2", "C3", "D", "E", "Z0", "Z1", "Z2", "Z3"};
}

CycleFamily std_family(const std::string& name, const MacaulayData& m) {
  const RingSpec r = RingSpec::p3();
  long a = m.a, b = m.b, c = m.c;
  if (a < 2 || b < a) throw Error("cycles.inadmissible", "need 2 <= a <= b");
  auto f = [&](const std::string& s) { return pform(r, s); };
  if (name == "C0" || name == "E")
    return curve(name, m,
                 {f("x^2"), f("x*y"), f("x*z"), f(pw("y", a)), f(prod({pw("y", a - 1), pw("z", c)})),
                  f(prod({"x", pw("t", b - 2)}) + "+" + prod({"A", pw("y", a - 1), pw("z", b - a)}))});
  if (name == "C1" || name == "Z1")
    return curve(name, m,
                 {f("x"), f(pw("y", a)), f(prod({pw("y", a - 1), pw("z", b - a)})) * f("A*z+t")});
  if (name == "C2" || name == "Z2")
    return curve(name, m,
                 {f("x"), f(pw("y", a - 1)) * f("A*y+z"),
                  f(prod({pw("y", a - 2), pw("z", c)})) * f("A*y+z")});
  if (name == "C3" || name == "Z3")
    return curve(name, m, {f("A*x+y"), f(pw("x", a)), f(prod({pw("x", a - 1), pw("z", c)}))});
  if (name == "Z0")
    return curve(name, m,
                 {f("x"), f(pw("y", a - 1)) * f("A*y+z"), f(prod({pw("y", a - 1), pw("z", c)}))});
  if (name == "D") {
    long e = b - 2 * a + 4;
    if (e < 0 || a < 3)
      throw Error("cycles.inadmissible",
                  "D needs b >= 2a-4 and a >= 3 (got a=" + std::to_string(a) +
                      ", b=" + std::to_string(b) + ")");
    return curve(name, m,
                 {f("x^2"), f("x*y"), f(pw("y", a - 1)),
                  f(prod({pw("z", e)})) * f(prod({pw("y", a - 2)}) + "+" + prod({"A", "x", pw("z", a - 3)}))});
  }
  throw Error("cycles.unknown_family", "unknown curve family '" + name + "'");
}

CycleFamily std_point_family(const std::string& name, long d) {
  const RingSpec r = RingSpec::p2();
  if (d < 2) throw Error("cycles.inadmissible", "need d >= 2 points");
  auto f = [&](const std::string& s) { return pform(r, s); };
  CycleFamily F;
  F.name = name + "(" + std::to_string(d) + ")";
  F.plane_points = true;
  F.d_points = d;
  std::vector<ParamForm> g;
  if (name == "E")
    g = {f("x^2"), f("x*y"), f(pw("y", d - 1) + "+" + prod({"A", "x", pw("z", d - 2)}))};
  else if (name == "F")
    g = {f("x"), f(pw("y", d - 1)) * f("A*y+z")};
  else if (name == "G")
    g = {f("A*x+y"), f(pw("x", d))};
  else
    throw Error("cycles.unknown_family", "unknown point family '" + name + "'");
  F.ideal = GradedIdeal(r, g, F.name);
  return F;
}

CycleFamily pencil_family(const MacaulayData& m, const std::string& l, const std::string& f,
                          const std::string& g, const std::vector<std::string>& K,
                          bool at_infinity) {
  const RingSpec r = RingSpec::p3();
  ParamForm F = pform(r, f), G = pform(r, g);
  if (F.degree != G.degree) throw Error("cycles.inadmissible", "pencil members differ in degree");
  ParamForm h = at_infinity ? F + G * PScalar::param() : F * PScalar::param() + G;
  std::vector<ParamForm> gens{pform(r, l)};
  for (auto& k : K) gens.push_back(h * pform(r, k));
  return curve(at_infinity ? "pencil-inf" : "pencil", m, gens);
}

CycleFamily shifted_family(const MacaulayData& m, const std::string& l, const std::string& f,
                           const std::string& h, const std::string& g, const std::string& g2) {
  const RingSpec r = RingSpec::p3();
  ParamForm F = pform(r, f);
  ParamForm moving = pform(r, g) + pform(r, g2) * PScalar::param();
  return curve("shifted", m, {pform(r, l), F * pform(r, h), F * moving});
}

Decomposition decompose(const CycleFamily& F, unsigned seed, int count) {
  FamilyEvaluator ev(F, seed);
  int k = F.plane_points ? 2 : 3;
  if (count < k) count = k;
  long n0 = F.direct_start();
  std::vector<Rat> vals(count);
  // evaluating the first value also fixes the isotropy order
  vals[0] = ev.degree(n0);
  parallel_for(count - 1, [&](int i) { vals[i + 1] = ev.degree(n0 + i + 1); });
  Decomposition D;
  for (int i = 0; i < count; ++i) D.samples.emplace_back(n0 + i, vals[i]);
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> y;
  for (int i = 0; i < k; ++i) {
    A.push_back(basis_row(F, n0 + i));
    y.push_back(vals[i]);
  }
  D.cls.plane = F.plane_points;
  D.cls.q = solve(A, y);
  for (int i = k; i < count; ++i) {
    auto row = basis_row(F, n0 + i);
    Rat pred = 0;
    for (int j = 0; j < k; ++j) pred += row[j] * D.cls.q[j];
    D.residuals.push_back(vals[i] - pred);
  }
  for (auto& r : D.residuals)
    if (r != 0)
      throw Error("cycles.residual",
                  F.name + ": degree function is not of the expected form (residual " +
                      rat_str(r) + ")");
  D.backend = ev.backend();
  D.isotropy = ev.isotropy();
  return D;
}

Decomposition complexity(const GradedIdeal& I, const MacaulayData& m, unsigned seed) {
  CycleFamily F;
  F.name = I.tag.empty() ? "ideal" : I.tag;
  F.ideal = I;
  F.m = m;
  F.action = OneParamAction::sigma(4);
  return decompose(F, seed);
}

Decomposition complexity_points(const GradedIdeal& I, long d, unsigned seed) {
  CycleFamily F;
  F.name = I.tag.empty() ? "ideal" : I.tag;
  F.ideal = I;
  F.plane_points = true;
  F.d_points = d;
  F.action = OneParamAction::sigma(3);
  return decompose(F, seed);
}

bool cone_check(const CycleClass& c) {
  for (auto& q : c.q)
    if (q < 0 || q.get_den() != 1) return false;
  return true;
}

TautCombo taut_L(int i, const MacaulayData& m) {
  TautCombo L;
  long b = m.b, r = m.r, rho = m.rho;
  switch (i) {
    case 0:
      L.exps = {{b - 1, 1 - rho}, {b, 2 * rho}, {b + 1, -rho}};
      break;
    case 1:
      L.exps = {{b - 1, -r - 3}, {b, 2 * r + 5}, {b + 1, -r - 2}};
      break;
    case 2:
      L.exps = {{b - 1, 1}, {b, -2}, {b + 1, 1}};
      break;
    case 3:
      L.lin = 1;
      break;
    default:
      throw Error("cycles.bad_index", "L index must be 0..3");
  }
  return L;
}

TautCombo taut_F(int i, const MacaulayData& m) {
  long a = m.a, b = m.b;
  Rat beta = binom_rat(a - 1, 2);
  Rat gamma = Rat(b - a) * binom_rat(a, 2) + binom_rat(a + 1, 3);
  TautCombo L = taut_L(i, m);
  if (i == 0) L.lin = -gamma.get_num().get_si();
  if (i == 1) L.lin = -beta.get_num().get_si();
  return L;
}

TableReport intersection_table(const MacaulayData& m, unsigned seed, bool with_f) {
  TableReport T;
  T.m = m;
  std::vector<std::string> cs{"C0", "C1", "C2"}, zs{"Z0", "Z1", "Z2", "Z3"};
  std::vector<std::unique_ptr<FamilyEvaluator>> ev;
  for (auto& n : cs) ev.push_back(std::make_unique<FamilyEvaluator>(std_family(n, m), seed));
  if (with_f)
    for (auto& n : zs) ev.push_back(std::make_unique<FamilyEvaluator>(std_family(n, m), seed));
  // one task per family: the three degrees and the linear-form degree
  int nf = static_cast<int>(ev.size());
  parallel_for(nf, [&](int k) {
    for (long n = m.b - 1; n <= m.b + 1; ++n) ev[k]->degree(n);
    if (k >= 3) ev[k]->linear_degree();
  });
  T.L.assign(3, std::vector<Rat>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) T.L[i][j] = ev[j]->combo(taut_L(i, m));
  T.mb1_c2 = ev[2]->degree(m.b - 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (T.L[i][j] != Rat(i == j ? 1 : 0))
        T.mismatches.push_back("(L" + std::to_string(i) + ".C" + std::to_string(j) +
                               ") = " + rat_str(T.L[i][j]));
  if (T.mb1_c2 != binom_rat(m.b - m.a + 1, 2))
    T.mismatches.push_back("(M_{b-1}.C2) = " + rat_str(T.mb1_c2));
  if (with_f) {
    T.F.assign(4, std::vector<Rat>(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        T.F[i][j] = ev[3 + j]->combo(taut_F(i, m));
        Rat want = i != j ? Rat(0) : (i == 0 ? Rat(m.rho) : Rat(1));
        if (T.F[i][j] != want)
          T.mismatches.push_back("(F" + std::to_string(i) + ".Z" + std::to_string(j) +
                                 ") = " + rat_str(T.F[i][j]) + ", expected " + rat_str(want));
      }
  }
  return T;
}

std::vector<GradedIdeal> plane_point_monomial_ideals(long d) {
  std::vector<GradedIdeal> out;
  for (auto& g : plane_monomials(d, {0, 1, 2}))
    out.push_back(GradedIdeal::from_monomials(RingSpec::p2(), g));
  return out;
}

std::vector<GradedIdeal> plane_curve_monomial_ideals(const MacaulayData& m) {
  std::vector<GradedIdeal> out;
  std::set<std::vector<uint64_t>> seen;
  auto Ks = plane_monomials(m.c, {1, 2, 3});
  for (auto& f : monomials(4, static_cast<int>(m.a - 1))) {
    if (f.e[0]) continue;
    for (auto& K : Ks) {
      std::vector<Monomial> g{Monomial::var(0)};
      for (auto& k : K) g.push_back(f * k);
      g = minimalize(g);
      std::vector<uint64_t> key;
      for (auto& x : g) key.push_back(x.key());
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second) continue;
      out.push_back(GradedIdeal::from_monomials(RingSpec::p3(), g));
    }
  }
  return out;
}

bool g_fixed(const GradedIdeal& I, int i) {
  int nv = I.nvars();
  for (auto [r, c] : stabilizer_roots(i, nv))
    if (!invariant_under(I, OneParamAction::root(r, c, nv))) return false;
  return true;
}

}  // namespace tc
