#include "tautocycle/verify.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "tautocycle/cycles.hpp"

namespace tc {

namespace {

const std::vector<std::pair<long, long>> kCurveCases{{4, 4}, {5, 8}, {6, 9}, {7, 12}};

Rat binom(long n, long k) { return poly_binom(n, static_cast<int>(k)); }

std::string ab(long a, long b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

struct Tally {
  long checked = 0;
  std::vector<std::string> bad;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && bad.size() < 5) bad.push_back(what);
    if (!ok && bad.size() == 5) bad.push_back("...");
  }
  CheckResult result(int id, const std::string& title, const std::string& unit) const {
    CheckResult r;
    r.id = id;
    r.title = title;
    r.pass = bad.empty();
    r.detail = std::to_string(checked) + " " + unit;
    if (!bad.empty()) {
      r.detail += "; failed:";
      for (auto& s : bad) r.detail += " " + s;
    }
    return r;
  }
};

CheckResult basis_degrees() {
  Tally t;
  for (auto [a, b] : kCurveCases) {
    auto m = ab_to_dg(a, b);
    FamilyEvaluator e0(std_family("C0", m)), e1(std_family("C1", m)), e2(std_family("C2", m));
    for (long n = a - 3; n <= b + 3; ++n) {
      std::string at = ab(a, b) + " n=" + std::to_string(n);
      t.expect(e0.degree(n) == 1, "C0 " + at);
      t.expect(e1.degree(n) == Rat(n - b + 1), "C1 " + at);
      t.expect(e2.degree(n) == binom(n - a + 2, 2) + Rat(n - b + 1), "C2 " + at);
    }
  }
  return t.result(1, "tautological basis degrees", "degrees");
}

CheckResult duality_table() {
  Tally t;
  for (auto [a, b] : kCurveCases) {
    TableReport T = intersection_table(ab_to_dg(a, b), 1, false);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        t.expect(T.L[i][j] == Rat(i == j ? 1 : 0),
                 "L" + std::to_string(i) + ".C" + std::to_string(j) + " " + ab(a, b));
    t.expect(T.mb1_c2 == binom(b - a + 1, 2), "M_{b-1}.C2 " + ab(a, b));
  }
  return t.result(2, "dual basis table", "entries");
}

CheckResult d_family() {
  Tally t;
  for (long a = 3; a <= 7; ++a)
    for (long b = std::max(a, 2 * a - 4); b <= std::max(a, 2 * a - 4) + 3; ++b) {
      MacaulayData m;
      try {
        m = ab_to_dg(a, b);
      } catch (const Error&) {
        continue;
      }
      CycleClass c = decompose(std_family("D", m)).cls;
      t.expect(c == CycleClass{false, {Rat(a - 2), 1, 0}}, "D " + ab(a, b) + " -> " + c.str());
    }
  return t.result(3, "basis change for D", "families");
}

CheckResult z_table() {
  Tally t;
  for (auto [a, b] : std::vector<std::pair<long, long>>{{5, 8}, {6, 9}}) {
    auto m = ab_to_dg(a, b);
    TableReport T = intersection_table(m, 1, true);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Rat want = i != j ? Rat(0) : (i == 0 ? Rat(m.rho) : Rat(1));
        t.expect(T.F[i][j] == want,
                 "F" + std::to_string(i) + ".Z" + std::to_string(j) + " " + ab(a, b));
      }
  }
  return t.result(4, "second basis table", "entries");
}

CheckResult plane_points() {
  Tally t;
  for (long d = 4; d <= 6; ++d) {
    FamilyEvaluator E(std_point_family("E", d)), F(std_point_family("F", d)),
        G(std_point_family("G", d));
    for (long n = d - 1; n <= d + 4; ++n) {
      std::string at = "d=" + std::to_string(d) + " n=" + std::to_string(n);
      t.expect(E.degree(n) == 1, "E " + at);
      t.expect(F.degree(n) == Rat(n - d + 1), "F " + at);
      t.expect(G.degree(n) == binom(d, 2), "G " + at);
    }
  }
  return t.result(5, "points in the plane", "degrees");
}

CheckResult cone() {
  Tally t;
  long pts = 0, curves = 0;
  for (long d = 1; d <= 5; ++d)
    for (auto& I : plane_point_monomial_ideals(d))
      for (int i = 1; i <= 2; ++i) {
        if (!g_fixed(I, i)) continue;
        CycleFamily F;
        F.name = "orbit";
        F.ideal = I;
        F.plane_points = true;
        F.d_points = d;
        F.action = OneParamAction::psi(i, 3);
        CycleClass c = decompose(F, 1, 6).cls;
        t.expect(cone_check(c), "points d=" + std::to_string(d) + " " + c.str());
        ++pts;
      }
  auto m = ab_to_dg(5, 8);
  for (auto& I : plane_curve_monomial_ideals(m))
    for (int i = 1; i <= 3; ++i) {
      if (!g_fixed(I, i) || invariant_under(I, OneParamAction::psi(i))) continue;
      CycleFamily F;
      F.name = "orbit";
      F.ideal = I;
      F.m = m;
      F.action = OneParamAction::psi(i);
      CycleClass c = decompose(F).cls;
      t.expect(cone_check(c), "curve " + c.str());
      ++curves;
    }
  t.expect(curves >= 20, "fewer than 20 curve cycles");
  CheckResult r = t.result(6, "cone nonnegativity", "checks");
  r.detail += " (" + std::to_string(pts) + " point orbits, " + std::to_string(curves) +
              " curve orbits)";
  return r;
}

PScalar random_scalar(std::mt19937& rng, int maxdeg, double zero_prob) {
  std::uniform_real_distribution<double> u(0, 1);
  if (u(rng) < zero_prob) return PScalar();
  std::uniform_int_distribution<int> c(-3, 3), d(0, maxdeg);
  PScalar s;
  int k = d(rng);
  for (int i = 0; i <= k; ++i) s += PScalar::mono(Rat(c(rng)), i);
  return s;
}

CheckResult backends(unsigned seed) {
  Tally t;
  std::mt19937 rng(seed);
  int diag = 0, general = 0;
  while (diag < 200) {
    int m = std::uniform_int_distribution<int>(1, 6)(rng);
    int N = std::uniform_int_distribution<int>(m, 12)(rng);
    std::vector<long> w(N);
    for (auto& x : w) x = std::uniform_int_distribution<long>(0, 6)(rng);
    RowEchelon E(N);
    std::vector<SparseVec> raw;
    for (int i = 0; i < m; ++i) {
      SparseVec row;
      for (int c = 0; c < N; ++c) {
        int v = std::uniform_int_distribution<int>(-2, 2)(rng);
        if (v) row.emplace_back(c, Rat(v));
      }
      raw.push_back(row);
      E.insert(row);
    }
    if (E.rank() < m) continue;
    PMatrix M(m, std::vector<PScalar>(N));
    for (int i = 0; i < m; ++i)
      for (auto& [c, v] : raw[i]) M[i][c] = PScalar::mono(v, static_cast<int>(w[c]));
    t.expect(wedge_degree_greedy(E, w) == wedge_degree_exhaustive(M),
             "diagonal #" + std::to_string(diag));
    ++diag;
  }
  while (general < 200) {
    int m = std::uniform_int_distribution<int>(1, 6)(rng);
    int N = std::uniform_int_distribution<int>(m, 12)(rng);
    PMatrix M(m, std::vector<PScalar>(N));
    for (auto& row : M)
      for (auto& e : row) e = random_scalar(rng, 2, 0.4);
    if (rank_at(M, Rat(7, 3)) < m) continue;
    t.expect(wedge_degree_projected(M, seed + 1000 + general) == wedge_degree_exhaustive(M),
             "general #" + std::to_string(general));
    ++general;
  }
  return t.result(7, "wedge backends agree", "instances");
}

CheckResult degenerations(unsigned seed) {
  Tally t;
  ParamForm tt = parse_form("t", RingSpec::p3());
  auto ideals = seeded_u_ideals(50, seed);
  for (auto& s : ideals) {
    int cut = static_cast<int>(s.m.b) + 2;
    LimitResult L = limit_ideal(s.ideal, {0, 0, 0, 1}, true, cut);
    t.expect(L.hf_source == L.hf_limit, s.label + " limit HF");
    G3Report g = lemma_g3_check(s.ideal, cut);
    t.expect(g.contained, s.label + " containment");
    t.expect(g.punctual, s.label + " punctual quotient");
  }
  t.expect(ideals.size() == 50, "too few seeded ideals");
  CheckResult r = t.result(8, "degenerations in U(t)", "checks");
  r.detail += " on " + std::to_string(ideals.size()) + " ideals";
  return r;
}

CheckResult regularity_lex(unsigned seed) {
  Tally t;
  for (auto [a, b] : kCurveCases) {
    auto m = ab_to_dg(a, b);
    t.expect(regularity(lex_ideal(m), static_cast<int>(b) + 4, seed) == b, "reg lex " + ab(a, b));
  }
  auto m = ab_to_dg(5, 8);
  int top = static_cast<int>(m.b) + 3;
  auto hl = hilbert_function(lex_ideal(m), 0, top, 8);
  auto Is = plane_curve_monomial_ideals(m);
  std::mt19937 rng(seed);
  std::shuffle(Is.begin(), Is.end(), rng);
  Is.resize(std::min<size_t>(30, Is.size()));
  long hm = 0;
  for (size_t k = 0; k < Is.size(); ++k) {
    auto h = hilbert_function(Is[k], 0, top, 8);
    bool dom = true;
    for (auto& [n, v] : h) dom = dom && hl[n] >= v;
    t.expect(dom, "domination #" + std::to_string(k));
    bool is = is_Hm(Is[k], m);
    hm += is;
    t.expect(is == (regularity(Is[k], top + 2, seed) == m.b), "H_m vs reg #" + std::to_string(k));
  }
  t.expect(Is.size() == 30, "fewer than 30 ideals");
  CheckResult r = t.result(9, "regularity and lex maximality", "checks");
  r.detail += " (" + std::to_string(hm) + " of " + std::to_string(Is.size()) + " in H_m)";
  return r;
}

CheckResult pencils() {
  Tally t;
  auto m = ab_to_dg(5, 8);
  std::vector<std::string> K{"y", "z^4"};
  for (bool inf : {false, true}) {
    CycleClass c = decompose(pencil_family(m, "x", "z^4", "t^4", K, inf)).cls;
    t.expect(c == CycleClass{false, {0, 0, 1}}, std::string("pencil ") + (inf ? "inf " : "0 ") + c.str());
  }
  CycleClass s = decompose(shifted_family(m, "x", "y^4", "y", "z^4", "t^4")).cls;
  t.expect(s == CycleClass{false, {0, 1, 0}}, "shifted " + s.str());
  CycleClass s2 = decompose(shifted_family(m, "x", "y^4", "y", "z^4", "z^3*t")).cls;
  t.expect(s2 == CycleClass{false, {0, 1, 0}}, "shifted " + s2.str());
  return t.result(10, "pencil and shifted families", "families");
}

CheckResult points_and_projection(unsigned seed) {
  Tally t;
  for (unsigned k = 0; k < 20; ++k) {
    long d = k % 2 ? 5 : 4;
    GradedIdeal L = local_point_ideal(d, seed * 100 + k);
    D1Report r = lemma_d1_check(L, d);
    t.expect(r.ok(), "configuration #" + std::to_string(k));
  }
  std::mt19937 rng(seed);
  auto rnd = [&] { return Rat(std::uniform_int_distribution<int>(-5, 5)(rng)); };
  int done = 0;
  while (done < 100) {
    Point p(4), c(4), h(4);
    for (int i = 0; i < 4; ++i) {
      p[i] = rnd();
      c[i] = rnd();
      h[i] = rnd();
    }
    Rat hc = 0;
    for (int i = 0; i < 4; ++i) hc += h[i] * c[i];
    bool pz = true, cz = true;
    for (int i = 0; i < 4; ++i) {
      pz = pz && p[i] == 0;
      cz = cz && c[i] == 0;
    }
    if (hc == 0 || pz || cz || normalize_point(p) == normalize_point(c)) continue;
    Point q = project_point(p, c, h);
    // line-plane oracle: q = (h.c) p - (h.p) c
    Rat hp = 0;
    for (int i = 0; i < 4; ++i) hp += h[i] * p[i];
    Point o(4);
    for (int i = 0; i < 4; ++i) o[i] = hc * p[i] - hp * c[i];
    t.expect(q == normalize_point(o), "projection #" + std::to_string(done));
    t.expect(project_point_by_limit(p, c, h) == q, "projection limit #" + std::to_string(done));
    ++done;
  }
  return t.result(11, "sections and projections", "checks");
}

CheckResult scope(const std::string& root) {
  CheckResult r;
  r.id = 12;
  r.title = "scope of the global statements";
  std::ifstream in(root + "/README.md");
  std::stringstream ss;
  ss << in.rdbuf();
  r.pass = ss.str().find("## Scope") != std::string::npos;
  r.detail = r.pass ? "substitution documented in README (Scope)"
                    : "README Scope section not found under " + root;
  return r;
}

}  // namespace

std::vector<SeededIdeal> seeded_u_ideals(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<std::pair<long, long>> cases{{4, 4}, {4, 5}, {4, 6}, {5, 6}, {5, 7}, {5, 8}};
  ParamForm t = parse_form("t", RingSpec::p3());
  std::vector<SeededIdeal> out;
  for (int k = 0; static_cast<int>(out.size()) < count && k < 20 * count; ++k) {
    auto [a, b] = cases[k % cases.size()];
    auto m = ab_to_dg(a, b);
    auto names = family_names(false);
    std::string name = names[(k / cases.size()) % names.size()];
    if (name == "D" && b < 2 * a - 4) continue;
    Rat alpha = Rat(std::uniform_int_distribution<int>(1, 7)(rng));
    GradedIdeal I = std_family(name, m).ideal.specialize(alpha);
    // unitriangular change of x, y, z with small entries
    PMatrix M(4, std::vector<PScalar>(4));
    for (int i = 0; i < 4; ++i) M[i][i] = PScalar(1);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        M[j][i] = PScalar(Rat(std::uniform_int_distribution<int>(-2, 2)(rng)));
    GradedIdeal J = apply_action(I, OneParamAction::custom(M));
    if (!is_nzd(J, t, static_cast<int>(b) + 2)) continue;
    out.push_back({name + ab(a, b) + " A=" + alpha.get_str(), m, J});
  }
  return out;
}

CheckResult run_paper_check(int id, unsigned seed, const std::string& root) {
  static const char* titles[] = {"",
                                 "tautological basis degrees",
                                 "dual basis table",
                                 "basis change for D",
                                 "second basis table",
                                 "points in the plane",
                                 "cone nonnegativity",
                                 "wedge backends agree",
                                 "degenerations in U(t)",
                                 "regularity and lex maximality",
                                 "pencil and shifted families",
                                 "sections and projections",
                                 "scope of the global statements"};
  if (id < 1 || id > kPaperChecks) throw Error("verify.bad_check", "no check " + std::to_string(id));
  try {
    switch (id) {
      case 1: return basis_degrees();
      case 2: return duality_table();
      case 3: return d_family();
      case 4: return z_table();
      case 5: return plane_points();
      case 6: return cone();
      case 7: return backends(seed);
      case 8: return degenerations(seed);
      case 9: return regularity_lex(seed);
      case 10: return pencils();
      case 11: return points_and_projection(seed);
      default: return scope(root);
    }
  } catch (const Error& e) {
    return CheckResult{id, titles[id], false, std::string("error ") + e.code + ": " + e.what()};
  }
}

std::vector<CheckResult> run_paper_suite(unsigned seed, const std::string& root,
                                         const std::function<void(const CheckResult&)>& each) {
  std::vector<CheckResult> out;
  for (int id = 1; id <= kPaperChecks; ++id) {
    out.push_back(run_paper_check(id, seed, root));
    if (each) each(out.back());
  }
  return out;
}

std::string format_check(const CheckResult& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title +
         ": " + r.detail;
}

}  // namespace tc
