#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "tautocycle/cycles.hpp"
#include "tautocycle/structure.hpp"

using namespace tc;

namespace {

GradedIdeal ideal(std::vector<std::string> g, RingSpec r = RingSpec::p3()) {
  return GradedIdeal::parse(r, g);
}

// membership in every part agrees with membership in I, monomial by monomial
bool reintersects(const GradedIdeal& I, const std::vector<PrimaryPart>& parts, int top) {
  auto g = I.monomial_gens();
  for (int n = 0; n <= top; ++n)
    for (auto& m : monomials(I.nvars(), n)) {
      bool all = true;
      for (auto& p : parts) all = all && in_monomial_ideal(m, p.ideal.monomial_gens());
      if (all != in_monomial_ideal(m, g)) return false;
    }
  return true;
}

// x_i^k in q for every prime variable, and no other variable occurs
bool primary_shape(const PrimaryPart& p, int nv) {
  auto pv = p.prime.monomial_gens();
  std::set<int> vars;
  for (auto& m : pv)
    for (int i = 0; i < nv; ++i)
      if (m.e[i]) vars.insert(i);
  for (auto& m : p.ideal.monomial_gens())
    for (int i = 0; i < nv; ++i)
      if (m.e[i] && !vars.count(i)) return false;
  for (int i : vars) {
    bool pure = false;
    for (auto& m : p.ideal.monomial_gens()) pure = pure || (m.e[i] == m.deg() && m.deg() > 0);
    if (!pure) return false;
  }
  return p.dim == nv - static_cast<int>(vars.size()) - 1;
}

GradedIdeal random_monomial(std::mt19937& rng, int nv, int ngens, int maxdeg) {
  std::vector<Monomial> ms;
  std::uniform_int_distribution<int> e(0, maxdeg);
  while (static_cast<int>(ms.size()) < ngens) {
    Monomial m;
    for (int i = 0; i < nv; ++i) m.e[i] = static_cast<uint16_t>(e(rng) / (i + 1 == nv ? 2 : 1));
    if (m.deg() > 0) ms.push_back(m);
  }
  return GradedIdeal::from_monomials(nv == 3 ? RingSpec::p2() : RingSpec::p3(), minimalize(ms));
}

GradedIdeal permuted(const GradedIdeal& I, const std::vector<int>& perm) {
  std::vector<Monomial> ms;
  for (auto& m : I.monomial_gens()) {
    Monomial q;
    for (int i = 0; i < I.nvars(); ++i) q.e[perm[i]] = m.e[i];
    ms.push_back(q);
  }
  return GradedIdeal::from_monomials(I.ring, minimalize(ms));
}

long quotient_hf(const std::vector<Monomial>& g, int nv, int n) {
  return static_cast<long>(monomials(nv, n).size()) - monomial_ideal_dim(g, nv, n);
}

}  // namespace

TEST_CASE("monomial primary splitting") {
  auto parts = monomial_primary_split(ideal({"y", "x*z", "x*t"}));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].ideal.gen_strings() == std::vector<std::string>{"x", "y"});
  CHECK(parts[0].dim == 1);
  CHECK(parts[1].ideal.gen_strings() == std::vector<std::string>{"y", "z", "t"});
  CHECK(parts[1].dim == 0);
  auto prime = monomial_primary_split(ideal({"x", "z"}));
  CHECK(prime.size() == 1);
  CHECK(prime[0].ideal.gen_strings() == std::vector<std::string>{"x", "z"});
  auto two = monomial_primary_split(ideal({"x^2", "x*y"}));
  REQUIRE(two.size() == 2);
  CHECK(two[0].ideal.gen_strings() == std::vector<std::string>{"x"});
  CHECK(two[1].ideal.gen_strings() == std::vector<std::string>{"y", "x^2"});
  CHECK_THROWS_AS(monomial_primary_split(ideal({"x+y"})), Error);

  std::mt19937 rng(11);
  for (int k = 0; k < 100; ++k) {
    int nv = k % 2 ? 3 : 4;
    GradedIdeal I = random_monomial(rng, nv, 3 + k % 4, 4);
    auto ps = monomial_primary_split(I);
    Monomial top;
    for (auto& g : I.monomial_gens()) top = top.lcm(g);
    CHECK(reintersects(I, ps, top.deg()));
    std::set<std::vector<std::string>> primes;
    for (auto& p : ps) {
      CHECK(primary_shape(p, nv));
      primes.insert(p.prime.gen_strings());
    }
    CHECK(primes.size() == ps.size());
    // irredundant: dropping any part loses something
    for (size_t j = 0; j < ps.size() && ps.size() > 1; ++j) {
      auto fewer = ps;
      fewer.erase(fewer.begin() + static_cast<long>(j));
      CHECK_FALSE(reintersects(I, fewer, top.deg()));
    }
  }
}

TEST_CASE("CM part and punctual components") {
  auto s = cm_split(ideal({"y", "x*z", "x*t"}));
  CHECK(s.cm_part.gen_strings() == std::vector<std::string>{"x", "y"});
  REQUIRE(s.punctual.size() == 1);
  CHECK(s.punctual[0].length == 1);
  CHECK(s.punctual[0].point == Point{1, 0, 0, 0});
  CHECK(cm_split(lex_ideal(ab_to_dg(5, 8))).total_length() == 4);
  CHECK(cm_split(ideal({"x", "y^3"})).punctual.empty());
  CHECK_THROWS_AS(cm_split(ideal({"x+y", "z^2"})), Error);

  // total length is the constant gap between the Hilbert polynomials
  std::mt19937 rng(5);
  int tested = 0;
  for (int k = 0; tested < 40 && k < 400; ++k) {
    GradedIdeal I = random_monomial(rng, 4, 4, 4);
    bool curve = true;
    for (auto& p : monomial_primary_split(I)) curve = curve && p.dim <= 1;
    bool has_curve = false;
    for (auto& p : monomial_primary_split(I)) has_curve = has_curve || p.dim == 1;
    if (!curve || !has_curve) continue;
    SplitIdeal S = cm_split(I);
    auto sat = monomial_saturation(I.monomial_gens(), 4);
    auto J = S.cm_part.monomial_gens();
    long g20 = quotient_hf(sat, 4, 20) - quotient_hf(J, 4, 20);
    long g21 = quotient_hf(sat, 4, 21) - quotient_hf(J, 4, 21);
    CHECK(g20 == g21);
    CHECK(S.total_length() == g20);
    // the parts re-intersect to the saturation
    auto back = J;
    for (auto& p : S.punctual) back = monomial_intersection(back, p.ideal.monomial_gens());
    CHECK(minimalize(back) == minimalize(sat));
    ++tested;
  }
  CHECK(tested == 40);
}

TEST_CASE("structured splitting reproduces its construction") {
  RingSpec r = RingSpec::p3();
  GradedIdeal J = ideal({"x+z", "y"});
  // a point on the line, given with its prime
  GradedIdeal Q = ideal({"x^2+2*x*z+z^2", "y", "z"});
  GradedIdeal P = ideal({"x", "y", "z"});
  Q.parts = {P};
  Q.part_kinds = {"prime"};
  GradedIdeal I = structured_intersection({J, Q}, {"cm", "point"}, 6);
  SplitIdeal S = cm_split(I);
  REQUIRE(S.punctual.size() == 1);
  CHECK(S.punctual[0].length == 1);
  CHECK(S.punctual[0].point == Point{0, 0, 0, 1});

  GradedIdeal Q2 = ideal({"x+z", "y^2", "z"});
  Q2.parts = {P};
  Q2.part_kinds = {"prime"};
  GradedIdeal I2 = structured_intersection({J, Q2}, {"cm", "point"}, 6);
  CHECK(cm_split(I2).punctual[0].length == 1);
  CHECK(f_equiv(I, I2));

  GradedIdeal Q3 = ideal({"x^2+2*x*z+z^2", "y", "z^2"});
  Q3.parts = {P};
  Q3.part_kinds = {"prime"};
  GradedIdeal I3 = structured_intersection({J, Q3}, {"cm", "point"}, 7);
  CHECK(cm_split(I3).punctual[0].length == 2);
  CHECK_FALSE(f_equiv(I, I3));

  // parts that do not give back the ideal are refused
  GradedIdeal bad = I;
  bad.gens = ideal({"x+z", "y"}).gens;
  CHECK_THROWS_AS(cm_split(bad), Error);
  // a non-monomial point part needs its prime
  GradedIdeal Qn = ideal({"x^2+2*x*z+z^2", "y", "z"});
  CHECK_THROWS_AS(cm_split(structured_intersection({J, Qn}, {"cm", "point"}, 6)), Error);
}

TEST_CASE("Hilbert-Chow cycle") {
  CurveCycle two = hilbert_chow(GradedIdeal::from_monomials(
      RingSpec::p3(),
      monomial_intersection(ideal({"x", "y"}).monomial_gens(), ideal({"z", "t"}).monomial_gens())));
  REQUIRE(two.comps.size() == 2);
  CHECK(two.comps[0].multiplicity == 1);
  CHECK(two.comps[1].multiplicity == 1);
  CurveCycle emb = hilbert_chow(ideal({"x^2", "x*y"}, RingSpec::p2()));
  REQUIRE(emb.comps.size() == 1);
  CHECK(emb.comps[0].key == std::vector<std::string>{"x"});
  CHECK(emb.comps[0].multiplicity == 1);
  CHECK(hilbert_chow(ideal({"x^2", "y"})).comps[0].multiplicity == 2);
  CHECK(hilbert_chow(ideal({"x^2", "x*y", "y^2"})).comps[0].multiplicity == 3);
  // the lex ideal is a plane curve of degree a-1 with an embedded point
  auto m = ab_to_dg(5, 8);
  CurveCycle lex = hilbert_chow(lex_ideal(m));
  REQUIRE(lex.comps.size() == 1);
  CHECK(lex.comps[0].multiplicity == m.a - 1);

  // a non-monomial double line given with its prime
  GradedIdeal q = ideal({"x^2+2*x*z+z^2", "y"});
  q.parts = {ideal({"x+z", "y"})};
  q.part_kinds = {"prime"};
  GradedIdeal I = structured_intersection({q}, {"curve"}, 6);
  CurveCycle c = hilbert_chow(I);
  REQUIRE(c.comps.size() == 1);
  CHECK(c.comps[0].multiplicity == 2);
  CHECK(c.comps[0].key == std::vector<std::string>{"x + z", "y"});

  // equivariance under permutations of the variables
  std::mt19937 rng(9);
  std::vector<int> perm{0, 1, 2, 3};
  int tested = 0;
  for (int k = 0; tested < 30 && k < 300; ++k) {
    GradedIdeal J = random_monomial(rng, 4, 4, 4);
    std::shuffle(perm.begin(), perm.end(), rng);
    CurveCycle a;
    try {
      a = hilbert_chow(J);
    } catch (const Error&) {
      continue;
    }
    CurveCycle b = hilbert_chow(permuted(J, perm));
    CurveCycle moved;
    for (auto& comp : a.comps) {
      CurveComponent mc = comp;
      mc.prime = permuted(comp.prime, perm);
      mc.key = mc.prime.gen_strings();
      moved.comps.push_back(mc);
    }
    std::sort(moved.comps.begin(), moved.comps.end(),
              [](auto& u, auto& v) { return u.key < v.key; });
    CHECK(moved == b);
    ++tested;
  }
  CHECK(tested == 30);
}

TEST_CASE("fibers of the CM-part map") {
  GradedIdeal A = ideal({"y", "x*z", "x*t"});
  CHECK(f_equiv(A, A));
  // same CM part (x,y), one point of length one at different places
  GradedIdeal B = ideal({"x", "y*z", "y*t"});
  CHECK_FALSE(f_equiv(A, B));
  GradedIdeal C1 = ideal({"x^2", "y", "x*z"});
  GradedIdeal C2 = ideal({"x", "y^2", "y*z"});
  CHECK(f_equiv(C1, C2));
  CHECK_FALSE(f_equiv(C1, ideal({"x", "y"})));
  CHECK_FALSE(f_equiv(C1, ideal({"x^2", "y", "x*z^2"})));

  // equivalence relation on seeded monomial curves, permutation invariant
  std::mt19937 rng(21);
  std::vector<GradedIdeal> pool;
  for (int k = 0; pool.size() < 24 && k < 500; ++k) {
    GradedIdeal J = random_monomial(rng, 4, 3, 3);
    try {
      cm_split(J);
      if (cm_split(J).cm_part.max_gen_degree() == 0) continue;
    } catch (const Error&) {
      continue;
    }
    pool.push_back(J);
  }
  // add members sharing a CM part so that some classes are non-trivial
  pool.push_back(C1);
  pool.push_back(C2);
  pool.push_back(ideal({"x^2", "y", "x*t"}));
  std::vector<int> perm{3, 1, 0, 2};
  size_t n = pool.size();
  std::vector<std::vector<char>> eq(n, std::vector<char>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) eq[i][j] = f_equiv(pool[i], pool[j]);
  for (size_t i = 0; i < n; ++i) {
    CHECK(eq[i][i]);
    for (size_t j = 0; j < n; ++j) {
      CHECK(eq[i][j] == eq[j][i]);
      for (size_t k = 0; k < n; ++k)
        if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);
      if (j % 5 == 0) CHECK(f_equiv(permuted(pool[i], perm), permuted(pool[j], perm)) == eq[i][j]);
    }
  }
}

TEST_CASE("linear divisors of the plane curve") {
  auto f = [](const std::string& s) { return parse_form(s, RingSpec::p3()); };
  CHECK(g_fiber_count(f("x"), f("y^4")) == 1);
  CHECK(g_fiber_count(f("x"), std::vector<ParamForm>{f("y"), f("y"), f("y"), f("y+z")}) == 2);
  CHECK(g_fiber_count(f("x"), std::vector<ParamForm>{f("y"), f("z"), f("y+z"), f("y+x")}) == 3);
  CHECK(g_fiber_count(f("x"), f("y^2*z*t")) == 3);
  CHECK(g_fiber_count(f("x"), std::vector<ParamForm>{f("2*y"), f("y"), f("y-t")}) == 2);
  CHECK_THROWS_AS(g_fiber_count(f("x"), f("y^2+z^2")), Error);
  CHECK_THROWS_AS(g_fiber_count(f("x"), std::vector<ParamForm>{f("y^2+z^2")}), Error);
  CHECK_THROWS_AS(g_fiber_count(f("x"), std::vector<ParamForm>{f("2*x")}), Error);
}

TEST_CASE("maximal Hilbert function and the plane-curve locus") {
  auto m44 = ab_to_dg(4, 4);
  CHECK(is_Hm(lex_ideal(m44), m44));
  CHECK(is_G(lex_ideal(m44), m44));
  CHECK(is_Hm(ideal({"x", "y^4", "y^3*z"}), m44));
  // the twisted cubic and its monomial degeneration have small regularity
  GradedIdeal cubic = ideal({"x*z-y^2", "x*t-y*z", "y*t-z^2"});
  CHECK(hilbert_polynomial(cubic, 3, 8) == hilbert_polynomial(lex_ideal(m44), 6, 8));
  CHECK_FALSE(is_Hm(cubic, m44));
  CHECK(regularity(cubic, 8, 1) < m44.b);
  CHECK_FALSE(is_Hm(ideal({"x^2", "x*y", "y^2"}), m44));
  CHECK_FALSE(is_G(ideal({"x^2", "x*y", "y^2"}), m44));
  CHECK_FALSE(is_G(cubic, m44));

  auto m = ab_to_dg(4, 5);
  GradedIdeal plane = ideal({"x+t", "y^4", "y^3*z^2"});
  CHECK_THROWS_AS(is_G(plane, m), Error);
  plane.parts = {ideal({"x+t"}), ideal({"y^3"}, RingSpec::p2()), ideal({"y", "z^2"}, RingSpec::p2())};
  plane.part_kinds = {"linear", "f", "K"};
  CHECK(is_G(plane, m));
  plane.parts[2] = ideal({"y", "z^3"}, RingSpec::p2());
  CHECK_FALSE(is_G(plane, m));

  // all monomial plane curves are in G; the lex one is the unique H_m member
  // among those of regularity b
  auto mm = ab_to_dg(5, 8);
  auto Is = plane_curve_monomial_ideals(mm);
  std::mt19937 rng(3);
  std::shuffle(Is.begin(), Is.end(), rng);
  Is.resize(12);
  for (auto& I : Is) {
    CHECK(is_G(I, mm));
    CHECK(is_Hm(I, mm) == (regularity(I, 14, 1) == mm.b));
  }
}
