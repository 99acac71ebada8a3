#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "tautocycle/cycles.hpp"

using namespace tc;

namespace {

const std::vector<std::pair<long, long>> kCases{{4, 4}, {5, 8}, {6, 9}, {7, 12}};

Rat binom(long n, long k) { return poly_binom(n, static_cast<int>(k)); }

CycleClass curve_class(Rat q0, Rat q1, Rat q2) { return CycleClass{false, {q0, q1, q2}}; }

std::vector<std::string> gens(const CycleFamily& F) { return F.ideal.gen_strings(); }

// partitions of n, counted directly
long partition_count(long n, long maxpart) {
  if (n == 0) return 1;
  long s = 0;
  for (long p = 1; p <= std::min(n, maxpart); ++p) s += partition_count(n - p, p);
  return s;
}

}  // namespace

TEST_CASE("family catalog transcribes the generators") {
  auto m = ab_to_dg(5, 8);
  CHECK(gens(std_family("C2", m)) ==
        std::vector<std::string>{"x", "A*y^5 + y^4*z", "A*y^4*z^4 + y^3*z^5"});
  CHECK(gens(std_point_family("F", 5)) == std::vector<std::string>{"x", "A*y^5 + y^4*z"});
  CHECK(gens(std_family("Z0", m)) ==
        std::vector<std::string>{"x", "A*y^5 + y^4*z", "y^4*z^4"});
  CHECK(gens(std_family("D", ab_to_dg(4, 4))) ==
        std::vector<std::string>{"x^2", "x*y", "y^3", "A*x*z + y^2"});
  CHECK_THROWS_AS(std_family("D", ab_to_dg(6, 7)), Error);
  CHECK_THROWS_AS(std_family("C9", m), Error);
  CHECK_THROWS_AS(std_point_family("Q", 4), Error);
  // every constructed curve family has the expected saturated slices
  for (auto& name : family_names(false)) {
    CycleFamily F = std_family(name, m);
    GradedIdeal I1 = F.ideal.specialize(Rat(3));
    for (int n = 7; n <= 9; ++n)
      CHECK(Rat(saturated_piece(I1, n, n + 6).dim()) == q_polynomial(m).eval(n));
  }
}

TEST_CASE("basis families decompose to unit classes") {
  for (auto [a, b] : kCases) {
    CAPTURE(a);
    CAPTURE(b);
    auto m = ab_to_dg(a, b);
    CHECK(decompose(std_family("C0", m)).cls == curve_class(1, 0, 0));
    CHECK(decompose(std_family("C1", m)).cls == curve_class(0, 1, 0));
    CHECK(decompose(std_family("C2", m)).cls == curve_class(0, 0, 1));
    CHECK(decompose(std_family("E", m)).cls == decompose(std_family("C0", m)).cls);
    CHECK(decompose(std_family("D", m)).cls == curve_class(a - 2, 1, 0));
    Rat beta = binom(a - 1, 2), gamma = Rat(b - a) * binom(a, 2) + binom(a + 1, 3);
    CHECK(decompose(std_family("C3", m)).cls == curve_class(gamma, beta, 0));
    CHECK(decompose(std_family("Z0", m)).cls == curve_class(m.rho, 0, 0));
  }
  for (long d = 2; d <= 6; ++d) {
    CHECK(decompose(std_point_family("E", d)).cls == CycleClass{true, {1, 0}});
    CHECK(decompose(std_point_family("F", d)).cls == CycleClass{true, {0, 1}});
    CHECK(decompose(std_point_family("G", d)).cls == CycleClass{true, {binom(d, 2), 0}});
  }
}

TEST_CASE("pencil and shifted families") {
  auto m = ab_to_dg(5, 8);
  std::vector<std::string> K{"y", "z^4"};
  auto c0 = decompose(pencil_family(m, "x", "z^4", "t^4", K, false));
  auto ci = decompose(pencil_family(m, "x", "z^4", "t^4", K, true));
  CHECK(c0.cls == curve_class(0, 0, 1));
  CHECK(ci.cls == c0.cls);
  CHECK(decompose(shifted_family(m, "x", "y^4", "y", "z^4", "t^4")).cls == curve_class(0, 1, 0));
  CHECK_THROWS_AS(pencil_family(m, "x", "z^4", "t^3", K, false), Error);
}

TEST_CASE("complexity of points") {
  for (auto [a, b] : kCases) {
    auto m = ab_to_dg(a, b);
    Decomposition c1 = complexity(std_family("C1", m).ideal.specialize(Rat(1)), m);
    CHECK(c1.cls.q[1] == 1);
    CHECK(c1.cls.q[2] == 0);
    Decomposition e = complexity(std_family("E", m).ideal.specialize(Rat(1)), m);
    CHECK(e.cls.q[1] == 0);
    CHECK(e.cls.q[2] == 0);
    CHECK(e.cls.q[0] >= 0);
    CHECK(complexity(lex_ideal(m), m).cls == curve_class(0, 0, 0));
  }
  CHECK(complexity_points(lex_point_ideal(4), 4).cls == CycleClass{true, {0, 0}});
}

TEST_CASE("cone check") {
  CHECK(cone_check(curve_class(3, 1, 0)));
  CHECK_FALSE(cone_check(curve_class(-1, 0, 1)));
  CHECK(cone_check(curve_class(0, 0, 0)));
  CHECK_FALSE(cone_check(curve_class(Rat(1, 2), 0, 0)));
}

TEST_CASE("intersection tables") {
  for (auto [a, b] : kCases) {
    CAPTURE(a);
    CAPTURE(b);
    auto m = ab_to_dg(a, b);
    TableReport T = intersection_table(m);
    for (auto& s : T.mismatches) MESSAGE(s);
    CHECK(T.ok());
    CHECK(T.mb1_c2 == binom(b - a + 1, 2));
    CHECK(T.F[0][0] == Rat(m.rho));
  }
  // the combinations themselves: L2 is the second difference
  TautCombo L2 = taut_L(2, ab_to_dg(5, 8));
  CHECK(L2.exps == std::map<long, long>{{7, 1}, {8, -2}, {9, 1}});
  CHECK(taut_F(3, ab_to_dg(5, 8)).lin == 1);
}

TEST_CASE("enumerated plane point ideals") {
  // number of colength-d monomial ideals supported at the three coordinate
  // points: coefficient of the cube of the partition generating function
  for (long d = 1; d <= 5; ++d) {
    long want = 0;
    for (long i = 0; i <= d; ++i)
      for (long j = 0; i + j <= d; ++j)
        want += partition_count(i, i) * partition_count(j, j) * partition_count(d - i - j, d - i - j);
    auto Is = plane_point_monomial_ideals(d);
    CHECK(static_cast<long>(Is.size()) == want);
    std::set<std::vector<std::string>> distinct;
    for (auto& I : Is) {
      distinct.insert(I.gen_strings());
      CHECK(hilbert_polynomial(I, static_cast<int>(d), static_cast<int>(d) + 4) == q_points(d));
    }
    CHECK(distinct.size() == Is.size());
  }
}

TEST_CASE("orbits of fixed monomial ideals lie in the cone") {
  int checked = 0;
  for (long d = 2; d <= 5; ++d)
    for (auto& I : plane_point_monomial_ideals(d))
      for (int i = 1; i <= 2; ++i) {
        if (!g_fixed(I, i)) continue;
        CycleFamily F;
        F.name = "orbit";
        F.ideal = I;
        F.plane_points = true;
        F.d_points = d;
        F.action = OneParamAction::psi(i, 3);
        Decomposition D = decompose(F, 1, 6);
        CHECK(cone_check(D.cls));
        ++checked;
        // oracle: plain wedge degree of the generated slice of the moved
        // ideal over Q(A); the orbit map is injective unless I is fixed
        if (invariant_under(I, OneParamAction::psi(i, 3))) {
          CHECK(D.cls == CycleClass{true, {0, 0}});
          continue;
        }
        GradedIdeal J = apply_action(I, OneParamAction::psi(i, 3));
        DegreePiece P = degree_piece(J, static_cast<int>(d + 1));
        REQUIRE(Rat(P.dim()) == q_points(d).eval(d + 1));
        CHECK(Rat(wedge_alpha_degree(P.full_rows(), 5)) == D.samples[2].second);
      }
  CHECK(checked > 20);

  auto m = ab_to_dg(5, 8);
  int moving = 0;
  for (auto& I : plane_curve_monomial_ideals(m))
    for (int i = 1; i <= 3; ++i) {
      if (!g_fixed(I, i) || invariant_under(I, OneParamAction::psi(i))) continue;
      CycleFamily F;
      F.name = "orbit";
      F.ideal = I;
      F.m = m;
      F.action = OneParamAction::psi(i);
      CHECK(cone_check(decompose(F).cls));
      ++moving;
    }
  CHECK(moving >= 20);
}
