#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tautocycle/ideal.hpp"

using namespace tc;

namespace {

GradedIdeal ideal(std::vector<std::string> g, RingSpec r = RingSpec::p3()) {
  return GradedIdeal::parse(r, g);
}

// same ideal, generators replaced by sums of same-degree generators
GradedIdeal disguise(const GradedIdeal& I) {
  GradedIdeal J = I;
  for (size_t i = 0; i + 1 < J.gens.size(); ++i)
    for (size_t j = i + 1; j < J.gens.size(); ++j)
      if (J.gens[i].degree == J.gens[j].degree) {
        J.gens[i] = J.gens[i] + J.gens[j] * PScalar(2);
        break;
      }
  return J;
}

std::vector<Monomial> random_monomials(std::mt19937& rng, int nv, int count, int maxdeg) {
  std::uniform_int_distribution<int> deg(1, maxdeg);
  std::vector<Monomial> out;
  for (int i = 0; i < count; ++i) {
    const auto& ms = monomials(nv, deg(rng));
    out.push_back(ms[std::uniform_int_distribution<size_t>(0, ms.size() - 1)(rng)]);
  }
  return out;
}

// saturation oracle for monomial ideals: m is in I^sat iff some power of
// the maximal ideal times m lies in I; checked with (x_1...x_nv)^N m
bool in_saturation_oracle(const Monomial& m, const std::vector<Monomial>& gens, int nv) {
  for (int N = 0; N <= 12; ++N) {
    bool all = true;
    for (auto& u : monomials(nv, N))
      if (!in_monomial_ideal(m * u, gens)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

bool exchange_oracle(const std::vector<Monomial>& gens, int nv, int upto) {
  for (int n = 0; n <= upto; ++n)
    for (auto& m : monomials(nv, n)) {
      if (!in_monomial_ideal(m, gens)) continue;
      for (int i = 0; i < nv; ++i)
        for (int j = 0; j < i; ++j) {
          if (!m.e[i]) continue;
          Monomial u = m;
          u.e[i]--;
          u.e[j]++;
          if (!in_monomial_ideal(u, gens)) return false;
        }
    }
  return true;
}

}  // namespace

TEST_CASE("degree pieces") {
  CHECK(degree_piece(ideal({"x"}), 2).dim() == 4);
  CHECK(qslice(ideal({"x", "y^4", "y^3*z^2"}), 4).dim() == 21);
  // x S_4 (35) + y^4 S_1 (3) + the quintic generator
  auto P = degree_piece(ideal({"x", "y^4", "A*y^3*z^2 + y^3*z*t"}), 5);
  CHECK(P.dim() == 35 + 3 + 1);
  CHECK(P.dim() == q_polynomial(ab_to_dg(4, 5)).eval(5));
  CHECK(degree_piece(ideal({"x^3"}), 2).dim() == 0);
}

TEST_CASE("S_1 * piece(n) is contained in piece(n+1)") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto I = disguise(GradedIdeal::from_monomials(RingSpec::p3(), random_monomials(rng, 4, 4, 3)));
    for (int n = 1; n <= 4; ++n)
      CHECK(slice_contains(qslice(I, n + 1), times_vars(qslice(I, n))));
  }
}

TEST_CASE("saturated pieces") {
  auto I = ideal({"x^2", "x*y", "x*z", "x*t"});
  auto S = saturated_piece(I, 1, 5);
  CHECK(S.dim() == 1);
  CHECK(S.forms(I.ring)[0].str() == "x");
  auto J = ideal({"y", "x*z", "x*t"});
  CHECK(saturated_piece(J, 1, 5).dim() == 1);
  CHECK(saturated_piece(J, 3, 5).dim() == qslice(J, 3).dim());
  // non-monomial presentation of the first ideal takes the general route
  auto I2 = ideal({"x^2 + x*y", "x*y", "x*z", "x*t"});
  auto S2 = saturated_piece(I2, 1, 5);
  CHECK(S2.dim() == 1);
  CHECK(S2.stabilized);
}

TEST_CASE("saturation agrees with the monomial oracle") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    int nv = 3 + trial % 2;
    RingSpec r = nv == 3 ? RingSpec::p2() : RingSpec::p3();
    auto gens = random_monomials(rng, nv, 3 + trial % 3, 3);
    auto I = GradedIdeal::from_monomials(r, gens);
    auto D = disguise(I);
    for (int n = 1; n <= 3; ++n) {
      long oracle = 0;
      for (auto& m : monomials(nv, n))
        if (in_saturation_oracle(m, gens, nv)) ++oracle;
      CHECK(saturated_piece(I, n, 8).dim() == oracle);
      auto S = saturated_piece(D, n, 8);
      CHECK(S.dim() == oracle);
      CHECK(slice_equal(S, saturated_piece(I, n, 8)));
    }
  }
}

TEST_CASE("Hilbert function and polynomial") {
  auto lex = lex_ideal(ab_to_dg(5, 8));
  auto Q = q_polynomial(ab_to_dg(5, 8));
  auto hf = hilbert_function(lex, 5, 12, 12);
  CHECK(hf[5] == 36);
  for (int n = 8; n <= 12; ++n) CHECK(Rat(hf[n]) == Q.eval(n));
  CHECK(hilbert_polynomial(lex, 8, 12) == Q);
  auto line = ideal({"x", "y"});
  CHECK(IntPolynomial::binom(3, 3) - hilbert_polynomial(line, 1, 5) ==
        IntPolynomial::binom(1, 1));
}

TEST_CASE("Borel-fixed test") {
  CHECK(is_borel_fixed(ideal({"x^2", "x*y", "x*z", "y^3"})));
  CHECK(is_borel_fixed(lex_ideal(ab_to_dg(5, 8))));
  CHECK(!is_borel_fixed(ideal({"y^2"}, RingSpec::p2())));
  CHECK_THROWS_AS(is_borel_fixed(ideal({"x+y"})), Error);
  std::mt19937 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    auto gens = random_monomials(rng, 4, 4, 3);
    auto I = GradedIdeal::from_monomials(RingSpec::p3(), gens);
    CHECK(is_borel_fixed(I) == exchange_oracle(gens, 4, 6));
  }
}

TEST_CASE("lex ideals") {
  CHECK(lex_ideal(ab_to_dg(4, 4)).gen_strings() == std::vector<std::string>{"x", "y^4", "y^3*z"});
  CHECK(lex_ideal(ab_to_dg(5, 8)).gen_strings() ==
        std::vector<std::string>{"x", "y^5", "y^4*z^4"});
  CHECK(lex_point_ideal(5).gen_strings() == std::vector<std::string>{"x", "y^5"});
}

namespace {

// Pluecker coordinates of sigma(lambda)V: minor J gets lambda^{w(J)}; the
// limit as lambda -> 0 keeps the nonzero minors of least total weight.
std::map<std::vector<int>, Rat> limit_pluecker(const QSlice& V, const std::vector<long>& w) {
  int N = V.basis.ncols(), m = V.dim();
  const auto& ms = monomials(V.nv, V.n);
  std::vector<std::vector<Rat>> M(m, std::vector<Rat>(N));
  for (int i = 0; i < m; ++i)
    for (auto& [c, x] : V.basis.rows()[i]) M[i][c] = x;
  std::map<std::vector<int>, Rat> best;
  long bw = 0;
  std::vector<int> J(m);
  std::function<void(int, int)> rec = [&](int k, int start) {
    if (k == m) {
      std::vector<std::vector<Rat>> sub(m, std::vector<Rat>(m));
      long wt = 0;
      for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) sub[i][j] = M[i][J[j]];
        for (int v = 0; v < V.nv; ++v) wt += w[v] * ms[J[j]].e[v];
      }
      Rat d = qdet(sub);
      if (d == 0) return;
      if (best.empty() || wt < bw) {
        best.clear();
        bw = wt;
      }
      if (wt == bw) best[J] = d;
      return;
    }
    for (int c = start; c < N; ++c) {
      J[k] = c;
      rec(k + 1, c + 1);
    }
  };
  rec(0, 0);
  return best;
}

bool proportional(const std::map<std::vector<int>, Rat>& a, const std::map<std::vector<int>, Rat>& b) {
  if (a.size() != b.size()) return false;
  Rat f = 0;
  for (auto& [J, x] : a) {
    auto it = b.find(J);
    if (it == b.end()) return false;
    if (f == 0) f = it->second / x;
    if (it->second != f * x) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("initial subspaces") {
  RingSpec r = RingSpec::p3();
  std::vector<long> tw{0, 0, 0, 1};
  auto V = qslice(ideal({"x+t"}), 1);
  CHECK(initial_subspace(V, tw, true).forms(r)[0].str() == "x");
  auto V2 = qslice(ideal({"x+t", "t"}), 1);
  auto L2 = initial_subspace(V2, tw, true);
  CHECK(L2.dim() == 2);
  CHECK(slice_equal(L2, qslice(ideal({"x", "t"}), 1)));
  auto W = qslice(ideal({"x^2", "y*t"}), 2);
  CHECK(slice_equal(initial_subspace(W, tw, true), W));

  std::mt19937 rng(9);
  std::uniform_int_distribution<int> c(-3, 3), wd(-2, 2);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<long> w{wd(rng), wd(rng), wd(rng), wd(rng)};
    int n = 1 + trial % 2, N = static_cast<int>(num_monomials(4, n));
    int m = 1 + trial % 3;
    QSlice S;
    S.nv = 4;
    S.n = n;
    S.basis = RowEchelon(N);
    while (S.dim() < m) {
      SparseVec v;
      for (int j = 0; j < N; ++j) {
        int x = c(rng);
        if (x && (j % 3 == trial % 3 || c(rng) > 1)) v.emplace_back(j, Rat(x));
      }
      S.basis.insert(v);
    }
    for (bool to_zero : {true, false}) {
      auto L = initial_subspace(S, w, to_zero);
      CHECK(L.dim() == S.dim());
      CHECK(slice_equal(initial_subspace(L, w, to_zero), L));
      std::vector<long> ww = w;
      if (!to_zero)
        for (auto& x : ww) x = -x;
      CHECK(proportional(limit_pluecker(S, ww), limit_pluecker(L, ww)));
    }
  }
}

TEST_CASE("generator extraction regenerates slices") {
  auto I = ideal({"x^2+y*z", "x*y*t - z^3", "t^3"});
  std::vector<QSlice> sl;
  for (int n = 0; n <= 5; ++n) sl.push_back(qslice(I, n));
  auto g = extract_generators(I.ring, sl);
  CHECK(g.size() == 3);
  GradedIdeal J(I.ring, g);
  for (int n = 0; n <= 5; ++n) CHECK(slice_equal(qslice(J, n), sl[n]));
}

TEST_CASE("regularity via generic initial ideals") {
  for (auto [a, b] : std::vector<std::pair<long, long>>{{4, 4}, {5, 8}, {6, 9}}) {
    auto m = ab_to_dg(a, b);
    auto Q = q_polynomial(m);
    CHECK(regularity(lex_ideal(m), b + 1, 1, &Q) == b);
  }
  CHECK(regularity(ideal({"x+2*y-z+t"}), 3) == 1);
  CHECK(regularity(lex_point_ideal(5), 6) == 5);
  auto twisted = ideal({"x^2+y*z", "y^3"}, RingSpec::p2());
  CHECK(regularity(twisted, 8) == 4);  // complete intersection of degrees 2, 3
}

TEST_CASE("gin: two seeds agree and Hilbert functions match") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 8; ++trial) {
    auto I = disguise(GradedIdeal::from_monomials(RingSpec::p3(), random_monomials(rng, 4, 3, 3)));
    auto g1 = gin(I, 6, 1), g2 = gin(I, 6, 99);
    CHECK(g1.gin.gen_strings() == g2.gin.gen_strings());
    for (int n = 0; n <= 6; ++n)
      CHECK(monomial_ideal_dim(g1.gin.monomial_gens(), 4, n) == qslice(I, n).dim());
  }
}
