#pragma once

#include <string>
#include <vector>

#include "tautocycle/orbits.hpp"

namespace tc {

// Coefficients in the basis [C0],[C1],[C2] (space curves) or [E],[F]
// (points in the plane).
struct CycleClass {
  bool plane = false;
  std::vector<Rat> q;
  std::vector<std::string> labels() const;
  std::string str() const;
  bool operator==(const CycleClass& o) const { return plane == o.plane && q == o.q; }
};

// Curve families: C0 C1 C2 C3 D E Z0 Z1 Z2 Z3.  Point families: E F G.
std::vector<std::string> family_names(bool plane);
CycleFamily std_family(const std::string& name, const MacaulayData& m);
CycleFamily std_point_family(const std::string& name, long d);

// (l, (A f + g) K) on the chart at 0, (l, (f + A g) K) on the chart at
// infinity
CycleFamily pencil_family(const MacaulayData& m, const std::string& l, const std::string& f,
                          const std::string& g, const std::vector<std::string>& K,
                          bool at_infinity);
// (l, f h, f (g + A g'))
CycleFamily shifted_family(const MacaulayData& m, const std::string& l, const std::string& f,
                           const std::string& h, const std::string& g, const std::string& g2);

struct Decomposition {
  CycleClass cls;
  std::vector<std::pair<long, Rat>> samples;
  std::vector<Rat> residuals;  // at the samples not used for solving
  std::string backend;
  long isotropy = 1;
};

// window: n from the first directly computed degree, `count` values
Decomposition decompose(const CycleFamily& F, unsigned seed = 1, int count = 5);
// sigma-orbit of a parameter-free ideal
Decomposition complexity(const GradedIdeal& I, const MacaulayData& m, unsigned seed = 1);
Decomposition complexity_points(const GradedIdeal& I, long d, unsigned seed = 1);

bool cone_check(const CycleClass& c);

// L0, L1, L2 and F0..F3 as combinations of M_n and the linear-form bundle
TautCombo taut_L(int i, const MacaulayData& m);
TautCombo taut_F(int i, const MacaulayData& m);

struct TableReport {
  MacaulayData m;
  std::vector<std::vector<Rat>> L;  // (L_i . C_j)
  std::vector<std::vector<Rat>> F;  // (F_i . Z_j)
  Rat mb1_c2;                       // (M_{b-1} . C2)
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};
TableReport intersection_table(const MacaulayData& m, unsigned seed = 1, bool with_f = true);

// Saturated monomial ideals of d points in P^2 (all supports at the three
// coordinate points).
std::vector<GradedIdeal> plane_point_monomial_ideals(long d);
// Monomial ideals (x, f K) with f of degree a-1 and K of colength b-a+1 in
// k[y,z,t].
std::vector<GradedIdeal> plane_curve_monomial_ideals(const MacaulayData& m);
// invariance under the root groups spanning G_i
bool g_fixed(const GradedIdeal& I, int i);

}  // namespace tc
