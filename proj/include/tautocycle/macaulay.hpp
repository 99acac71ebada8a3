#pragma once

#include <optional>
#include <string>

#include "tautocycle/ring.hpp"

namespace tc {

struct MacaulayData {
  long a = 0, b = 0;
  long d = 0;
  long g = 0;
  long c = 0;    // b - a + 1
  long r = 0;    // b - a
  long rho = 0;  // r(r+1)/2
};

MacaulayData ab_to_dg(long a, long b);
MacaulayData dg_to_ab(long d, long g);

IntPolynomial q_polynomial(const MacaulayData& m);
IntPolynomial p_polynomial(const MacaulayData& m);  // binom(n+3,3) - Q(n)
IntPolynomial q_plane_curve(long a);                // binom(n+2,3)+binom(n-a+2,2)
// ideals of d points in P^2
IntPolynomial q_points(long d);

struct AdmissibleResult {
  bool plane = false;  // two-term Macaulay form
  long a = 0;          // plane case: the degree
  MacaulayData data;   // curve case
};
AdmissibleResult admissible(const IntPolynomial& q);

enum class Regime { AboveGamma, Middle, AtMostGd };

struct GenusBounds {
  Rat g_of_d;
  long gamma_of_d;
  long g_plane;
};
GenusBounds genus_bounds(long d);
Regime classify_regime(long d, long g);
std::string regime_name(Regime r);

}  // namespace tc
