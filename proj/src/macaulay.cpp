#include "tautocycle/macaulay.hpp"

namespace tc {

MacaulayData ab_to_dg(long a, long b) {
  if (a < 2 || b < a)
    throw Error("macaulay.inadmissible",
                "need 2 <= a <= b, got (" + std::to_string(a) + "," + std::to_string(b) + ")");
  MacaulayData m;
  m.a = a;
  m.b = b;
  m.d = a - 1;
  m.g = (a * a - 3 * a + 4) / 2 - b;
  m.c = b - a + 1;
  m.r = b - a;
  m.rho = m.r * (m.r + 1) / 2;
  return m;
}

MacaulayData dg_to_ab(long d, long g) {
  if (d < 1) throw Error("macaulay.inadmissible", "degree must be positive");
  long a = d + 1;
  long b = (a * a - 3 * a + 4) / 2 - g;
  if (g >= (d - 1) * (d - 2) / 2)
    throw Error("macaulay.plane_case",
                "g >= (d-1)(d-2)/2: plane-curve case or empty Hilbert scheme");
  if (b < a) throw Error("macaulay.inadmissible", "resulting b < a");
  return ab_to_dg(a, b);
}

IntPolynomial q_polynomial(const MacaulayData& m) {
  return IntPolynomial::binom(2, 3) + IntPolynomial::binom(2 - m.a, 2) +
         IntPolynomial::binom(1 - m.b, 1);
}

IntPolynomial p_polynomial(const MacaulayData& m) {
  return IntPolynomial::binom(3, 3) - q_polynomial(m);
}

IntPolynomial q_plane_curve(long a) {
  return IntPolynomial::binom(2, 3) + IntPolynomial::binom(2 - a, 2);
}

IntPolynomial q_points(long d) {
  return IntPolynomial::binom(2, 2) - IntPolynomial::constant(Rat(d));
}

AdmissibleResult admissible(const IntPolynomial& q) {
  // Q(n) - binom(n+2,3) = binom(n-a+2,2) [+ (n-b+1)]
  IntPolynomial rest = q - IntPolynomial::binom(2, 3);
  auto p = rest.to_power();
  while (p.size() < 3) p.push_back(Rat(0));
  if (p.size() != 3 || p[2] != Rat(1, 2))
    throw Error("macaulay.not_admissible", "polynomial is not of Macaulay curve form");
  // binom(n-a+2,2) = n^2/2 + (3-2a)/2 n + (a-2)(a-1)/2
  Rat lin = p[1];
  // plane case: lin = (3-2a)/2
  Rat a_plane = (Rat(3) - 2 * lin) / 2;
  if (a_plane.get_den() == 1 && a_plane >= 1) {
    long a = a_plane.get_num().get_si();
    if (q == q_plane_curve(a)) {
      AdmissibleResult r;
      r.plane = true;
      r.a = a;
      return r;
    }
  }
  // curve case: lin = (3-2a)/2 + 1
  Rat a_curve = (Rat(5) - 2 * lin) / 2;
  if (a_curve.get_den() == 1 && a_curve >= 2) {
    long a = a_curve.get_num().get_si();
    Rat c0 = p[0] - poly_binom(2 - a, 2);  // constant of (n - b + 1)
    if (c0.get_den() == 1) {
      long b = 1 - c0.get_num().get_si();
      if (b >= a && q == q_polynomial(ab_to_dg(a, b))) {
        AdmissibleResult r;
        r.data = ab_to_dg(a, b);
        return r;
      }
    }
  }
  throw Error("macaulay.not_admissible", "polynomial is not of Macaulay curve form");
}

GenusBounds genus_bounds(long d) {
  if (d < 1) throw Error("macaulay.inadmissible", "degree must be positive");
  GenusBounds g;
  g.g_of_d = Rat((d - 2) * (d - 2), 4);
  g.g_of_d.canonicalize();
  g.gamma_of_d = d >= 2 ? (d - 2) * (d - 3) / 2 : 0;
  g.g_plane = (d - 1) * (d - 2) / 2;
  return g;
}

Regime classify_regime(long d, long g) {
  auto gb = genus_bounds(d);
  if (Rat(g) <= gb.g_of_d) return Regime::AtMostGd;
  if (g <= gb.gamma_of_d) return Regime::Middle;
  return Regime::AboveGamma;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::AboveGamma: return "g > gamma(d)";
    case Regime::Middle: return "g(d) < g <= gamma(d)";
    case Regime::AtMostGd: return "g <= g(d)";
  }
  return "";
}

}  // namespace tc
