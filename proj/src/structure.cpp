#include "tautocycle/structure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tc {

namespace {

constexpr int kSatDepth = 8;

std::vector<int> support(const std::vector<Monomial>& gens, int nv) {
  std::vector<int> s;
  for (int i = 0; i < nv; ++i)
    for (auto& g : gens)
      if (g.e[i]) {
        s.push_back(i);
        break;
      }
  return s;
}

bool contains_all(const std::vector<Monomial>& big, const std::vector<Monomial>& small) {
  for (auto& m : small)
    if (!in_monomial_ideal(m, big)) return false;
  return true;
}

void irreducible(std::vector<Monomial> gens, int nv, std::vector<std::vector<Monomial>>& out) {
  gens = minimalize(std::move(gens));
  for (size_t k = 0; k < gens.size(); ++k) {
    const Monomial& m = gens[k];
    int first = -1, nz = 0;
    for (int i = 0; i < nv; ++i)
      if (m.e[i]) {
        ++nz;
        if (first < 0) first = i;
      }
    if (nz < 2) continue;
    Monomial p = Monomial::var(first, m.e[first]);
    Monomial rest = m / p;
    auto a = gens, b = gens;
    a[k] = p;
    b[k] = rest;
    irreducible(std::move(a), nv, out);
    irreducible(std::move(b), nv, out);
    return;
  }
  out.push_back(gens);
}

std::vector<Monomial> canonical(std::vector<Monomial> ms) {
  ms = minimalize(std::move(ms));
  std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    return MonoDesc()(a, b);
  });
  return ms;
}

GradedIdeal var_prime(const RingSpec& r, const std::vector<int>& vars) {
  std::vector<Monomial> ms;
  for (int i : vars) ms.push_back(Monomial::var(i));
  return GradedIdeal::from_monomials(r, ms);
}

GradedIdeal unit_ideal(const RingSpec& r) { return GradedIdeal::from_monomials(r, {Monomial()}); }

long quotient_count(const std::vector<Monomial>& J, const std::vector<Monomial>& JQ, int nv,
                    int n) {
  long c = 0;
  for (auto& m : monomials(nv, n))
    if (in_monomial_ideal(m, J) && !in_monomial_ideal(m, JQ)) ++c;
  return c;
}

int max_deg(const std::vector<Monomial>& ms) {
  int d = 0;
  for (auto& m : ms) d = std::max(d, m.deg());
  return d;
}

// value of n -> f(n) once it is constant at three consecutive degrees
template <class F>
long stable_value(F f, int from, const std::string& what) {
  long p2 = f(from), p1 = f(from + 1);
  for (int n = from + 2; n <= from + 40; ++n) {
    long v = f(n);
    if (v == p1 && p1 == p2) return v;
    p2 = p1;
    p1 = v;
  }
  throw Error("structure.unstable", what + " does not stabilize");
}

// leading coefficient of HP(S/q) for a one-dimensional monomial q
long monomial_curve_degree(const std::vector<Monomial>& q, int nv) {
  auto hq = [&](int n) {
    return static_cast<long>(monomials(nv, n).size()) - monomial_ideal_dim(q, nv, n);
  };
  return stable_value([&](int n) { return hq(n + 1) - hq(n); }, max_deg(q), "curve degree");
}

std::vector<std::string> degree_one_key(const GradedIdeal& P) {
  QSlice S = P.is_monomial() ? qslice(P, 1) : saturated_piece(P, 1, kSatDepth);
  S.basis.make_reduced();
  std::vector<std::string> key;
  for (auto& f : S.forms(P.ring)) key.push_back(f.str());
  if (key.empty()) key = P.gen_strings();
  return key;
}

Point prime_point(const GradedIdeal& P) {
  int nv = P.nvars();
  QSlice S = saturated_piece(P, 1, kSatDepth);
  if (S.dim() != nv - 1)
    throw Error("structure.bad_part", "a point prime needs " + std::to_string(nv - 1) +
                                          " independent linear forms");
  S.basis.make_reduced();
  std::vector<char> piv(nv, 0);
  for (int p : S.basis.pivots()) piv[p] = 1;
  int free = 0;
  while (piv[free]) ++free;
  // columns follow monomials(nv,1), i.e. x_0 first
  const auto& ms = monomials(nv, 1);
  auto var_of = [&](int c) {
    for (int i = 0; i < nv; ++i)
      if (ms[c].e[i]) return i;
    return -1;
  };
  Point p(nv, Rat(0));
  p[var_of(free)] = 1;
  for (auto& row : S.basis.rows()) {
    int pc = row[0].first;
    for (auto& [c, x] : row)
      if (c == free) p[var_of(pc)] = -x;
  }
  return normalize_point(p);
}

std::vector<QSlice> sat_slices(const GradedIdeal& I, int cutoff) {
  std::vector<QSlice> out;
  for (int n = 0; n <= cutoff; ++n)
    out.push_back(I.is_monomial() ? qslice(GradedIdeal::from_monomials(
                                               I.ring, monomial_saturation(I.monomial_gens(),
                                                                           I.nvars())),
                                           n)
                                  : saturated_piece(I, n, kSatDepth));
  return out;
}

std::vector<QSlice> meet(std::vector<QSlice> a, const std::vector<QSlice>& b) {
  for (size_t n = 0; n < a.size(); ++n) {
    a[n].basis = intersect(a[n].basis, b[n].basis);
    a[n].basis.make_reduced();
  }
  return a;
}

const GradedIdeal& child_prime(const GradedIdeal& part) {
  for (size_t k = 0; k < part.parts.size(); ++k)
    if (part.part_kinds[k] == "prime") return part.parts[k];
  throw Error("structure.unsupported",
              "a non-monomial part needs its prime as a sub-part of kind \"prime\"");
}

int default_cutoff(const GradedIdeal& I) {
  int d = I.max_gen_degree();
  for (auto& p : I.parts) d = std::max(d, p.max_gen_degree());
  return d + 4;
}

SplitIdeal split_monomial(const GradedIdeal& I) {
  int nv = I.nvars();
  std::vector<Monomial> cm{Monomial()};
  bool have_cm = false;
  std::vector<PrimaryPart> pts;
  for (auto& p : monomial_primary_split(I)) {
    if (p.dim >= 2) throw Error("structure.unsupported", "component of dimension above one");
    if (p.dim == 1) {
      cm = have_cm ? monomial_intersection(cm, p.ideal.monomial_gens()) : p.ideal.monomial_gens();
      have_cm = true;
    } else if (p.dim == 0) {
      pts.push_back(p);
    }
  }
  SplitIdeal S;
  S.cm_part = GradedIdeal::from_monomials(I.ring, canonical(cm));
  for (auto& p : pts) {
    PunctualPart pp;
    pp.ideal = p.ideal;
    pp.prime = p.prime;
    pp.point = prime_point(p.prime);
    auto JQ = monomial_intersection(cm, p.ideal.monomial_gens());
    pp.length = stable_value([&](int n) { return quotient_count(cm, JQ, nv, n); }, max_deg(JQ),
                             "punctual length");
    S.punctual.push_back(pp);
  }
  return S;
}

SplitIdeal split_structured(const GradedIdeal& I, int cutoff) {
  if (cutoff <= 0) cutoff = default_cutoff(I);
  std::vector<QSlice> J, all = {};
  bool have_cm = false;
  std::vector<const GradedIdeal*> points;
  std::vector<GradedIdeal> cm_parts;
  std::vector<std::string> cm_kinds;
  for (size_t k = 0; k < I.parts.size(); ++k) {
    const std::string& kind = I.part_kinds[k];
    const GradedIdeal& P = I.parts[k];
    if (kind == "cm" || kind == "curve") {
      auto s = sat_slices(P, cutoff);
      J = have_cm ? meet(J, s) : s;
      have_cm = true;
      cm_parts.push_back(P);
      cm_kinds.push_back(kind);
    } else if (kind == "point") {
      points.push_back(&P);
    } else if (kind != "prime") {
      throw Error("structure.bad_part", "unknown part kind '" + kind + "'");
    }
  }
  int nv = I.nvars();
  SplitIdeal S;
  if (have_cm) {
    S.cm_part = GradedIdeal(I.ring, extract_generators(I.ring, J), "cm");
    S.cm_part.parts = cm_parts;
    S.cm_part.part_kinds = cm_kinds;
  } else {
    S.cm_part = unit_ideal(I.ring);
    J = sat_slices(S.cm_part, cutoff);
  }
  all = J;
  for (auto* Q : points) {
    PunctualPart pp;
    pp.ideal = *Q;
    pp.prime = Q->is_monomial() ? var_prime(I.ring, support(Q->monomial_gens(), nv))
                                : child_prime(*Q);
    pp.point = prime_point(pp.prime);
    auto q = sat_slices(*Q, cutoff);
    auto JQ = meet(J, q);
    std::vector<long> len;
    for (int n = cutoff - 2; n <= cutoff; ++n) len.push_back(J[n].dim() - JQ[n].dim());
    if (len[0] != len[1] || len[1] != len[2])
      throw Error("structure.unstable",
                  "punctual length not constant at the cutoff " + std::to_string(cutoff));
    pp.length = len[2];
    all = meet(all, q);
    S.punctual.push_back(pp);
  }
  // the parts must give back the saturation of the ideal itself
  auto whole = sat_slices(GradedIdeal(I.ring, I.gens), cutoff);
  for (int n = 0; n <= cutoff; ++n)
    if (!slice_equal(whole[n], all[n]))
      throw Error("structure.parts_mismatch",
                  "the parts do not intersect to the ideal in degree " + std::to_string(n));
  return S;
}

CurveComponent curve_component(const GradedIdeal& q, const GradedIdeal& prime, int cutoff) {
  CurveComponent c;
  c.prime = prime;
  c.key = degree_one_key(prime);
  if (q.is_monomial() && prime.is_monomial()) {
    c.multiplicity = monomial_curve_degree(q.monomial_gens(), q.nvars()) /
                     monomial_curve_degree(prime.monomial_gens(), q.nvars());
    return c;
  }
  int nv = q.nvars();
  auto slope = [&](const GradedIdeal& P) {
    auto h = [&](int n) {
      return static_cast<long>(monomials(nv, n).size()) - saturated_piece(P, n, kSatDepth).dim();
    };
    return stable_value([&](int n) { return h(n + 1) - h(n); }, std::max(cutoff - 4, 1),
                        "curve degree");
  };
  long lq = slope(q), lp = slope(prime);
  if (lp <= 0 || lq % lp != 0)
    throw Error("structure.non_integral", "multiplicity is not a positive integer");
  c.multiplicity = lq / lp;
  return c;
}

}  // namespace

long SplitIdeal::total_length() const {
  long s = 0;
  for (auto& p : punctual) s += p.length;
  return s;
}

std::vector<PrimaryPart> monomial_primary_split(const GradedIdeal& I) {
  if (!I.is_monomial() || !I.param_free())
    throw Error("structure.non_monomial", "primary splitting needs a monomial ideal");
  int nv = I.nvars();
  auto gens = minimalize(I.monomial_gens());
  std::vector<std::vector<Monomial>> irr;
  irreducible(gens, nv, irr);
  // drop duplicates and components containing another one
  std::vector<std::vector<Monomial>> keep;
  for (size_t j = 0; j < irr.size(); ++j) {
    bool redundant = false;
    for (size_t k = 0; k < irr.size() && !redundant; ++k) {
      if (k == j || !contains_all(irr[j], irr[k])) continue;
      bool same = contains_all(irr[k], irr[j]);
      redundant = !same || k < j;
    }
    if (!redundant) keep.push_back(irr[j]);
  }
  std::map<std::vector<int>, std::vector<Monomial>> by_prime;
  for (auto& c : keep) {
    auto s = support(c, nv);
    auto it = by_prime.find(s);
    if (it == by_prime.end())
      by_prime[s] = c;
    else
      it->second = monomial_intersection(it->second, c);
  }
  std::vector<PrimaryPart> out;
  std::vector<Monomial> back{Monomial()};
  bool first = true;
  for (auto& [s, q] : by_prime) {
    PrimaryPart p;
    p.ideal = GradedIdeal::from_monomials(I.ring, canonical(q));
    p.prime = var_prime(I.ring, s);
    p.dim = nv - static_cast<int>(s.size()) - 1;
    out.push_back(p);
    back = first ? q : monomial_intersection(back, q);
    first = false;
  }
  // larger supports (smaller components) first
  std::stable_sort(out.begin(), out.end(),
                   [](const PrimaryPart& a, const PrimaryPart& b) { return a.dim > b.dim; });
  back = minimalize(back);
  if (!(contains_all(back, gens) && contains_all(gens, back)))
    throw Error("structure.internal", "primary parts do not re-intersect to the input");
  return out;
}

SplitIdeal cm_split(const GradedIdeal& I, int cutoff) {
  if (I.is_monomial() && I.param_free()) return split_monomial(I);
  if (I.parts.empty())
    throw Error("structure.unsupported",
                "splitting a non-monomial ideal needs its intersection parts");
  return split_structured(I, cutoff);
}

bool CurveCycle::operator==(const CurveCycle& o) const {
  if (comps.size() != o.comps.size()) return false;
  for (size_t i = 0; i < comps.size(); ++i)
    if (comps[i].key != o.comps[i].key || comps[i].multiplicity != o.comps[i].multiplicity)
      return false;
  return true;
}

std::string CurveCycle::str() const {
  std::string s;
  for (auto& c : comps) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c.multiplicity) + "*V(";
    for (size_t i = 0; i < c.key.size(); ++i) s += (i ? "," : "") + c.key[i];
    s += ")";
  }
  return s.empty() ? "0" : s;
}

CurveCycle hilbert_chow(const GradedIdeal& I, int cutoff) {
  CurveCycle C;
  if (cutoff <= 0) cutoff = default_cutoff(I);
  if (I.is_monomial() && I.param_free()) {
    for (auto& p : monomial_primary_split(I)) {
      if (p.dim >= 2) throw Error("structure.unsupported", "component of dimension above one");
      if (p.dim == 1) C.comps.push_back(curve_component(p.ideal, p.prime, cutoff));
    }
  } else {
    if (I.parts.empty())
      throw Error("structure.unsupported",
                  "the cycle of a non-monomial ideal needs its intersection parts");
    for (size_t k = 0; k < I.parts.size(); ++k) {
      const GradedIdeal& P = I.parts[k];
      if (I.part_kinds[k] == "cm") {
        if (!P.is_monomial())
          throw Error("structure.unsupported", "non-monomial cm part without curve parts");
        for (auto& c : hilbert_chow(P, cutoff).comps) C.comps.push_back(c);
      } else if (I.part_kinds[k] == "curve") {
        const GradedIdeal& pr =
            P.is_monomial() ? var_prime(P.ring, support(P.monomial_gens(), P.nvars()))
                            : child_prime(P);
        C.comps.push_back(curve_component(P, pr, cutoff));
      }
    }
  }
  std::sort(C.comps.begin(), C.comps.end(),
            [](const CurveComponent& a, const CurveComponent& b) { return a.key < b.key; });
  return C;
}

bool f_equiv(const GradedIdeal& I, const GradedIdeal& J, int cutoff) {
  if (I.ring != J.ring) return false;
  SplitIdeal a = cm_split(I, cutoff), b = cm_split(J, cutoff);
  int cut = cutoff > 0 ? cutoff
                       : std::max(default_cutoff(a.cm_part), default_cutoff(b.cm_part));
  auto sa = sat_slices(a.cm_part, cut), sb = sat_slices(b.cm_part, cut);
  for (int n = 0; n <= cut; ++n)
    if (!slice_equal(sa[n], sb[n])) return false;
  auto cycle = [](const SplitIdeal& s) {
    std::map<std::vector<std::string>, long> m;
    for (auto& p : s.punctual) {
      std::vector<std::string> key;
      for (auto& x : p.point) key.push_back(x.get_str());
      m[key] += p.length;
    }
    return m;
  };
  return cycle(a) == cycle(b);
}

long g_fiber_count(const ParamForm& l, const std::vector<ParamForm>& factors) {
  if (l.degree != 1 || !l.param_free())
    throw Error("structure.bad_input", "the hyperplane must be a linear form");
  auto lv = form_to_vec(l);
  int nv = l.ring.nvars();
  // eliminate the last variable present in l from each factor
  const auto& ms = monomials(nv, 1);
  int elim = lv.back().first;
  Rat le = lv.back().second;
  std::vector<SparseVec> classes;
  for (auto& f : factors) {
    if (f.degree != 1 || !f.param_free())
      throw Error("structure.unfactored", "factor '" + f.str() + "' is not linear");
    std::vector<Rat> v(ms.size(), Rat(0));
    for (auto& [c, x] : form_to_vec(f)) v[c] += x;
    Rat coef = v[elim];
    for (auto& [c, x] : lv) v[c] -= coef / le * x;
    SparseVec sv;
    for (size_t c = 0; c < v.size(); ++c)
      if (v[c] != 0) sv.emplace_back(static_cast<int>(c), v[c]);
    if (sv.empty()) throw Error("structure.bad_input", "a factor is a multiple of the hyperplane");
    Rat lead = sv[0].second;
    for (auto& [c, x] : sv) x /= lead;
    if (std::find(classes.begin(), classes.end(), sv) == classes.end()) classes.push_back(sv);
  }
  return static_cast<long>(classes.size());
}

long g_fiber_count(const ParamForm& l, const ParamForm& f) {
  if (f.degree == 1) return g_fiber_count(l, std::vector<ParamForm>{f});
  if (!f.is_monomial())
    throw Error("structure.unfactored",
                "give the linear factors of a non-monomial form explicitly");
  std::vector<ParamForm> vars;
  const Monomial& m = f.terms.begin()->first;
  for (int i = 0; i < f.ring.nvars(); ++i)
    if (m.e[i]) vars.push_back(ParamForm::monomial(f.ring, Monomial::var(i)));
  return g_fiber_count(l, vars);
}

bool is_Hm(const GradedIdeal& I, const MacaulayData& m, int K) {
  GradedIdeal lex = lex_ideal(m);
  int top = static_cast<int>(m.b) + 1;
  auto h = hilbert_function(I, 0, top, K);
  auto hl = hilbert_function(lex, 0, top, K);
  return h == hl;
}

bool is_G(const GradedIdeal& I, const MacaulayData& m) {
  QSlice one = I.is_monomial() ? sat_slices(I, 1)[1] : saturated_piece(I, 1, kSatDepth);
  if (one.dim() < 1) return false;
  long d = m.a - 1, c = m.b - m.a + 1;
  if (I.is_monomial() && I.param_free()) {
    auto sat = monomial_saturation(I.monomial_gens(), I.nvars());
    int lin = -1;
    for (auto& g : sat)
      if (g.deg() == 1) {
        for (int i = 0; i < I.nvars(); ++i)
          if (g.e[i]) lin = i;
        break;
      }
    if (lin < 0) return false;
    std::vector<Monomial> rest;
    Monomial f;
    bool first = true;
    for (auto& g : sat) {
      if (g.e[lin]) continue;
      rest.push_back(g);
      f = first ? g : f.gcd(g);
      first = false;
    }
    if (first || f.deg() != d) return false;
    std::vector<Monomial> K;
    for (auto& g : rest) K.push_back(g / f);
    K = minimalize(K);
    // colength of K in the plane lin = 0
    std::vector<int> others;
    for (int i = 0; i < I.nvars(); ++i)
      if (i != lin) others.push_back(i);
    std::vector<Monomial> Kp;
    for (auto& k : K) {
      Monomial q;
      for (size_t j = 0; j < others.size(); ++j) q.e[j] = k.e[others[j]];
      Kp.push_back(q);
    }
    int pv = static_cast<int>(others.size());
    auto satK = monomial_saturation(Kp, pv);
    long len = stable_value(
        [&](int n) {
          return static_cast<long>(monomials(pv, n).size()) - monomial_ideal_dim(satK, pv, n);
        },
        max_deg(satK), "colength");
    return len == c && contains_all(satK, Kp) && contains_all(Kp, satK);
  }
  // structured: parts linear (l), f and K, the latter two in the plane
  const GradedIdeal *L = nullptr, *F = nullptr, *Kp = nullptr;
  for (size_t k = 0; k < I.parts.size(); ++k) {
    if (I.part_kinds[k] == "linear") L = &I.parts[k];
    if (I.part_kinds[k] == "f") F = &I.parts[k];
    if (I.part_kinds[k] == "K") Kp = &I.parts[k];
  }
  if (!L || !F || !Kp)
    throw Error("structure.unsupported",
                "the G test needs a monomial ideal or parts 'linear', 'f' and 'K'");
  if (L->gens.size() != 1 || F->gens.size() != 1 || F->gens[0].degree != d) return false;
  int cut = static_cast<int>(m.b) + 2;
  GradedIdeal J = image_mod_linear(I, L->gens[0], cut);
  std::vector<ParamForm> fk;
  for (auto& k : Kp->gens) fk.push_back(F->gens[0] * k);
  GradedIdeal FK(J.ring, fk);
  for (int n = 0; n <= cut; ++n)
    if (!slice_equal(qslice(J, n), qslice(FK, n))) return false;
  int pv = Kp->nvars();
  long len = stable_value(
      [&](int n) {
        return static_cast<long>(monomials(pv, n).size()) -
               saturated_piece(*Kp, n, kSatDepth).dim();
      },
      Kp->max_gen_degree(), "colength");
  return len == c;
}

GradedIdeal structured_intersection(const std::vector<GradedIdeal>& parts,
                                    const std::vector<std::string>& kinds, int cutoff) {
  if (parts.empty() || parts.size() != kinds.size())
    throw Error("structure.bad_part", "parts and kinds must match");
  std::vector<QSlice> all = sat_slices(parts[0], cutoff);
  for (size_t k = 1; k < parts.size(); ++k) all = meet(all, sat_slices(parts[k], cutoff));
  GradedIdeal out(parts[0].ring, extract_generators(parts[0].ring, all), "structured");
  out.parts = parts;
  out.part_kinds = kinds;
  return out;
}

GradedIdeal point_prime(const RingSpec& r, const Point& p) {
  int nv = r.nvars();
  if (static_cast<int>(p.size()) != nv) throw Error("structure.bad_input", "point size");
  int piv = -1;
  for (int i = 0; i < nv; ++i)
    if (p[i] != 0) {
      piv = i;
      break;
    }
  if (piv < 0) throw Error("structure.bad_input", "zero point");
  std::vector<ParamForm> gens;
  for (int i = 0; i < nv; ++i) {
    if (i == piv) continue;
    // p[piv] x_i - p[i] x_piv
    ParamForm f = ParamForm::monomial(r, Monomial::var(i), PScalar(p[piv]));
    if (p[i] != 0) f = f - ParamForm::monomial(r, Monomial::var(piv), PScalar(p[i]));
    gens.push_back(f);
  }
  return GradedIdeal(r, gens, "point");
}

}  // namespace tc
