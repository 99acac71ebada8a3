// Generic initial ideals in reverse lex order, computed over Z/p with
// p = 2^61-1 after a seeded random change of coordinates.

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <unordered_set>

#include "tautocycle/ideal.hpp"

namespace tc {

namespace {

using Dense = std::vector<uint64_t>;  // coefficients indexed like monomials(nv, deg)

Dense mul_dense(const Dense& a, int da, const Dense& b, int db, int nv) {
  const auto& ma = monomials(nv, da);
  const auto& mb = monomials(nv, db);
  Dense r(num_monomials(nv, da + db), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      int k = mono_index(nv, ma[i] * mb[j]);
      r[k] = modp::add(r[k], modp::mul(a[i], b[j]));
    }
  }
  return r;
}

struct Transformer {
  int nv;
  std::vector<std::vector<Dense>> pw;  // pw[j][k] = (image of x_j)^k

  Transformer(const std::vector<std::vector<long>>& g, int nv_, int maxdeg) : nv(nv_), pw(nv_) {
    for (int j = 0; j < nv; ++j) {
      Dense lin(nv, 0);
      for (int i = 0; i < nv; ++i) lin[mono_index(nv, Monomial::var(i))] = modp::from_long(g[i][j]);
      pw[j].push_back(Dense{1});
      for (int k = 1; k <= maxdeg; ++k) pw[j].push_back(mul_dense(pw[j][k - 1], k - 1, lin, 1, nv));
    }
  }

  Dense apply(const ParamForm& f) const {
    Dense out(num_monomials(nv, f.degree), 0);
    for (auto& [m, s] : f.terms) {
      Dense acc{modp::from_rat(s.constant())};
      int d = 0;
      for (int j = 0; j < nv; ++j) {
        if (!m.e[j]) continue;
        acc = mul_dense(acc, d, pw[j][m.e[j]], m.e[j], nv);
        d += m.e[j];
      }
      for (size_t i = 0; i < out.size(); ++i) out[i] = modp::add(out[i], acc[i]);
    }
    return out;
  }
};

struct RevlexOrder {
  std::vector<Monomial> list;  // revlex, largest first
  std::vector<int> pos;        // glex index -> position in list
};

const RevlexOrder& revlex_order(int nv, int n) {
  static std::map<std::pair<int, int>, RevlexOrder> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({nv, n});
  if (it != cache.end()) return it->second;
  RevlexOrder o;
  o.list = monomials(nv, n);
  std::sort(o.list.begin(), o.list.end(), revlex_greater);
  o.pos.assign(o.list.size(), 0);
  for (int p = 0; p < static_cast<int>(o.list.size()); ++p) o.pos[mono_index(nv, o.list[p])] = p;
  return cache.emplace(std::make_pair(nv, n), std::move(o)).first->second;
}

// initial monomials of I_n for n = 0..cutoff in the transformed coordinates
std::vector<std::vector<Monomial>> initial_monomials(const GradedIdeal& I, int cutoff,
                                                     const Transformer& T) {
  int nv = I.nvars();
  std::vector<std::vector<Monomial>> L(cutoff + 1);
  std::vector<Dense> prev;
  for (int n = 0; n <= cutoff; ++n) {
    const auto& ro = revlex_order(nv, n);
    int N = static_cast<int>(ro.list.size());
    ModEchelon E(N);
    if (n > 0) {
      const auto& rp = revlex_order(nv, n - 1);
      for (int i = 0; i < nv; ++i) {
        Monomial x = Monomial::var(i);
        for (auto& row : prev) {
          Dense v(N, 0);
          for (size_t c = 0; c < row.size(); ++c)
            if (row[c]) v[ro.pos[mono_index(nv, rp.list[c] * x)]] = row[c];
          E.insert(std::move(v));
        }
      }
    }
    for (auto& g : I.gens) {
      if (g.degree != n) continue;
      Dense gl = T.apply(g);
      Dense v(N, 0);
      for (int c = 0; c < N; ++c) v[ro.pos[c]] = gl[c];
      E.insert(std::move(v));
    }
    for (int p : E.pivots()) L[n].push_back(ro.list[p]);
    prev = E.rows();
  }
  return L;
}

}  // namespace

GinResult gin(const GradedIdeal& I, int cutoff, unsigned seed, const IntPolynomial* expected_hp) {
  if (!I.param_free()) throw Error("ideal.parametric", "gin needs a parameter-free ideal");
  if (cutoff < I.max_gen_degree()) cutoff = I.max_gen_degree();
  int nv = I.nvars();
  for (int attempt = 0; attempt < 3; ++attempt) {
    unsigned s = seed + 7919u * attempt;
    std::mt19937 rng(s);
    std::uniform_int_distribution<long> dist(-9, 9);
    std::vector<std::vector<long>> g;
    for (;;) {
      g.assign(nv, std::vector<long>(nv));
      std::vector<std::vector<Rat>> q(nv, std::vector<Rat>(nv));
      for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) q[i][j] = g[i][j] = dist(rng);
      if (qdet(q) != 0) break;
    }
    Transformer T(g, nv, I.max_gen_degree());
    auto L = initial_monomials(I, cutoff, T);
    std::vector<Monomial> mingens;
    for (int n = 0; n <= cutoff; ++n) {
      std::unordered_set<uint64_t> below;
      if (n > 0)
        for (auto& m : L[n - 1]) below.insert(m.key());
      for (auto& m : L[n]) {
        bool minimal = true;
        for (int i = 0; i < nv && minimal; ++i)
          if (m.e[i] && below.count((m / Monomial::var(i)).key())) minimal = false;
        if (minimal) mingens.push_back(m);
      }
    }
    GinResult r;
    r.seed_used = s;
    r.gin = GradedIdeal::from_monomials(I.ring, mingens, "gin");
    if (!is_borel_fixed(r.gin)) continue;
    std::vector<Monomial> sat;
    for (auto m : mingens) {
      m.e[nv - 1] = 0;
      sat.push_back(m);
    }
    sat = minimalize(sat);
    r.gin_saturated = GradedIdeal::from_monomials(I.ring, sat, "gin-sat");
    r.regularity = 0;
    for (auto& m : sat) r.regularity = std::max(r.regularity, m.deg());
    if (expected_hp) {
      for (int n : {r.regularity, cutoff}) {
        if (Rat(monomial_ideal_dim(sat, nv, n)) != expected_hp->eval(n))
          throw Error("ideal.cutoff_too_small",
                      "Hilbert function of the generic initial ideal differs from the "
                      "Hilbert polynomial at n=" + std::to_string(n));
      }
    }
    return r;
  }
  throw Error("ideal.gin_not_borel", "generic initial ideal not Borel-fixed after 3 seeds");
}

int regularity(const GradedIdeal& I, int cutoff, unsigned seed, const IntPolynomial* expected_hp) {
  return gin(I, cutoff, seed, expected_hp).regularity;
}

}  // namespace tc
