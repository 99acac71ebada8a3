#include "tautocycle/ring.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

namespace tc {

int RingSpec::index_of(const std::string& v) const {
  for (int i = 0; i < nvars(); ++i)
    if (vars[i] == v) return i;
  return -1;
}

void RingSpec::validate() const {
  if (nvars() < 1 || nvars() > kMaxVars)
    throw Error("ring.spec", "ring must have between 1 and 4 variables");
  std::set<std::string> seen(vars.begin(), vars.end());
  if (static_cast<int>(seen.size()) != nvars())
    throw Error("ring.spec", "variable names must be distinct");
  if (seen.count(param))
    throw Error("ring.spec", "parameter name clashes with a variable");
}

Monomial::Monomial(std::initializer_list<int> ex) {
  int i = 0;
  for (int v : ex) e[i++] = static_cast<uint16_t>(v);
}

Monomial Monomial::var(int i, int power) {
  Monomial m;
  m.e[i] = static_cast<uint16_t>(power);
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] + o.e[i];
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] - o.e[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::max(e[i], o.e[i]);
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::min(e[i], o.e[i]);
  return r;
}

std::string Monomial::str(const RingSpec& r) const {
  std::string s;
  for (int i = 0; i < r.nvars(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += r.vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

bool glex_greater(const Monomial& a, const Monomial& b) {
  int da = a.deg(), db = b.deg();
  if (da != db) return da > db;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

bool revlex_greater(const Monomial& a, const Monomial& b) {
  int da = a.deg(), db = b.deg();
  if (da != db) return da > db;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

namespace {

struct MonoTable {
  std::vector<Monomial> list;
  std::unordered_map<uint64_t, int> index;
};

std::mutex g_mono_mutex;
std::map<std::pair<int, int>, std::unique_ptr<MonoTable>> g_mono_cache;

void enumerate(int nv, int pos, int left, Monomial& cur,
               std::vector<Monomial>& out) {
  if (pos == nv - 1) {
    cur.e[pos] = static_cast<uint16_t>(left);
    out.push_back(cur);
    cur.e[pos] = 0;
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur.e[pos] = static_cast<uint16_t>(k);
    enumerate(nv, pos + 1, left - k, cur, out);
  }
  cur.e[pos] = 0;
}

const MonoTable& table(int nv, int n) {
  std::lock_guard<std::mutex> lock(g_mono_mutex);
  auto& slot = g_mono_cache[{nv, n}];
  if (!slot) {
    slot = std::make_unique<MonoTable>();
    if (n >= 0) {
      Monomial cur;
      enumerate(nv, 0, n, cur, slot->list);
    }
    for (int i = 0; i < static_cast<int>(slot->list.size()); ++i)
      slot->index[slot->list[i].key()] = i;
  }
  return *slot;
}

}  // namespace

const std::vector<Monomial>& monomials(int nv, int n) { return table(nv, n).list; }

int mono_index(int nv, const Monomial& m) {
  const auto& t = table(nv, m.deg());
  auto it = t.index.find(m.key());
  return it == t.index.end() ? -1 : it->second;
}

long long num_monomials(int nv, int n) {
  if (n < 0) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n + nv - 1, nv - 1);
  return r.get_si();
}

// ---------------------------------------------------------------- PScalar

PScalar::PScalar(const Rat& r) {
  if (r != 0) c.push_back(r);
}

PScalar PScalar::mono(const Rat& r, int k) {
  PScalar p;
  if (r == 0) return p;
  p.c.assign(k + 1, Rat(0));
  p.c[k] = r;
  return p;
}

void PScalar::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

int PScalar::valuation() const {
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) return static_cast<int>(i);
  return -1;
}

int PScalar::term_count() const {
  int k = 0;
  for (auto& v : c)
    if (v != 0) ++k;
  return k;
}

Rat PScalar::eval(const Rat& a) const {
  Rat r = 0;
  for (size_t i = c.size(); i-- > 0;) r = r * a + c[i];
  return r;
}

PScalar PScalar::operator+(const PScalar& o) const {
  PScalar r;
  r.c.resize(std::max(c.size(), o.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (i < c.size()) r.c[i] += c[i];
    if (i < o.c.size()) r.c[i] += o.c[i];
  }
  r.trim();
  return r;
}

PScalar PScalar::operator-(const PScalar& o) const { return *this + (-o); }

PScalar PScalar::operator-() const {
  PScalar r = *this;
  for (auto& v : r.c) v = -v;
  return r;
}

PScalar PScalar::operator*(const PScalar& o) const {
  PScalar r;
  if (is_zero() || o.is_zero()) return r;
  r.c.assign(c.size() + o.c.size() - 1, Rat(0));
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  }
  r.trim();
  return r;
}

PScalar PScalar::monic() const {
  if (is_zero()) return *this;
  PScalar r = *this;
  Rat l = lead();
  for (auto& v : r.c) v /= l;
  return r;
}

std::string PScalar::str(const std::string& name) const {
  if (is_zero()) return "0";
  std::string s;
  for (size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    Rat v = c[k];
    bool neg = v < 0;
    if (neg) v = -v;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    std::string body;
    if (k == 0 || v != 1) body = rat_str(v);
    if (k > 0) {
      if (!body.empty()) body += "*";
      body += name;
      if (k > 1) body += "^" + std::to_string(k);
    }
    s += body;
  }
  return s;
}

std::pair<PScalar, PScalar> divmod(const PScalar& a, const PScalar& b) {
  if (b.is_zero()) throw Error("ring.division", "division by zero polynomial");
  PScalar q, r = a;
  if (a.degree() >= b.degree()) q.c.assign(a.degree() - b.degree() + 1, Rat(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int s = r.degree() - b.degree();
    Rat f = r.lead() / b.lead();
    q.c[s] += f;
    for (int i = 0; i <= b.degree(); ++i) r.c[i + s] -= f * b.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

PScalar divexact(const PScalar& a, const PScalar& b) {
  auto qr = divmod(a, b);
  if (!qr.second.is_zero())
    throw Error("ring.division", "inexact polynomial division");
  return qr.first;
}

PScalar gcd(const PScalar& a, const PScalar& b) {
  PScalar x = a, y = b;
  while (!y.is_zero()) {
    PScalar r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

// -------------------------------------------------------------- ParamForm

ParamForm ParamForm::monomial(const RingSpec& r, const Monomial& m,
                              const PScalar& s) {
  ParamForm f(r, m.deg());
  f.add_term(m, s);
  return f;
}

bool ParamForm::param_free() const {
  for (auto& [m, s] : terms)
    if (!s.is_const()) return false;
  return true;
}

bool ParamForm::is_monomial() const {
  return terms.size() == 1 && terms.begin()->second.is_const();
}

int ParamForm::param_degree() const {
  int d = 0;
  for (auto& [m, s] : terms) d = std::max(d, s.degree());
  return d;
}

void ParamForm::add_term(const Monomial& m, const PScalar& s) {
  if (s.is_zero()) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, s);
    return;
  }
  it->second += s;
  if (it->second.is_zero()) terms.erase(it);
}

ParamForm ParamForm::operator+(const ParamForm& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (degree != o.degree)
    throw Error("ring.inhomogeneous", "sum of forms of different degree");
  ParamForm r = *this;
  for (auto& [m, s] : o.terms) r.add_term(m, s);
  return r;
}

ParamForm ParamForm::operator-(const ParamForm& o) const {
  return *this + o * PScalar(-1);
}

ParamForm ParamForm::operator*(const ParamForm& o) const {
  ParamForm r(ring, degree + o.degree);
  for (auto& [m1, s1] : terms)
    for (auto& [m2, s2] : o.terms) r.add_term(m1 * m2, s1 * s2);
  return r;
}

ParamForm ParamForm::operator*(const PScalar& s) const {
  ParamForm r(ring, degree);
  for (auto& [m, v] : terms) r.add_term(m, v * s);
  return r;
}

ParamForm ParamForm::mul(const Monomial& mm) const {
  ParamForm r(ring, degree + mm.deg());
  for (auto& [m, v] : terms) r.terms.emplace(m * mm, v);
  return r;
}

ParamForm ParamForm::specialize(const Rat& a) const {
  ParamForm r(ring, degree);
  for (auto& [m, v] : terms) r.add_term(m, PScalar(v.eval(a)));
  return r;
}

std::string ParamForm::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (auto& [m, sc] : terms) {
    for (size_t k = 0; k < sc.c.size(); ++k) {
      if (sc.c[k] == 0) continue;
      Rat v = sc.c[k];
      bool neg = v < 0;
      if (neg) v = -v;
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      std::vector<std::string> parts;
      bool unit_mono = m.deg() == 0;
      if (v != 1 || (k == 0 && unit_mono)) parts.push_back(rat_str(v));
      if (k > 0)
        parts.push_back(ring.param + (k > 1 ? "^" + std::to_string(k) : ""));
      if (!unit_mono) parts.push_back(m.str(ring));
      for (size_t i = 0; i < parts.size(); ++i) s += (i ? "*" : "") + parts[i];
    }
  }
  return s;
}

// ----------------------------------------------------------------- parser

namespace {

struct Parser {
  const std::string& s;
  const RingSpec& ring;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("ring.syntax", what + " at position " + std::to_string(pos));
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at(char ch) {
    skip();
    return pos < s.size() && s[pos] == ch;
  }
  Int number() {
    skip();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected a number");
    return Int(s.substr(start, pos - start));
  }
  bool ident_start() {
    skip();
    return pos < s.size() &&
           (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_');
  }
  std::string ident() {
    skip();
    size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                              s[pos] == '_'))
      ++pos;
    return s.substr(start, pos - start);
  }

  // returns (coefficient, param power, monomial)
  void term(Rat& coef, int& ppow, Monomial& m) {
    coef = 1;
    ppow = 0;
    m = Monomial();
    bool any = false;
    skip();
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      Int num = number();
      Int den = 1;
      if (at('/')) {
        ++pos;
        den = number();
        if (den == 0) fail("zero denominator");
      }
      coef = Rat(num, den);
      coef.canonicalize();
      any = true;
    }
    while (true) {
      bool star = false;
      if (at('*')) {
        ++pos;
        star = true;
      }
      if (!ident_start()) {
        if (star) fail("expected a variable after '*'");
        break;
      }
      size_t vpos = pos;
      std::string v = ident();
      int power = 1;
      if (at('^')) {
        ++pos;
        Int p = number();
        if (p > 1000) fail("exponent too large");
        power = static_cast<int>(p.get_si());
      }
      if (v == ring.param) {
        ppow += power;
      } else {
        int i = ring.index_of(v);
        if (i < 0) {
          pos = vpos;
          throw Error("ring.unknown_variable",
                      "unknown variable '" + v + "' at position " + std::to_string(vpos));
        }
        m.e[i] = static_cast<uint16_t>(m.e[i] + power);
      }
      any = true;
    }
    if (!any) fail("expected a term");
  }

  ParamForm run() {
    ParamForm f(ring, 0);
    bool have_degree = false;
    int sign = 1;
    skip();
    if (at('+') || at('-')) {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    while (true) {
      size_t tpos = pos;
      Rat coef;
      int ppow;
      Monomial m;
      term(coef, ppow, m);
      if (coef != 0) {
        if (!have_degree) {
          f.degree = m.deg();
          have_degree = true;
        } else if (m.deg() != f.degree) {
          throw Error("ring.inhomogeneous",
                      "inhomogeneous form: term at position " + std::to_string(tpos) +
                          " has degree " + std::to_string(m.deg()) + ", expected " +
                          std::to_string(f.degree));
        }
        f.add_term(m, PScalar::mono(coef * sign, ppow));
      }
      skip();
      if (pos >= s.size()) break;
      if (s[pos] == '+' || s[pos] == '-') {
        sign = s[pos] == '-' ? -1 : 1;
        ++pos;
        continue;
      }
      fail(std::string("unexpected character '") + s[pos] + "'");
    }
    return f;
  }
};

}  // namespace

ParamForm parse_form(const std::string& text, const RingSpec& ring) {
  ring.validate();
  Parser p{text, ring};
  return p.run();
}

// ---------------------------------------------------------- IntPolynomial

Rat poly_binom(long long m, int k) {
  if (k < 0) return 0;
  Rat r = 1;
  for (int i = 0; i < k; ++i) r *= Rat(static_cast<long>(m - i));
  Int f;
  mpz_fac_ui(f.get_mpz_t(), k);
  r /= Rat(f);
  return r;
}

IntPolynomial IntPolynomial::constant(const Rat& v) {
  IntPolynomial p;
  p.coef.push_back(v);
  p.trim();
  return p;
}

static Rat eval_power_vec(const std::vector<Rat>& p, long long n) {
  Rat r = 0, x = Rat(static_cast<long>(n));
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

IntPolynomial IntPolynomial::from_power(const std::vector<Rat>& p) {
  // value at n = -j only involves basis elements k < j
  IntPolynomial r;
  int deg = static_cast<int>(p.size()) - 1;
  for (int j = 1; j <= deg + 1; ++j) {
    Rat v = eval_power_vec(p, -j);
    for (int k = 0; k < j - 1; ++k) v -= r.coef[k] * poly_binom(k - j, k);
    r.coef.push_back(v / poly_binom(-1, j - 1));
  }
  r.trim();
  return r;
}

IntPolynomial IntPolynomial::binom(long s, int k) {
  std::vector<Rat> p{Rat(1)};
  for (int i = 0; i < k; ++i) {
    // multiply by (n + s - i)
    std::vector<Rat> q(p.size() + 1, Rat(0));
    Rat c = Rat(Int(s - i));
    for (size_t j = 0; j < p.size(); ++j) {
      q[j] += p[j] * c;
      q[j + 1] += p[j];
    }
    p = q;
  }
  Int f;
  mpz_fac_ui(f.get_mpz_t(), k);
  for (auto& v : p) v /= Rat(f);
  return from_power(p);
}

std::vector<Rat> IntPolynomial::to_power() const {
  std::vector<Rat> out(coef.size(), Rat(0));
  std::vector<Rat> basis{Rat(1)};
  for (size_t k = 0; k < coef.size(); ++k) {
    if (k > 0) {
      // basis_k = basis_{k-1} * (n + k) / k
      std::vector<Rat> q(basis.size() + 1, Rat(0));
      for (size_t j = 0; j < basis.size(); ++j) {
        q[j] += basis[j] * Rat(long(k));
        q[j + 1] += basis[j];
      }
      for (auto& v : q) v /= Rat(long(k));
      basis = q;
    }
    for (size_t j = 0; j < basis.size(); ++j) out[j] += coef[k] * basis[j];
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

Rat IntPolynomial::eval(long long n) const {
  Rat r = 0;
  for (size_t k = 0; k < coef.size(); ++k)
    if (coef[k] != 0) r += coef[k] * poly_binom(n + static_cast<long long>(k), k);
  return r;
}

Rat IntPolynomial::eval_power(long long n) const { return eval_power_vec(to_power(), n); }

int IntPolynomial::degree() const { return static_cast<int>(coef.size()) - 1; }

void IntPolynomial::trim() {
  while (!coef.empty() && coef.back() == 0) coef.pop_back();
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  IntPolynomial r;
  r.coef.assign(std::max(coef.size(), o.coef.size()), Rat(0));
  for (size_t i = 0; i < coef.size(); ++i) r.coef[i] += coef[i];
  for (size_t i = 0; i < o.coef.size(); ++i) r.coef[i] += o.coef[i];
  r.trim();
  return r;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  return *this + o * Rat(-1);
}

IntPolynomial IntPolynomial::operator*(const Rat& s) const {
  IntPolynomial r = *this;
  for (auto& v : r.coef) v *= s;
  r.trim();
  return r;
}

bool IntPolynomial::operator==(const IntPolynomial& o) const {
  IntPolynomial a = *this, b = o;
  a.trim();
  b.trim();
  return a.coef == b.coef;
}

std::string IntPolynomial::str(const std::string& var) const {
  auto p = to_power();
  if (p.empty()) return "0";
  std::string s;
  for (size_t k = p.size(); k-- > 0;) {
    if (p[k] == 0) continue;
    Rat v = p[k];
    bool neg = v < 0;
    if (neg) v = -v;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    std::string body;
    if (k == 0 || v != 1) body = rat_str(v);
    if (k > 0) {
      if (!body.empty()) body += "*";
      body += var;
      if (k > 1) body += "^" + std::to_string(k);
    }
    s += body;
  }
  return s;
}

IntPolynomial fit_int_poly(const std::vector<std::pair<long long, Rat>>& samples,
                           int degree_bound) {
  if (static_cast<int>(samples.size()) < degree_bound + 2)
    throw Error("ring.fit_samples", "need at least degree_bound+2 samples");
  std::set<long long> ns;
  for (auto& s : samples) ns.insert(s.first);
  if (ns.size() != samples.size())
    throw Error("ring.fit_samples", "sample abscissae must be distinct");
  // Newton interpolation through the first degree_bound+1 points
  int m = degree_bound + 1;
  std::vector<Rat> xs, dd;
  for (int i = 0; i < m; ++i) {
    xs.push_back(Rat(static_cast<long>(samples[i].first)));
    dd.push_back(samples[i].second);
  }
  for (int j = 1; j < m; ++j)
    for (int i = m - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  std::vector<Rat> p{dd[m - 1]};
  for (int i = m - 2; i >= 0; --i) {
    // p = p * (n - xs[i]) + dd[i]
    std::vector<Rat> q(p.size() + 1, Rat(0));
    for (size_t j = 0; j < p.size(); ++j) {
      q[j + 1] += p[j];
      q[j] -= p[j] * xs[i];
    }
    q[0] += dd[i];
    p = q;
  }
  while (!p.empty() && p.back() == 0) p.pop_back();
  IntPolynomial r = IntPolynomial::from_power(p);
  for (size_t i = m; i < samples.size(); ++i) {
    if (r.eval(samples[i].first) != samples[i].second)
      throw Error("ring.fit_mismatch",
                  "verification point n=" + std::to_string(samples[i].first) +
                      " does not fit a polynomial of degree <= " +
                      std::to_string(degree_bound));
  }
  return r;
}

std::string rat_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw Error("ring.syntax", "bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace tc
