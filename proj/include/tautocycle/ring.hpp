#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tc {

using Rat = mpq_class;
using Int = mpz_class;

// Errors carry a module prefix so the CLI can report "ring.syntax" etc.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

constexpr int kMaxVars = 4;

struct RingSpec {
  std::vector<std::string> vars{"x", "y", "z", "t"};
  std::string param = "A";

  int nvars() const { return static_cast<int>(vars.size()); }
  int index_of(const std::string& v) const;
  void validate() const;
  bool operator==(const RingSpec& o) const {
    return vars == o.vars && param == o.param;
  }

  static RingSpec p3() { return RingSpec{}; }
  static RingSpec p2() { return RingSpec{{"x", "y", "z"}, "A"}; }
};

struct Monomial {
  std::array<uint16_t, kMaxVars> e{};

  Monomial() = default;
  explicit Monomial(std::initializer_list<int> ex);
  static Monomial var(int i, int power = 1);

  int deg() const { return e[0] + e[1] + e[2] + e[3]; }
  uint64_t key() const {
    return (uint64_t(e[0]) << 48) | (uint64_t(e[1]) << 32) |
           (uint64_t(e[2]) << 16) | uint64_t(e[3]);
  }
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }
  std::string str(const RingSpec& r) const;
};

// graded lex, x > y > z > t
bool glex_greater(const Monomial& a, const Monomial& b);
// graded reverse lex, x > y > z > t
bool revlex_greater(const Monomial& a, const Monomial& b);

struct MonoDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return glex_greater(a, b);
  }
};

// All monomials of degree n in nv variables, largest first.  Cached.
const std::vector<Monomial>& monomials(int nv, int n);
int mono_index(int nv, const Monomial& m);  // index in monomials(nv, deg)
long long num_monomials(int nv, int n);

// Univariate polynomial over Q in the formal parameter.
class PScalar {
 public:
  std::vector<Rat> c;  // c[i] is the coefficient of A^i; no trailing zeros

  PScalar() = default;
  PScalar(const Rat& r);
  PScalar(long v) : PScalar(Rat(v)) {}
  PScalar(int v) : PScalar(Rat(v)) {}
  static PScalar mono(const Rat& r, int k);
  static PScalar param() { return mono(Rat(1), 1); }

  bool is_zero() const { return c.empty(); }
  bool is_const() const { return c.size() <= 1; }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  int valuation() const;
  int term_count() const;
  const Rat& lead() const { return c.back(); }
  Rat constant() const { return c.empty() ? Rat(0) : c[0]; }
  Rat eval(const Rat& a) const;
  void trim();

  PScalar operator+(const PScalar& o) const;
  PScalar operator-(const PScalar& o) const;
  PScalar operator-() const;
  PScalar operator*(const PScalar& o) const;
  PScalar& operator+=(const PScalar& o) { return *this = *this + o; }
  PScalar& operator-=(const PScalar& o) { return *this = *this - o; }
  PScalar& operator*=(const PScalar& o) { return *this = *this * o; }
  bool operator==(const PScalar& o) const { return c == o.c; }
  bool operator!=(const PScalar& o) const { return c != o.c; }

  PScalar monic() const;
  std::string str(const std::string& name = "A") const;
};

std::pair<PScalar, PScalar> divmod(const PScalar& a, const PScalar& b);
PScalar divexact(const PScalar& a, const PScalar& b);
PScalar gcd(const PScalar& a, const PScalar& b);  // monic, gcd(0,0)=0

class ParamForm {
 public:
  RingSpec ring;
  int degree = 0;
  std::map<Monomial, PScalar, MonoDesc> terms;

  ParamForm() = default;
  ParamForm(RingSpec r, int d) : ring(std::move(r)), degree(d) {}
  static ParamForm monomial(const RingSpec& r, const Monomial& m,
                            const PScalar& s = PScalar(1));

  bool is_zero() const { return terms.empty(); }
  bool param_free() const;
  bool is_monomial() const;  // one term, constant coefficient
  int param_degree() const;
  void add_term(const Monomial& m, const PScalar& s);

  ParamForm operator+(const ParamForm& o) const;
  ParamForm operator-(const ParamForm& o) const;
  ParamForm operator*(const ParamForm& o) const;
  ParamForm operator*(const PScalar& s) const;
  ParamForm mul(const Monomial& m) const;
  bool operator==(const ParamForm& o) const {
    return degree == o.degree && terms == o.terms;
  }

  ParamForm specialize(const Rat& a) const;
  std::string str() const;
};

ParamForm parse_form(const std::string& text, const RingSpec& ring);

// Polynomial in n with rational coefficients.  Stored in the basis
// binom(n+k, k), k = 0..deg.
class IntPolynomial {
 public:
  std::vector<Rat> coef;

  IntPolynomial() = default;
  static IntPolynomial constant(const Rat& v);
  static IntPolynomial from_power(const std::vector<Rat>& p);
  // binom(n + s, k) as a polynomial in n
  static IntPolynomial binom(long s, int k);

  std::vector<Rat> to_power() const;
  Rat eval(long long n) const;
  Rat eval_power(long long n) const;
  int degree() const;
  void trim();

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const Rat& s) const;
  bool operator==(const IntPolynomial& o) const;
  bool operator!=(const IntPolynomial& o) const { return !(*this == o); }
  std::string str(const std::string& var = "n") const;
};

// binom(m, k) for an integer m, extended polynomially to negative m
Rat poly_binom(long long m, int k);

IntPolynomial fit_int_poly(const std::vector<std::pair<long long, Rat>>& samples,
                           int degree_bound);

std::string rat_str(const Rat& r);
Rat parse_rat(const std::string& s);

}  // namespace tc
