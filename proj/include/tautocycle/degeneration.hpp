#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tautocycle/orbits.hpp"

namespace tc {

// multiplication by l is injective on (S/I^sat)_n for n <= cutoff
bool is_nzd(const GradedIdeal& I, const ParamForm& l, int cutoff);

// Image of I^sat modulo l, read in the remaining variables (renamed to the
// first nv-1 names of the ring).  Generators extracted up to cutoff.
GradedIdeal restrict_mod_linear(const GradedIdeal& I, const ParamForm& l, int cutoff);
// same image without asking l to be a non-zero-divisor
GradedIdeal image_mod_linear(const GradedIdeal& I, const ParamForm& l, int cutoff);

struct StarResult {
  GradedIdeal ideal;  // in one more variable
  bool verified = false;
};
// checks dim (J*)_n = sum_{i<=n} dim J_i for n <= cutoff
StarResult star_extension(const GradedIdeal& J, int cutoff);

struct LimitResult {
  GradedIdeal ideal;             // extracted generators
  std::vector<QSlice> slices;    // degrees 0..cutoff
  std::vector<long> weights;
  bool to_zero = true;
  bool certified = false;        // generators regenerate every slice
  std::map<int, long> hf_source, hf_limit;
};
LimitResult limit_ideal(const GradedIdeal& I, const std::vector<long>& weights, bool to_zero,
                        int cutoff);

struct G3Report {
  bool contained = true;     // limit inside the star of the restriction
  bool punctual = true;      // quotient killed by a power of the first nv-1 variables
  long length = 0;           // dimension of the quotient in the top degrees
  int kill_exponent = 0;
  std::map<int, long> quotient_dims;
  bool ok() const { return contained && punctual; }
};
G3Report lemma_g3_check(const GradedIdeal& I, int cutoff);

using Point = std::vector<Rat>;

Point normalize_point(Point p);
// line through P and center meets the plane h = 0
Point project_point(const Point& P, const Point& center, const Point& plane);
// lim of g^-1 diag(lambda^w) g P, where the columns of `basis` are the
// images of the coordinate points under g^-1
Point point_limit(const Point& P, const std::vector<Point>& basis, const std::vector<long>& w,
                  bool to_zero);
// the projection computed as the limit of the conjugated action
Point project_point_by_limit(const Point& P, const Point& center, const Point& plane);

struct D1Report {
  bool in_u = false, limit_in_u = false;
  int reg0 = 0, reg_inf = 0;
  int degree = 0;
  long dim = 0, expected = 0;
  bool ok() const { return in_u && limit_in_u && dim == expected; }
};
// Plane ideals of `points` points; degree < 0 picks the smallest allowed one.
D1Report lemma_d1_check(const GradedIdeal& I, long points, int degree = -1, int cutoff = 0);

// seeded colength-d ideal supported at (0:0:1), not monomial in general
GradedIdeal local_point_ideal(long d, unsigned long seed);

}  // namespace tc
