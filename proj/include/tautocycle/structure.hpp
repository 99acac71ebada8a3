#pragma once

#include <string>
#include <vector>

#include "tautocycle/degeneration.hpp"

namespace tc {

struct PrimaryPart {
  GradedIdeal ideal;
  GradedIdeal prime;
  int dim = 0;  // projective dimension of the support, -1 for the irrelevant ideal
};

// irredundant; the parts are checked to re-intersect to I
std::vector<PrimaryPart> monomial_primary_split(const GradedIdeal& I);

struct PunctualPart {
  Point point;
  GradedIdeal prime;
  GradedIdeal ideal;
  long length = 0;  // length of J / (J cap Q)
};

struct SplitIdeal {
  GradedIdeal cm_part;  // unit ideal when there is no curve component
  std::vector<PunctualPart> punctual;
  long total_length() const;
};

// Monomial input, or an ideal carrying parts of kind "cm", "curve" or
// "point".  A non-monomial "curve" or "point" part names its prime as its own
// first part (kind "prime").  cutoff <= 0 picks one from the degrees involved.
SplitIdeal cm_split(const GradedIdeal& I, int cutoff = 0);

struct CurveComponent {
  std::vector<std::string> key;  // reduced degree-one forms of the prime
  GradedIdeal prime;
  long multiplicity = 0;
};

struct CurveCycle {
  std::vector<CurveComponent> comps;  // sorted by key
  bool operator==(const CurveCycle& o) const;
  std::string str() const;
};

CurveCycle hilbert_chow(const GradedIdeal& I, int cutoff = 0);

bool f_equiv(const GradedIdeal& I, const GradedIdeal& J, int cutoff = 0);

// number of pairwise non-proportional linear factors modulo l
long g_fiber_count(const ParamForm& l, const std::vector<ParamForm>& factors);
// monomial or linear f only
long g_fiber_count(const ParamForm& l, const ParamForm& f);

bool is_Hm(const GradedIdeal& I, const MacaulayData& m, int K = 8);
// (l, f*K) shape: monomial input, or parts {"linear", "f", "K"}
bool is_G(const GradedIdeal& I, const MacaulayData& m);

// intersection of saturated ideals, generators extracted up to cutoff; the
// parts are kept on the result
GradedIdeal structured_intersection(const std::vector<GradedIdeal>& parts,
                                    const std::vector<std::string>& kinds, int cutoff);

// prime of a point given by coordinates
GradedIdeal point_prime(const RingSpec& r, const Point& p);

}  // namespace tc
