#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tautocycle/linalg.hpp"
#include "tautocycle/macaulay.hpp"
#include "tautocycle/ring.hpp"

namespace tc {

struct GradedIdeal {
  RingSpec ring;
  std::vector<ParamForm> gens;
  // constructor provenance, e.g. "C2(5,8)"; structured ideals also carry
  // their intersection parts ("cm" or "point")
  std::string tag;
  std::vector<GradedIdeal> parts;
  std::vector<std::string> part_kinds;

  GradedIdeal() = default;
  GradedIdeal(RingSpec r, std::vector<ParamForm> g, std::string t = "")
      : ring(std::move(r)), gens(std::move(g)), tag(std::move(t)) {}
  static GradedIdeal parse(const RingSpec& r, const std::vector<std::string>& gens,
                           const std::string& tag = "");
  static GradedIdeal from_monomials(const RingSpec& r, const std::vector<Monomial>& ms,
                                    const std::string& tag = "");

  int nvars() const { return ring.nvars(); }
  bool param_free() const;
  bool is_monomial() const;
  int max_gen_degree() const;
  std::vector<Monomial> monomial_gens() const;  // requires is_monomial()
  GradedIdeal specialize(const Rat& a) const;
  std::vector<std::string> gen_strings() const;
};

// Degree-n slice of a parameter-free ideal, echelon over Q.  Column j is
// monomials(nv, n)[j] (graded lex, largest first).
struct QSlice {
  int nv = 0;
  int n = 0;
  RowEchelon basis;
  bool stabilized = true;
  int dim() const { return basis.rank(); }
  std::vector<ParamForm> forms(const RingSpec& r) const;
};

// Degree-n slice over Q(A).  Monomials coming from monomial generators are
// kept apart as unit columns; the remaining rows have those columns zeroed.
struct DegreePiece {
  RingSpec ring;
  int n = 0;
  std::vector<int> unit_cols;
  PRowEchelon basis;
  int dim() const { return static_cast<int>(unit_cols.size()) + basis.rank(); }
  PMatrix full_rows() const;
};

SparseVec form_to_vec(const ParamForm& f);  // param-free form of any degree
ParamForm vec_to_form(const RingSpec& r, int n, const SparseVec& v);

DegreePiece degree_piece(const GradedIdeal& I, int n);
QSlice qslice(const GradedIdeal& I, int n);
QSlice saturated_piece(const GradedIdeal& I, int n, int K);
// Uses the generated slice when it already has the expected dimension
// (correct whenever n is at least the regularity of the saturation).
QSlice saturated_piece_expect(const GradedIdeal& I, int n, long expected, int K);

std::map<int, long> hilbert_function(const GradedIdeal& I, int lo, int hi, int K);
IntPolynomial hilbert_polynomial(const GradedIdeal& I, int reg_cutoff, int K);

bool is_borel_fixed(const GradedIdeal& I);
GradedIdeal lex_ideal(const MacaulayData& m);
GradedIdeal lex_point_ideal(long d);

QSlice initial_subspace(const QSlice& V, const std::vector<long>& weights, bool to_zero);
QSlice times_vars(const QSlice& V);  // S_1 * V in degree n+1
bool slice_contains(const QSlice& big, const QSlice& small);
bool slice_equal(const QSlice& a, const QSlice& b);
std::vector<ParamForm> extract_generators(const RingSpec& r,
                                          const std::vector<QSlice>& slices);

// monomial ideal helpers
std::vector<Monomial> minimalize(std::vector<Monomial> ms);
bool in_monomial_ideal(const Monomial& m, const std::vector<Monomial>& gens);
long monomial_ideal_dim(const std::vector<Monomial>& gens, int nv, int n);
std::vector<Monomial> monomial_saturation(const std::vector<Monomial>& gens, int nv);
std::vector<Monomial> monomial_intersection(const std::vector<Monomial>& a,
                                            const std::vector<Monomial>& b);

struct GinResult {
  GradedIdeal gin;           // minimal generators up to the cutoff
  GradedIdeal gin_saturated; // after saturating by the last variable
  int regularity = 0;
  unsigned seed_used = 0;
};
GinResult gin(const GradedIdeal& I, int cutoff, unsigned seed,
              const IntPolynomial* expected_hp = nullptr);
int regularity(const GradedIdeal& I, int cutoff, unsigned seed = 1,
               const IntPolynomial* expected_hp = nullptr);

}  // namespace tc
