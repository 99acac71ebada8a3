#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tautocycle/ideal.hpp"

namespace tc {

// Substitutions act on the variable row: x_j -> sum_i matrix[i][j] x_i.
struct OneParamAction {
  std::string kind;  // psi1..psi3, sigma, tau, delta1..delta6, diagonal, custom
  int nv = 4;
  PMatrix matrix;
  std::vector<long> weights;  // diagonal kinds only

  bool is_diagonal() const { return !weights.empty(); }

  static OneParamAction psi(int i, int nv = 4);
  static OneParamAction sigma(int nv = 4);
  static OneParamAction tau(int nv = 4);
  static OneParamAction delta(int i);
  static OneParamAction diagonal(std::vector<long> w);
  static OneParamAction custom(PMatrix m);
  // root substitution x_j -> x_j + A x_i (0-based i < j)
  static OneParamAction root(int i, int j, int nv);
};

ParamForm apply_action(const ParamForm& f, const OneParamAction& a);
GradedIdeal apply_action(const GradedIdeal& I, const OneParamAction& a);

// Roots (i,j), 0-based, spanning the unipotent group G_i that fixes the
// cycles built from psi^i.
std::vector<std::pair<int, int>> stabilizer_roots(int psi_index, int nv);
bool invariant_under(const GradedIdeal& I, const OneParamAction& unipotent);

// ------------------------------------------------------------ wedge degrees

// max degree of the m x m minors minus the degree of their gcd
long wedge_degree_exhaustive(const PMatrix& M);
// same via random projections det(M(A) R), R with entries in [-99,99]
long wedge_degree_projected(const PMatrix& M, unsigned seed, int retries = 3);
// constant rows V scaled columnwise by A^{w_c}: matroid greedy
long wedge_degree_greedy(const RowEchelon& V, const std::vector<long>& colw);
// strips single-entry rows, splits into blocks, exhaustive when small
long wedge_alpha_degree(const PMatrix& M, unsigned seed = 1);

// order of the subgroup of G_m fixing V; 0 means V is fixed by all of G_m
long isotropy_order(const RowEchelon& V, const std::vector<long>& colw);

std::vector<long> column_weights(int nv, int n, const std::vector<long>& w);

// ---------------------------------------------------------------- families

struct CycleFamily {
  std::string name;
  GradedIdeal ideal;                     // member ideal; may involve the parameter
  std::optional<OneParamAction> action;  // if set, the orbit of `ideal` under it
  bool plane_points = false;             // Hilb^d(P^2) instead of H_{d,g}
  MacaulayData m;
  long d_points = 0;
  bool injective = true;

  IntPolynomial expected_q() const;
  int direct_start() const;   // slices compute M_n directly from here on
  int regular_start() const;  // degree formula asserted from here on
  int embed_degree() const;   // slices determine the ideal
};

// Torus data: the family is the orbit of `base` under lambda^{weights}.
struct TorusData {
  GradedIdeal base;
  std::vector<long> weights;
  bool constant = false;
};
std::optional<TorusData> detect_torus(const GradedIdeal& I);

struct TautCombo {
  std::map<long, long> exps;  // n -> exponent of M_n
  long lin = 0;               // exponent of the pullback of O(1) along the plane map
  std::string str() const;
};

class FamilyEvaluator {
 public:
  explicit FamilyEvaluator(CycleFamily f, unsigned seed = 1);
  const CycleFamily& family() const { return fam_; }

  Rat degree(long n);          // (M_n . C)
  Rat linear_degree();         // (L_3 . C)
  Rat combo(const TautCombo& L);
  bool extrapolated(long n) const { return n < fam_.direct_start(); }
  std::string backend() const;
  long isotropy();             // 0 if the orbit is a point

 private:
  CycleFamily fam_;
  unsigned seed_;
  std::optional<TorusData> torus_;
  bool torus_checked_ = false;
  std::optional<long> ell_;
  std::map<long, Rat> cache_;
  std::optional<IntPolynomial> below_;
  std::mutex mu_;

  void prepare();
  Rat direct(long n);
  long span_at(long n);
};

Rat orbit_degree(const CycleFamily& F, long n, unsigned seed = 1);
Rat combo_degree(const CycleFamily& F, const TautCombo& L, unsigned seed = 1);

// worker count from TAUTOCYCLE_THREADS (default: hardware concurrency)
int worker_count();
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace tc
