#ifndef QSEMI_CLASSIFY_HPP
#define QSEMI_CLASSIFY_HPP

// Haar-type classification of an idempotent state.  Five conditions, each
// evaluated by its own independent numerical procedure, are equivalent for
// idempotent states on a quantum semigroup:
//   (1) the left kernel C = {a : omega(a*a) = 0} is a two-sided ideal;
//   (2) the support projection is central;
//   (3) the compression a -> pap is a *-homomorphism onto the corner;
//   (4) the corner with the compressed comultiplication is a compact quantum
//       group (unital *-homomorphism plus proper cancellation);
//   (5) omega is of Haar type, which is condition (4) read as a definition.
// The classifier computes all of them and reports disagreement as an alarm
// instead of shortcutting through the equivalence.

#include <vector>

#include "qsemi/hyper.hpp"

namespace qsemi {

struct ConditionResult {
  bool holds = false;
  double residual = 0.0;
};

struct ClassificationReport {
  ConditionResult ideal_two_sided;           // (1)
  ConditionResult central_support;           // (2)
  ConditionResult compression_homomorphism;  // (3)
  ConditionResult corner_quantum_group;      // (4)
  ConditionResult haar_type;                 // (5)
  bool agreement = false;  // all five booleans coincide
  bool is_tracial = false;

  int left_kernel_dim = 0;            // dim C
  std::vector<int> support_ranks;     // rank of p per parent block
  double set_closure_residual = 0.0;  // corner basis products vs their span
  double multiplicativity_residual = 0.0;  // pap pbp vs p(ab)p
  int corner_rank_left = 0;   // proper-cancellation ranks on the corner,
  int corner_rank_right = 0;  // full = dim(X)^2
};

// Evaluates the five conditions for an idempotent state (residual above
// 1e-6 is rejected as non-idempotent).  Booleans are decided at eps except
// the ideal test, which runs at the looser 1e-8 because nullspace bases
// amplify rounding noise.  A tracial idempotent must classify Haar type.
ClassificationReport haar_type_report(const QuantumSemigroup& qs, const Functional& omega,
                                      double eps = 1e-9);

// max |omega(ab) - omega(ba)| over basis pairs.
double tracial_residual(const QuantumSemigroup& qs, const Functional& omega);
bool tracial_check(const QuantumSemigroup& qs, const Functional& omega, double eps = 1e-9);

}  // namespace qsemi

#endif
