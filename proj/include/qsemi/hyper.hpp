#ifndef QSEMI_HYPER_HPP
#define QSEMI_HYPER_HPP

// Compression of a quantum semigroup by an idempotent state omega: the
// support projection p cuts out the corner X = pAp, which carries the unital
// completely positive coassociative map
//   Delta_X(pap) = (p (x) p) Delta(a) (p (x) p)
// and the faithful bi-invariant state h = omega|_X.  The triple (X, Delta_X,
// h) is a proto compact quantum hypergroup; h is its unique invariant state
// up to scale.  Every sufficiently compatible surjection onto another such
// triple factors uniquely through the compression.

#include "qsemi/qsg.hpp"

namespace qsemi {

struct ProtoHypergroup {
  QuantumSemigroup parent;
  Functional omega;           // idempotent state on the parent
  OperatorSystemBasis system; // corner X = pAp with unit p
  Matrix delta;               // m^2 x m over the corner basis
  Functional haar;            // omega restricted to the corner

  int dim() const { return system.sub_dim; }
};

// Builds the compressed triple.  Rejects non-idempotent omega (residual
// above 1e-6).  Each compressed basis image is re-expanded in the corner
// tensor basis; a reconstruction defect beyond eps * max(1, |Delta|) throws
// RangeContainmentError, since exact containment is a theorem and slack
// would mask a broken input.
ProtoHypergroup build_hypergroup(const QuantumSemigroup& qs, const Functional& omega,
                                 double eps = 1e-9);

struct HypergroupReport {
  double support_identity = 0.0;   // |Delta(p)(p (x) p) - p (x) p|
  double compression_invariance = 0.0;  // max |p(omega*a)p - omega(a)p|, both sides
  double unitality = 0.0;          // |Delta_X(p) - p (x) p|
  double coassociativity = 0.0;
  double choi_margin = 0.0;        // min eigenvalue of the ambient Choi blocks
  double left_invariance = 0.0;    // |(id (x) h)Delta_X(x) - h(x) p|
  double right_invariance = 0.0;   // |(h (x) id)Delta_X(x) - h(x) p|
  double faithfulness_margin = 0.0;  // min eigenvalue of the Gram h(x_i* x_j)
  int invariance_nullity = 0;      // solution space of the invariance equations
  double compact_witness = 0.0;    // |omega(1) - 1| and |p^2 - p| folded

  double max_residual() const;
  // Residuals within eps, Choi margin >= -eps, faithfulness margin > eps,
  // and a one-dimensional invariant-functional space.
  bool pass(double eps) const;
};

HypergroupReport verify_hypergroup(const ProtoHypergroup& h, double eps = 1e-9);

// A candidate quotient triple (Y, Delta_Y, h_Y) together with the claimed
// surjection pi_y : A -> Y, all in matrix-unit coordinates.
struct HypergroupTarget {
  StructureRef y;
  Matrix delta_y;   // dim(Y)^2 x dim(Y)
  Functional h_y;   // faithful state on Y
  Matrix pi_y;      // dim(Y) x dim(A)
};

struct InducedMap {
  Matrix map;               // dim(Y) x dim(X), corner basis -> Y basis
  double factorization = 0.0;  // |map o compress - pi_y|
  double unitality = 0.0;      // |map(p) - 1_Y|
  double intertwining = 0.0;   // |Delta_Y o map - (map (x) map) o Delta_X|
};

// Factorizes pi_y = map o (a -> pap) through the compression.  The
// hypotheses are verified first and a failure throws HypothesisError naming
// the broken one: pi_y must be unital, completely positive, surjective,
// intertwining, with omega = h_y o pi_y, h_y faithful, and
// ker(a -> pap) inside ker(pi_y).  The compression map is surjective onto
// the corner, so the solution is unique.
InducedMap factor_through(const QuantumSemigroup& qs, const Functional& omega,
                          const HypergroupTarget& target, double eps = 1e-9);

}  // namespace qsemi

#endif
