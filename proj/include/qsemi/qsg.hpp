#ifndef QSEMI_QSG_HPP
#define QSEMI_QSG_HPP

// Quantum semigroups: a multi-matrix algebra A together with a coassociative
// unital *-homomorphism Delta : A -> A (x) A, stored densely as the d^2 x d
// matrix whose column c holds the product-basis coordinates of Delta(E_c).
//
// Convolution of functionals, the one-sided actions of functionals on
// elements, the bimodule actions of elements on functionals, and the rank
// tests for proper cancellation all live here.

#include <cstdint>
#include <optional>

#include "qsemi/fdalg.hpp"

namespace qsemi {

struct Comultiplication {
  StructureRef domain;
  StructureRef codomain;  // tensor square of the domain
  Matrix mat;             // d^2 x d

  Element apply(const Element& a) const {
    require_same_structure(domain, a.str, "Comultiplication::apply");
    return Element(codomain, mat * a.coeffs);
  }
};

Comultiplication make_comultiplication(const StructureRef& s, const Matrix& m);

struct AxiomReport {
  double unitality = 0.0;
  double star = 0.0;
  double multiplicativity = 0.0;
  double coassociativity = 0.0;
  double max_residual() const;
  bool pass(double eps) const { return max_residual() <= eps; }
};

AxiomReport verify_quantum_semigroup(const StructureRef& s, const Matrix& delta);

struct QuantumSemigroup {
  StructureRef str;
  Comultiplication delta;
  AxiomReport axioms;
  int dim() const { return str->dim(); }
};

// Verifies the axioms and throws AxiomError above eps.
QuantumSemigroup make_quantum_semigroup(const StructureRef& s, const Matrix& delta, double eps);

// mu * nu = (mu (x) nu) o Delta.
Functional convolve(const QuantumSemigroup& qs, const Functional& mu, const Functional& nu);

enum class Side { Left, Right };

// Side::Left : mu * a = (id (x) mu) Delta(a)
// Side::Right: a * mu = (mu (x) id) Delta(a)
Element conv_state_elt(const QuantumSemigroup& qs, const Functional& mu, const Element& a, Side side);

// Bimodule actions on the dual (no comultiplication involved):
// Side::Left : (a . mu)(b) = mu(b a),  density a_b rho_b
// Side::Right: (mu . a)(b) = mu(a b),  density rho_b a_b
Functional act(const Element& a, const Functional& mu, Side side);

// Partial slices of a tensor element: (mu (x) id) X and (id (x) mu) X.
Element slice_left(const Functional& mu, const Element& x);
Element slice_right(const Element& x, const Functional& mu);

struct CancellationReport {
  // proper_left:  span{ Delta(E_i)(1 (x) E_j) } has full rank d^2
  // proper_right: span{ (E_i (x) 1) Delta(E_j) } has full rank d^2
  // On function algebras these match injectivity of (x,y) -> (xy, y) and
  // (x,y) -> (x, xy) respectively.
  bool proper_left = false;
  bool proper_right = false;
  int rank_left = 0;
  int rank_right = 0;
  // At finite dimension weak cancellation coincides with proper cancellation.
  bool weak = false;
  // Randomized falsification probe: for sampled functionals mu the sliced
  // spans must stay full; a failing mu is reported as a witness.
  std::optional<Functional> witness;
  std::uint64_t seed = 0;
};

CancellationReport cancellation_check(const QuantumSemigroup& qs, double eps,
                                      std::uint64_t seed = 42, int probes = 20);

// Same algebra with the flipped comultiplication; an exact involution.
QuantumSemigroup opposite(const QuantumSemigroup& qs, double eps);

// Hermitized complex-Gaussian functional, normalized to density norm one.
Functional random_hermitian_functional(const StructureRef& s, std::uint64_t seed);

// Random faithful state (normalized Wishart density per block).
Functional random_state(const StructureRef& s, std::uint64_t seed);

// Random element with independent complex-Gaussian coefficients.
Element random_element(const StructureRef& s, std::uint64_t seed);

}  // namespace qsemi

#endif
