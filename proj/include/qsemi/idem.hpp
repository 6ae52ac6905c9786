#ifndef QSEMI_IDEM_HPP
#define QSEMI_IDEM_HPP

// Finding and checking idempotent states: omega * omega = omega.
//
// The search combines three sources:
//  (a) damped Newton iteration on the quadratic system
//        { omega * omega - omega = 0, omega(1) = 1 }
//      over the real parametrization of Hermitian densities, with an analytic
//      Jacobian and a positive-cone projection between steps;
//  (b) Cesaro averages (1/N) sum_{n<=N} mu^{*n} of random extreme starting
//      states, polished by Newton;
//  (c) caller-supplied exact oracle seeds.
// Candidates violating positivity are discarded; the survivors are
// deduplicated by density distance and sorted lexicographically by density
// coefficients, so the output is deterministic for a fixed seed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsemi/qsg.hpp"

namespace qsemi {

struct SolverConfig {
  int starts = 64;
  int max_iter = 120;
  double eps_idem = 1e-9;      // accepted idempotency residual
  double eps_state = 1e-8;     // positivity slack before a candidate is discarded
  double dedup_radius = 1e-6;  // density distance identifying two candidates
  std::uint64_t seed = 42;
  int cesaro_max_terms = 4096;
};

// || density(omega * omega) - density(omega) ||_F.  Throws InvalidInput when
// omega is not a state (within a loose 1e-6 gate).
double idempotency_residual(const QuantumSemigroup& qs, const Functional& omega);

enum class Provenance { Newton, Cesaro, Oracle };
const char* provenance_name(Provenance p);

struct IdempotentCandidate {
  Functional state;
  double residual = 0.0;
  Provenance provenance = Provenance::Newton;
  int cesaro_terms = 0;  // N of the accepted Cesaro average; 0 otherwise
};

// Newton iteration from a given starting state; empty when it leaves the
// state space or fails to reach eps_idem.
std::optional<Functional> newton_polish(const QuantumSemigroup& qs, const Functional& start,
                                        const SolverConfig& cfg);

// First Cesaro average whose polished residual reaches eps_idem; an already
// idempotent mu is returned at N = 1.  Non-convergence is a normal outcome.
std::optional<IdempotentCandidate> cesaro_limit(const QuantumSemigroup& qs, const Functional& mu,
                                                const SolverConfig& cfg);

std::vector<IdempotentCandidate> find_idempotents(const QuantumSemigroup& qs,
                                                  const SolverConfig& cfg = {},
                                                  const std::vector<Functional>& oracle_seeds = {});

// Residuals of the multiplicative-domain identities of an idempotent state:
// for basis elements a, c and sampled x,
//   omega((omega*a) x) = omega(omega*a) omega(x)   and mirrored,
//   same with a*omega,
//   omega * (omega . c) = omega(c) omega,
//   (omega . c) * omega = omega(c) omega.
struct MultDomainReport {
  double slice_left = 0.0;      // omega * a inside the multiplicative domain
  double slice_right = 0.0;     // a * omega inside the multiplicative domain
  double absorb_left = 0.0;     // omega * (omega . c) - omega(c) omega
  double absorb_right = 0.0;    // (omega . c) * omega - omega(c) omega
  int samples = 0;
  double max_residual() const;
  bool pass(double eps) const { return max_residual() <= eps; }
};

MultDomainReport mult_domain_verify(const QuantumSemigroup& qs, const Functional& omega,
                                    int samples = 50, std::uint64_t seed = 42);

}  // namespace qsemi

#endif
