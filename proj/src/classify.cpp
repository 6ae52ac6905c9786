#include "qsemi/classify.hpp"

#include <algorithm>
#include <cmath>

namespace qsemi {

namespace {

// Loose cut for everything derived from a numerical nullspace.
constexpr double kIdealEps = 1e-8;

}  // namespace

ClassificationReport haar_type_report(const QuantumSemigroup& qs, const Functional& omega,
                                      double eps) {
  const ProtoHypergroup h = build_hypergroup(qs, omega, eps);
  const StructureRef& s = qs.str;
  const int d = qs.dim();
  ClassificationReport rep;

  // (1) left kernel from the GNS Gram matrix, then ideal closure both sides
  Matrix gram(d, d);
  for (int i = 0; i < d; ++i) {
    const Element xi = star(matrix_unit(s, i));
    for (int j = 0; j < d; ++j) gram(i, j) = apply(omega, mul(xi, matrix_unit(s, j)));
  }
  const Matrix kernel = kernel_basis(Matrix(0.5 * (gram + gram.adjoint())), kIdealEps);
  rep.left_kernel_dim = static_cast<int>(kernel.cols());
  double ideal_residual = 0.0;
  for (int k = 0; k < kernel.cols(); ++k) {
    const Element v(s, Vector(kernel.col(k)));
    for (int i = 0; i < d; ++i) {
      const Element e = matrix_unit(s, i);
      for (const Element& prod : {mul(v, e), mul(e, v)}) {
        const Vector w = prod.coeffs;
        ideal_residual = std::max(ideal_residual, (w - kernel * (kernel.adjoint() * w)).norm());
      }
    }
  }
  rep.ideal_two_sided = {ideal_residual <= kIdealEps, ideal_residual};

  // (2) centrality of the support projection
  const Element& p = h.system.unit;
  double central = 0.0;
  for (int i = 0; i < d; ++i) {
    const Element e = matrix_unit(s, i);
    central = std::max(central, hs_norm(mul(p, e) - mul(e, p)));
  }
  rep.central_support = {central <= eps, central};
  for (int b = 0; b < s->num_blocks(); ++b)
    rep.support_ranks.push_back(
        static_cast<int>(std::lround(get_block(p, b).trace().real())));

  // (3) the compression is a *-homomorphism: the corner is closed as a set
  // (products stay in their own span) AND pap pbp = p(ab)p
  const Matrix& embed = h.system.embed;
  const int m = h.system.sub_dim;
  double closure = 0.0, multiplicativity = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Vector w = mul(h.system.basis[i], h.system.basis[j]).coeffs;
      closure = std::max(closure, (w - embed * (embed.adjoint() * w)).norm());
    }
  for (int i = 0; i < d; ++i) {
    const Element ei = matrix_unit(s, i);
    const Element pi(h.system.corner, h.system.compress_coords(ei));
    for (int j = 0; j < d; ++j) {
      const Element ej = matrix_unit(s, j);
      const Element pj(h.system.corner, h.system.compress_coords(ej));
      const Vector lhs = h.system.compress_coords(mul(ei, ej));
      multiplicativity = std::max(multiplicativity, (mul(pi, pj).coeffs - lhs).norm());
    }
  }
  rep.set_closure_residual = closure;
  rep.multiplicativity_residual = multiplicativity;
  rep.compression_homomorphism = {closure <= eps && multiplicativity <= eps,
                                  std::max(closure, multiplicativity)};

  // (4) the corner carries a compact quantum group: the compressed
  // comultiplication satisfies the full axioms and cancellation is proper
  const AxiomReport corner_axioms = verify_quantum_semigroup(h.system.corner, h.delta);
  QuantumSemigroup corner_qs{h.system.corner,
                             make_comultiplication(h.system.corner, h.delta), corner_axioms};
  const CancellationReport cancel = cancellation_check(corner_qs, std::max(eps, 1e-10));
  rep.corner_rank_left = cancel.rank_left;
  rep.corner_rank_right = cancel.rank_right;
  const bool cqg = corner_axioms.pass(eps) && cancel.proper_left && cancel.proper_right;
  const double rank_defect =
      static_cast<double>(2 * m * m - cancel.rank_left - cancel.rank_right);
  rep.corner_quantum_group = {cqg, std::max(corner_axioms.max_residual(), rank_defect)};

  // (5) Haar type is condition (4) read as a definition
  rep.haar_type = rep.corner_quantum_group;

  const bool all[5] = {rep.ideal_two_sided.holds, rep.central_support.holds,
                       rep.compression_homomorphism.holds, rep.corner_quantum_group.holds,
                       rep.haar_type.holds};
  rep.agreement = true;
  for (bool v : all) rep.agreement = rep.agreement && (v == all[0]);

  rep.is_tracial = tracial_check(qs, omega, eps);
  return rep;
}

double tracial_residual(const QuantumSemigroup& qs, const Functional& omega) {
  const StructureRef& s = qs.str;
  double r = 0.0;
  for (int i = 0; i < qs.dim(); ++i) {
    const Element ei = matrix_unit(s, i);
    for (int j = 0; j < qs.dim(); ++j) {
      const Element ej = matrix_unit(s, j);
      r = std::max(r, std::abs(apply(omega, mul(ei, ej)) - apply(omega, mul(ej, ei))));
    }
  }
  return r;
}

bool tracial_check(const QuantumSemigroup& qs, const Functional& omega, double eps) {
  return tracial_residual(qs, omega) <= eps;
}

}  // namespace qsemi
