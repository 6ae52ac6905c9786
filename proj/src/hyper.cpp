#include "qsemi/hyper.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsemi/idem.hpp"

namespace qsemi {

namespace {

// Min eigenvalue over source blocks of the Choi matrices of the linear map
// `mat` (target coords x source coords).  Block b contributes
// C_b = sum_{rc} e_r e_c^T (x) full_matrix(map(E^b_rc)); the map is
// completely positive iff every C_b is positive semidefinite.  Any
// non-Hermitian defect is subtracted from the margin so it can only hurt.
double choi_min_eigenvalue(const StructureRef& source, const StructureRef& target,
                           const Matrix& mat) {
  double margin = std::numeric_limits<double>::infinity();
  const int full = target->matrix_size();
  for (int b = 0; b < source->num_blocks(); ++b) {
    const int n = source->block_size(b);
    Matrix choi = Matrix::Zero(n * full, n * full);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const Element img(target, Vector(mat.col(source->unit_index(b, r, c))));
        choi.block(r * full, c * full, full, full) = full_matrix(img);
      }
    const Matrix herm = 0.5 * (choi + choi.adjoint());
    const double defect = (choi - herm).norm();
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    margin = std::min(margin, es.eigenvalues().minCoeff() - defect);
  }
  return margin;
}

Vector unit_tensor_coords(const StructureRef& s, const Vector& u) {
  const int m = s->dim();
  Vector t(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[i * m + j] = u[i] * u[j];
  return t;
}

}  // namespace

ProtoHypergroup build_hypergroup(const QuantumSemigroup& qs, const Functional& omega,
                                 double eps) {
  require_same_structure(qs.str, omega.str, "build_hypergroup");
  const double idem_res = idempotency_residual(qs, omega);
  if (idem_res > 1e-6)
    throw InvalidInput("build_hypergroup: state is not idempotent (residual " +
                       std::to_string(idem_res) + ")");

  const Projection p = support_projection(omega, std::max(eps, 1e-12));
  OperatorSystemBasis system = compress_basis(p);
  const Element pp = tensor(system.unit, system.unit);
  const Matrix corner_pairs = kron(system.embed, system.embed);  // d^2 x m^2
  const int m = system.sub_dim;

  const double scale = std::max(1.0, qs.delta.mat.norm());
  Matrix delta(m * m, m);
  for (int c = 0; c < m; ++c) {
    const Element compressed = mul(mul(pp, qs.delta.apply(system.basis[c])), pp);
    const Vector coords = corner_pairs.adjoint() * compressed.coeffs;
    const double defect = (compressed.coeffs - corner_pairs * coords).norm();
    if (defect > eps * scale)
      throw RangeContainmentError(
          "compressed comultiplication leaves the corner tensor square (defect " +
          std::to_string(defect) + "); the input is not a valid idempotent/semigroup pair");
    delta.col(c) = coords;
  }

  Functional haar = system.restrict_functional(omega);
  return ProtoHypergroup{qs, omega, std::move(system), std::move(delta), std::move(haar)};
}

double HypergroupReport::max_residual() const {
  return std::max({support_identity, compression_invariance, unitality, coassociativity,
                   left_invariance, right_invariance, compact_witness});
}

bool HypergroupReport::pass(double eps) const {
  return max_residual() <= eps && choi_margin >= -eps && faithfulness_margin > eps &&
         invariance_nullity == 1;
}

HypergroupReport verify_hypergroup(const ProtoHypergroup& h, double eps) {
  HypergroupReport rep;
  const QuantumSemigroup& qs = h.parent;
  const StructureRef& corner = h.system.corner;
  const int m = h.system.sub_dim;
  const Element& p = h.system.unit;
  const Element pp = tensor(p, p);

  // Delta(p)(p (x) p) = p (x) p
  rep.support_identity = hs_norm(mul(qs.delta.apply(p), pp) - pp);

  // p (omega * a) p = omega(a) p, both convolution sides
  for (int i = 0; i < qs.dim(); ++i) {
    const Element a = matrix_unit(qs.str, i);
    const Complex wa = apply(h.omega, a);
    for (Side side : {Side::Left, Side::Right}) {
      const Element conv = conv_state_elt(qs, h.omega, a, side);
      rep.compression_invariance = std::max(
          rep.compression_invariance, hs_norm(mul(mul(p, conv), p) - wa * p));
    }
  }

  const Vector u = unit_element(corner).coeffs;
  rep.unitality = (h.delta * u - unit_tensor_coords(corner, u)).norm();

  const Matrix id = Matrix::Identity(m, m);
  rep.coassociativity = (kron(h.delta, id) * h.delta - kron(id, h.delta) * h.delta).norm();

  // ambient map a -> (p (x) p) Delta(a) (p (x) p)
  Matrix ambient(qs.delta.codomain->dim(), qs.dim());
  for (int i = 0; i < qs.dim(); ++i) {
    const Element a = matrix_unit(qs.str, i);
    ambient.col(i) = mul(mul(pp, qs.delta.apply(a)), pp).coeffs;
  }
  rep.choi_margin = choi_min_eigenvalue(qs.str, qs.delta.codomain, ambient);

  // (id (x) h) and (h (x) id) against h(x) p
  const Vector w = covector(h.haar);
  for (int c = 0; c < m; ++c) {
    Vector right_slice = Vector::Zero(m);  // (h (x) id)
    Vector left_slice = Vector::Zero(m);   // (id (x) h)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        right_slice[j] += w[i] * h.delta(i * m + j, c);
        left_slice[i] += w[j] * h.delta(i * m + j, c);
      }
    rep.left_invariance = std::max(rep.left_invariance, (left_slice - w[c] * u).norm());
    rep.right_invariance = std::max(rep.right_invariance, (right_slice - w[c] * u).norm());
  }

  // faithfulness: Gram matrix h(x_i* x_j) over the corner basis
  Matrix gram(m, m);
  for (int i = 0; i < m; ++i) {
    const Element xi = star(matrix_unit(corner, i));
    for (int j = 0; j < m; ++j)
      gram(i, j) = apply(h.haar, mul(xi, matrix_unit(corner, j)));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (gram + gram.adjoint())));
  rep.faithfulness_margin = es.eigenvalues().minCoeff();

  // solution space of the two invariance equations for an unknown functional:
  // rows demand (w' (x) id)Delta(x_c) = w'(x_c) p and its mirror
  Matrix constraints = Matrix::Zero(2 * m * m, m);
  for (int c = 0; c < m; ++c)
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        constraints(c * m + j, i) += h.delta(i * m + j, c);
        constraints(m * m + c * m + j, i) += h.delta(j * m + i, c);
      }
      constraints(c * m + j, c) -= u[j];
      constraints(m * m + c * m + j, c) -= u[j];
    }
  // rank cut between solver residual (<= 1e-8) and the spectral gap (~1e-1).
  // The cut must be absolute: on a one-dimensional corner the constraint
  // matrix is exactly zero, and a cut relative to its own noise would
  // misread it as full rank.
  Eigen::JacobiSVD<Matrix> csvd(constraints);
  int crank = 0;
  for (Eigen::Index i = 0; i < csvd.singularValues().size(); ++i)
    if (csvd.singularValues()[i] > 1e-6) ++crank;
  rep.invariance_nullity = m - crank;

  rep.compact_witness = std::max(std::abs(apply(h.omega, unit_element(qs.str)) - Complex(1.0)),
                                 hs_norm(mul(p, p) - p));
  (void)eps;
  return rep;
}

InducedMap factor_through(const QuantumSemigroup& qs, const Functional& omega,
                          const HypergroupTarget& target, double eps) {
  const int d = qs.dim();
  const int dy = target.y->dim();
  if (target.pi_y.rows() != dy || target.pi_y.cols() != d)
    throw InvalidInput("factor_through: pi_y must be dim(Y) x dim(A)");
  if (target.delta_y.rows() != dy * dy || target.delta_y.cols() != dy)
    throw InvalidInput("factor_through: delta_y must be dim(Y)^2 x dim(Y)");
  require_same_structure(target.y, target.h_y.str, "factor_through");
  if (!check_state(target.h_y, 1e-8).is_state)
    throw InvalidInput("factor_through: h_y is not a state");

  {
    const double r = (target.pi_y * unit_element(qs.str).coeffs - unit_element(target.y).coeffs).norm();
    if (r > eps) throw HypothesisError(Hypothesis::Unital, r, "pi_y is not unital");
  }
  {
    const double margin = choi_min_eigenvalue(qs.str, target.y, target.pi_y);
    if (margin < -eps)
      throw HypothesisError(Hypothesis::CompletelyPositive, -margin,
                            "pi_y is not completely positive");
  }
  {
    const int rank = span_rank(target.pi_y, 1e-10);
    if (rank < dy)
      throw HypothesisError(Hypothesis::Surjective, static_cast<double>(dy - rank),
                            "pi_y is not surjective");
  }
  {
    const double r = (target.delta_y * target.pi_y - kron(target.pi_y, target.pi_y) * qs.delta.mat).norm();
    if (r > eps)
      throw HypothesisError(Hypothesis::Intertwining, r,
                            "pi_y does not intertwine the comultiplications");
  }
  {
    const double r = (Vector(target.pi_y.transpose() * covector(target.h_y)) - covector(omega)).norm();
    if (r > eps)
      throw HypothesisError(Hypothesis::StateFactorization, r, "omega != h_y o pi_y");
  }
  {
    Matrix gram(dy, dy);
    for (int i = 0; i < dy; ++i) {
      const Element yi = star(matrix_unit(target.y, i));
      for (int j = 0; j < dy; ++j)
        gram(i, j) = apply(target.h_y, mul(yi, matrix_unit(target.y, j)));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (gram + gram.adjoint())));
    const double margin = es.eigenvalues().minCoeff();
    if (margin <= eps)
      throw HypothesisError(Hypothesis::FaithfulHaar, margin, "h_y is not faithful");
  }

  const ProtoHypergroup h = build_hypergroup(qs, omega, eps);

  // ker(a -> pap) is the orthocomplement of the corner coefficient space
  const Matrix compress = h.system.compress_matrix();  // m x d
  const Matrix ker = kernel_basis(compress, 1e-10);
  if (ker.cols() > 0) {
    const double r = (target.pi_y * ker).norm();
    if (r > eps)
      throw HypothesisError(Hypothesis::KernelInclusion, r,
                            "ker(compression) is not inside ker(pi_y)");
  }

  // pi_y = map o compress has the unique solution map = pi_y o embed, since
  // compress is a coisometry and pi_y kills its kernel
  InducedMap out;
  out.map = target.pi_y * h.system.embed;
  out.factorization = (out.map * compress - target.pi_y).norm();
  out.unitality = (out.map * unit_element(h.system.corner).coeffs - unit_element(target.y).coeffs).norm();
  out.intertwining = (target.delta_y * out.map - kron(out.map, out.map) * h.delta).norm();
  return out;
}

}  // namespace qsemi
