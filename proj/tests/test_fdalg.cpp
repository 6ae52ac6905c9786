#include <doctest.h>

#include <cmath>
#include <complex>

#include <qsemi/errors.hpp>
#include <qsemi/fdalg.hpp>
#include <qsemi/qsg.hpp>

using namespace qsemi;

namespace {
constexpr double kTight = 1e-12;
}

TEST_CASE("block structure bookkeeping") {
  StructureRef s = BlockStructure::make({1, 2});
  CHECK(s->dim() == 5);
  CHECK(s->num_blocks() == 2);
  CHECK(s->block_size(1) == 2);
  CHECK(s->matrix_size() == 3);

  // flat layout is block-by-block, row-major inside each block
  CHECK(s->unit_index(0, 0, 0) == 0);
  CHECK(s->unit_index(1, 0, 0) == 1);
  CHECK(s->unit_index(1, 0, 1) == 2);
  CHECK(s->unit_index(1, 1, 0) == 3);
  CHECK(s->unit_index(1, 1, 1) == 4);

  CHECK_THROWS_AS(BlockStructure::make({}), StructureError);
  CHECK_THROWS_AS(BlockStructure::make({2, 0}), StructureError);
}

TEST_CASE("matrix units multiply like matrix units") {
  StructureRef s = BlockStructure::make({2, 3});
  // E_{rc} E_{c'd} = delta_{c c'} E_{rd}, zero across blocks
  for (int b = 0; b < 2; ++b) {
    const int n = s->block_size(b);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        for (int c2 = 0; c2 < n; ++c2)
          for (int d = 0; d < n; ++d) {
            Element prod = mul(matrix_unit(s, s->unit_index(b, r, c)),
                               matrix_unit(s, s->unit_index(b, c2, d)));
            Element want = c == c2 ? matrix_unit(s, s->unit_index(b, r, d)) : zero_element(s);
            CHECK(hs_norm(prod - want) == doctest::Approx(0.0).epsilon(kTight));
          }
  }
  Element cross = mul(matrix_unit(s, s->unit_index(0, 0, 0)),
                      matrix_unit(s, s->unit_index(1, 0, 0)));
  CHECK(hs_norm(cross) == 0.0);
}

TEST_CASE("product matches the faithful representation") {
  StructureRef s = BlockStructure::make({2, 3, 1});
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Element x = random_element(s, seed);
    Element y = random_element(s, seed + 100);
    CHECK((full_matrix(mul(x, y)) - full_matrix(x) * full_matrix(y)).norm() <
          kTight * (1.0 + full_matrix(x).norm() * full_matrix(y).norm()));
  }
}

TEST_CASE("unit and star") {
  StructureRef s = BlockStructure::make({2, 2});
  Element one = unit_element(s);
  Element x = random_element(s, 7);
  CHECK(hs_norm(mul(one, x) - x) < kTight);
  CHECK(hs_norm(mul(x, one) - x) < kTight);
  // (xy)* = y* x*, star is an involution
  Element y = random_element(s, 8);
  CHECK(hs_norm(star(mul(x, y)) - mul(star(y), star(x))) < kTight);
  CHECK(hs_norm(star(star(x)) - x) < kTight);
}

TEST_CASE("hilbert-schmidt inner product is the coefficient dot product") {
  StructureRef s = BlockStructure::make({2, 1});
  // matrix units are an orthonormal family
  for (int i = 0; i < s->dim(); ++i)
    for (int j = 0; j < s->dim(); ++j) {
      Complex v = hs_inner(matrix_unit(s, i), matrix_unit(s, j));
      CHECK(std::abs(v - (i == j ? 1.0 : 0.0)) < kTight);
    }
  Element x = random_element(s, 5);
  Element y = random_element(s, 6);
  CHECK(std::abs(hs_inner(x, y) - x.coeffs.dot(y.coeffs)) < kTight);
}

TEST_CASE("tensor structure charts compose with kron") {
  StructureRef a = BlockStructure::make({1, 2});
  StructureRef b = BlockStructure::make({2});
  StructureRef ab = tensor_structure(a, b);
  CHECK(ab->dim() == a->dim() * b->dim());

  Element x = random_element(a, 11);
  Element y = random_element(b, 12);
  Element t = tensor(x, y);
  // coordinates of a tensor are the kronecker product of coordinates
  for (int i = 0; i < a->dim(); ++i)
    for (int j = 0; j < b->dim(); ++j)
      CHECK(std::abs(t.coeffs[i * b->dim() + j] - x.coeffs[i] * y.coeffs[j]) < kTight);

  // multiplication is factor-wise
  Element x2 = random_element(a, 13);
  Element y2 = random_element(b, 14);
  CHECK(hs_norm(mul(tensor(x, y), tensor(x2, y2)) - tensor(mul(x, x2), mul(y, y2))) < 1e-10);

  // inner products factor
  Complex lhs = hs_inner(tensor(x, y), tensor(x2, y2));
  Complex rhs = hs_inner(x, x2) * hs_inner(y, y2);
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("tensor structure is associative on the nose") {
  StructureRef a = BlockStructure::make({2});
  StructureRef b = BlockStructure::make({1, 1});
  StructureRef c = BlockStructure::make({2, 1});
  StructureRef left = tensor_structure(tensor_structure(a, b), c);
  StructureRef right = tensor_structure(a, tensor_structure(b, c));
  CHECK(same_structure(left, right));

  Element x = random_element(a, 1);
  Element y = random_element(b, 2);
  Element z = random_element(c, 3);
  Element xyz_l = tensor(tensor(x, y), z);
  Element xyz_r = tensor(x, tensor(y, z));
  CHECK((xyz_l.coeffs - xyz_r.coeffs).norm() < kTight);
}

TEST_CASE("separate tensor charts of equal factors interoperate") {
  StructureRef a = BlockStructure::make({1, 2});
  Element x = random_element(a, 21);
  Element y = random_element(a, 22);
  Element s = tensor(x, y);
  StructureRef other = tensor_structure(BlockStructure::make({1, 2}), BlockStructure::make({1, 2}));
  Element t(other, s.coeffs);
  CHECK_NOTHROW(mul(s, t));  // value-equal structures, not pointer-equal
}

TEST_CASE("positivity check") {
  StructureRef s = BlockStructure::make({2});
  Element x = random_element(s, 33);
  PositivityReport good = positivity_check(mul(star(x), x), 1e-10);
  CHECK(good.positive);
  CHECK(good.min_eigenvalue >= -1e-10);

  Element neg = zero_element(s);
  set_block(neg, 0, (Matrix(2, 2) << -1.0, 0.0, 0.0, 1.0).finished());
  CHECK_FALSE(positivity_check(neg, 1e-10).positive);

  Element nh = zero_element(s);
  set_block(nh, 0, (Matrix(2, 2) << 0.0, 1.0, 0.0, 0.0).finished());
  PositivityReport r = positivity_check(nh, 1e-10);
  CHECK_FALSE(r.positive);
  CHECK(r.hermiticity_defect > 0.1);
}

TEST_CASE("functionals, covectors and the pairing") {
  StructureRef s = BlockStructure::make({1, 2});
  Functional phi(s, {(Matrix(1, 1) << 0.25).finished(),
                     (Matrix(2, 2) << 0.5, Complex(0, 0.125), Complex(0, -0.125), 0.25).finished()});
  // phi(x) = sum_b tr(rho_b x_b)
  Element x = random_element(s, 3);
  Complex direct = 0.0;
  for (int b = 0; b < 2; ++b) direct += (phi.rho[b] * get_block(x, b)).trace();
  CHECK(std::abs(apply(phi, x) - direct) < kTight);

  // covector pairing: phi(x) = w . coeffs, and the covector of E_{rc} entry
  // is rho(c, r)
  Vector w = covector(phi);
  CHECK(std::abs(apply(phi, x) - (w.transpose() * x.coeffs)(0)) < kTight);
  CHECK(std::abs(w[s->unit_index(1, 0, 1)] - phi.rho[1](1, 0)) < kTight);

  Functional back = functional_from_covector(s, w);
  CHECK(density_distance(back, phi) < kTight);
}

TEST_CASE("state check accepts states and rejects non-states") {
  StructureRef s = BlockStructure::make({2});
  Functional good(s, {(Matrix(2, 2) << 0.75, 0.0, 0.0, 0.25).finished()});
  CHECK(check_state(good, 1e-9).is_state);

  Functional bad_trace(s, {(Matrix(2, 2) << 0.75, 0.0, 0.0, 0.5).finished()});
  StateReport r1 = check_state(bad_trace, 1e-9);
  CHECK_FALSE(r1.is_state);
  CHECK(r1.trace_error == doctest::Approx(0.25));

  Functional bad_pos(s, {(Matrix(2, 2) << 1.25, 0.0, 0.0, -0.25).finished()});
  StateReport r2 = check_state(bad_pos, 1e-9);
  CHECK_FALSE(r2.is_state);
  CHECK(r2.min_eigenvalue == doctest::Approx(-0.25));
}

TEST_CASE("project_to_states clips and renormalizes") {
  StructureRef s = BlockStructure::make({2});
  Functional dirty(s, {(Matrix(2, 2) << 0.9, 0.0, 0.0, -0.1).finished()});
  Functional cleaned = project_to_states(dirty);
  CHECK(check_state(cleaned, 1e-12).is_state);
  CHECK(std::abs(cleaned.rho[0](0, 0) - 1.0) < kTight);
  CHECK(std::abs(cleaned.rho[0](1, 1)) < kTight);
}

TEST_CASE("support projection of a state") {
  StructureRef s = BlockStructure::make({1, 2});
  Functional phi(s, {(Matrix(1, 1) << 0.5).finished(),
                     (Matrix(2, 2) << 0.5, 0.0, 0.0, 0.0).finished()});
  Projection p = support_projection(phi, 1e-9);
  CHECK(get_block(p.p, 0)(0, 0).real() == doctest::Approx(1.0));
  CHECK(get_block(p.p, 1)(0, 0).real() == doctest::Approx(1.0));
  CHECK(std::abs(get_block(p.p, 1)(1, 1)) < kTight);

  // defining property: phi(pap) = phi(a), phi(p) = 1
  CHECK(std::abs(apply(phi, p.p) - 1.0) < kTight);
  for (std::uint64_t seed : {1u, 2u}) {
    Element a = random_element(s, seed);
    CHECK(std::abs(apply(phi, mul(p.p, mul(a, p.p))) - apply(phi, a)) < 1e-10);
  }
  static_assert(Projection::compact);
}

TEST_CASE("support projection ignores a block of pure rounding noise") {
  StructureRef s = BlockStructure::make({1, 1, 2});
  Functional phi(s, {(Matrix(1, 1) << 0.5).finished(),
                     (Matrix(1, 1) << 1.3e-16).finished(),
                     (Matrix(2, 2) << 0.5, 0.0, 0.0, -1.0e-17).finished()});
  Projection p = support_projection(phi, 1e-9);
  CHECK(std::lround(get_block(p.p, 0).trace().real()) == 1);
  CHECK(std::lround(get_block(p.p, 1).trace().real()) == 0);
  CHECK(std::lround(get_block(p.p, 2).trace().real()) == 1);
}

TEST_CASE("make_projection validates idempotence and self-adjointness") {
  StructureRef s = BlockStructure::make({2});
  Element p = zero_element(s);
  set_block(p, 0, (Matrix(2, 2) << 1.0, 0.0, 0.0, 0.0).finished());
  CHECK_NOTHROW(make_projection(p, 1e-10));

  Element q = zero_element(s);
  set_block(q, 0, (Matrix(2, 2) << 0.5, 0.0, 0.0, 0.0).finished());
  CHECK_THROWS_AS(make_projection(q, 1e-10), InvalidInput);
}

TEST_CASE("corner basis of a rank-one projection in a 2x2 block") {
  StructureRef s = BlockStructure::make({1, 2});
  Element p = zero_element(s);
  set_block(p, 0, (Matrix(1, 1) << 1.0).finished());
  // projection onto (1, 1)/sqrt(2): off-diagonal corner
  set_block(p, 1, (Matrix(2, 2) << 0.5, 0.5, 0.5, 0.5).finished());
  OperatorSystemBasis sys = compress_basis(make_projection(p, 1e-10));

  CHECK(sys.ambient_dim == 5);
  CHECK(sys.sub_dim == 2);  // 1x1 corner in each block
  CHECK(sys.corner->blocks() == std::vector<int>{1, 1});
  CHECK(sys.corner_parent_block == std::vector<int>{0, 1});

  // basis is orthonormal and embed is an isometry
  Matrix gram = sys.embed.adjoint() * sys.embed;
  CHECK((gram - Matrix::Identity(2, 2)).norm() < kTight);

  // compress then expand is the HS-orthogonal projection a -> p a p
  Element a = random_element(s, 9);
  Element pap = mul(p, mul(a, p));
  CHECK(hs_norm(sys.expand(sys.compress_coords(a)) - pap) < 1e-10);

  // corner products transport through the basis
  Vector ca = sys.compress_coords(a);
  Element b = random_element(s, 10);
  Vector cb = sys.compress_coords(b);
  Element prod_in_corner = mul(Element(sys.corner, ca), Element(sys.corner, cb));
  Element prod_in_parent = mul(pap, mul(p, mul(b, p)));
  CHECK(hs_norm(sys.expand(prod_in_corner.coeffs) - prod_in_parent) < 1e-10);

  // the corner unit is p
  CHECK(hs_norm(sys.expand(unit_element(sys.corner).coeffs) - p) < kTight);

  // restriction of a functional agrees on compressed elements
  Functional phi(s, {(Matrix(1, 1) << 0.5).finished(),
                     (Matrix(2, 2) << 0.25, 0.25, 0.25, 0.25).finished()});
  Functional res = sys.restrict_functional(phi);
  CHECK(std::abs(apply(res, Element(sys.corner, ca)) - apply(phi, pap)) < 1e-10);
}

TEST_CASE("span rank and kernel basis") {
  StructureRef s = BlockStructure::make({2});
  std::vector<Element> xs = {unit_element(s), matrix_unit(s, 0), matrix_unit(s, 3)};
  CHECK(span_rank(xs, 1e-10) == 2);  // 1 = E00 + E11 is dependent

  Matrix m(2, 3);
  m << 1, 0, 1, 0, 0, 0;
  CHECK(span_rank(m, 1e-10) == 1);
  Matrix k = kernel_basis(m, 1e-10);
  CHECK(k.cols() == 2);
  CHECK((m * k).norm() < kTight);
  CHECK((k.adjoint() * k - Matrix::Identity(2, 2)).norm() < kTight);
}

TEST_CASE("structure mismatches are rejected") {
  StructureRef a = BlockStructure::make({2});
  StructureRef b = BlockStructure::make({1, 1});
  CHECK_FALSE(same_structure(a, b));
  CHECK_THROWS_AS(mul(random_element(a, 1), random_element(b, 1)), StructureError);
  CHECK_THROWS_AS(Element(a, Vector::Zero(3)), StructureError);
  CHECK_THROWS_AS(Functional(a, {Matrix::Zero(1, 1)}), StructureError);
}
