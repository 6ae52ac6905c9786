#include <doctest.h>

#include <cmath>
#include <vector>

#include <qsemi/catalog.hpp>
#include <qsemi/errors.hpp>
#include <qsemi/hyper.hpp>
#include <qsemi/idem.hpp>
#include <qsemi/qsg.hpp>

using namespace qsemi;

namespace {

Functional point_mass(const StructureRef& s, int x) {
  RealVector q = RealVector::Zero(s->dim());
  q[x] = 1.0;
  return measure_state(s, q);
}

std::vector<int> support_ranks(const Functional& phi) {
  Projection p = support_projection(phi, 1e-9);
  std::vector<int> ranks;
  for (int b = 0; b < phi.str->num_blocks(); ++b)
    ranks.push_back(static_cast<int>(std::lround(get_block(p.p, b).trace().real())));
  return ranks;
}

}  // namespace

TEST_CASE("a faithful idempotent compresses to the whole algebra") {
  QuantumSemigroup qs = build_catalog("CS3");
  Functional haar = measure_state(qs.str, RealVector::Ones(6) / 6.0);
  ProtoHypergroup h = build_hypergroup(qs, haar);
  CHECK(h.dim() == 6);
  // support is the unit, the corner chart is the identity, the squeezed
  // comultiplication is the original one
  CHECK((h.system.embed - Matrix::Identity(6, 6)).norm() < 1e-12);
  CHECK((h.delta - qs.delta.mat).norm() < 1e-12);
  CHECK(density_distance(h.haar, haar) < 1e-12);

  HypergroupReport rep = verify_hypergroup(h);
  CHECK(rep.pass(1e-9));
  CHECK(rep.max_residual() < 1e-12);
  CHECK(rep.choi_margin > -1e-12);
  CHECK(rep.faithfulness_margin > 0.01);
  CHECK(rep.invariance_nullity == 1);
  CHECK(rep.compact_witness < 1e-12);
}

TEST_CASE("a point mass compresses to the one-dimensional hypergroup") {
  QuantumSemigroup qs = build_catalog("CS3");
  ProtoHypergroup h = build_hypergroup(qs, point_mass(qs.str, 0));
  CHECK(h.dim() == 1);
  CHECK(std::abs(h.delta(0, 0) - 1.0) < 1e-12);
  HypergroupReport rep = verify_hypergroup(h);
  CHECK(rep.pass(1e-9));
  CHECK(rep.invariance_nullity == 1);

  // same shape with a numerically computed projection: the full-group
  // indicator on the dual compresses to the trivial-representation corner,
  // whose invariance constraints are zero only up to rounding
  GroupData g = group_s3();
  QuantumSemigroup ds3 = build_catalog("dualS3");
  Functional eps_state = dual_subgroup_state(g, ds3.str, {0, 1, 2, 3, 4, 5});
  ProtoHypergroup h1 = build_hypergroup(ds3, eps_state);
  CHECK(h1.dim() == 1);
  HypergroupReport rep1 = verify_hypergroup(h1);
  CHECK(rep1.pass(1e-9));
  CHECK(rep1.invariance_nullity == 1);
}

TEST_CASE("non-absorbing idempotents still carry a hypergroup structure") {
  // the order-2 subgroup state on the dual of S3 is not of Haar type, yet its
  // compression satisfies every hypergroup requirement
  GroupData g = group_s3();
  QuantumSemigroup qs = build_catalog("dualS3");
  std::vector<int> h2;
  for (const auto& h : subgroup_enumeration(g.table))
    if (h.size() == 2) h2 = h;
  Functional phi = dual_subgroup_state(g, qs.str, h2);
  REQUIRE(support_ranks(phi) == std::vector<int>{1, 0, 1});

  ProtoHypergroup h = build_hypergroup(qs, phi);
  CHECK(h.dim() == 2);
  CHECK(h.system.corner->blocks() == std::vector<int>{1, 1});
  HypergroupReport rep = verify_hypergroup(h);
  CHECK(rep.pass(1e-9));
  CHECK(rep.support_identity < 1e-12);
  CHECK(rep.compression_invariance < 1e-12);
  CHECK(rep.unitality < 1e-12);
  CHECK(rep.coassociativity < 1e-12);
  CHECK(rep.choi_margin > -1e-10);
  CHECK(rep.left_invariance < 1e-12);
  CHECK(rep.right_invariance < 1e-12);
  CHECK(rep.faithfulness_margin > 0.01);
  CHECK(rep.invariance_nullity == 1);
}

TEST_CASE("the exotic idempotents of the eight-dimensional example compress cleanly") {
  QuantumSemigroup qs = build_catalog("kac-paljutkin");
  SolverConfig cfg;
  auto found = find_idempotents(qs, cfg, {});
  std::vector<Functional> exotic;
  for (const auto& c : found)
    if (support_ranks(c.state) == std::vector<int>{1, 1, 0, 0, 1}) exotic.push_back(c.state);
  REQUIRE(exotic.size() == 2);
  for (const Functional& phi : exotic) {
    ProtoHypergroup h = build_hypergroup(qs, phi);
    CHECK(h.dim() == 3);
    HypergroupReport rep = verify_hypergroup(h);
    CHECK(rep.pass(1e-8));
    CHECK(rep.choi_margin > -1e-10);
    CHECK(rep.invariance_nullity == 1);
    CHECK(rep.faithfulness_margin > 1e-3);
  }
}

TEST_CASE("build_hypergroup rejects non-idempotent states") {
  QuantumSemigroup qs = build_catalog("CZ2");
  Functional w = measure_state(qs.str, (RealVector(2) << 1.0 / 3.0, 2.0 / 3.0).finished());
  CHECK_THROWS_AS(build_hypergroup(qs, w), InvalidInput);
}

TEST_CASE("factorization through the scalars") {
  QuantumSemigroup qs = build_catalog("CS3");
  RealVector qa3 = RealVector::Zero(6);
  qa3[0] = qa3[3] = qa3[4] = 1.0 / 3.0;
  Functional omega = measure_state(qs.str, qa3);

  HypergroupTarget target;
  target.y = BlockStructure::make({1});
  target.delta_y = Matrix::Ones(1, 1);
  target.h_y = Functional(target.y, {Matrix::Ones(1, 1)});
  target.pi_y = covector(omega).transpose();

  InducedMap m = factor_through(qs, omega, target);
  CHECK(m.factorization < 1e-12);
  CHECK(m.unitality < 1e-12);
  CHECK(m.intertwining < 1e-12);
  // the induced map is the squeezed state itself
  ProtoHypergroup h = build_hypergroup(qs, omega);
  CHECK((m.map - covector(h.haar).transpose()).norm() < 1e-12);
}

TEST_CASE("factorization through the corner itself is the identity") {
  GroupData g = group_s3();
  QuantumSemigroup qs = build_catalog("dualS3");
  std::vector<int> h2;
  for (const auto& h : subgroup_enumeration(g.table))
    if (h.size() == 2) h2 = h;
  Functional omega = dual_subgroup_state(g, qs.str, h2);
  ProtoHypergroup h = build_hypergroup(qs, omega);

  HypergroupTarget target{h.system.corner, h.delta, h.haar, h.system.compress_matrix()};
  InducedMap m = factor_through(qs, omega, target);
  CHECK((m.map - Matrix::Identity(h.dim(), h.dim())).norm() < 1e-12);
  CHECK(m.factorization < 1e-12);
  CHECK(m.unitality < 1e-12);
  CHECK(m.intertwining < 1e-12);
}

namespace {

// restriction of functions on S3 to the alternating subgroup {0, 3, 4},
// read as the cyclic group of order 3
HypergroupTarget a3_target() {
  HypergroupTarget target;
  QuantumSemigroup z3 = build_function_algebra(table_cyclic(3));
  target.y = z3.str;
  target.delta_y = z3.delta.mat;
  target.h_y = measure_state(z3.str, RealVector::Ones(3) / 3.0);
  target.pi_y = Matrix::Zero(3, 6);
  const int coset[3] = {0, 3, 4};
  for (int k = 0; k < 3; ++k) target.pi_y(k, coset[k]) = 1.0;
  return target;
}

}  // namespace

TEST_CASE("factorization onto the function algebra of the alternating subgroup") {
  QuantumSemigroup qs = build_catalog("CS3");
  RealVector qa3 = RealVector::Zero(6);
  qa3[0] = qa3[3] = qa3[4] = 1.0 / 3.0;
  Functional omega = measure_state(qs.str, qa3);

  InducedMap m = factor_through(qs, omega, a3_target());
  CHECK(m.factorization < 1e-12);
  CHECK(m.unitality < 1e-12);
  CHECK(m.intertwining < 1e-12);
  // the corner basis lists the three surviving points in flat order, so the
  // induced isomorphism is the identity matrix
  CHECK((m.map - Matrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("factorization hypotheses are checked and typed") {
  QuantumSemigroup qs = build_catalog("CS3");
  RealVector qa3 = RealVector::Zero(6);
  qa3[0] = qa3[3] = qa3[4] = 1.0 / 3.0;
  Functional omega = measure_state(qs.str, qa3);

  SUBCASE("non-unital map") {
    HypergroupTarget t = a3_target();
    t.pi_y *= 0.5;
    try {
      factor_through(qs, omega, t);
      FAIL("expected a hypothesis rejection");
    } catch (const HypothesisError& e) {
      CHECK(e.which == Hypothesis::Unital);
      CHECK(e.residual > 0.1);
    }
  }

  SUBCASE("positive but rank-deficient map") {
    HypergroupTarget t = a3_target();
    // f -> f(e) 1_Y: unital and completely positive, misses surjectivity
    t.pi_y = Matrix::Zero(3, 6);
    for (int k = 0; k < 3; ++k) t.pi_y(k, 0) = 1.0;
    try {
      factor_through(qs, omega, t);
      FAIL("expected a hypothesis rejection");
    } catch (const HypothesisError& e) {
      CHECK(e.which == Hypothesis::Surjective);
    }
  }

  SUBCASE("non-positive map") {
    // signed combination with value 1 on the unit: unital but not positive
    HypergroupTarget t;
    t.y = BlockStructure::make({1});
    t.delta_y = Matrix::Ones(1, 1);
    t.h_y = Functional(t.y, {Matrix::Ones(1, 1)});
    Vector w = Vector::Zero(6);
    w[0] = 2.0;
    w[3] = -1.0;
    t.pi_y = w.transpose();
    try {
      factor_through(qs, point_mass(qs.str, 0), t);
      FAIL("expected a hypothesis rejection");
    } catch (const HypothesisError& e) {
      CHECK(e.which == Hypothesis::CompletelyPositive);
    }
  }

  SUBCASE("broken intertwining") {
    HypergroupTarget t = a3_target();
    t.delta_y.row(0).swap(t.delta_y.row(1));
    try {
      factor_through(qs, omega, t);
      FAIL("expected a hypothesis rejection");
    } catch (const HypothesisError& e) {
      CHECK(e.which == Hypothesis::Intertwining);
      CHECK(e.residual > 0.1);
    }
  }

  SUBCASE("state does not factor") {
    HypergroupTarget t = a3_target();
    RealVector d0 = RealVector::Zero(3);
    d0[0] = 1.0;
    t.h_y = measure_state(t.y, d0);  // pulls back to the point mass, not omega
    try {
      factor_through(qs, omega, t);
      FAIL("expected a hypothesis rejection");
    } catch (const HypothesisError& e) {
      CHECK(e.which == Hypothesis::StateFactorization);
    }
  }

  SUBCASE("haar of the target must be faithful") {
    // delta_e factors through evaluation on the order-2 subgroup {0, 1} with
    // the point mass as target state, which is not faithful on C(Z2)
    QuantumSemigroup z2 = build_function_algebra(table_cyclic(2));
    HypergroupTarget t;
    t.y = z2.str;
    t.delta_y = z2.delta.mat;
    RealVector d0 = RealVector::Zero(2);
    d0[0] = 1.0;
    t.h_y = measure_state(z2.str, d0);
    t.pi_y = Matrix::Zero(2, 6);
    t.pi_y(0, 0) = 1.0;  // f(e)
    t.pi_y(1, 1) = 1.0;  // f at a transposition generating the subgroup
    try {
      factor_through(qs, point_mass(qs.str, 0), t);
      FAIL("expected a hypothesis rejection");
    } catch (const HypothesisError& e) {
      CHECK(e.which == Hypothesis::FaithfulHaar);
    }
  }
}
