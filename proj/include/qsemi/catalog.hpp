#ifndef QSEMI_CATALOG_HPP
#define QSEMI_CATALOG_HPP

// Finite testbeds with exactly known structure:
//  * function algebras C(S) of finite semigroups given by multiplication
//    tables, with Delta(e_z) = sum_{xy=z} e_x (x) e_y;
//  * group duals C[G] = (+)_pi M_{n_pi} carrying Delta(lambda_g) =
//    lambda_g (x) lambda_g, entered through shipped unitary irreducibles;
//  * the eight-dimensional Kac-Paljutkin quantum group.
// Together with exact combinatorial oracles (subgroup enumeration, uniform
// measures, subgroup indicator states on duals, character scans) they anchor
// the numerical solvers.

#include <cstdint>
#include <string>
#include <vector>

#include "qsemi/idem.hpp"
#include "qsemi/qsg.hpp"

namespace qsemi {

struct MultiplicationTable {
  int n = 0;
  std::vector<std::vector<int>> t;  // t[x][y] = x*y

  int at(int x, int y) const { return t[x][y]; }
};

// Throws InvalidInput unless t is a total associative operation on {0..n-1}.
void validate_table(const MultiplicationTable& t);

bool is_group(const MultiplicationTable& t);

MultiplicationTable table_cyclic(int n);
MultiplicationTable table_z2xz2();
MultiplicationTable table_s3();
MultiplicationTable table_d4();
MultiplicationTable table_q8();
MultiplicationTable table_leftzero(int n);  // xy = x
MultiplicationTable table_null(int n);      // xy = 0

struct GroupData {
  MultiplicationTable table;
  int identity = 0;
  std::vector<int> inverse;
  std::vector<std::vector<Matrix>> irreps;  // irreps[p][g], unitary
};

// Validates the table is a group and the irreps are unitary homomorphisms
// with sum of squared dimensions equal to |G|.
GroupData make_group_data(MultiplicationTable t, std::vector<std::vector<Matrix>> irreps);

GroupData group_cyclic(int n);
GroupData group_z2xz2();
GroupData group_s3();
GroupData group_d4();
GroupData group_q8();

// C(S): one 1x1 block per point, Delta(e_z) = sum_{xy=z} e_x (x) e_y.
QuantumSemigroup build_function_algebra(const MultiplicationTable& t, double eps = 1e-12);

// C[G] through the Fourier transform lambda_g -> (+)_pi pi(g); the inverse
// transform uses Schur orthogonality, so all residuals stay at rounding size.
QuantumSemigroup build_group_dual(const GroupData& g, double eps = 1e-12);

// The unique eight-dimensional quantum group that is neither commutative nor
// cocommutative, blocks (1,1,1,1,2).  Built from the presentation
//   x^2 = y^2 = 1, xy = yx, z x = y z, z^2 = (1+x+y-xy)/2,
//   Delta(x) = x(x)x, Delta(y) = y(x)y,
//   Delta(z) = (1(x)1 + 1(x)x + y(x)1 - y(x)x)/2 . (z(x)z),
// transported through its five irreducible *-representations.  The builder
// re-verifies every axiom and both non-commutativity checks before returning.
QuantumSemigroup build_kac_paljutkin(double eps = 1e-12);

struct ClassicalCancellation {
  bool left = false;   // (x,y) -> (xy, y) injective
  bool right = false;  // (x,y) -> (x, xy) injective
};

ClassicalCancellation classical_cancellation(const MultiplicationTable& t);

// All subgroups (as sorted element lists, ordered by size then
// lexicographically).  Throws InvalidInput if the table is not a group.
std::vector<std::vector<int>> subgroup_enumeration(const MultiplicationTable& t);

struct ClassicalIdempotents {
  std::vector<RealVector> measures;
  bool complete = false;  // exact enumeration (groups) vs numerical search
};

// Idempotent probability measures on the finite semigroup.  For groups these
// are exactly the uniform measures on subgroups; otherwise the numerical
// search on C(S) is used and completeness is not claimed.
ClassicalIdempotents classical_idempotent_oracle(const MultiplicationTable& t,
                                                 const SolverConfig& cfg = {});

// The state on C(S) with density diag(q).
Functional measure_state(const StructureRef& s, const RealVector& q);

// Uniform measures on all subgroups, as states on C(S).
std::vector<Functional> uniform_subgroup_states(const MultiplicationTable& t,
                                                const StructureRef& s);

// Subgroup indicator states phi_H on the dual C[G]: phi_H(lambda_g) = 1_H(g),
// densities (n_pi/|G|) sum_{h in H} pi(h^{-1}).  These are exactly the
// idempotent states of the dual.
std::vector<Functional> dual_subgroup_states(const GroupData& g, const StructureRef& s);
Functional dual_subgroup_state(const GroupData& g, const StructureRef& s,
                               const std::vector<int>& subgroup);

// Evaluation characters at 1x1 blocks that happen to be idempotent under
// convolution; on any quantum semigroup with a counit this finds it.
std::vector<Functional> character_idempotents(const QuantumSemigroup& qs, double eps = 1e-9);

// Tracial state with density (n_b / sum n_c^2) I per block; on a group dual
// and on the Kac-Paljutkin algebra this is the Haar state.
Functional regular_trace_state(const StructureRef& s);

// Name registry for the command line: CZ<n>, CZ2xZ2, CS3, CD4, CQ8,
// dualZ<n>, dualZ2xZ2, dualS3, dualD4, dualQ8, kac-paljutkin,
// leftzero<n>, null<n>.
QuantumSemigroup build_catalog(const std::string& name, double eps = 1e-12);
std::vector<std::string> catalog_names();

}  // namespace qsemi

#endif
