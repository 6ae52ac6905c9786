#ifndef QSEMI_FDALG_HPP
#define QSEMI_FDALG_HPP

// Finite-dimensional C*-algebras A = M_{n_1} + ... + M_{n_k} (direct sum),
// their elements, linear functionals, projections and corner subsystems.
//
// Conventions used throughout the library:
//  * An algebra is described by its block sizes (n_1, ..., n_k) in declared
//    order; its linear dimension is d = sum n_b^2.
//  * The canonical basis consists of the matrix units, enumerated block by
//    block and row-major inside each block: E_11, E_12, ..., E_nn.
//  * Elements are coefficient vectors of length d over that basis.  The
//    matrix units are orthonormal for the Hilbert-Schmidt inner product
//    <x,y> = sum_b tr(x_b* y_b), so the HS inner product of two elements is
//    the ordinary complex dot product of their coefficient vectors.
//  * A tensor product A (x) B carries the product basis E_i (x) F_j with the
//    flat index r = i * dim(B) + j.  Its blocks are the pairwise Kronecker
//    blocks of size n_a * n_b; a per-block index chart records where each
//    Kronecker matrix unit sits inside the product-basis coordinates, so the
//    same element representation works for plain and tensor structures.
//  * Functionals are stored as one density matrix rho_b per block with
//    phi(a) = sum_b tr(rho_b a_b).  States have Hermitian positive
//    semidefinite densities of total trace one, but the type also carries the
//    non-Hermitian densities produced by the bimodule actions.

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "qsemi/errors.hpp"

namespace qsemi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

class BlockStructure;
using StructureRef = std::shared_ptr<const BlockStructure>;

class BlockStructure {
 public:
  // Plain multi-matrix structure with the given block sizes (all >= 1).
  static StructureRef make(std::vector<int> blocks);

  // Kronecker structure of a tensor product, charted over product-basis
  // coordinates.  Keeps references to both factors.
  static StructureRef tensor(const StructureRef& left, const StructureRef& right);

  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int block_size(int b) const { return blocks_[b]; }
  const std::vector<int>& blocks() const { return blocks_; }
  int dim() const { return dim_; }

  // Flat coefficient index of the matrix unit E_rc of block b.
  int unit_index(int b, int r, int c) const {
    return chart_[b][r * blocks_[b] + c];
  }
  const std::vector<int>& block_chart(int b) const { return chart_[b]; }

  // Total matrix size sum_b n_b of the faithful block-diagonal picture.
  int matrix_size() const { return msize_; }

  bool is_tensor() const { return left_ != nullptr; }
  const StructureRef& left_factor() const { return left_; }
  const StructureRef& right_factor() const { return right_; }

  bool operator==(const BlockStructure& o) const {
    return blocks_ == o.blocks_ && chart_ == o.chart_;
  }

 private:
  BlockStructure() = default;
  std::vector<int> blocks_;
  std::vector<std::vector<int>> chart_;  // chart_[b][r*n_b+c] = flat index
  int dim_ = 0;
  int msize_ = 0;
  StructureRef left_, right_;
};

// True when both refer to the same structure (by identity or by content).
bool same_structure(const StructureRef& a, const StructureRef& b);
void require_same_structure(const StructureRef& a, const StructureRef& b,
                            const char* where);

// ---------------------------------------------------------------------------
// Elements

struct Element {
  StructureRef str;
  Vector coeffs;

  Element() = default;
  Element(StructureRef s, Vector c) : str(std::move(s)), coeffs(std::move(c)) {
    if (coeffs.size() != str->dim()) throw StructureError("element length does not match structure");
  }
};

Element zero_element(const StructureRef& s);
Element unit_element(const StructureRef& s);
Element matrix_unit(const StructureRef& s, int flat_index);

// Dense n_b x n_b matrix of block b, gathered through the chart.
Matrix get_block(const Element& x, int b);
void set_block(Element& x, int b, const Matrix& m);

// Faithful block-diagonal representation (matrix_size x matrix_size).
Matrix full_matrix(const Element& x);

Element mul(const Element& x, const Element& y);
Element star(const Element& x);

Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator*(const Complex& s, const Element& x);
Element operator*(const Element& x, const Element& y);  // algebra product

Complex hs_inner(const Element& x, const Element& y);  // conjugate-linear in x
double hs_norm(const Element& x);

// Product structure A (x) B; the result caches both factors.
StructureRef tensor_structure(const StructureRef& a, const StructureRef& b);

// E_i (x) F_j basis tensor: the coefficient vector is the outer product,
// coefficient of index i*dim(B)+j equals x_i * y_j.
Element tensor(const Element& x, const Element& y);

// Kronecker product of linear maps in product-basis coordinates (left factor
// major, matching the element convention above).
Matrix kron(const Matrix& a, const Matrix& b);

struct PositivityReport {
  bool positive = false;
  double min_eigenvalue = 0.0;
  double hermiticity_defect = 0.0;
};

// Blockwise Hermitian eigenvalue test.  A non-Hermitian input is flagged and
// reported not positive.
PositivityReport positivity_check(const Element& x, double eps);

// ---------------------------------------------------------------------------
// Functionals

struct Functional {
  StructureRef str;
  std::vector<Matrix> rho;  // one density per block

  Functional() = default;
  Functional(StructureRef s, std::vector<Matrix> densities);
};

// phi(x), evaluated blockwise as sum_b tr(rho_b x_b).
Complex apply(const Functional& phi, const Element& x);

// Covector w with w[i] = phi(E_i); inverse of functional_from_covector.
Vector covector(const Functional& phi);
Functional functional_from_covector(const StructureRef& s, const Vector& w);

Functional operator+(const Functional& a, const Functional& b);
Functional operator-(const Functional& a, const Functional& b);
Functional operator*(const Complex& s, const Functional& a);

// Frobenius norm over all density blocks.
double density_norm(const Functional& phi);
double density_distance(const Functional& a, const Functional& b);

struct StateReport {
  bool is_state = false;
  double hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;  // |tr - 1|
};

StateReport check_state(const Functional& phi, double eps);

// Clamp tiny negative eigenvalues to zero and renormalize the trace.
Functional project_to_states(const Functional& phi);

// ---------------------------------------------------------------------------
// Projections and corner subsystems

struct Projection {
  Element p;
  // Compact support witness; automatic at finite dimension.
  constexpr static bool compact = true;
};

// Validates p* = p and p^2 = p to eps.
Projection make_projection(const Element& p, double eps);

// Support projection of a state: blockwise range projection of the density.
// Eigenvalues below eps_rank * (largest eigenvalue magnitude) count as zero.
// The result p satisfies phi(p a p) = phi(a), phi(p) = 1, and phi is faithful
// on the corner p A p.
Projection support_projection(const Functional& phi, double eps_rank);

// Orthonormal basis of the corner p A p.
//
// Per block b the range of p_b is spanned by an isometry V_b (n_b x r_b); the
// corner is *-isomorphic to the multi-matrix algebra with blocks (r_b), and
// the basis elements are the images V_b e_r e_c^* V_b^* of its matrix units,
// enumerated like any other structure.  They are Hilbert-Schmidt orthonormal,
// closed under the adjoint, and multiply exactly like matrix units, so the
// corner can be treated as an algebra in its own right.
struct OperatorSystemBasis {
  StructureRef parent;
  Element unit;                          // p itself
  StructureRef corner;                   // blocks = positive ranks r_b
  std::vector<int> corner_parent_block;  // corner block -> parent block
  std::vector<Matrix> isometry;          // per corner block, n_b x r_b
  std::vector<Element> basis;            // m parent-algebra elements
  Matrix embed;                          // d x m, column j = basis[j].coeffs
  int ambient_dim = 0;                   // d
  int sub_dim = 0;                       // m = sum r_b^2

  // m x d matrix of the compression a -> p a p in the two bases.
  Matrix compress_matrix() const { return embed.adjoint(); }

  Element expand(const Vector& corner_coords) const;
  Vector compress_coords(const Element& a) const;  // coords of p a p

  // Restriction of a functional to the corner: densities V_b^* rho_b V_b.
  Functional restrict_functional(const Functional& phi) const;
};

// Throws InvalidInput for p = 0.
OperatorSystemBasis compress_basis(const Projection& p);

// Dimension of the linear span, via SVD with relative threshold eps.
int span_rank(const std::vector<Element>& xs, double eps);
int span_rank(const Matrix& columns, double eps);

// Orthonormal basis of the kernel of a matrix (columns), same threshold rule.
Matrix kernel_basis(const Matrix& m, double eps);

}  // namespace qsemi

#endif
