#include "qsemi/fdalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qsemi {

const char* hypothesis_name(Hypothesis h) {
  switch (h) {
    case Hypothesis::CompletelyPositive: return "completely positive";
    case Hypothesis::Surjective: return "surjective";
    case Hypothesis::Unital: return "unital";
    case Hypothesis::Intertwining: return "intertwining";
    case Hypothesis::StateFactorization: return "state factorization";
    case Hypothesis::FaithfulHaar: return "faithful haar state";
    case Hypothesis::KernelInclusion: return "kernel inclusion";
  }
  return "unknown";
}

StructureRef BlockStructure::make(std::vector<int> blocks) {
  if (blocks.empty()) throw StructureError("structure needs at least one block");
  auto s = std::shared_ptr<BlockStructure>(new BlockStructure());
  s->blocks_ = std::move(blocks);
  int off = 0, msize = 0;
  for (int n : s->blocks_) {
    if (n < 1) throw StructureError("block sizes must be positive");
    std::vector<int> chart(n * n);
    for (int i = 0; i < n * n; ++i) chart[i] = off + i;
    s->chart_.push_back(std::move(chart));
    off += n * n;
    msize += n;
  }
  s->dim_ = off;
  s->msize_ = msize;
  return s;
}

StructureRef BlockStructure::tensor(const StructureRef& left, const StructureRef& right) {
  auto s = std::shared_ptr<BlockStructure>(new BlockStructure());
  const int dr = right->dim();
  int msize = 0;
  for (int b1 = 0; b1 < left->num_blocks(); ++b1) {
    const int n1 = left->block_size(b1);
    for (int b2 = 0; b2 < right->num_blocks(); ++b2) {
      const int n2 = right->block_size(b2);
      const int n = n1 * n2;
      std::vector<int> chart(n * n);
      for (int r1 = 0; r1 < n1; ++r1)
        for (int r2 = 0; r2 < n2; ++r2)
          for (int c1 = 0; c1 < n1; ++c1)
            for (int c2 = 0; c2 < n2; ++c2) {
              const int row = r1 * n2 + r2, col = c1 * n2 + c2;
              chart[row * n + col] =
                  left->unit_index(b1, r1, c1) * dr + right->unit_index(b2, r2, c2);
            }
      s->blocks_.push_back(n);
      s->chart_.push_back(std::move(chart));
      msize += n;
    }
  }
  s->dim_ = left->dim() * dr;
  s->msize_ = msize;
  s->left_ = left;
  s->right_ = right;
  return s;
}

bool same_structure(const StructureRef& a, const StructureRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_structure(const StructureRef& a, const StructureRef& b, const char* where) {
  if (!same_structure(a, b))
    throw StructureError(std::string(where) + ": operands live on different structures");
}

Element zero_element(const StructureRef& s) { return Element(s, Vector::Zero(s->dim())); }

Element unit_element(const StructureRef& s) {
  Element x = zero_element(s);
  for (int b = 0; b < s->num_blocks(); ++b)
    for (int r = 0; r < s->block_size(b); ++r) x.coeffs[s->unit_index(b, r, r)] = 1.0;
  return x;
}

Element matrix_unit(const StructureRef& s, int flat_index) {
  if (flat_index < 0 || flat_index >= s->dim()) throw StructureError("matrix unit index out of range");
  Element x = zero_element(s);
  x.coeffs[flat_index] = 1.0;
  return x;
}

Matrix get_block(const Element& x, int b) {
  const int n = x.str->block_size(b);
  const auto& chart = x.str->block_chart(b);
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = x.coeffs[chart[r * n + c]];
  return m;
}

void set_block(Element& x, int b, const Matrix& m) {
  const int n = x.str->block_size(b);
  if (m.rows() != n || m.cols() != n) throw StructureError("set_block: wrong matrix size");
  const auto& chart = x.str->block_chart(b);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) x.coeffs[chart[r * n + c]] = m(r, c);
}

Matrix full_matrix(const Element& x) {
  const int m = x.str->matrix_size();
  Matrix out = Matrix::Zero(m, m);
  int off = 0;
  for (int b = 0; b < x.str->num_blocks(); ++b) {
    const int n = x.str->block_size(b);
    out.block(off, off, n, n) = get_block(x, b);
    off += n;
  }
  return out;
}

Element mul(const Element& x, const Element& y) {
  require_same_structure(x.str, y.str, "mul");
  Element z = zero_element(x.str);
  for (int b = 0; b < x.str->num_blocks(); ++b) set_block(z, b, get_block(x, b) * get_block(y, b));
  return z;
}

Element star(const Element& x) {
  Element z = zero_element(x.str);
  for (int b = 0; b < x.str->num_blocks(); ++b) set_block(z, b, get_block(x, b).adjoint());
  return z;
}

Element operator+(const Element& x, const Element& y) {
  require_same_structure(x.str, y.str, "add");
  return Element(x.str, x.coeffs + y.coeffs);
}

Element operator-(const Element& x, const Element& y) {
  require_same_structure(x.str, y.str, "sub");
  return Element(x.str, x.coeffs - y.coeffs);
}

Element operator*(const Complex& s, const Element& x) { return Element(x.str, s * x.coeffs); }

Element operator*(const Element& x, const Element& y) { return mul(x, y); }

Complex hs_inner(const Element& x, const Element& y) {
  require_same_structure(x.str, y.str, "hs_inner");
  return x.coeffs.dot(y.coeffs);
}

double hs_norm(const Element& x) { return x.coeffs.norm(); }

StructureRef tensor_structure(const StructureRef& a, const StructureRef& b) {
  return BlockStructure::tensor(a, b);
}

Element tensor(const Element& x, const Element& y) {
  auto ts = tensor_structure(x.str, y.str);
  const int dr = y.str->dim();
  Vector c(ts->dim());
  for (int i = 0; i < x.str->dim(); ++i)
    for (int j = 0; j < dr; ++j) c[i * dr + j] = x.coeffs[i] * y.coeffs[j];
  return Element(ts, std::move(c));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

PositivityReport positivity_check(const Element& x, double eps) {
  PositivityReport rep;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int b = 0; b < x.str->num_blocks(); ++b) {
    const Matrix m = get_block(x, b);
    rep.hermiticity_defect = std::max(rep.hermiticity_defect, (m - m.adjoint()).norm());
    Eigen::SelfAdjointEigenSolver<Matrix> es((0.5 * (m + m.adjoint())).eval());
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, es.eigenvalues().minCoeff());
  }
  rep.positive = rep.hermiticity_defect <= eps && rep.min_eigenvalue >= -eps;
  return rep;
}

Functional::Functional(StructureRef s, std::vector<Matrix> densities)
    : str(std::move(s)), rho(std::move(densities)) {
  if (static_cast<int>(rho.size()) != str->num_blocks())
    throw StructureError("functional needs one density per block");
  for (int b = 0; b < str->num_blocks(); ++b)
    if (rho[b].rows() != str->block_size(b) || rho[b].cols() != str->block_size(b))
      throw StructureError("density block has wrong size");
}

Complex apply(const Functional& phi, const Element& x) {
  require_same_structure(phi.str, x.str, "apply");
  Complex acc = 0.0;
  for (int b = 0; b < phi.str->num_blocks(); ++b) acc += (phi.rho[b] * get_block(x, b)).trace();
  return acc;
}

// phi(E_rc) = tr(rho E_rc) = rho[c,r]: the covector is the blockwise
// transpose of the density, and vice versa.
Vector covector(const Functional& phi) {
  Vector w(phi.str->dim());
  for (int b = 0; b < phi.str->num_blocks(); ++b) {
    const int n = phi.str->block_size(b);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) w[phi.str->unit_index(b, r, c)] = phi.rho[b](c, r);
  }
  return w;
}

Functional functional_from_covector(const StructureRef& s, const Vector& w) {
  if (w.size() != s->dim()) throw StructureError("covector length does not match structure");
  std::vector<Matrix> rho;
  for (int b = 0; b < s->num_blocks(); ++b) {
    const int n = s->block_size(b);
    Matrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(c, r) = w[s->unit_index(b, r, c)];
    rho.push_back(std::move(m));
  }
  return Functional(s, std::move(rho));
}

Functional operator+(const Functional& a, const Functional& b) {
  require_same_structure(a.str, b.str, "functional add");
  std::vector<Matrix> rho;
  for (size_t i = 0; i < a.rho.size(); ++i) rho.push_back(a.rho[i] + b.rho[i]);
  return Functional(a.str, std::move(rho));
}

Functional operator-(const Functional& a, const Functional& b) {
  require_same_structure(a.str, b.str, "functional sub");
  std::vector<Matrix> rho;
  for (size_t i = 0; i < a.rho.size(); ++i) rho.push_back(a.rho[i] - b.rho[i]);
  return Functional(a.str, std::move(rho));
}

Functional operator*(const Complex& s, const Functional& a) {
  std::vector<Matrix> rho;
  for (const auto& m : a.rho) rho.push_back(s * m);
  return Functional(a.str, std::move(rho));
}

double density_norm(const Functional& phi) {
  double acc = 0.0;
  for (const auto& m : phi.rho) acc += m.squaredNorm();
  return std::sqrt(acc);
}

double density_distance(const Functional& a, const Functional& b) {
  require_same_structure(a.str, b.str, "density_distance");
  double acc = 0.0;
  for (size_t i = 0; i < a.rho.size(); ++i) acc += (a.rho[i] - b.rho[i]).squaredNorm();
  return std::sqrt(acc);
}

StateReport check_state(const Functional& phi, double eps) {
  StateReport rep;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  Complex tr = 0.0;
  for (const auto& m : phi.rho) {
    rep.hermiticity_defect = std::max(rep.hermiticity_defect, (m - m.adjoint()).norm());
    Eigen::SelfAdjointEigenSolver<Matrix> es((0.5 * (m + m.adjoint())).eval());
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, es.eigenvalues().minCoeff());
    tr += m.trace();
  }
  rep.trace_error = std::abs(tr - Complex(1.0));
  rep.is_state = rep.hermiticity_defect <= eps && rep.min_eigenvalue >= -eps && rep.trace_error <= eps;
  return rep;
}

Functional project_to_states(const Functional& phi) {
  std::vector<Matrix> rho;
  double tr = 0.0;
  for (const auto& m : phi.rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((0.5 * (m + m.adjoint())).eval());
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    Matrix clamped = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    tr += ev.sum();
    rho.push_back(std::move(clamped));
  }
  if (tr <= 0.0) throw InvalidInput("cannot normalize a vanishing density");
  for (auto& m : rho) m /= tr;
  return Functional(phi.str, std::move(rho));
}

Projection make_projection(const Element& p, double eps) {
  const double d_star = hs_norm(star(p) - p);
  const double d_idem = hs_norm(mul(p, p) - p);
  if (d_star > eps || d_idem > eps)
    throw InvalidInput("not a projection: ||p*-p|| = " + std::to_string(d_star) +
                       ", ||p^2-p|| = " + std::to_string(d_idem));
  return Projection{p};
}

Projection support_projection(const Functional& phi, double eps_rank) {
  StateReport st = check_state(phi, 1e-6);
  if (!st.is_state)
    throw InvalidInput("support_projection expects a state (defect " +
                       std::to_string(st.hermiticity_defect) + ", min eig " +
                       std::to_string(st.min_eigenvalue) + ", trace err " +
                       std::to_string(st.trace_error) + ")");
  Element p = zero_element(phi.str);
  // one spectral scale for the whole state: a block whose density is pure
  // rounding noise must come out rank zero, so per-block scales are unusable
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> eigs;
  double scale = 0.0;
  for (int b = 0; b < phi.str->num_blocks(); ++b) {
    const Matrix h = 0.5 * (phi.rho[b] + phi.rho[b].adjoint());
    eigs.emplace_back(h);
    scale = std::max(scale, eigs.back().eigenvalues().cwiseAbs().maxCoeff());
  }
  const double cut = eps_rank * std::max(scale, 1e-300);
  for (int b = 0; b < phi.str->num_blocks(); ++b) {
    const auto& es = eigs[b];
    const int n = phi.str->block_size(b);
    Matrix proj = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      if (es.eigenvalues()[i] > cut) {
        const Vector v = es.eigenvectors().col(i);
        proj += v * v.adjoint();
      }
    set_block(p, b, proj);
  }
  return Projection{p};
}

Element OperatorSystemBasis::expand(const Vector& corner_coords) const {
  if (corner_coords.size() != sub_dim) throw StructureError("expand: wrong coordinate length");
  return Element(parent, embed * corner_coords);
}

Vector OperatorSystemBasis::compress_coords(const Element& a) const {
  require_same_structure(parent, a.str, "compress_coords");
  return embed.adjoint() * a.coeffs;
}

Functional OperatorSystemBasis::restrict_functional(const Functional& phi) const {
  require_same_structure(parent, phi.str, "restrict_functional");
  std::vector<Matrix> rho;
  for (size_t cb = 0; cb < isometry.size(); ++cb) {
    const int pb = corner_parent_block[cb];
    rho.push_back(isometry[cb].adjoint() * phi.rho[pb] * isometry[cb]);
  }
  return Functional(corner, std::move(rho));
}

OperatorSystemBasis compress_basis(const Projection& proj) {
  const Element& p = proj.p;
  if (hs_norm(p) < 1e-12) throw InvalidInput("compress_basis: zero projection");
  OperatorSystemBasis sys;
  sys.parent = p.str;
  sys.unit = p;
  sys.ambient_dim = p.str->dim();

  std::vector<int> ranks;
  for (int b = 0; b < p.str->num_blocks(); ++b) {
    const Matrix h = 0.5 * (get_block(p, b) + get_block(p, b).adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const int n = p.str->block_size(b);
    // eigenvalues of a projection are 0 or 1; keep the 1-eigenspace
    int r = 0;
    for (int i = 0; i < n; ++i)
      if (es.eigenvalues()[i] > 0.5) ++r;
    Matrix iso(n, r);
    for (int i = 0, k = 0; i < n; ++i)
      if (es.eigenvalues()[i] > 0.5) iso.col(k++) = es.eigenvectors().col(i);
    if (iso.cols() > 0) {
      sys.corner_parent_block.push_back(b);
      sys.isometry.push_back(iso);
      ranks.push_back(static_cast<int>(iso.cols()));
    }
  }
  if (ranks.empty()) throw InvalidInput("compress_basis: zero projection");
  sys.corner = BlockStructure::make(ranks);
  sys.sub_dim = sys.corner->dim();

  sys.embed = Matrix(sys.ambient_dim, sys.sub_dim);
  int col = 0;
  for (size_t cb = 0; cb < sys.isometry.size(); ++cb) {
    const int pb = sys.corner_parent_block[cb];
    const Matrix& v = sys.isometry[cb];
    const int r = static_cast<int>(v.cols());
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        Element e = zero_element(sys.parent);
        Matrix blk = v.col(i) * v.col(j).adjoint();
        set_block(e, pb, blk);
        sys.basis.push_back(e);
        sys.embed.col(col) = e.coeffs;
        ++col;
      }
  }
  return sys;
}

int span_rank(const Matrix& columns, double eps) {
  if (columns.cols() == 0 || columns.rows() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(columns);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cut = eps * sv[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++rank;
  return rank;
}

int span_rank(const std::vector<Element>& xs, double eps) {
  if (xs.empty()) return 0;
  Matrix m(xs[0].coeffs.size(), static_cast<Eigen::Index>(xs.size()));
  for (size_t i = 0; i < xs.size(); ++i) {
    require_same_structure(xs[0].str, xs[i].str, "span_rank");
    m.col(static_cast<Eigen::Index>(i)) = xs[i].coeffs;
  }
  return span_rank(m, eps);
}

Matrix kernel_basis(const Matrix& m, double eps) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = sv.size() > 0 ? eps * std::max(sv[0], 1e-300) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace qsemi
