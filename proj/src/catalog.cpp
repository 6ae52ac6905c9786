#include "qsemi/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <set>

namespace qsemi {

void validate_table(const MultiplicationTable& t) {
  if (t.n < 1 || static_cast<int>(t.t.size()) != t.n)
    throw InvalidInput("multiplication table has wrong shape");
  for (const auto& row : t.t) {
    if (static_cast<int>(row.size()) != t.n)
      throw InvalidInput("multiplication table has wrong shape");
    for (int v : row)
      if (v < 0 || v >= t.n) throw InvalidInput("multiplication table entry out of range");
  }
  for (int x = 0; x < t.n; ++x)
    for (int y = 0; y < t.n; ++y)
      for (int z = 0; z < t.n; ++z)
        if (t.at(t.at(x, y), z) != t.at(x, t.at(y, z)))
          throw InvalidInput("multiplication table is not associative");
}

bool is_group(const MultiplicationTable& t) {
  // an associative table is a group iff rows and columns are permutations
  for (int x = 0; x < t.n; ++x) {
    std::vector<bool> row(t.n, false), col(t.n, false);
    for (int y = 0; y < t.n; ++y) {
      if (row[t.at(x, y)]) return false;
      row[t.at(x, y)] = true;
      if (col[t.at(y, x)]) return false;
      col[t.at(y, x)] = true;
    }
  }
  return true;
}

namespace {

int find_identity(const MultiplicationTable& t) {
  for (int e = 0; e < t.n; ++e) {
    bool ok = true;
    for (int x = 0; x < t.n && ok; ++x) ok = t.at(e, x) == x && t.at(x, e) == x;
    if (ok) return e;
  }
  throw InvalidInput("table has no identity element");
}

MultiplicationTable from_op(int n, const std::function<int(int, int)>& op) {
  MultiplicationTable t;
  t.n = n;
  t.t.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t.t[x][y] = op(x, y);
  validate_table(t);
  return t;
}

}  // namespace

MultiplicationTable table_cyclic(int n) {
  if (n < 1) throw InvalidInput("cyclic group needs n >= 1");
  return from_op(n, [n](int x, int y) { return (x + y) % n; });
}

MultiplicationTable table_z2xz2() {
  return from_op(4, [](int x, int y) { return x ^ y; });
}

namespace {

// permutations of {0,1,2} in lexicographic order; product = composition,
// right factor applied first
const std::vector<std::array<int, 3>>& s3_perms() {
  static const std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  return perms;
}

int s3_index(const std::array<int, 3>& p) {
  const auto& perms = s3_perms();
  for (size_t i = 0; i < perms.size(); ++i)
    if (perms[i] == p) return static_cast<int>(i);
  throw InvalidInput("not a permutation of {0,1,2}");
}

// dihedral normal form r^k s^l, index g = 4l + k
int d4_mul(int g, int h) {
  const int k1 = g % 4, l1 = g / 4, k2 = h % 4, l2 = h / 4;
  const int k = ((l1 ? 4 - k2 : k2) + k1) % 4;
  return ((l1 + l2) % 2) * 4 + k;
}

// quaternion units 1,-1,i,-i,j,-j,k,-k; index = 2*axis + (sign < 0)
struct Quat {
  int axis;  // 0:1 1:i 2:j 3:k
  int sign;  // +1 or -1
};

Quat quat_mul(Quat a, Quat b) {
  static const int axis_table[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_table[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  return Quat{axis_table[a.axis][b.axis], a.sign * b.sign * sign_table[a.axis][b.axis]};
}

int quat_index(Quat q) { return 2 * q.axis + (q.sign < 0 ? 1 : 0); }
Quat quat_of(int g) { return Quat{g / 2, g % 2 ? -1 : 1}; }

}  // namespace

MultiplicationTable table_s3() {
  return from_op(6, [](int x, int y) {
    const auto &p = s3_perms()[x], &q = s3_perms()[y];
    return s3_index({p[q[0]], p[q[1]], p[q[2]]});
  });
}

MultiplicationTable table_d4() {
  return from_op(8, d4_mul);
}

MultiplicationTable table_q8() {
  return from_op(8, [](int x, int y) { return quat_index(quat_mul(quat_of(x), quat_of(y))); });
}

MultiplicationTable table_leftzero(int n) {
  return from_op(n, [](int x, int) { return x; });
}

MultiplicationTable table_null(int n) {
  return from_op(n, [](int, int) { return 0; });
}

GroupData make_group_data(MultiplicationTable t, std::vector<std::vector<Matrix>> irreps) {
  validate_table(t);
  if (!is_group(t)) throw InvalidInput("table is not a group");
  GroupData g;
  g.identity = find_identity(t);
  g.inverse.assign(t.n, -1);
  for (int x = 0; x < t.n; ++x)
    for (int y = 0; y < t.n; ++y)
      if (t.at(x, y) == g.identity) g.inverse[x] = y;
  int dimsum = 0;
  for (const auto& rep : irreps) {
    if (static_cast<int>(rep.size()) != t.n)
      throw InvalidInput("irrep must assign a matrix to every element");
    const int n = static_cast<int>(rep[0].rows());
    dimsum += n * n;
    for (int x = 0; x < t.n; ++x) {
      if (rep[x].rows() != n || rep[x].cols() != n) throw InvalidInput("irrep matrices must share a size");
      if ((rep[x] * rep[x].adjoint() - Matrix::Identity(n, n)).norm() > 1e-12)
        throw InvalidInput("irrep matrix is not unitary");
      for (int y = 0; y < t.n; ++y)
        if ((rep[x] * rep[y] - rep[t.at(x, y)]).norm() > 1e-12)
          throw InvalidInput("irrep is not a homomorphism");
    }
  }
  if (dimsum != t.n)
    throw InvalidInput("squared irrep dimensions must sum to the group order");
  g.table = std::move(t);
  g.irreps = std::move(irreps);
  return g;
}

GroupData group_cyclic(int n) {
  MultiplicationTable t = table_cyclic(n);
  std::vector<std::vector<Matrix>> irreps;
  for (int j = 0; j < n; ++j) {
    std::vector<Matrix> rep;
    for (int g = 0; g < n; ++g) {
      Matrix m(1, 1);
      m(0, 0) = std::polar(1.0, 2.0 * std::numbers::pi * j * g / n);
      rep.push_back(m);
    }
    irreps.push_back(std::move(rep));
  }
  return make_group_data(std::move(t), std::move(irreps));
}

GroupData group_z2xz2() {
  MultiplicationTable t = table_z2xz2();
  std::vector<std::vector<Matrix>> irreps;
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v) {
      std::vector<Matrix> rep;
      for (int g = 0; g < 4; ++g) {
        Matrix m(1, 1);
        m(0, 0) = ((u * (g & 1) + v * ((g >> 1) & 1)) % 2) ? -1.0 : 1.0;
        rep.push_back(m);
      }
      irreps.push_back(std::move(rep));
    }
  return make_group_data(std::move(t), std::move(irreps));
}

GroupData group_s3() {
  MultiplicationTable t = table_s3();
  std::vector<Matrix> triv, sgn, std2;
  // orthonormal basis of the plane orthogonal to (1,1,1)
  Eigen::Matrix<double, 3, 2> u;
  u << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
      -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
      0.0, -2.0 / std::sqrt(6.0);
  for (int g = 0; g < 6; ++g) {
    const auto& p = s3_perms()[g];
    Matrix one(1, 1), sg(1, 1);
    one(0, 0) = 1.0;
    int inversions = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        if (p[a] > p[b]) ++inversions;
    sg(0, 0) = inversions % 2 ? -1.0 : 1.0;
    Eigen::Matrix3d perm = Eigen::Matrix3d::Zero();
    for (int j = 0; j < 3; ++j) perm(p[j], j) = 1.0;
    std2.push_back((u.transpose() * perm * u).cast<Complex>());
    triv.push_back(one);
    sgn.push_back(sg);
  }
  return make_group_data(std::move(t), {triv, sgn, std2});
}

GroupData group_d4() {
  MultiplicationTable t = table_d4();
  std::vector<std::vector<Matrix>> irreps;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      std::vector<Matrix> rep;
      for (int g = 0; g < 8; ++g) {
        const int k = g % 4, l = g / 4;
        Matrix m(1, 1);
        m(0, 0) = ((a * k + b * l) % 2) ? -1.0 : 1.0;
        rep.push_back(m);
      }
      irreps.push_back(std::move(rep));
    }
  Matrix R(2, 2), S(2, 2);
  R << 0, -1, 1, 0;
  S << 1, 0, 0, -1;
  std::vector<Matrix> two;
  for (int g = 0; g < 8; ++g) {
    const int k = g % 4, l = g / 4;
    Matrix m = Matrix::Identity(2, 2);
    for (int i = 0; i < k; ++i) m = Matrix(R * m);
    if (l) m = Matrix(m * S);
    two.push_back(m);
  }
  irreps.push_back(std::move(two));
  return make_group_data(std::move(t), std::move(irreps));
}

GroupData group_q8() {
  MultiplicationTable t = table_q8();
  std::vector<std::vector<Matrix>> irreps;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      std::vector<Matrix> rep;
      for (int g = 0; g < 8; ++g) {
        const int axis = g / 2;
        int val = 1;
        if (axis == 1) val = a ? -1 : 1;
        if (axis == 2) val = b ? -1 : 1;
        if (axis == 3) val = (a ^ b) ? -1 : 1;
        Matrix m(1, 1);
        m(0, 0) = val;
        rep.push_back(m);
      }
      irreps.push_back(std::move(rep));
    }
  const Complex I(0, 1);
  Matrix mi(2, 2), mj(2, 2);
  mi << I, 0, 0, -I;
  mj << 0, 1, -1, 0;
  std::vector<Matrix> two;
  for (int g = 0; g < 8; ++g) {
    const Quat q = quat_of(g);
    Matrix m = Matrix::Identity(2, 2);
    if (q.axis == 1) m = mi;
    if (q.axis == 2) m = mj;
    if (q.axis == 3) m = Matrix(mi * mj);
    if (q.sign < 0) m = Matrix(-m);
    two.push_back(m);
  }
  irreps.push_back(std::move(two));
  return make_group_data(std::move(t), std::move(irreps));
}

QuantumSemigroup build_function_algebra(const MultiplicationTable& t, double eps) {
  validate_table(t);
  auto s = BlockStructure::make(std::vector<int>(t.n, 1));
  Matrix delta = Matrix::Zero(t.n * t.n, t.n);
  for (int x = 0; x < t.n; ++x)
    for (int y = 0; y < t.n; ++y) delta(x * t.n + y, t.at(x, y)) = 1.0;
  return make_quantum_semigroup(s, delta, eps);
}

namespace {

// Fourier matrix of a group dual: column g holds the coordinates of
// lambda_g = (+)_pi pi(g).  Schur orthogonality gives the exact inverse
// F^{-1} = diag(n_pi / |G|) F^H applied row-blockwise.
struct DualBasis {
  StructureRef str;
  Matrix fourier;      // d x |G|
  Matrix fourier_inv;  // |G| x d
};

DualBasis dual_basis(const GroupData& g) {
  const int order = g.table.n;
  std::vector<int> blocks;
  for (const auto& rep : g.irreps) blocks.push_back(static_cast<int>(rep[0].rows()));
  auto s = BlockStructure::make(blocks);
  Matrix f(s->dim(), order);
  for (int x = 0; x < order; ++x) {
    Element lam = zero_element(s);
    for (size_t p = 0; p < g.irreps.size(); ++p) set_block(lam, static_cast<int>(p), g.irreps[p][x]);
    f.col(x) = lam.coeffs;
  }
  Matrix finv(order, s->dim());
  for (int x = 0; x < order; ++x)
    for (int b = 0; b < s->num_blocks(); ++b) {
      const int n = s->block_size(b);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          finv(x, s->unit_index(b, r, c)) =
              std::conj(f(s->unit_index(b, r, c), x)) * double(n) / double(order);
    }
  return DualBasis{s, std::move(f), std::move(finv)};
}

}  // namespace

QuantumSemigroup build_group_dual(const GroupData& g, double eps) {
  const DualBasis basis = dual_basis(g);
  const int d = basis.str->dim();
  const int order = g.table.n;
  Matrix delta = Matrix::Zero(d * d, d);
  for (int c = 0; c < d; ++c)
    for (int x = 0; x < order; ++x) {
      const Complex coeff = basis.fourier_inv(x, c);
      if (coeff == Complex(0.0)) continue;
      for (int i = 0; i < d; ++i) {
        if (basis.fourier(i, x) == Complex(0.0)) continue;
        for (int j = 0; j < d; ++j)
          delta(i * d + j, c) += coeff * basis.fourier(i, x) * basis.fourier(j, x);
      }
    }
  return make_quantum_semigroup(basis.str, delta, eps);
}

namespace {

// ---------------------------------------------------------------------------
// The eight-dimensional quantum group.
//
// Basis monomials x^a y^b z^e indexed m = (a + 2b) + 4e.  Products follow
// from z (x^a y^b) = (x^b y^a) z and z^2 = (1 + x + y - xy)/2.

using A8Vec = Eigen::Matrix<Complex, 8, 1>;

int a8_index(int a, int b, int e) { return (a & 1) + 2 * (b & 1) + 4 * (e & 1); }

// coefficients of (x^a y^b) * zeta, zeta = (1 + x + y - xy)/2
void a8_add_zeta_times(A8Vec& out, int a, int b, Complex coeff) {
  out[a8_index(a, b, 0)] += coeff * 0.5;
  out[a8_index(a + 1, b, 0)] += coeff * 0.5;
  out[a8_index(a, b + 1, 0)] += coeff * 0.5;
  out[a8_index(a + 1, b + 1, 0)] -= coeff * 0.5;
}

A8Vec a8_mul_monomials(int m1, int m2) {
  const int a1 = m1 & 1, b1 = (m1 >> 1) & 1, e1 = (m1 >> 2) & 1;
  int a2 = m2 & 1, b2 = (m2 >> 1) & 1;
  const int e2 = (m2 >> 2) & 1;
  A8Vec out = A8Vec::Zero();
  if (e1) std::swap(a2, b2);  // z (x^a y^b) = (x^b y^a) z
  const int a = a1 ^ a2, b = b1 ^ b2;
  if (e1 && e2)
    a8_add_zeta_times(out, a, b, 1.0);  // z^2 = zeta
  else
    out[a8_index(a, b, e1 ^ e2)] += 1.0;
  return out;
}

}  // namespace

QuantumSemigroup build_kac_paljutkin(double eps) {
  // the five irreducible *-representations
  struct Rep {
    Matrix x, y, z;
  };
  std::vector<Rep> reps;
  const Complex I(0, 1);
  auto one1 = [](Complex v) { Matrix m(1, 1); m(0, 0) = v; return m; };
  reps.push_back({one1(1), one1(1), one1(1)});      // counit block
  reps.push_back({one1(1), one1(1), one1(-1)});
  reps.push_back({one1(-1), one1(-1), one1(I)});
  reps.push_back({one1(-1), one1(-1), one1(-I)});
  Matrix X2(2, 2), Y2(2, 2), Z2(2, 2);
  X2 << 1, 0, 0, -1;
  Y2 << -1, 0, 0, 1;
  Z2 << 0, 1, 1, 0;
  reps.push_back({X2, Y2, Z2});

  auto s = BlockStructure::make({1, 1, 1, 1, 2});
  const int d = s->dim();

  // M: column m = coordinates of the monomial x^a y^b z^e across all blocks
  Matrix M(d, 8);
  for (int m = 0; m < 8; ++m) {
    const int a = m & 1, b = (m >> 1) & 1, e = (m >> 2) & 1;
    Element elt = zero_element(s);
    for (size_t p = 0; p < reps.size(); ++p) {
      Matrix v = Matrix::Identity(reps[p].x.rows(), reps[p].x.rows());
      if (a) v = Matrix(v * reps[p].x);
      if (b) v = Matrix(v * reps[p].y);
      if (e) v = Matrix(v * reps[p].z);
      set_block(elt, static_cast<int>(p), v);
    }
    M.col(m) = elt.coeffs;
  }

  // Delta on monomials, in the 64-dim monomial (x) monomial basis
  Matrix delta8 = Matrix::Zero(64, 8);
  auto put = [&delta8](int col, int m1, int m2, Complex coeff) {
    delta8(m1 * 8 + m2, col) += coeff;
  };
  for (int m = 0; m < 8; ++m) {
    const int a = m & 1, b = (m >> 1) & 1, e = (m >> 2) & 1;
    if (!e) {
      put(m, m, m, 1.0);  // group-likes: Delta(g) = g (x) g
      continue;
    }
    // Delta(g z) = (g (x) g) J (z (x) z), J = (1(x)1 + 1(x)x + y(x)1 - y(x)x)/2
    const int gz = a8_index(a, b, 1);
    const int gxz = a8_index(a + 1, b, 1);
    const int gyz = a8_index(a, b + 1, 1);
    put(m, gz, gz, 0.5);
    put(m, gz, gxz, 0.5);
    put(m, gyz, gz, 0.5);
    put(m, gyz, gxz, -0.5);
  }

  // transport through the isomorphism: Delta = (M (x) M) delta8 M^{-1}
  const Matrix Minv = M.inverse();
  const Matrix delta = kron(M, M) * delta8 * Minv;

  QuantumSemigroup qs = make_quantum_semigroup(s, delta, eps);

  // the defining checks beyond the axioms: neither commutative nor
  // cocommutative (this pins the object among 8-dimensional quantum groups)
  double comm = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Element ei = matrix_unit(s, i), ej = matrix_unit(s, j);
      comm = std::max(comm, hs_norm(mul(ei, ej) - mul(ej, ei)));
    }
  Matrix flipped(d * d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) flipped.row(j * d + i) = delta.row(i * d + j);
  const double cocomm = (flipped - delta).norm();
  if (comm < 0.5 || cocomm < 0.5)
    throw AxiomError("eight-dimensional builder produced a (co)commutative object");

  // internal consistency of the monomial calculus against the representation
  for (int m1 = 0; m1 < 8; ++m1)
    for (int m2 = 0; m2 < 8; ++m2) {
      const A8Vec prod = a8_mul_monomials(m1, m2);
      Element lhs(s, Vector(M.col(m1)));
      Element rhs(s, Vector(M.col(m2)));
      Element want = zero_element(s);
      for (int k = 0; k < 8; ++k) want = want + Element(s, Vector(prod[k] * M.col(k)));
      if (hs_norm(mul(lhs, rhs) - want) > 1e-12)
        throw AxiomError("eight-dimensional builder monomial calculus mismatch");
    }

  return qs;
}

ClassicalCancellation classical_cancellation(const MultiplicationTable& t) {
  validate_table(t);
  ClassicalCancellation r;
  std::set<std::pair<int, int>> left, right;
  for (int x = 0; x < t.n; ++x)
    for (int y = 0; y < t.n; ++y) {
      left.insert({t.at(x, y), y});
      right.insert({x, t.at(x, y)});
    }
  r.left = static_cast<int>(left.size()) == t.n * t.n;
  r.right = static_cast<int>(right.size()) == t.n * t.n;
  return r;
}

std::vector<std::vector<int>> subgroup_enumeration(const MultiplicationTable& t) {
  validate_table(t);
  if (!is_group(t)) throw InvalidInput("subgroup enumeration needs a group table");
  const int e = find_identity(t);

  auto closure = [&t](std::set<int> seed) {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> elems(seed.begin(), seed.end());
      for (int x : elems)
        for (int y : elems)
          if (seed.insert(t.at(x, y)).second) grew = true;
    }
    return seed;
  };

  std::set<std::set<int>> subgroups;
  subgroups.insert({e});
  bool grew = true;
  while (grew) {
    grew = false;
    const auto snapshot = subgroups;
    for (const auto& h : snapshot)
      for (int g = 0; g < t.n; ++g) {
        if (h.count(g)) continue;
        std::set<int> seed = h;
        seed.insert(g);
        if (subgroups.insert(closure(std::move(seed))).second) grew = true;
      }
  }

  std::vector<std::vector<int>> out;
  for (const auto& h : subgroups) out.emplace_back(h.begin(), h.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

Functional measure_state(const StructureRef& s, const RealVector& q) {
  if (q.size() != s->dim() || s->dim() != s->num_blocks())
    throw StructureError("measure_state expects a function algebra");
  std::vector<Matrix> rho;
  for (int b = 0; b < s->num_blocks(); ++b) {
    Matrix m(1, 1);
    m(0, 0) = q[b];
    rho.push_back(m);
  }
  return Functional(s, std::move(rho));
}

std::vector<Functional> uniform_subgroup_states(const MultiplicationTable& t,
                                                const StructureRef& s) {
  std::vector<Functional> out;
  for (const auto& h : subgroup_enumeration(t)) {
    RealVector q = RealVector::Zero(t.n);
    for (int g : h) q[g] = 1.0 / static_cast<double>(h.size());
    out.push_back(measure_state(s, q));
  }
  return out;
}

ClassicalIdempotents classical_idempotent_oracle(const MultiplicationTable& t,
                                                 const SolverConfig& cfg) {
  validate_table(t);
  ClassicalIdempotents out;
  if (is_group(t)) {
    out.complete = true;
    for (const auto& h : subgroup_enumeration(t)) {
      RealVector q = RealVector::Zero(t.n);
      for (int g : h) q[g] = 1.0 / static_cast<double>(h.size());
      out.measures.push_back(q);
    }
    return out;
  }
  const QuantumSemigroup qs = build_function_algebra(t);
  for (const auto& cand : find_idempotents(qs, cfg)) {
    RealVector q(t.n);
    for (int b = 0; b < t.n; ++b) q[b] = cand.state.rho[b](0, 0).real();
    out.measures.push_back(q);
  }
  out.complete = false;
  return out;
}

Functional dual_subgroup_state(const GroupData& g, const StructureRef& s,
                               const std::vector<int>& subgroup) {
  // densities (n_pi/|G|) sum_{h in H} pi(h^{-1}); the trace against pi(g)
  // reproduces 1_H(g) by Schur orthogonality of the regular character
  std::vector<Matrix> rho;
  for (size_t p = 0; p < g.irreps.size(); ++p) {
    const int n = static_cast<int>(g.irreps[p][0].rows());
    Matrix m = Matrix::Zero(n, n);
    for (int h : subgroup) m += g.irreps[p][g.inverse[h]];
    rho.push_back(m * double(n) / double(g.table.n));
  }
  return Functional(s, std::move(rho));
}

std::vector<Functional> dual_subgroup_states(const GroupData& g, const StructureRef& s) {
  std::vector<Functional> out;
  for (const auto& h : subgroup_enumeration(g.table)) out.push_back(dual_subgroup_state(g, s, h));
  return out;
}

std::vector<Functional> character_idempotents(const QuantumSemigroup& qs, double eps) {
  std::vector<Functional> out;
  for (int b = 0; b < qs.str->num_blocks(); ++b) {
    if (qs.str->block_size(b) != 1) continue;
    std::vector<Matrix> rho;
    for (int bb = 0; bb < qs.str->num_blocks(); ++bb) {
      const int n = qs.str->block_size(bb);
      Matrix m = Matrix::Zero(n, n);
      if (bb == b) m(0, 0) = 1.0;
      rho.push_back(m);
    }
    Functional chi(qs.str, std::move(rho));
    if (density_distance(convolve(qs, chi, chi), chi) <= eps) out.push_back(std::move(chi));
  }
  return out;
}

Functional regular_trace_state(const StructureRef& s) {
  std::vector<Matrix> rho;
  for (int b = 0; b < s->num_blocks(); ++b) {
    const int n = s->block_size(b);
    rho.push_back(Matrix::Identity(n, n) * (double(n) / double(s->dim())));
  }
  return Functional(s, std::move(rho));
}

namespace {

bool parse_suffix_int(const std::string& name, const std::string& prefix, int& value) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return false;
  const std::string digits = name.substr(prefix.size());
  for (char ch : digits)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  value = std::stoi(digits);
  return true;
}

}  // namespace

QuantumSemigroup build_catalog(const std::string& name, double eps) {
  int n = 0;
  if (name == "CZ2xZ2") return build_function_algebra(table_z2xz2(), eps);
  if (name == "CS3") return build_function_algebra(table_s3(), eps);
  if (name == "CD4") return build_function_algebra(table_d4(), eps);
  if (name == "CQ8") return build_function_algebra(table_q8(), eps);
  if (name == "dualZ2xZ2") return build_group_dual(group_z2xz2(), eps);
  if (name == "dualS3") return build_group_dual(group_s3(), eps);
  if (name == "dualD4") return build_group_dual(group_d4(), eps);
  if (name == "dualQ8") return build_group_dual(group_q8(), eps);
  if (name == "kac-paljutkin") return build_kac_paljutkin(eps);
  if (parse_suffix_int(name, "CZ", n)) return build_function_algebra(table_cyclic(n), eps);
  if (parse_suffix_int(name, "dualZ", n)) return build_group_dual(group_cyclic(n), eps);
  if (parse_suffix_int(name, "leftzero", n)) return build_function_algebra(table_leftzero(n), eps);
  if (parse_suffix_int(name, "null", n)) return build_function_algebra(table_null(n), eps);
  throw InvalidInput("unknown catalog name: " + name);
}

std::vector<std::string> catalog_names() {
  return {"CZ<n>",     "CZ2xZ2",   "CS3",    "CD4",    "CQ8",           "dualZ<n>",
          "dualZ2xZ2", "dualS3",   "dualD4", "dualQ8", "kac-paljutkin", "leftzero<n>",
          "null<n>"};
}

}  // namespace qsemi
