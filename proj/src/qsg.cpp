#include "qsemi/qsg.hpp"

#include <algorithm>
#include <random>

namespace qsemi {

Comultiplication make_comultiplication(const StructureRef& s, const Matrix& m) {
  const int d = s->dim();
  if (m.rows() != Eigen::Index(d) * d || m.cols() != d)
    throw StructureError("comultiplication matrix must be d^2 x d");
  return Comultiplication{s, tensor_structure(s, s), m};
}

double AxiomReport::max_residual() const {
  return std::max({unitality, star, multiplicativity, coassociativity});
}

AxiomReport verify_quantum_semigroup(const StructureRef& s, const Matrix& delta) {
  Comultiplication co = make_comultiplication(s, delta);
  const int d = s->dim();
  AxiomReport rep;

  rep.unitality = hs_norm(co.apply(unit_element(s)) -
                          tensor(unit_element(s), unit_element(s)));

  for (int c = 0; c < d; ++c) {
    const Element e = matrix_unit(s, c);
    rep.star = std::max(rep.star, hs_norm(co.apply(star(e)) - star(co.apply(e))));
  }

  for (int i = 0; i < d; ++i) {
    const Element ei = matrix_unit(s, i);
    const Element di = co.apply(ei);
    for (int j = 0; j < d; ++j) {
      const Element ej = matrix_unit(s, j);
      rep.multiplicativity =
          std::max(rep.multiplicativity, hs_norm(co.apply(mul(ei, ej)) - mul(di, co.apply(ej))));
    }
  }

  const Matrix id = Matrix::Identity(d, d);
  rep.coassociativity = (kron(delta, id) * delta - kron(id, delta) * delta).norm();
  return rep;
}

QuantumSemigroup make_quantum_semigroup(const StructureRef& s, const Matrix& delta, double eps) {
  AxiomReport rep = verify_quantum_semigroup(s, delta);
  if (!rep.pass(eps))
    throw AxiomError("comultiplication axioms fail: unitality " + std::to_string(rep.unitality) +
                     ", star " + std::to_string(rep.star) + ", multiplicativity " +
                     std::to_string(rep.multiplicativity) + ", coassociativity " +
                     std::to_string(rep.coassociativity));
  return QuantumSemigroup{s, make_comultiplication(s, delta), rep};
}

Functional convolve(const QuantumSemigroup& qs, const Functional& mu, const Functional& nu) {
  require_same_structure(qs.str, mu.str, "convolve");
  require_same_structure(qs.str, nu.str, "convolve");
  const int d = qs.dim();
  const Vector wm = covector(mu), wn = covector(nu);
  Vector w(d);
  for (int c = 0; c < d; ++c) {
    Complex acc = 0.0;
    for (int i = 0; i < d; ++i) {
      if (wm[i] == Complex(0.0)) continue;
      for (int j = 0; j < d; ++j) acc += qs.delta.mat(i * d + j, c) * wm[i] * wn[j];
    }
    w[c] = acc;
  }
  return functional_from_covector(qs.str, w);
}

Element slice_left(const Functional& mu, const Element& x) {
  if (!x.str->is_tensor()) throw StructureError("slice_left expects a tensor element");
  require_same_structure(x.str->left_factor(), mu.str, "slice_left");
  const int dl = x.str->left_factor()->dim();
  const int dr = x.str->right_factor()->dim();
  const Vector w = covector(mu);
  Vector out = Vector::Zero(dr);
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dr; ++j) out[j] += w[i] * x.coeffs[i * dr + j];
  return Element(x.str->right_factor(), std::move(out));
}

Element slice_right(const Element& x, const Functional& mu) {
  if (!x.str->is_tensor()) throw StructureError("slice_right expects a tensor element");
  require_same_structure(x.str->right_factor(), mu.str, "slice_right");
  const int dl = x.str->left_factor()->dim();
  const int dr = x.str->right_factor()->dim();
  const Vector w = covector(mu);
  Vector out = Vector::Zero(dl);
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dr; ++j) out[i] += x.coeffs[i * dr + j] * w[j];
  return Element(x.str->left_factor(), std::move(out));
}

Element conv_state_elt(const QuantumSemigroup& qs, const Functional& mu, const Element& a, Side side) {
  require_same_structure(qs.str, a.str, "conv_state_elt");
  const Element da = qs.delta.apply(a);
  return side == Side::Left ? slice_right(da, mu) : slice_left(mu, da);
}

Functional act(const Element& a, const Functional& mu, Side side) {
  require_same_structure(a.str, mu.str, "act");
  std::vector<Matrix> rho;
  for (int b = 0; b < a.str->num_blocks(); ++b) {
    const Matrix ab = get_block(a, b);
    rho.push_back(side == Side::Left ? Matrix(ab * mu.rho[b]) : Matrix(mu.rho[b] * ab));
  }
  return Functional(a.str, std::move(rho));
}

namespace {

Matrix random_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

}  // namespace

Functional random_hermitian_functional(const StructureRef& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Matrix> rho;
  for (int b = 0; b < s->num_blocks(); ++b) {
    const int n = s->block_size(b);
    Matrix g = random_gaussian(n, n, rng);
    rho.push_back(0.5 * (g + g.adjoint()));
  }
  Functional f(s, std::move(rho));
  const double nrm = density_norm(f);
  return nrm > 0 ? (Complex(1.0 / nrm) * f) : f;
}

Functional random_state(const StructureRef& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Matrix> rho;
  double tr = 0.0;
  for (int b = 0; b < s->num_blocks(); ++b) {
    const int n = s->block_size(b);
    Matrix g = random_gaussian(n, n, rng);
    Matrix w = g * g.adjoint();
    tr += w.trace().real();
    rho.push_back(std::move(w));
  }
  for (auto& m : rho) m /= tr;
  return Functional(s, std::move(rho));
}

Element random_element(const StructureRef& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Vector c(s->dim());
  for (int i = 0; i < s->dim(); ++i) c[i] = Complex(g(rng), g(rng));
  return Element(s, std::move(c));
}

CancellationReport cancellation_check(const QuantumSemigroup& qs, double eps,
                                      std::uint64_t seed, int probes) {
  const int d = qs.dim();
  const Element one = unit_element(qs.str);
  CancellationReport rep;
  rep.seed = seed;

  std::vector<Element> left_set, right_set;
  left_set.reserve(d * d);
  right_set.reserve(d * d);
  for (int i = 0; i < d; ++i) {
    const Element ei = matrix_unit(qs.str, i);
    const Element di = qs.delta.apply(ei);
    const Element ei_one = tensor(ei, one);
    for (int j = 0; j < d; ++j) {
      const Element ej = matrix_unit(qs.str, j);
      left_set.push_back(mul(di, tensor(one, ej)));
      right_set.push_back(mul(ei_one, qs.delta.apply(ej)));
    }
  }
  rep.rank_left = span_rank(left_set, eps);
  rep.rank_right = span_rank(right_set, eps);
  rep.proper_left = rep.rank_left == d * d;
  rep.proper_right = rep.rank_right == d * d;
  rep.weak = rep.proper_left && rep.proper_right;

  for (int t = 0; t < probes; ++t) {
    const Functional mu = random_hermitian_functional(qs.str, seed + static_cast<std::uint64_t>(t));
    std::vector<Element> sl, sr;
    sl.reserve(d * d);
    sr.reserve(d * d);
    for (int k = 0; k < d * d; ++k) {
      sl.push_back(slice_left(mu, right_set[k]));
      sr.push_back(slice_right(left_set[k], mu));
    }
    if (span_rank(sl, eps) < d || span_rank(sr, eps) < d) {
      rep.witness = mu;
      break;
    }
  }
  return rep;
}

QuantumSemigroup opposite(const QuantumSemigroup& qs, double eps) {
  const int d = qs.dim();
  Matrix flipped(d * d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) flipped.row(j * d + i) = qs.delta.mat.row(i * d + j);
  return make_quantum_semigroup(qs.str, flipped, eps);
}

}  // namespace qsemi
