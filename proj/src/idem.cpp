#include "qsemi/idem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

namespace qsemi {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Newton: return "newton";
    case Provenance::Cesaro: return "cesaro";
    case Provenance::Oracle: return "oracle";
  }
  return "unknown";
}

namespace {

// Real coordinates of a Hermitian functional: per block the diagonal, then
// re/im of the strict upper triangle, row-major.
int real_param_count(const StructureRef& s) {
  int n = 0;
  for (int b = 0; b < s->num_blocks(); ++b) n += s->block_size(b) * s->block_size(b);
  return n;
}

RealVector pack_hermitian(const Functional& phi) {
  RealVector p(real_param_count(phi.str));
  int k = 0;
  for (int b = 0; b < phi.str->num_blocks(); ++b) {
    const Matrix h = 0.5 * (phi.rho[b] + phi.rho[b].adjoint());
    const int n = phi.str->block_size(b);
    for (int i = 0; i < n; ++i) p[k++] = h(i, i).real();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        p[k++] = h(i, j).real();
        p[k++] = h(i, j).imag();
      }
  }
  return p;
}

Functional unpack_hermitian(const StructureRef& s, const RealVector& p) {
  std::vector<Matrix> rho;
  int k = 0;
  for (int b = 0; b < s->num_blocks(); ++b) {
    const int n = s->block_size(b);
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = p[k++];
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double re = p[k++], im = p[k++];
        m(i, j) = Complex(re, im);
        m(j, i) = Complex(re, -im);
      }
    rho.push_back(std::move(m));
  }
  return Functional(s, std::move(rho));
}

double block_trace(const Functional& phi) {
  double tr = 0.0;
  for (const auto& m : phi.rho) tr += m.trace().real();
  return tr;
}

// F(p) = [ pack(omega*omega - omega) ; tr(omega) - 1 ].
RealVector residual_vector(const QuantumSemigroup& qs, const Functional& omega) {
  const Functional diff = convolve(qs, omega, omega) - omega;
  RealVector f(real_param_count(qs.str) + 1);
  f.head(f.size() - 1) = pack_hermitian(diff);
  f[f.size() - 1] = block_trace(omega) - 1.0;
  return f;
}

// Exact derivative of the quadratic map: column k is the residual of the
// bilinear convolution evaluated at the k-th Hermitian basis direction.
Eigen::MatrixXd jacobian(const QuantumSemigroup& qs, const Functional& omega) {
  const int np = real_param_count(qs.str);
  Eigen::MatrixXd jac(np + 1, np);
  RealVector dir = RealVector::Zero(np);
  for (int k = 0; k < np; ++k) {
    dir[k] = 1.0;
    const Functional h = unpack_hermitian(qs.str, dir);
    const Functional dconv = convolve(qs, h, omega) + convolve(qs, omega, h) - h;
    jac.col(k).head(np) = pack_hermitian(dconv);
    jac(np, k) = block_trace(h);
    dir[k] = 0.0;
  }
  return jac;
}

}  // namespace

double idempotency_residual(const QuantumSemigroup& qs, const Functional& omega) {
  require_same_structure(qs.str, omega.str, "idempotency_residual");
  const StateReport st = check_state(omega, 1e-6);
  if (!st.is_state)
    throw InvalidInput("idempotency_residual expects a state (min eig " +
                       std::to_string(st.min_eigenvalue) + ", trace err " +
                       std::to_string(st.trace_error) + ")");
  return density_distance(convolve(qs, omega, omega), omega);
}

std::optional<Functional> newton_polish(const QuantumSemigroup& qs, const Functional& start,
                                        const SolverConfig& cfg) {
  Functional omega = start;
  double best = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const RealVector f = residual_vector(qs, omega);
    const double res = f.norm();
    if (res < 1e-15) break;
    if (res < best * 0.9) {
      best = res;
      stall = 0;
    } else if (++stall > 8) {
      break;
    }
    const Eigen::MatrixXd jac = jacobian(qs, omega);
    const RealVector step = jac.colPivHouseholderQr().solve(-f);
    if (!step.allFinite()) return std::nullopt;
    RealVector p = pack_hermitian(omega) + step;
    Functional next = unpack_hermitian(qs.str, p);
    // keep the iterate physical: clamp the density to the positive cone and
    // renormalize its trace, unless it is about to collapse
    const double tr = block_trace(next);
    if (!std::isfinite(tr) || tr < 0.05) return std::nullopt;
    try {
      next = project_to_states(next);
    } catch (const InvalidInput&) {
      return std::nullopt;
    }
    omega = std::move(next);
  }
  const double res = density_distance(convolve(qs, omega, omega), omega);
  if (res > cfg.eps_idem) return std::nullopt;
  const StateReport st = check_state(omega, cfg.eps_state);
  if (!st.is_state) return std::nullopt;
  return project_to_states(omega);
}

std::optional<IdempotentCandidate> cesaro_limit(const QuantumSemigroup& qs, const Functional& mu,
                                                const SolverConfig& cfg) {
  const StateReport st = check_state(mu, 1e-6);
  if (!st.is_state) throw InvalidInput("cesaro_limit expects a state");
  Functional power = mu;       // mu^{*N}
  Functional sum = mu;         // sum of the first N powers
  for (int n = 1; n <= cfg.cesaro_max_terms; ++n) {
    const Functional avg = Complex(1.0 / n) * sum;
    const double raw = density_distance(convolve(qs, avg, avg), avg);
    if (raw < 1e-3) {
      if (auto polished = newton_polish(qs, project_to_states(avg), cfg)) {
        const double res = density_distance(convolve(qs, *polished, *polished), *polished);
        if (res <= cfg.eps_idem)
          return IdempotentCandidate{*polished, res, Provenance::Cesaro, n};
      }
    }
    power = convolve(qs, power, mu);
    sum = sum + power;
  }
  return std::nullopt;
}

namespace {

std::vector<double> sort_key(const Functional& phi) {
  std::vector<double> key;
  for (const auto& m : phi.rho)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        key.push_back(m(r, c).real());
        key.push_back(m(r, c).imag());
      }
  return key;
}

// Random extreme start for the Cesaro route: a pure state concentrated on
// one block.
Functional random_pure_state(const StructureRef& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int b = static_cast<int>(rng() % static_cast<std::uint64_t>(s->num_blocks()));
  std::normal_distribution<double> g(0.0, 1.0);
  const int n = s->block_size(b);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
  v.normalize();
  std::vector<Matrix> rho;
  for (int bb = 0; bb < s->num_blocks(); ++bb) {
    const int nb = s->block_size(bb);
    rho.push_back(bb == b ? Matrix(v * v.adjoint()) : Matrix::Zero(nb, nb));
  }
  return Functional(s, std::move(rho));
}

}  // namespace

std::vector<IdempotentCandidate> find_idempotents(const QuantumSemigroup& qs,
                                                  const SolverConfig& cfg,
                                                  const std::vector<Functional>& oracle_seeds) {
  std::vector<IdempotentCandidate> found;

  for (const auto& seed_state : oracle_seeds) {
    require_same_structure(qs.str, seed_state.str, "find_idempotents oracle seed");
    const double res = density_distance(convolve(qs, seed_state, seed_state), seed_state);
    if (res <= cfg.eps_idem && check_state(seed_state, cfg.eps_state).is_state)
      found.push_back({project_to_states(seed_state), res, Provenance::Oracle});
  }

  for (int t = 0; t < cfg.starts; ++t) {
    const Functional start = random_state(qs.str, cfg.seed + static_cast<std::uint64_t>(t));
    if (auto polished = newton_polish(qs, start, cfg)) {
      const double res = density_distance(convolve(qs, *polished, *polished), *polished);
      found.push_back({*polished, res, Provenance::Newton});
    }
  }

  const int cesaro_starts = std::max(4, cfg.starts / 4);
  for (int t = 0; t < cesaro_starts; ++t) {
    const Functional start = random_pure_state(qs.str, cfg.seed + 0x9e3779b97f4a7c15ull +
                                                            static_cast<std::uint64_t>(t));
    if (auto cand = cesaro_limit(qs, start, cfg)) found.push_back(*cand);
  }

  // best residual first, provenance preference on ties, then dedup
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.provenance != b.provenance)
      return static_cast<int>(a.provenance) > static_cast<int>(b.provenance);
    return false;
  });
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.residual < b.residual; });
  std::vector<IdempotentCandidate> unique;
  for (const auto& cand : found) {
    bool dup = false;
    for (const auto& kept : unique)
      if (density_distance(cand.state, kept.state) <= cfg.dedup_radius) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(cand);
  }
  std::sort(unique.begin(), unique.end(), [](const auto& a, const auto& b) {
    return sort_key(a.state) < sort_key(b.state);
  });
  return unique;
}

double MultDomainReport::max_residual() const {
  return std::max({slice_left, slice_right, absorb_left, absorb_right});
}

MultDomainReport mult_domain_verify(const QuantumSemigroup& qs, const Functional& omega,
                                    int samples, std::uint64_t seed) {
  require_same_structure(qs.str, omega.str, "mult_domain_verify");
  const int d = qs.dim();
  MultDomainReport rep;
  rep.samples = samples;

  std::vector<Element> probes;
  probes.reserve(samples);
  for (int t = 0; t < samples; ++t)
    probes.push_back(random_element(qs.str, seed + static_cast<std::uint64_t>(t)));

  for (int c = 0; c < d; ++c) {
    const Element a = matrix_unit(qs.str, c);
    const Element oa = conv_state_elt(qs, omega, a, Side::Left);   // omega * a
    const Element ao = conv_state_elt(qs, omega, a, Side::Right);  // a * omega
    const Complex woa = apply(omega, oa), wao = apply(omega, ao);
    for (const Element& x : probes) {
      rep.slice_left = std::max(rep.slice_left,
                                std::abs(apply(omega, mul(oa, x)) - woa * apply(omega, x)));
      rep.slice_left = std::max(rep.slice_left,
                                std::abs(apply(omega, mul(x, oa)) - apply(omega, x) * woa));
      rep.slice_right = std::max(rep.slice_right,
                                 std::abs(apply(omega, mul(ao, x)) - wao * apply(omega, x)));
      rep.slice_right = std::max(rep.slice_right,
                                 std::abs(apply(omega, mul(x, ao)) - apply(omega, x) * wao));
    }

    const Functional omega_c = act(a, omega, Side::Right);  // omega . c
    const Complex wc = apply(omega, a);
    rep.absorb_left = std::max(
        rep.absorb_left, density_distance(convolve(qs, omega, omega_c), wc * omega));
    rep.absorb_right = std::max(
        rep.absorb_right, density_distance(convolve(qs, omega_c, omega), wc * omega));
  }
  return rep;
}

}  // namespace qsemi
