#pragma once

// One-coordinate generator coordinate method. The generating determinants are
//   |phi2> = prod_i (cos phi1 c+_{0i} + sin phi1 cos phi2 c+_{1i} + sin phi1 sin phi2 c+_{2i}) |vac>
// with phi1 frozen at its HF value; phi2 is the generator coordinate.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "lipkin/common.hpp"
#include "lipkin/mean_field.hpp"
#include "lipkin/model.hpp"

namespace lipkin::gcm {

struct GcmConfig {
  ModelParams params;
  double phi1 = 0.0;
  int pmax = 2;
  double norm_cutoff = 1e-10;

  /// Configuration with phi1 at the HF value, cos^2 phi1 = U00^2(chi), and pmax = N.
  static GcmConfig from_params(const ModelParams& params, double norm_cutoff = 1e-10) {
    params.validate();
    const HfOrbital orb = hf_orbital(params.chi());
    return GcmConfig{params, std::acos(std::clamp(orb.u00, -1.0, 1.0)), params.n, norm_cutoff};
  }

  void validate() const {
    params.validate();
    detail::require(phi1 >= 0.0 && phi1 <= std::numbers::pi / 2 + 1e-15, "GcmConfig: phi1 must lie in [0, pi/2]");
    detail::require(pmax >= 0, "GcmConfig: pmax must be >= 0");
    detail::require(norm_cutoff >= 0.0, "GcmConfig: norm_cutoff must be >= 0");
  }
};

/// N(a, b) = (u(a) . u(b))^N = (sin^2 phi1 cos(a - b) + cos^2 phi1)^N.
inline double overlap_kernel(const GcmConfig& cfg, double phi2a, double phi2b) {
  const double s2 = std::sin(cfg.phi1) * std::sin(cfg.phi1);
  const double c2 = std::cos(cfg.phi1) * std::cos(cfg.phi1);
  return std::pow(s2 * std::cos(phi2a - phi2b) + c2, cfg.params.n);
}

/// Norm-kernel eigenvalues n_p for plane waves e^{-i p phi}/sqrt(2 pi), p in [-pmax, pmax].
class NormSpectrum {
 public:
  NormSpectrum(int pmax, std::vector<double> values) : pmax_(pmax), n_(std::move(values)) {}

  [[nodiscard]] int pmax() const { return pmax_; }
  [[nodiscard]] double operator[](int p) const {
    return (p < -pmax_ || p > pmax_) ? 0.0 : n_[static_cast<std::size_t>(p + pmax_)];
  }
  [[nodiscard]] double max() const { return *std::max_element(n_.begin(), n_.end()); }

 private:
  int pmax_;
  std::vector<double> n_;
};

/// n_p = 2 pi sum_{k >= |p|, k = p mod 2, k <= N} 2^-k (sin^2 phi1)^k (cos^2 phi1)^(N-k) C(N,k) C(k,(p+k)/2).
inline NormSpectrum norm_eigenvalues(const GcmConfig& cfg) {
  cfg.validate();
  const int n = cfg.params.n;
  const double s2 = std::sin(cfg.phi1) * std::sin(cfg.phi1);
  const double c2 = std::cos(cfg.phi1) * std::cos(cfg.phi1);
  std::vector<double> vals;
  for (int p = -cfg.pmax; p <= cfg.pmax; ++p) {
    double acc = 0.0;
    for (int k = std::abs(p); k <= n; k += 2)
      acc += std::pow(0.5, k) * std::pow(s2, k) * std::pow(c2, n - k) * binomial(n, k) * binomial(k, (p + k) / 2);
    vals.push_back(2.0 * std::numbers::pi * acc);
  }
  return NormSpectrum(cfg.pmax, std::move(vals));
}

/// I^(k1,k2)_p = (2 pi)^(-1/2) int_0^{2 pi} e^{i p phi} cos^k1 phi sin^k2 phi dphi.
inline cplx i_integral(int k1, int k2, int p) {
  detail::require(k1 >= 0 && k2 >= 0, "i_integral: k1, k2 must be >= 0");
  const int tot = k1 + k2;
  if (std::abs(p) > tot || ((tot - p) % 2) != 0) return {};
  // cos^k1 = 2^-k1 sum_j1 C(k1,j1) e^{i(2 j1 - k1) phi}
  // sin^k2 = (2i)^-k2 sum_j2 C(k2,j2) (-1)^(k2-j2) e^{i(2 j2 - k2) phi}
  // and the integral keeps 2 j1 + 2 j2 = k1 + k2 - p.
  const int jsum = (tot - p) / 2;
  double acc = 0.0;
  for (int j1 = std::max(0, jsum - k2); j1 <= std::min(k1, jsum); ++j1) {
    const int j2 = jsum - j1;
    const double sgn = ((k2 - j2) % 2) ? -1.0 : 1.0;
    acc += sgn * binomial(k1, j1) * binomial(k2, j2);
  }
  cplx pre = std::sqrt(2.0 * std::numbers::pi) * std::pow(0.5, tot);
  // (1/i)^k2
  static constexpr std::array<cplx, 4> inv_i_pow{cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
  pre *= inv_i_pow[static_cast<std::size_t>(k2 % 4)];
  return pre * acc;
}

/// H(a, b) = <a|H|b> = eps N f^(N-2) (f g - chi/2 h), with
///   f = u(a) . u(b),
///   g = sin^2 phi1 sin a sin b - cos^2 phi1,
///   h = 2 sin^2 phi1 cos^2 phi1 + sin^4 phi1 (cos^2 a sin^2 b + sin^2 a cos^2 b).
inline double hamiltonian_kernel(const GcmConfig& cfg, double phi2a, double phi2b) {
  const double s2 = std::sin(cfg.phi1) * std::sin(cfg.phi1);
  const double c2 = std::cos(cfg.phi1) * std::cos(cfg.phi1);
  const double chi = cfg.params.chi();
  const int n = cfg.params.n;
  const double ca = std::cos(phi2a), sa = std::sin(phi2a), cb = std::cos(phi2b), sb = std::sin(phi2b);
  const double f = s2 * (ca * cb + sa * sb) + c2;
  const double g = s2 * sa * sb - c2;
  const double h = 2.0 * s2 * c2 + s2 * s2 * (ca * ca * sb * sb + sa * sa * cb * cb);
  return cfg.params.epsilon * n * std::pow(f, n - 2) * (f * g - 0.5 * chi * h);
}

/// Table of I^(k1,k2)_p for k1 + k2 <= kmax and |p| <= kmax.
class IntegralTable {
 public:
  explicit IntegralTable(int kmax) : kmax_(kmax), data_(static_cast<std::size_t>((kmax + 1) * (kmax + 1) * (2 * kmax + 1))) {
    for (int k1 = 0; k1 <= kmax; ++k1)
      for (int k2 = 0; k1 + k2 <= kmax; ++k2)
        for (int p = -kmax; p <= kmax; ++p) data_[slot(k1, k2, p)] = i_integral(k1, k2, p);
  }

  [[nodiscard]] cplx operator()(int k1, int k2, int p) const {
    if (k1 + k2 > kmax_ || std::abs(p) > kmax_) return i_integral(k1, k2, p);
    return data_[slot(k1, k2, p)];
  }

 private:
  [[nodiscard]] std::size_t slot(int k1, int k2, int p) const {
    return static_cast<std::size_t>((k1 * (kmax_ + 1) + k2) * (2 * kmax_ + 1) + (p + kmax_));
  }

  int kmax_;
  std::vector<cplx> data_;
};

/// Matrix sqrt(n_p' n_p) <p'|H|p> over the listed plane waves, built from the
/// multinomial expansion of f^(N-1) g and f^(N-2) h.
inline MatrixXc plane_wave_hamiltonian_unscaled(const GcmConfig& cfg, const std::vector<int>& ps,
                                                const IntegralTable& tab) {
  const int n = cfg.params.n;
  const double a = std::sin(cfg.phi1) * std::sin(cfg.phi1);
  const double c = std::cos(cfg.phi1) * std::cos(cfg.phi1);
  const double r2 = 2.0 * a * c;
  const double chi = cfg.params.chi();
  const auto d = static_cast<Eigen::Index>(ps.size());
  MatrixXc h = MatrixXc::Zero(d, d);

  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const int pp = ps[static_cast<std::size_t>(i)];  // bra
      const int p = ps[static_cast<std::size_t>(j)];   // ket
      // The ket integral carries e^{-i p phi}, i.e. conj(I_p) for real integrands.
      auto pair = [&](int k1a, int k2a, int k1b, int k2b) { return tab(k1a, k2a, pp) * std::conj(tab(k1b, k2b, p)); };
      cplx one_body{};
      for (int k1 = 0; k1 <= n - 1; ++k1)
        for (int k2 = 0; k1 + k2 <= n - 1; ++k2) {
          const double w = multinomial(n - 1, k1, k2) * std::pow(a, k1 + k2) * std::pow(c, n - 1 - k1 - k2);
          if (w == 0.0) continue;
          one_body += w * (a * pair(k1, k2 + 1, k1, k2 + 1) - c * pair(k1, k2, k1, k2));
        }
      cplx two_body{};
      for (int k1 = 0; k1 <= n - 2; ++k1)
        for (int k2 = 0; k1 + k2 <= n - 2; ++k2) {
          const double w = multinomial(n - 2, k1, k2) * std::pow(a, k1 + k2) * std::pow(c, n - 2 - k1 - k2);
          if (w == 0.0) continue;
          two_body += w * (r2 * pair(k1, k2, k1, k2) + a * a * (pair(k1 + 2, k2, k1, k2 + 2) + pair(k1, k2 + 2, k1 + 2, k2)));
        }
      h(i, j) = cfg.params.epsilon * n * (one_body - 0.5 * chi * two_body);
    }
  }
  return h;
}

struct GcmSolution {
  double energy = 0.0;
  std::vector<int> retained_p;  ///< plane waves kept in the natural basis
  VectorXc g;                   ///< Hill-Wheeler eigenvector in the natural basis
  /// f(phi2) = sum_k weights[k] e^{-i p_k phi2} / sqrt(2 pi), weights = g / sqrt(n_p).
  VectorXc f_weights;
  PQState state{2};
};

/// Solves the Hill-Wheeler equation in the natural basis and assembles the
/// GCM state in the |pq> basis.
inline GcmSolution hill_wheeler(const GcmConfig& cfg) {
  cfg.validate();
  const int n = cfg.params.n;
  const NormSpectrum spec = norm_eigenvalues(cfg);
  const double nmax = spec.max();

  GcmSolution sol;
  for (int p = -cfg.pmax; p <= cfg.pmax; ++p)
    if (nmax > 0.0 && spec[p] / nmax > cfg.norm_cutoff) sol.retained_p.push_back(p);
  if (sol.retained_p.empty()) throw EmptyNaturalBasis("hill_wheeler: every norm eigenvalue is below the cutoff");

  const IntegralTable tab(n + 2);
  MatrixXc h = plane_wave_hamiltonian_unscaled(cfg, sol.retained_p, tab);
  const auto d = static_cast<Eigen::Index>(sol.retained_p.size());
  VectorXc inv_sqrt_n(d);
  for (Eigen::Index i = 0; i < d; ++i) inv_sqrt_n[i] = 1.0 / std::sqrt(spec[sol.retained_p[static_cast<std::size_t>(i)]]);
  h = inv_sqrt_n.asDiagonal() * h * inv_sqrt_n.asDiagonal();
  h = 0.5 * (h + h.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  if (es.info() != Eigen::Success) throw EigenSolverFailure("hill_wheeler: eigensolver failed");
  sol.energy = es.eigenvalues()[0];
  sol.g = es.eigenvectors().col(0);
  sol.f_weights = sol.g.cwiseProduct(inv_sqrt_n);

  // C_pq = sqrt(multinomial) sin^(p+q) phi1 cos^(N-p-q) phi1 int f(phi) cos^p sin^q dphi,
  // and int e^{-i k phi}/sqrt(2 pi) cos^p sin^q dphi = I^(p,q)_{-k}.
  const double s = std::sin(cfg.phi1), c = std::cos(cfg.phi1);
  PQState st(n);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; p + q <= n; ++q) {
      cplx acc{};
      for (Eigen::Index i = 0; i < d; ++i) acc += sol.f_weights[i] * tab(p, q, -sol.retained_p[static_cast<std::size_t>(i)]);
      st.at(p, q) = std::sqrt(multinomial(n, p, q)) * std::pow(s, p + q) * std::pow(c, n - p - q) * acc;
    }
  st.normalize();
  st.fix_phase();
  sol.state = std::move(st);
  return sol;
}

}  // namespace lipkin::gcm
