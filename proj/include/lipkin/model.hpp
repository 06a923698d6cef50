#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "lipkin/common.hpp"

namespace lipkin {

/// Parameters of the three-level model
///   H = eps (K22 - K00) - V/2 (K10^2 + K20^2 + K21^2 + h.c.)
/// with N particles and N-fold degenerate levels.
struct ModelParams {
  int n = 2;
  double epsilon = 1.0;
  double v = 0.0;

  /// Dimensionless coupling V (N-1) / eps.
  [[nodiscard]] double chi() const { return v * (n - 1) / epsilon; }

  /// Builds parameters from the dimensionless coupling, V = chi eps / (N-1).
  static ModelParams from_chi(int n, double chi, double epsilon = 1.0) {
    detail::require(n >= 2, "ModelParams: N must be >= 2, got " + std::to_string(n));
    return ModelParams{n, epsilon, chi * epsilon / (n - 1)};
  }

  void validate() const {
    detail::require(n >= 2, "ModelParams: N must be >= 2, got " + std::to_string(n));
    detail::require(epsilon > 0.0 && std::isfinite(epsilon), "ModelParams: epsilon must be > 0");
    detail::require(v >= 0.0 && std::isfinite(v), "ModelParams: V must be >= 0");
  }
};

/// Dimension (N+1)(N+2)/2 of the symmetric |pq> sector.
constexpr std::size_t pq_dim(int n) { return static_cast<std::size_t>((n + 1) * (n + 2) / 2); }

/// Lexicographic (p, q) index into the |pq> basis.
constexpr std::size_t pq_index(int n, int p, int q) {
  return static_cast<std::size_t>(p * (n + 1) - p * (p - 1) / 2 + q);
}

/// Amplitudes C_pq of a state in the orthonormal |pq> basis, where p (q)
/// counts particles in level 1 (level 2).
class PQState {
 public:
  explicit PQState(int n) : n_(n), amps_(VectorXc::Zero(static_cast<Eigen::Index>(pq_dim(n)))) {
    detail::require(n >= 1, "PQState: N must be positive");
  }

  PQState(int n, VectorXc amps) : n_(n), amps_(std::move(amps)) {
    detail::require(n >= 1, "PQState: N must be positive");
    detail::require(static_cast<std::size_t>(amps_.size()) == pq_dim(n),
                    "PQState: amplitude vector has wrong dimension");
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::size_t dim() const { return pq_dim(n_); }

  [[nodiscard]] static bool in_range(int n, int p, int q) { return p >= 0 && q >= 0 && p + q <= n; }

  /// Amplitude of |pq>; zero for indices outside 0 <= p+q <= N.
  [[nodiscard]] cplx operator()(int p, int q) const {
    return in_range(n_, p, q) ? amps_[static_cast<Eigen::Index>(pq_index(n_, p, q))] : cplx{};
  }

  cplx& at(int p, int q) {
    detail::require(in_range(n_, p, q), "PQState: index (p, q) out of range");
    return amps_[static_cast<Eigen::Index>(pq_index(n_, p, q))];
  }

  [[nodiscard]] const VectorXc& amplitudes() const { return amps_; }
  [[nodiscard]] double norm() const { return amps_.norm(); }

  void normalize() {
    const double nrm = norm();
    if (nrm == 0.0) throw InvalidArgument("PQState: cannot normalize a zero state");
    amps_ /= nrm;
  }

  /// Rotates the global phase so the largest-magnitude amplitude is real positive.
  void fix_phase() {
    Eigen::Index imax = 0;
    amps_.cwiseAbs().maxCoeff(&imax);
    const cplx a = amps_[imax];
    if (std::abs(a) == 0.0) return;
    amps_ *= std::conj(a) / std::abs(a);
    amps_[imax] = std::abs(amps_[imax]);
  }

 private:
  int n_;
  VectorXc amps_;
};

/// Normalization sqrt((N-p-q)! p! q! / N!) relating |pq> to the unnormalized
/// symmetric sum |n1 = p, n2 = q>.
inline double pq_norm_factor(int n, int p, int q) {
  detail::require(n >= 0 && PQState::in_range(n, p, q), "pq_norm_factor: need 0 <= p, q and p+q <= N");
  return 1.0 / std::sqrt(multinomial(n, p, q));
}

/// Hamiltonian in the |pq> basis (real symmetric).
inline Eigen::MatrixXd hamiltonian_matrix(const ModelParams& params) {
  params.validate();
  const int n = params.n;
  const auto d = static_cast<Eigen::Index>(pq_dim(n));
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  const double eps = params.epsilon;
  const double hv = 0.5 * params.v;

  // Each pair hop moves two particles between two levels; add the element and
  // its transpose.
  auto hop = [&](int p, int q, int p2, int q2, double amp2) {
    if (!PQState::in_range(n, p2, q2) || amp2 <= 0.0) return;
    const auto i = static_cast<Eigen::Index>(pq_index(n, p, q));
    const auto j = static_cast<Eigen::Index>(pq_index(n, p2, q2));
    const double el = -hv * std::sqrt(amp2);
    h(j, i) += el;
    h(i, j) += el;
  };

  for (int p = 0; p <= n; ++p) {
    for (int q = 0; p + q <= n; ++q) {
      const auto i = static_cast<Eigen::Index>(pq_index(n, p, q));
      const double n0 = n - p - q;
      h(i, i) = eps * (2.0 * q + p - n);
      // level 0 -> level 1 (K10^2)
      hop(p, q, p + 2, q, n0 * (n0 - 1) * (p + 1.0) * (p + 2.0));
      // level 0 -> level 2 (K20^2)
      hop(p, q, p, q + 2, n0 * (n0 - 1) * (q + 1.0) * (q + 2.0));
      // level 1 -> level 2 (K21^2)
      hop(p, q, p - 2, q + 2, p * (p - 1.0) * (q + 1.0) * (q + 2.0));
    }
  }
  return h;
}

struct ExactGroundState {
  double energy;
  PQState state;
};

namespace detail {

inline bool even_even(int p, int q) { return p % 2 == 0 && q % 2 == 0; }

}  // namespace detail

/// Lowest eigenpair of hamiltonian_matrix, normalized, phase-fixed.
inline ExactGroundState exact_ground_state(const ModelParams& params) {
  const Eigen::MatrixXd h = hamiltonian_matrix(params);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw EigenSolverFailure("exact_ground_state: eigensolver failed");

  const int n = params.n;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  VectorXc v = es.eigenvectors().col(0).cast<cplx>();

  if (h.rows() > 1 && es.eigenvalues()[1] - es.eigenvalues()[0] < 1e-10 * scale) {
    // Degenerate ground level: keep the even-even member.
    Eigen::Index deg = 1;
    while (deg < h.rows() && es.eigenvalues()[deg] - es.eigenvalues()[0] < 1e-10 * scale) ++deg;
    Eigen::MatrixXd sub = es.eigenvectors().leftCols(deg);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; p + q <= n; ++q)
        if (!detail::even_even(p, q)) sub.row(static_cast<Eigen::Index>(pq_index(n, p, q))).setZero();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv[0] < 0.5 || (sv.size() > 1 && sv[1] > 1e-6))
      throw EigenSolverFailure("exact_ground_state: ambiguous degenerate ground state");
    v = svd.matrixU().col(0).cast<cplx>();
  }

  PQState state(n, v);
  state.normalize();
  state.fix_phase();
  return {es.eigenvalues()[0], std::move(state)};
}

}  // namespace lipkin
