#pragma once

// Occupation-basis algebra for a handful of fermionic modes.
//
// Basis index x has bit m set when mode m is occupied; the state is the
// monomial c+_{m1} c+_{m2} ... |vac> with m1 < m2 < ... .

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lipkin/common.hpp"

namespace lipkin::fock {

constexpr int kMaxModes = 6;

inline int dim_of(int n_modes) { return 1 << n_modes; }

inline int parity_of(unsigned x) { return std::popcount(x) & 1; }

/// Ordered set of mode labels.
class ModeSubset {
 public:
  ModeSubset() = default;
  ModeSubset(std::initializer_list<int> idx) : ModeSubset(std::vector<int>(idx)) {}
  explicit ModeSubset(std::vector<int> idx) : idx_(std::move(idx)) {
    detail::require(!idx_.empty(), "ModeSubset: empty");
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      detail::require(idx_[i] >= 0 && idx_[i] < kMaxModes, "ModeSubset: mode label out of range");
      if (i > 0) detail::require(idx_[i] > idx_[i - 1], "ModeSubset: labels must be strictly increasing");
    }
  }

  [[nodiscard]] const std::vector<int>& indices() const { return idx_; }
  [[nodiscard]] std::size_t size() const { return idx_.size(); }
  [[nodiscard]] bool contains(int m) const { return std::find(idx_.begin(), idx_.end(), m) != idx_.end(); }
  [[nodiscard]] unsigned mask() const {
    unsigned m = 0;
    for (int i : idx_) m |= 1u << i;
    return m;
  }

  friend bool operator==(const ModeSubset&, const ModeSubset&) = default;

 private:
  std::vector<int> idx_;
};

/// Density operator on the Fock space of n_modes fermionic modes.
class FockDensity {
 public:
  FockDensity(int n_modes, MatrixXc m) : n_modes_(n_modes), m_(std::move(m)) {
    detail::require(n_modes >= 1 && n_modes <= kMaxModes, "FockDensity: 1..6 modes supported");
    detail::require(m_.rows() == dim_of(n_modes) && m_.cols() == dim_of(n_modes),
                    "FockDensity: matrix dimension must be 2^n_modes");
  }

  /// Projector onto a normalized pure state.
  static FockDensity pure(int n_modes, const VectorXc& psi) {
    return FockDensity(n_modes, psi * psi.adjoint());
  }

  [[nodiscard]] int n_modes() const { return n_modes_; }
  [[nodiscard]] int dim() const { return dim_of(n_modes_); }
  [[nodiscard]] const MatrixXc& matrix() const { return m_; }

  [[nodiscard]] double trace() const { return m_.trace().real(); }

  [[nodiscard]] double hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

  /// Largest |rho_xy| between states of different total parity.
  [[nodiscard]] double parity_coherence() const {
    double worst = 0.0;
    for (int x = 0; x < dim(); ++x)
      for (int y = 0; y < dim(); ++y)
        if (parity_of(x) != parity_of(y)) worst = std::max(worst, std::abs(m_(x, y)));
    return worst;
  }

  [[nodiscard]] double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  /// Throws unless Hermitian, unit trace, PSD and parity superselected.
  void validate(double tol = 1e-10) const {
    detail::require(hermiticity_error() < tol, "FockDensity: not Hermitian");
    detail::require(std::abs(trace() - 1.0) < tol, "FockDensity: trace is not 1");
    detail::require(min_eigenvalue() > -tol, "FockDensity: not positive semidefinite");
    detail::require(parity_coherence() < tol, "FockDensity: coherence between parity sectors");
  }

 private:
  int n_modes_;
  MatrixXc m_;
};

/// Sign acquired when the monomial for occupation x is rewritten with modes
/// in the order `order` (order[k] = old label placed at new position k).
inline int reorder_sign(unsigned x, std::span<const int> order) {
  int swaps = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!((x >> order[i]) & 1u)) continue;
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (((x >> order[j]) & 1u) && order[j] < order[i]) ++swaps;
  }
  return (swaps & 1) ? -1 : 1;
}

/// Relabels modes: new mode k is old mode order[k], with Jordan-Wigner signs.
inline MatrixXc permute_modes(const MatrixXc& rho, int n_modes, std::span<const int> order) {
  detail::require(static_cast<int>(order.size()) == n_modes, "permute_modes: order must list every mode");
  const int d = dim_of(n_modes);
  std::vector<int> target(d);
  std::vector<int> sign(d);
  for (int x = 0; x < d; ++x) {
    int y = 0;
    for (int k = 0; k < n_modes; ++k)
      if ((x >> order[k]) & 1) y |= 1 << k;
    target[x] = y;
    sign[x] = reorder_sign(static_cast<unsigned>(x), order);
  }
  MatrixXc out(d, d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) out(target[x], target[y]) = static_cast<double>(sign[x] * sign[y]) * rho(x, y);
  return out;
}

/// Reorders modes to `order` and traces out all but the first n_keep of them.
inline MatrixXc reduce_ordered(const MatrixXc& rho, int n_modes, std::span<const int> order, int n_keep) {
  const MatrixXc r = permute_modes(rho, n_modes, order);
  const int dk = dim_of(n_keep);
  const int dr = dim_of(n_modes - n_keep);
  MatrixXc out = MatrixXc::Zero(dk, dk);
  for (int rest = 0; rest < dr; ++rest) out += r.block(rest * dk, rest * dk, dk, dk);
  return out;
}

/// Completes `first` with the remaining modes in increasing order.
inline std::vector<int> order_with_rest(int n_modes, const std::vector<int>& first) {
  std::vector<int> order = first;
  for (int m = 0; m < n_modes; ++m)
    if (std::find(first.begin(), first.end(), m) == first.end()) order.push_back(m);
  return order;
}

/// Fermionic partial trace keeping `keep`; kept mode keep[k] becomes mode k.
inline FockDensity partial_trace(const FockDensity& rho, const ModeSubset& keep) {
  detail::require(keep.size() > 0, "partial_trace: empty keep set");
  for (int m : keep.indices())
    detail::require(m < rho.n_modes(), "partial_trace: kept mode not present in rho");
  const auto order = order_with_rest(rho.n_modes(), keep.indices());
  const int nk = static_cast<int>(keep.size());
  return FockDensity(nk, reduce_ordered(rho.matrix(), rho.n_modes(), order, nk));
}

/// Matrix of c+_mode on n_modes modes.
inline MatrixXc creation(int n_modes, int mode) {
  const int d = dim_of(n_modes);
  MatrixXc c = MatrixXc::Zero(d, d);
  for (int x = 0; x < d; ++x) {
    if ((x >> mode) & 1) continue;
    const int below = std::popcount(static_cast<unsigned>(x) & ((1u << mode) - 1u));
    c(x | (1 << mode), x) = (below & 1) ? -1.0 : 1.0;
  }
  return c;
}

inline MatrixXc annihilation(int n_modes, int mode) { return creation(n_modes, mode).adjoint(); }

/// Six real parameters of the two-mode generator
///   H = sum_ij h_ij c+_i c_j + 1/2 sum_ij (Delta_ij c+_i c+_j + h.c.)
/// with h = [[h11, h12], [conj(h12), h22]] and Delta_12 = -Delta_21 = d12.
struct MeasurementParams {
  double h11 = 0.0;
  double h22 = 0.0;
  cplx h12{};
  cplx d12{};

  static constexpr int kDof = 6;

  [[nodiscard]] std::array<double, kDof> to_array() const {
    return {h11, h22, h12.real(), h12.imag(), d12.real(), d12.imag()};
  }
  static MeasurementParams from_array(std::span<const double> a) {
    detail::require(a.size() == kDof, "MeasurementParams: need 6 values");
    return {a[0], a[1], {a[2], a[3]}, {a[4], a[5]}};
  }

  [[nodiscard]] MeasurementParams operator-() const { return {-h11, -h22, -h12, -d12}; }
};

/// Second-quantized generator on `n_modes` modes, acting on modes (m1, m2).
inline MatrixXc thouless_generator(const MeasurementParams& mp, int n_modes = 2, int m1 = 0, int m2 = 1) {
  const MatrixXc c1d = creation(n_modes, m1), c2d = creation(n_modes, m2);
  const MatrixXc c1 = c1d.adjoint(), c2 = c2d.adjoint();
  MatrixXc h = mp.h11 * c1d * c1 + mp.h22 * c2d * c2 + mp.h12 * c1d * c2 + std::conj(mp.h12) * c2d * c1;
  const MatrixXc pair = mp.d12 * c1d * c2d;
  h += pair + MatrixXc(pair.adjoint());
  return h;
}

/// exp(i A) for Hermitian A.
inline MatrixXc expi_hermitian(const MatrixXc& a) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(a);
  if (es.info() != Eigen::Success) throw EigenSolverFailure("expi_hermitian: eigensolver failed");
  const VectorXc phases = (cplx(0.0, 1.0) * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// R = exp(i H) on the 4-dimensional Fock space of two modes,
/// basis {|00>, |10>, |01>, |11>}.
inline MatrixXc thouless_unitary(const MeasurementParams& mp) { return expi_hermitian(thouless_generator(mp)); }

/// Single-particle Bogoliubov blocks (U, V) of exp(i [[h, Delta], [-Delta*, -h*]]),
/// with R c+_i R+ = sum_j U_ji c+_j + V_ji c_j.
inline std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> bogoliubov_blocks(const MeasurementParams& mp) {
  Eigen::Matrix2cd h;
  h << mp.h11, mp.h12, std::conj(mp.h12), mp.h22;
  Eigen::Matrix2cd delta;
  delta << 0.0, mp.d12, -mp.d12, 0.0;
  MatrixXc big(4, 4);
  big.topLeftCorner(2, 2) = h;
  big.topRightCorner(2, 2) = delta;
  big.bottomLeftCorner(2, 2) = -delta.conjugate();
  big.bottomRightCorner(2, 2) = -h.conjugate();
  const MatrixXc w = expi_hermitian(big);
  return {w.topLeftCorner(2, 2), w.bottomLeftCorner(2, 2)};
}

/// Diagonal projectors onto every occupation pattern, in basis-index order.
inline std::vector<MatrixXc> occupation_projectors(int n_modes) {
  detail::require(n_modes >= 1 && n_modes <= kMaxModes, "occupation_projectors: 1..6 modes supported");
  const int d = dim_of(n_modes);
  std::vector<MatrixXc> out;
  out.reserve(d);
  for (int k = 0; k < d; ++k) {
    MatrixXc p = MatrixXc::Zero(d, d);
    p(k, k) = 1.0;
    out.push_back(std::move(p));
  }
  return out;
}

constexpr double kEigenClip = 1e-12;

/// -sum lambda ln lambda of a Hermitian PSD matrix (natural log).
inline double entropy_of(const MatrixXc& rho) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam < -1e-8) throw InvalidArgument("von_neumann_entropy: eigenvalue " + std::to_string(lam) + " < -1e-8");
    if (lam > kEigenClip) s -= lam * std::log(lam);
  }
  return std::max(s, 0.0);
}

inline double von_neumann_entropy(const FockDensity& rho) { return entropy_of(rho.matrix()); }

}  // namespace lipkin::fock
