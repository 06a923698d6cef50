#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "lipkin/common.hpp"
#include "lipkin/fock.hpp"
#include "lipkin/mean_field.hpp"
#include "lipkin/model.hpp"

namespace lipkin {

/// Four-orbital subsystem {n_i, n_j}: two columns, each holding the orbital of
/// the lower level i and of the upper level j. The third level is traced out.
enum class Subsystem { n0n1, n0n2, n1n2 };

inline constexpr std::array<Subsystem, 3> kAllSubsystems{Subsystem::n0n1, Subsystem::n0n2, Subsystem::n1n2};

inline std::string_view to_string(Subsystem s) {
  switch (s) {
    case Subsystem::n0n1: return "n0n1";
    case Subsystem::n0n2: return "n0n2";
    case Subsystem::n1n2: return "n1n2";
  }
  return "?";
}

inline Subsystem subsystem_from_string(std::string_view s) {
  for (Subsystem x : kAllSubsystems)
    if (to_string(x) == s) return x;
  throw InvalidArgument("unknown subsystem '" + std::string(s) + "' (expected n0n1, n0n2 or n1n2)");
}

/// Levels playing the roles (-, 0, 1) in a column: the traced level, the
/// lower kept level and the upper kept level.
inline std::array<int, 3> column_levels(Subsystem s) {
  switch (s) {
    case Subsystem::n0n1: return {2, 0, 1};
    case Subsystem::n0n2: return {1, 0, 2};
    case Subsystem::n1n2: return {0, 1, 2};
  }
  return {0, 0, 0};
}

/// Single-column state label.
enum Local : int { kMinus = 0, kZero = 1, kOne = 2 };

/// 9x9 density over |s1, s2>, s in {-, 0, 1}, index 3 s1 + s2.
class NineStateDensity {
 public:
  using Matrix = Eigen::Matrix<cplx, 9, 9>;

  NineStateDensity() : m_(Matrix::Zero()) {}
  explicit NineStateDensity(const Matrix& m) : m_(m) {}

  static constexpr int index(int s1, int s2) { return 3 * s1 + s2; }

  [[nodiscard]] const Matrix& matrix() const { return m_; }
  Matrix& matrix() { return m_; }

  cplx& operator()(int a1, int a2, int b1, int b2) { return m_(index(a1, a2), index(b1, b2)); }
  [[nodiscard]] cplx operator()(int a1, int a2, int b1, int b2) const { return m_(index(a1, a2), index(b1, b2)); }

  [[nodiscard]] double trace() const { return m_.trace().real(); }
  [[nodiscard]] double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

 private:
  Matrix m_;
};

namespace detail {

/// Level occupations (n0, n1, n2) carried by a column label.
inline std::array<int, 3> column_counts(Subsystem sub, int label) {
  std::array<int, 3> c{0, 0, 0};
  c[static_cast<std::size_t>(column_levels(sub)[static_cast<std::size_t>(label)])] = 1;
  return c;
}

}  // namespace detail

/// Four-orbital RDM of a symmetric |pq> state. Columns 1 and 2 are cut out of
/// the fully symmetric expansion; the other N-2 columns are summed over.
/// Coherences survive only between labels with the same '-' pattern.
inline NineStateDensity rdm_from_pq(const PQState& state, Subsystem sub) {
  const int n = state.n();
  detail::require(n >= 2, "rdm_from_pq: N must be >= 2");
  NineStateDensity rho;

  auto amplitude_over_norm = [&](const std::array<int, 3>& cnt) -> cplx {
    // C_pq / sqrt(multinomial) is the amplitude of each occupation configuration.
    const int p = cnt[1], q = cnt[2];
    if (!PQState::in_range(n, p, q) || cnt[0] < 0) return {};
    return state(p, q) / std::sqrt(multinomial(n, p, q));
  };

  for (int a1 = 0; a1 < 3; ++a1)
    for (int a2 = 0; a2 < 3; ++a2)
      for (int b1 = 0; b1 < 3; ++b1)
        for (int b2 = 0; b2 < 3; ++b2) {
          if ((a1 == kMinus) != (b1 == kMinus) || (a2 == kMinus) != (b2 == kMinus)) continue;
          const auto ca1 = detail::column_counts(sub, a1), ca2 = detail::column_counts(sub, a2);
          const auto cb1 = detail::column_counts(sub, b1), cb2 = detail::column_counts(sub, b2);
          cplx acc{};
          for (int m1 = 0; m1 <= n - 2; ++m1)
            for (int m2 = 0; m1 + m2 <= n - 2; ++m2) {
              const int m0 = n - 2 - m1 - m2;
              const std::array<int, 3> ka{m0 + ca1[0] + ca2[0], m1 + ca1[1] + ca2[1], m2 + ca1[2] + ca2[2]};
              const std::array<int, 3> kb{m0 + cb1[0] + cb2[0], m1 + cb1[1] + cb2[1], m2 + cb1[2] + cb2[2]};
              const cplx x = amplitude_over_norm(ka);
              const cplx y = amplitude_over_norm(kb);
              if (x == cplx{} || y == cplx{}) continue;
              acc += multinomial(n - 2, m1, m2) * x * std::conj(y);
            }
          rho(a1, a2, b1, b2) = acc;
        }
  return rho;
}

/// Closed form for states with even parity in levels 1 and 2: diagonal
/// combinatoric weights plus the pair-hop |0,0><1,1| and exchange |0,1><1,0|
/// coherences. Agrees with rdm_from_pq on parity-symmetric states only.
inline NineStateDensity rdm_parity_symmetric(const PQState& state, Subsystem sub) {
  const int n = state.n();
  detail::require(n >= 2, "rdm_parity_symmetric: N must be >= 2");
  NineStateDensity rho;
  const double pref = 1.0 / (static_cast<double>(n) * (n - 1));
  for (int p = 0; p <= n; ++p)
    for (int q = 0; p + q <= n; ++q) {
      const double w = std::norm(state(p, q));
      const double n0 = n - p - q;
      // occupations of the traced (-), lower (0) and upper (1) levels
      double nm = 0, nl = 0, nu = 0;
      cplx pair{};
      switch (sub) {
        case Subsystem::n0n1:
          nm = q, nl = n0, nu = p;
          pair = state(p, q) * std::conj(state(p + 2, q)) * std::sqrt(n0 * (n0 - 1) * (p + 1.0) * (p + 2.0));
          break;
        case Subsystem::n0n2:
          nm = p, nl = n0, nu = q;
          pair = state(p, q) * std::conj(state(p, q + 2)) * std::sqrt(n0 * (n0 - 1) * (q + 1.0) * (q + 2.0));
          break;
        case Subsystem::n1n2:
          nm = n0, nl = p, nu = q;
          pair = state(p + 2, q) * std::conj(state(p, q + 2)) * std::sqrt((p + 1.0) * (p + 2.0) * (q + 1.0) * (q + 2.0));
          break;
      }
      rho(kMinus, kMinus, kMinus, kMinus) += pref * w * nm * (nm - 1);
      rho(kMinus, kZero, kMinus, kZero) += pref * w * nm * nl;
      rho(kZero, kMinus, kZero, kMinus) += pref * w * nm * nl;
      rho(kMinus, kOne, kMinus, kOne) += pref * w * nm * nu;
      rho(kOne, kMinus, kOne, kMinus) += pref * w * nm * nu;
      rho(kZero, kZero, kZero, kZero) += pref * w * nl * (nl - 1);
      rho(kZero, kOne, kZero, kOne) += pref * w * nl * nu;
      rho(kOne, kZero, kOne, kZero) += pref * w * nl * nu;
      rho(kOne, kOne, kOne, kOne) += pref * w * nu * (nu - 1);
      rho(kZero, kZero, kOne, kOne) += pref * pair;
      rho(kZero, kOne, kOne, kZero) += pref * w * nl * nu;
    }
  rho(kOne, kOne, kZero, kZero) = std::conj(rho(kZero, kZero, kOne, kOne));
  rho(kOne, kZero, kZero, kOne) = std::conj(rho(kZero, kOne, kOne, kZero));
  return rho;
}

/// RDM of the HF determinant: a product over the two columns of
/// w_-^2 |-><-| + (w_0 |0> + w_1 |1>)(w_0 <0| + w_1 <1|),
/// where w are the HF orbital components on the traced, lower and upper level.
inline NineStateDensity rdm_from_hf(const HfOrbital& orb, Subsystem sub) {
  const std::array<double, 3> u{orb.u00, orb.u01, orb.u02};
  const auto lv = column_levels(sub);
  const double wm = u[static_cast<std::size_t>(lv[0])];
  const double w0 = u[static_cast<std::size_t>(lv[1])];
  const double w1 = u[static_cast<std::size_t>(lv[2])];
  Eigen::Matrix3d col = Eigen::Matrix3d::Zero();
  col(kMinus, kMinus) = wm * wm;
  col(kZero, kZero) = w0 * w0;
  col(kOne, kOne) = w1 * w1;
  col(kZero, kOne) = col(kOne, kZero) = w0 * w1;
  NineStateDensity rho;
  for (int a1 = 0; a1 < 3; ++a1)
    for (int a2 = 0; a2 < 3; ++a2)
      for (int b1 = 0; b1 < 3; ++b1)
        for (int b2 = 0; b2 < 3; ++b2) rho(a1, a2, b1, b2) = col(a1, b1) * col(a2, b2);
  return rho;
}

/// Fock-space index of a column label: - -> (0,0), 0 -> (1,0), 1 -> (0,1)
/// on modes (2c, 2c+1).
inline int fock_index_of(int s1, int s2) {
  auto bits = [](int s) { return s == kMinus ? 0 : (s == kZero ? 1 : 2); };
  return bits(s1) | (bits(s2) << 2);
}

/// Embeds into the 16-dimensional Fock space of modes 0..3 (modes 0, 2 on the
/// lower level; 1, 3 on the upper level).
inline fock::FockDensity embed_to_fock(const NineStateDensity& rho) {
  MatrixXc m = MatrixXc::Zero(16, 16);
  for (int a1 = 0; a1 < 3; ++a1)
    for (int a2 = 0; a2 < 3; ++a2)
      for (int b1 = 0; b1 < 3; ++b1)
        for (int b2 = 0; b2 < 3; ++b2) m(fock_index_of(a1, a2), fock_index_of(b1, b2)) = rho(a1, a2, b1, b2);
  return fock::FockDensity(4, std::move(m));
}

}  // namespace lipkin
