#pragma once

#include <cmath>
#include <string>

#include "lipkin/common.hpp"
#include "lipkin/model.hpp"

namespace lipkin {

/// Occupied HF orbital a+_{0,i} = U00 c+_{0,i} + U01 c+_{1,i} + U02 c+_{2,i}.
/// Components are the nonnegative square roots of the analytic solution.
struct HfOrbital {
  double u00 = 1.0;
  double u01 = 0.0;
  double u02 = 0.0;
};

/// Analytic HF orbital. Parity of level 1 breaks at chi = 1, of level 2 at
/// chi = 3; a boundary value takes the higher-chi branch.
inline HfOrbital hf_orbital(double chi) {
  detail::require(chi >= 0.0 && std::isfinite(chi), "hf_orbital: chi must be >= 0");
  if (chi < 1.0) return {1.0, 0.0, 0.0};
  if (chi < 3.0) return {std::sqrt(0.5 * (1.0 + 1.0 / chi)), std::sqrt(0.5 * (1.0 - 1.0 / chi)), 0.0};
  return {std::sqrt((chi + 3.0) / (3.0 * chi)), std::sqrt(1.0 / 3.0), std::sqrt((chi - 3.0) / (3.0 * chi))};
}

/// Coefficient of the unnormalized symmetric sum |n1 n2> in the HF
/// determinant, written branch by branch as a function of chi.
inline double hf_occupation_coefficient(int n, double chi, int n1, int n2) {
  detail::require(chi >= 0.0, "hf_occupation_coefficient: chi must be >= 0");
  if (n1 < 0 || n2 < 0 || n1 + n2 > n) return 0.0;
  if (chi < 1.0) return (n1 == 0 && n2 == 0) ? 1.0 : 0.0;
  if (chi < 3.0) {
    if (n2 != 0) return 0.0;
    return std::pow(1.0 / std::sqrt(2.0), n) * std::pow(1.0 + 1.0 / chi, 0.5 * (n - n1)) *
           std::pow(1.0 - 1.0 / chi, 0.5 * n1);
  }
  return std::pow(1.0 / std::sqrt(3.0), n1) * std::pow((chi + 3.0) / (3.0 * chi), 0.5 * (n - n1 - n2)) *
         std::pow((chi - 3.0) / (3.0 * chi), 0.5 * n2);
}

/// HF determinant expanded in the orthonormal |pq> basis:
/// C_pq = C^(HF)_{pq} sqrt(N! / ((N-p-q)! p! q!)).
inline PQState hf_amplitudes(const ModelParams& params) {
  params.validate();
  const int n = params.n;
  const double chi = params.chi();
  PQState s(n);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; p + q <= n; ++q) s.at(p, q) = hf_occupation_coefficient(n, chi, p, q) * std::sqrt(multinomial(n, p, q));
  s.normalize();
  return s;
}

/// Projection onto even parity of levels 1 and 2, renormalized.
inline PQState phf_project(const PQState& state) {
  const int n = state.n();
  PQState out(n);
  for (int p = 0; p <= n; p += 2)
    for (int q = 0; p + q <= n; q += 2) out.at(p, q) = state(p, q);
  const double nrm = out.norm();
  if (!(nrm >= 1e-14))
    throw NullProjection("phf_project: state has no even-even component (norm " + std::to_string(nrm) + ")");
  out.normalize();
  return out;
}

/// <psi|H|psi> for a normalized state.
inline double energy_expectation(const PQState& state, const ModelParams& params) {
  detail::require(state.n() == params.n, "energy_expectation: state and params disagree on N");
  const Eigen::MatrixXd h = hamiltonian_matrix(params);
  const VectorXc& c = state.amplitudes();
  const cplx e = c.dot(h.cast<cplx>() * c);
  const double scale = std::max(1.0, std::abs(e.real()));
  if (std::abs(e.imag()) > 1e-12 * scale) throw Error("energy_expectation: non-real expectation value");
  return e.real();
}

}  // namespace lipkin
