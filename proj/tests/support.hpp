#pragma once

#include <random>

#include "lipkin/lipkin.hpp"

namespace lipkin::testing {

/// Random density on `n_modes` modes with no coherence between even and odd
/// total occupation. rank <= 0 means full rank.
inline fock::FockDensity random_parity_even_density(int n_modes, std::mt19937_64& rng, int rank = 0) {
  const int d = 1 << n_modes;
  std::normal_distribution<double> g;
  const int r = rank > 0 ? rank : d;
  MatrixXc m = MatrixXc::Zero(d, d);
  for (int k = 0; k < r; ++k) {
    VectorXc v(d);
    for (int i = 0; i < d; ++i) v[i] = cplx(g(rng), g(rng));
    // Each vector lives in one parity sector so the mixture respects the rule.
    const int sector = (rank == 1) ? 0 : k % 2;
    for (int i = 0; i < d; ++i)
      if (fock::parity_of(static_cast<unsigned>(i)) != sector) v[i] = 0.0;
    m += v * v.adjoint();
  }
  m /= m.trace().real();
  return fock::FockDensity(n_modes, m);
}

inline fock::MeasurementParams random_params(std::mt19937_64& rng, double scale = 3.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), {u(rng), u(rng)}, {u(rng), u(rng)}};
}

}  // namespace lipkin::testing
