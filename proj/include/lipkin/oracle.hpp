#pragma once

// Brute-force reference implementations for small N.
//
// States live in the 3^N configurations with one particle per column. The
// 3N modes are ordered level-major: (level 0, cols 0..N-1), (level 1, ...),
// (level 2, ...), and every operator carries Jordan-Wigner signs for that
// order. Nothing here goes through the |pq> algebra, the closed-form RDMs or
// the measurement optimizer, so it can be used to check all of them.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lipkin/common.hpp"
#include "lipkin/fock.hpp"
#include "lipkin/model.hpp"
#include "lipkin/rdm.hpp"

namespace lipkin::oracle {

constexpr int kMaxN = 8;            ///< occupation-basis expansions and traces
constexpr int kMaxHamiltonianN = 6;  ///< dense 3^N Hamiltonians

using Mask = std::uint32_t;

class OccupationBasis {
 public:
  explicit OccupationBasis(int n) : n_(n) {
    detail::require(n >= 1 && n <= kMaxN, "OccupationBasis: N must be in 1..8");
    int size = 1;
    for (int i = 0; i < n; ++i) size *= 3;
    levels_.reserve(static_cast<std::size_t>(size));
    for (int idx = 0; idx < size; ++idx) {
      std::vector<int> lv(static_cast<std::size_t>(n));
      int x = idx;
      Mask m = 0;
      for (int col = 0; col < n; ++col) {
        lv[static_cast<std::size_t>(col)] = x % 3;
        m |= Mask{1} << mode(x % 3, col);
        x /= 3;
      }
      index_of_[m] = idx;
      masks_.push_back(m);
      levels_.push_back(std::move(lv));
    }
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int size() const { return static_cast<int>(masks_.size()); }
  [[nodiscard]] int mode(int level, int col) const { return level * n_ + col; }
  [[nodiscard]] Mask mask(int i) const { return masks_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const std::vector<int>& levels(int i) const { return levels_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] int index(Mask m) const { return index_of_.at(m); }

 private:
  int n_;
  std::vector<Mask> masks_;
  std::vector<std::vector<int>> levels_;
  std::unordered_map<Mask, int> index_of_;
};

/// Result of a fermion operator acting on a basis monomial.
struct Term {
  Mask mask;
  double sign;
};

inline std::optional<Term> apply_create(Term t, int mode) {
  if ((t.mask >> mode) & 1u) return std::nullopt;
  const int below = std::popcount(t.mask & ((Mask{1} << mode) - 1u));
  return Term{t.mask | (Mask{1} << mode), (below & 1) ? -t.sign : t.sign};
}

inline std::optional<Term> apply_annihilate(Term t, int mode) {
  if (!((t.mask >> mode) & 1u)) return std::nullopt;
  const int below = std::popcount(t.mask & ((Mask{1} << mode) - 1u));
  return Term{t.mask & ~(Mask{1} << mode), (below & 1) ? -t.sign : t.sign};
}

/// c+_to c_from on a monomial.
inline std::optional<Term> apply_hop(Term t, int to, int from) {
  auto a = apply_annihilate(t, from);
  if (!a) return std::nullopt;
  return apply_create(*a, to);
}

/// Dense matrix of K_{ab} = sum_col c+_{a,col} c_{b,col}.
inline Eigen::MatrixXd k_operator(const OccupationBasis& basis, int a, int b) {
  const int d = basis.size();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int col = 0; col < basis.n(); ++col) {
      auto r = apply_hop(Term{basis.mask(i), 1.0}, basis.mode(a, col), basis.mode(b, col));
      if (r) k(basis.index(r->mask), i) += r->sign;
    }
  return k;
}

/// eps (K22 - K00) - V/2 (K10^2 + K20^2 + K21^2 + h.c.) on the 3^N configurations.
inline Eigen::MatrixXd oracle_hamiltonian(const ModelParams& params) {
  params.validate();
  detail::require(params.n <= kMaxHamiltonianN, "oracle_hamiltonian: N too large for the brute-force oracle");
  const OccupationBasis basis(params.n);
  const Eigen::MatrixXd k10 = k_operator(basis, 1, 0);
  const Eigen::MatrixXd k20 = k_operator(basis, 2, 0);
  const Eigen::MatrixXd k21 = k_operator(basis, 2, 1);
  Eigen::MatrixXd pairs = k10 * k10 + k20 * k20 + k21 * k21;
  pairs += pairs.transpose().eval();
  return params.epsilon * (k_operator(basis, 2, 2) - k_operator(basis, 0, 0)) - 0.5 * params.v * pairs;
}

struct OracleGroundState {
  double energy;
  VectorXc state;
};

inline OracleGroundState oracle_ground_state(const ModelParams& params) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle_hamiltonian(params));
  return {es.eigenvalues()[0], es.eigenvectors().col(0).cast<cplx>()};
}

/// prod_col (u0 c+_{0,col} + u1 c+_{1,col} + u2 c+_{2,col}) |vac>, columns
/// created left to right.
inline VectorXc slater_state(int n, const std::array<double, 3>& u) {
  const OccupationBasis basis(n);
  VectorXc psi = VectorXc::Zero(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    // Apply creators right to left: the last column acts first.
    Term t{0, 1.0};
    double amp = 1.0;
    for (int col = n - 1; col >= 0; --col) {
      const int lv = basis.levels(i)[static_cast<std::size_t>(col)];
      amp *= u[static_cast<std::size_t>(lv)];
      t = *apply_create(t, basis.mode(lv, col));
    }
    psi[basis.index(t.mask)] += amp * t.sign;
  }
  return psi;
}

inline VectorXc slater_state(int n, const HfOrbital& orb) { return slater_state(n, std::array<double, 3>{orb.u00, orb.u01, orb.u02}); }

/// N exp(tan phi1 (cos phi2 K10 + sin phi2 K20)) |0> from the power series of
/// the K operators; |0> has every column in level 0.
inline VectorXc generating_state(int n, double phi1, double phi2) {
  const OccupationBasis basis(n);
  const Eigen::MatrixXd gen =
      std::tan(phi1) * (std::cos(phi2) * k_operator(basis, 1, 0) + std::sin(phi2) * k_operator(basis, 2, 0));
  Term vac{0, 1.0};
  for (int col = n - 1; col >= 0; --col) vac = *apply_create(vac, basis.mode(0, col));
  VectorXc term = VectorXc::Zero(basis.size());
  term[basis.index(vac.mask)] = vac.sign;
  VectorXc psi = term;
  for (int k = 1; k <= n; ++k) {
    term = (gen.cast<cplx>() * term / static_cast<double>(k)).eval();
    psi += term;
  }
  return psi / psi.norm();
}

/// Expands a |pq> state: |n1 n2> is the equal-weight sum of the determinants
/// c+_{s_1,1} ... c+_{s_N,N} |vac> with p columns in level 1 and q in level 2.
inline VectorXc from_pq(const PQState& st) {
  const int n = st.n();
  const OccupationBasis basis(n);
  VectorXc psi = VectorXc::Zero(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    const auto& lv = basis.levels(i);
    const int p = static_cast<int>(std::count(lv.begin(), lv.end(), 1));
    const int q = static_cast<int>(std::count(lv.begin(), lv.end(), 2));
    Term t{0, 1.0};
    for (int col = n - 1; col >= 0; --col) t = *apply_create(t, basis.mode(lv[static_cast<std::size_t>(col)], col));
    psi[basis.index(t.mask)] += t.sign * st(p, q) / std::sqrt(multinomial(n, p, q));
  }
  return psi;
}

/// Fermionic partial trace of a pure state onto `kept` (global mode labels;
/// kept[k] becomes local mode k). Returns a 2^k x 2^k matrix.
inline MatrixXc reduced_density(const OccupationBasis& basis, const VectorXc& psi, const std::vector<int>& kept) {
  const int nk = static_cast<int>(kept.size());
  const int total = 3 * basis.n();
  std::vector<int> order = kept;
  for (int m = 0; m < total; ++m)
    if (std::find(kept.begin(), kept.end(), m) == kept.end()) order.push_back(m);

  Mask kept_mask = 0;
  for (int m : kept) kept_mask |= Mask{1} << m;

  // Group amplitudes by the configuration of the traced modes.
  std::unordered_map<Mask, std::vector<std::pair<int, cplx>>> groups;
  for (int i = 0; i < basis.size(); ++i) {
    if (psi[i] == cplx{}) continue;
    const Mask m = basis.mask(i);
    int local = 0;
    for (int k = 0; k < nk; ++k)
      if ((m >> kept[static_cast<std::size_t>(k)]) & 1u) local |= 1 << k;
    // Parity of the permutation that moves the kept creators to the front.
    int swaps = 0;
    for (std::size_t a = 0; a < order.size(); ++a) {
      if (!((m >> order[a]) & 1u)) continue;
      for (std::size_t b = a + 1; b < order.size(); ++b)
        if (((m >> order[b]) & 1u) && order[b] < order[a]) ++swaps;
    }
    const double sign = (swaps & 1) ? -1.0 : 1.0;
    groups[m & ~kept_mask].emplace_back(local, sign * psi[i]);
  }

  const int dk = 1 << nk;
  MatrixXc rho = MatrixXc::Zero(dk, dk);
  for (const auto& [rest, amps] : groups)
    for (const auto& [a, x] : amps)
      for (const auto& [b, y] : amps) rho(a, b) += x * std::conj(y);
  return rho;
}

/// Four-orbital RDM of columns (col1, col2) for a subsystem, mapped to the
/// nine-state labels. Throws if weight leaks outside the nine embedded states.
inline NineStateDensity oracle_rdm(int n, const VectorXc& psi, Subsystem sub, int col1 = 0, int col2 = 1) {
  const OccupationBasis basis(n);
  const auto lv = column_levels(sub);
  const std::vector<int> kept{basis.mode(lv[1], col1), basis.mode(lv[2], col1), basis.mode(lv[1], col2),
                              basis.mode(lv[2], col2)};
  const MatrixXc r16 = reduced_density(basis, psi, kept);
  NineStateDensity out;
  double inside = 0.0;
  for (int a1 = 0; a1 < 3; ++a1)
    for (int a2 = 0; a2 < 3; ++a2) {
      inside += r16(fock_index_of(a1, a2), fock_index_of(a1, a2)).real();
      for (int b1 = 0; b1 < 3; ++b1)
        for (int b2 = 0; b2 < 3; ++b2) out(a1, a2, b1, b2) = r16(fock_index_of(a1, a2), fock_index_of(b1, b2));
    }
  if (std::abs(inside - r16.trace().real()) > 1e-12) throw Error("oracle_rdm: weight outside the nine-state sector");
  return out;
}

/// Conditional entropy sum_k p_k S(Pi_k rho Pi_k / p_k) evaluated on the full
/// Fock space of rho: the generator is built from the B-mode operators in the
/// original mode order. Requires A u B to cover every mode of rho.
inline double oracle_conditional_entropy(const fock::FockDensity& rho, const std::vector<int>& b_modes,
                                         const fock::MeasurementParams& mp) {
  const int nm = rho.n_modes();
  const int d = rho.dim();
  MatrixXc rot = MatrixXc::Identity(d, d);
  if (b_modes.size() == 2) rot = fock::expi_hermitian(fock::thouless_generator(mp, nm, b_modes[0], b_modes[1]));
  const int nb = static_cast<int>(b_modes.size());
  double s = 0.0;
  for (int k = 0; k < (1 << nb); ++k) {
    Eigen::VectorXd diag(d);
    for (int x = 0; x < d; ++x) {
      bool match = true;
      for (int j = 0; j < nb; ++j)
        if (((x >> b_modes[static_cast<std::size_t>(j)]) & 1) != ((k >> j) & 1)) match = false;
      diag[x] = match ? 1.0 : 0.0;
    }
    const MatrixXc proj = rot.adjoint() * diag.cast<cplx>().asDiagonal() * rot;
    const MatrixXc post = proj * rho.matrix() * proj;
    const double pk = post.trace().real();
    if (pk < 1e-14) continue;
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(post / pk, Eigen::EigenvaluesOnly);
    double sk = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double lam = es.eigenvalues()[i];
      if (lam > 1e-12) sk -= lam * std::log(lam);
    }
    s += pk * sk;
  }
  return s;
}

struct SearchResult {
  double min_conditional_entropy;
  fock::MeasurementParams best;
};

/// Random search over the six measurement parameters followed by a compass
/// (coordinate) descent from the `polish` best draws.
inline SearchResult oracle_min_conditional_entropy(const fock::FockDensity& rho, const std::vector<int>& b_modes,
                                                   int samples, int polish = 16, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
  using P = std::array<double, 6>;
  std::vector<std::pair<double, P>> draws;
  draws.reserve(static_cast<std::size_t>(samples));
  auto eval = [&](const P& x) { return oracle_conditional_entropy(rho, b_modes, fock::MeasurementParams::from_array(x)); };
  for (int s = 0; s < samples; ++s) {
    P x;
    for (double& v : x) v = uni(rng);
    draws.emplace_back(eval(x), x);
  }
  const auto keep = static_cast<std::size_t>(std::min(polish, samples));
  std::partial_sort(draws.begin(), draws.begin() + static_cast<std::ptrdiff_t>(keep), draws.end(),
                    [](const auto& l, const auto& r) { return l.first < r.first; });

  SearchResult best{draws.front().first, fock::MeasurementParams::from_array(draws.front().second)};
  for (std::size_t i = 0; i < keep; ++i) {
    auto [fx, x] = draws[i];
    for (double step = 0.25; step > 1e-9; step *= 0.5) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t c = 0; c < x.size(); ++c)
          for (double dir : {1.0, -1.0}) {
            P y = x;
            y[c] += dir * step;
            const double fy = eval(y);
            if (fy < fx - 1e-15) {
              fx = fy;
              x = y;
              improved = true;
            }
          }
      }
    }
    if (fx < best.min_conditional_entropy) best = {fx, fock::MeasurementParams::from_array(x)};
  }
  return best;
}

/// Classical correlation J estimated by brute-force search. rho must live on
/// exactly the modes of A u B.
inline double oracle_discord_search(const fock::FockDensity& rho, const std::vector<int>& a_modes,
                                    const std::vector<int>& b_modes, int samples, int polish = 16,
                                    std::uint64_t seed = 7) {
  // S(rho_A) through the oracle's own trace: sum over B occupations in the
  // original order, with the sign of moving A creators to the front.
  std::vector<int> order = a_modes;
  order.insert(order.end(), b_modes.begin(), b_modes.end());
  const int na = static_cast<int>(a_modes.size());
  const int d = rho.dim();
  MatrixXc ra = MatrixXc::Zero(1 << na, 1 << na);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      int xa = 0, ya = 0, xb = 0, yb = 0;
      for (int k = 0; k < na; ++k) {
        xa |= ((x >> a_modes[static_cast<std::size_t>(k)]) & 1) << k;
        ya |= ((y >> a_modes[static_cast<std::size_t>(k)]) & 1) << k;
      }
      for (std::size_t k = 0; k < b_modes.size(); ++k) {
        xb |= ((x >> b_modes[k]) & 1) << k;
        yb |= ((y >> b_modes[k]) & 1) << k;
      }
      if (xb != yb) continue;
      const double sx = fock::reorder_sign(static_cast<unsigned>(x), order);
      const double sy = fock::reorder_sign(static_cast<unsigned>(y), order);
      ra(xa, ya) += sx * sy * rho.matrix()(x, y);
    }
  double sa = 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(ra, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] > 1e-12) sa -= es.eigenvalues()[i] * std::log(es.eigenvalues()[i]);
  if (b_modes.size() == 1) return sa - oracle_conditional_entropy(rho, b_modes, {});
  return sa - oracle_min_conditional_entropy(rho, b_modes, samples, polish, seed).min_conditional_entropy;
}

}  // namespace lipkin::oracle
