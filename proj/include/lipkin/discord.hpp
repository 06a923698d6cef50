#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <Eigen/Dense>

#include "lipkin/common.hpp"
#include "lipkin/fock.hpp"

namespace lipkin {

using fock::FockDensity;
using fock::MeasurementParams;
using fock::ModeSubset;

/// Bipartition A|B of (a subset of) the modes of a density. B holds one or two modes.
class Partition {
 public:
  Partition(ModeSubset a, ModeSubset b) : a_(std::move(a)), b_(std::move(b)) {
    detail::require(a_.size() > 0 && b_.size() > 0, "Partition: both sides must be nonempty");
    detail::require(b_.size() <= 2, "Partition: B may hold at most two modes");
    detail::require((a_.mask() & b_.mask()) == 0, "Partition: A and B overlap");
  }

  [[nodiscard]] const ModeSubset& a() const { return a_; }
  [[nodiscard]] const ModeSubset& b() const { return b_; }
  [[nodiscard]] Partition swapped() const { return Partition(b_, a_); }

  /// "a1,a2:b1,b2"
  [[nodiscard]] std::string to_string() const {
    auto join = [](const ModeSubset& s) {
      std::string out;
      for (int m : s.indices()) out += (out.empty() ? "" : ",") + std::to_string(m);
      return out;
    };
    return join(a_) + ":" + join(b_);
  }

 private:
  ModeSubset a_;
  ModeSubset b_;
};

struct OptimizerConfig {
  std::uint64_t seed = 42;
  int restarts = 24;
  double tol = 1e-9;  ///< simplex size at which a restart counts as converged
  int max_evals = 2000;
  double initial_step = 0.5;
  bool freeze_pairing = false;  ///< hold Delta_12 at zero
};

struct CorrelationReport {
  double s_a = 0.0;
  double s_b = 0.0;
  double s_ab = 0.0;
  double mutual_info = 0.0;
  double classical_j = 0.0;
  double discord = 0.0;
  MeasurementParams best_params;
  int restarts_used = 0;
  int evaluations = 0;
  double stationarity_residual = 0.0;
  bool converged = true;
};

/// A density reduced to A u B and reordered so the B modes come first; B-local
/// operators then act as a plain tensor factor.
class MeasurementProblem {
 public:
  MeasurementProblem(const FockDensity& rho, const Partition& part) {
    for (int m : part.a().indices()) detail::require(m < rho.n_modes(), "Partition: A mode not present in rho");
    for (int m : part.b().indices()) detail::require(m < rho.n_modes(), "Partition: B mode not present in rho");
    nb_ = static_cast<int>(part.b().size());
    na_ = static_cast<int>(part.a().size());
    std::vector<int> first = part.b().indices();
    first.insert(first.end(), part.a().indices().begin(), part.a().indices().end());
    const auto order = fock::order_with_rest(rho.n_modes(), first);
    ab_ = fock::reduce_ordered(rho.matrix(), rho.n_modes(), order, nb_ + na_);
    const int db = 1 << nb_, da = 1 << na_;
    rho_a_ = MatrixXc::Zero(da, da);
    rho_b_ = MatrixXc::Zero(db, db);
    for (int a = 0; a < da; ++a)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b = 0; b < db; ++b) rho_a_(a, a2) += ab_(b + db * a, b + db * a2);
    for (int b = 0; b < db; ++b)
      for (int b2 = 0; b2 < db; ++b2)
        for (int a = 0; a < da; ++a) rho_b_(b, b2) += ab_(b + db * a, b2 + db * a);
  }

  [[nodiscard]] int nb() const { return nb_; }
  [[nodiscard]] int na() const { return na_; }
  [[nodiscard]] const MatrixXc& rho_ab() const { return ab_; }
  [[nodiscard]] const MatrixXc& rho_a() const { return rho_a_; }
  [[nodiscard]] const MatrixXc& rho_b() const { return rho_b_; }

  /// sum_k p_k S(rho_k) for projectors R+ P_k R on B (occupation projectors if |B| = 1).
  [[nodiscard]] double conditional_entropy(const MeasurementParams& mp) const {
    const int db = 1 << nb_, da = 1 << na_;
    MatrixXc rot = MatrixXc::Identity(db, db);
    if (nb_ == 2) rot = fock::thouless_unitary(mp);
    double s = 0.0;
    MatrixXc sigma(da, da);
    for (int k = 0; k < db; ++k) {
      // Pi_k = |r_k><r_k| with r_k = R+ |k>; the post-measurement state is
      // sigma_k (x) |r_k><r_k| with sigma_k = <r_k| rho |r_k>_B.
      const VectorXc r = rot.row(k).adjoint();
      for (int a = 0; a < da; ++a)
        for (int a2 = 0; a2 < da; ++a2) {
          const auto blk = ab_.block(db * a, db * a2, db, db);
          sigma(a, a2) = r.dot(blk * r);
        }
      const double pk = sigma.trace().real();
      if (pk < 1e-14) continue;
      s += pk * fock::entropy_of(sigma / pk);
    }
    return s;
  }

 private:
  int nb_ = 0;
  int na_ = 0;
  MatrixXc ab_;
  MatrixXc rho_a_;
  MatrixXc rho_b_;
};

/// I(A,B) = S(A) + S(B) - S(AB), in nats.
inline double mutual_information(const FockDensity& rho, const Partition& part) {
  const MeasurementProblem prob(rho, part);
  return fock::entropy_of(prob.rho_a()) + fock::entropy_of(prob.rho_b()) - fock::entropy_of(prob.rho_ab());
}

inline double conditional_entropy(const FockDensity& rho, const Partition& part, const MeasurementParams& mp) {
  return MeasurementProblem(rho, part).conditional_entropy(mp);
}

/// Norm of the central-difference gradient of the conditional entropy with
/// respect to the six measurement parameters.
inline double stationarity_residual(const MeasurementProblem& prob, const MeasurementParams& mp, double step = 1e-5) {
  if (prob.nb() < 2) return 0.0;
  const auto x = mp.to_array();
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto xp = x, xm = x;
    xp[i] += step;
    xm[i] -= step;
    const double d = (prob.conditional_entropy(MeasurementParams::from_array(xp)) -
                      prob.conditional_entropy(MeasurementParams::from_array(xm))) /
                     (2.0 * step);
    sq += d * d;
  }
  return std::sqrt(sq);
}

inline double stationarity_residual(const FockDensity& rho, const Partition& part, const MeasurementParams& mp) {
  return stationarity_residual(MeasurementProblem(rho, part), mp);
}

struct ClassicalCorrelation {
  double j = 0.0;
  double min_conditional_entropy = 0.0;
  MeasurementParams best_params;
  int restarts_used = 0;
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

struct NmContext {
  const MeasurementProblem* prob;
  bool freeze_pairing;
  int evals = 0;
};

inline MeasurementParams unpack(const gsl_vector* v, bool freeze_pairing) {
  std::array<double, 6> x{};
  for (std::size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
  if (freeze_pairing) x[4] = x[5] = 0.0;
  return MeasurementParams::from_array(x);
}

inline double nm_objective(const gsl_vector* v, void* params) {
  auto* ctx = static_cast<NmContext*>(params);
  ++ctx->evals;
  return ctx->prob->conditional_entropy(unpack(v, ctx->freeze_pairing));
}

struct NmRun {
  double fmin;
  MeasurementParams best;
  int evals;
  bool converged;
};

/// One Nelder-Mead descent (GSL nmsimplex2) from x0.
inline NmRun nelder_mead(const MeasurementProblem& prob, const std::vector<double>& x0, const OptimizerConfig& opt) {
  const auto dim = x0.size();
  NmContext ctx{&prob, opt.freeze_pairing};
  gsl_multimin_function fn{&nm_objective, dim, &ctx};

  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* step = gsl_vector_alloc(dim);
  for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x, i, x0[i]);
  gsl_vector_set_all(step, opt.initial_step);

  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  gsl_multimin_fminimizer_set(s, &fn, x, step);

  bool converged = false;
  while (ctx.evals < opt.max_evals) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_fminimizer_size(s) < opt.tol) {
      converged = true;
      break;
    }
  }
  NmRun run{gsl_multimin_fminimizer_minimum(s), unpack(gsl_multimin_fminimizer_x(s), opt.freeze_pairing), ctx.evals,
            converged};
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return run;
}

}  // namespace detail

/// J(A,B) = S(A) - min over parity-preserving B measurements of the
/// measurement-based conditional entropy. Multi-start Nelder-Mead over the
/// Thouless parameters; a single B mode admits only occupation projectors.
inline ClassicalCorrelation classical_correlation(const MeasurementProblem& prob, const OptimizerConfig& opt = {}) {
  ClassicalCorrelation out;
  const double sa = fock::entropy_of(prob.rho_a());
  if (prob.nb() == 1) {
    out.min_conditional_entropy = prob.conditional_entropy({});
    out.j = sa - out.min_conditional_entropy;
    out.evaluations = 1;
    return out;
  }

  // 0 <= J <= I, and with I at round-off level the objective is flat, which
  // Nelder-Mead cannot certify as converged.
  const double mi = sa + fock::entropy_of(prob.rho_b()) - fock::entropy_of(prob.rho_ab());
  if (mi < 1e-12) {
    out.min_conditional_entropy = sa - mi;
    out.j = mi;
    return out;
  }

  gsl_set_error_handler_off();
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
  const std::size_t dim = opt.freeze_pairing ? 4 : 6;

  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opt.restarts; ++r) {
    std::vector<double> x0(dim);
    for (double& v : x0) v = uni(rng);
    const detail::NmRun run = detail::nelder_mead(prob, x0, opt);
    out.evaluations += run.evals;
    ++out.restarts_used;
    // Strict improvement keeps the lowest restart index on ties.
    if (run.fmin < best) {
      best = run.fmin;
      out.best_params = run.best;
      out.converged = run.converged;
    }
  }
  out.min_conditional_entropy = best;
  out.j = sa - best;
  return out;
}

inline ClassicalCorrelation classical_correlation(const FockDensity& rho, const Partition& part,
                                                  const OptimizerConfig& opt = {}) {
  return classical_correlation(MeasurementProblem(rho, part), opt);
}

/// Mutual information, classical correlation and discord delta = I - J.
inline CorrelationReport quantum_discord(const FockDensity& rho, const Partition& part, const OptimizerConfig& opt = {}) {
  const MeasurementProblem prob(rho, part);
  CorrelationReport rep;
  rep.s_a = fock::entropy_of(prob.rho_a());
  rep.s_b = fock::entropy_of(prob.rho_b());
  rep.s_ab = fock::entropy_of(prob.rho_ab());
  rep.mutual_info = rep.s_a + rep.s_b - rep.s_ab;

  const ClassicalCorrelation cc = classical_correlation(prob, opt);
  rep.classical_j = cc.j;
  rep.discord = rep.mutual_info - rep.classical_j;
  rep.best_params = cc.best_params;
  rep.restarts_used = cc.restarts_used;
  rep.evaluations = cc.evaluations;
  rep.converged = cc.converged;
  rep.stationarity_residual = stationarity_residual(prob, cc.best_params);

  // A pure state has discord equal to its entanglement entropy; a mismatch
  // means the optimizer missed the optimum.
  const double purity = (prob.rho_ab() * prob.rho_ab()).trace().real();
  if (std::abs(purity - 1.0) < 1e-10 && std::abs(rep.discord - rep.s_a) > 1e-6) rep.converged = false;
  return rep;
}

}  // namespace lipkin
