#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lipkin {

using cplx = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The even-even parity projection of a state vanished.
class NullProjection : public Error {
 public:
  using Error::Error;
};

/// Every norm-kernel eigenvalue fell below the natural-basis cutoff.
class EmptyNaturalBasis : public Error {
 public:
  using Error::Error;
};

class EigenSolverFailure : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace detail

/// Binomial coefficient as a double. Exact while the result fits in 53 bits.
inline double binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Trinomial N! / (k1! k2! (N-k1-k2)!).
inline double multinomial(int n, int k1, int k2) {
  if (k1 < 0 || k2 < 0 || k1 + k2 > n) return 0.0;
  return binomial(n, k1) * binomial(n - k1, k2);
}

}  // namespace lipkin
