#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace lawson {

/// Largest phi index supported by the scalar kernel.
inline constexpr int kMaxScalarPhiIndex = 5;
/// Largest phi index supported by the matrix kernels.
inline constexpr int kMaxPhiIndex = 4;

namespace detail {

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace detail

/// phi_j(z) = int_0^1 e^{(1-theta) z} theta^{j-1}/(j-1)! dtheta, phi_0(z) = e^z.
///
/// Small arguments (|z| < 2) use the Taylor series sum_m z^m/(m+j)!, which
/// avoids the cancellation of the recurrence phi_{j+1} = (phi_j - 1/j!)/z.
/// Larger arguments use that recurrence starting from exp(z).
template <typename Scalar>
Scalar phi(int j, Scalar z) {
  if (j < 0 || j > kMaxScalarPhiIndex) throw std::out_of_range("phi: index must lie in [0, 5]");
  using std::abs;
  using std::exp;
  if (abs(z) < 2.0) {
    Scalar term = Scalar(1.0 / detail::factorial(j));
    Scalar sum = term;
    for (int m = 1; m < 60; ++m) {
      term *= z / double(m + j);
      sum += term;
      if (abs(term) <= 1e-18 * abs(sum)) break;
    }
    return sum;
  }
  Scalar value = exp(z);
  for (int i = 0; i < j; ++i) value = (value - Scalar(1.0 / detail::factorial(i))) / z;
  return value;
}

/// Matrix exponential by the degree-13 diagonal Pade approximant with
/// scaling and squaring.
Eigen::MatrixXd expm_pade(const Eigen::MatrixXd& Z);

/// phi_0(Z), ..., phi_{max_index}(Z) as dense matrices. phi_0 comes from
/// expm_pade; the others from a Taylor evaluation at Z/2^s followed by s
/// applications of the phi doubling relation.
std::vector<Eigen::MatrixXd> phi_matrices(const Eigen::MatrixXd& Z, int max_index);

/// phi_j(tau M) v through the exponential of the (N+j)x(N+j) augmented
/// matrix [[tau M, v e_1^T], [0, J]] (J the nilpotent shift). Test oracle;
/// uses Eigen's own matrix exponential so it shares no code with the
/// propagator backends.
Eigen::VectorXd phi_augmented(const Eigen::MatrixXd& M, double tau, int j, const Eigen::VectorXd& v);

/// Upper bound on the matrix size accepted by phi_augmented.
inline constexpr Eigen::Index kAugmentedOracleMaxSize = 200;

}  // namespace lawson
