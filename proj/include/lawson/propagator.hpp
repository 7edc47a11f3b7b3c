#pragma once

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <memory>
#include <utility>

namespace lawson {

enum class Backend { Sine, Spectral, Dense };

const char* to_string(Backend b);

/// Evaluates e^{tau M} v and phi_j(tau M) v for a fixed operator M.
///
/// Work happens in a transformed coordinate system: `encode` maps a grid
/// vector to coordinates in which every phi_j(tau M) acts cheaply, sums of
/// such actions are accumulated there, and `decode` maps back. For the
/// spectral backends the coordinates are eigen-coordinates and phi_j acts
/// diagonally; for the dense backend they are the identity and phi_j(tau M)
/// is an explicit matrix.
///
/// Immutable after construction. Per-run caches live in PhiCache.
class LinearPropagator {
 public:
  /// Closed-form eigensystem of tridiag(1,-2,1)/h^2 of order n; transforms
  /// are fast sine transforms.
  static LinearPropagator sine(Eigen::Index n, double h);
  /// Symmetric M, eigendecomposed by a self-adjoint eigensolver.
  static LinearPropagator symmetric(const Eigen::MatrixXd& M);
  /// M with diag(d) M diag(d)^{-1} symmetric.
  static LinearPropagator symmetrizable(const Eigen::MatrixXd& M, const Eigen::VectorXd& d);
  /// General M; phi matrices are formed explicitly per (tau, j).
  static LinearPropagator dense(const Eigen::MatrixXd& M);

  Eigen::Index size() const { return n_; }
  Backend backend() const { return backend_; }
  /// Operator matrix. For the sine backend it is formed on demand.
  Eigen::MatrixXd matrix() const;
  /// Eigenvalues (spectral and sine backends only).
  const Eigen::VectorXd& eigenvalues() const;

  Eigen::VectorXd encode(const Eigen::VectorXd& v) const;
  Eigen::VectorXd decode(const Eigen::VectorXd& coeffs) const;

  /// phi_j(tau M) v (j = 0 gives e^{tau M} v). Uncached convenience path.
  Eigen::VectorXd apply(double tau, int j, const Eigen::VectorXd& v) const;

  /// V fn(Lambda) V^{-1} as a dense matrix. Dense backend diagonalizes M
  /// with a general eigensolver and keeps the real part.
  Eigen::MatrixXd matrix_function(const std::function<double(double)>& fn) const;

  /// ||V Lambda V^{-1} - M||_inf / ||M||_inf.
  double reconstruction_residual() const;

 private:
  struct SineTransform;

  LinearPropagator() = default;
  Eigen::VectorXd sine_transform(const Eigen::VectorXd& v) const;

  Backend backend_ = Backend::Dense;
  Eigen::Index n_ = 0;
  Eigen::MatrixXd m_;            // dense/spectral backends
  double h_ = 0.0;               // sine backend
  Eigen::VectorXd lambda_;       // spectral/sine
  Eigen::MatrixXd q_;            // orthogonal eigenvectors of the symmetrized operator
  Eigen::VectorXd d_;            // symmetrizing diagonal, M = D^{-1} Q Lambda Q^T D
  std::shared_ptr<const SineTransform> dst_;
};

/// Per-run cache of phi data keyed by (tau, j). Owned by one integration
/// loop; not shared across threads.
class PhiCache {
 public:
  explicit PhiCache(const LinearPropagator& prop) : prop_(&prop) {}

  const LinearPropagator& propagator() const { return *prop_; }

  Eigen::VectorXd encode(const Eigen::VectorXd& v) const { return prop_->encode(v); }
  Eigen::VectorXd decode(const Eigen::VectorXd& c) const { return prop_->decode(c); }

  /// acc += weight * phi_j(tau M) applied to encoded coefficients.
  void accumulate(Eigen::VectorXd& acc, double tau, int j, double weight, const Eigen::VectorXd& coeffs);

  /// phi_j(tau M) v through the cache.
  Eigen::VectorXd apply(double tau, int j, const Eigen::VectorXd& v);

  std::size_t entries() const { return diag_.size() + dense_.size(); }

 private:
  using Key = std::pair<double, int>;
  const Eigen::VectorXd& diagonal(double tau, int j);
  const Eigen::MatrixXd& dense_matrix(double tau, int j);

  const LinearPropagator* prop_;
  std::map<Key, Eigen::VectorXd> diag_;
  std::map<Key, Eigen::MatrixXd> dense_;
};

}  // namespace lawson
