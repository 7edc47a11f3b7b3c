#include "lawson/propagator.hpp"

#include "lawson/phi.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lawson {

const char* to_string(Backend b) {
  switch (b) {
    case Backend::Sine: return "sine";
    case Backend::Spectral: return "spectral";
    case Backend::Dense: return "dense";
  }
  return "?";
}

struct LinearPropagator::SineTransform {
  Eigen::Index n = 0;
  double scale = 0.0;  // sqrt(2/(n+1)), makes the transform orthogonal and self-inverse
};

namespace {

void require_finite(const Eigen::MatrixXd& M, const char* what) {
  if (!M.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

void require_square(const Eigen::MatrixXd& M, const char* what) {
  if (M.rows() != M.cols() || M.rows() == 0) throw std::invalid_argument(std::string(what) + ": matrix must be square");
}

}  // namespace

LinearPropagator LinearPropagator::sine(Eigen::Index n, double h) {
  if (n < 1 || !(h > 0.0)) throw std::invalid_argument("LinearPropagator::sine: need n >= 1 and h > 0");
  LinearPropagator p;
  p.backend_ = Backend::Sine;
  p.n_ = n;
  p.h_ = h;
  p.lambda_.resize(n);
  const double denom = 2.0 * double(n + 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double s = std::sin(std::numbers::pi * double(j + 1) / denom);
    p.lambda_[j] = -4.0 / (h * h) * s * s;
  }
  auto dst = std::make_shared<SineTransform>();
  dst->n = n;
  dst->scale = std::sqrt(2.0 / double(n + 1));
  p.dst_ = std::move(dst);
  return p;
}

LinearPropagator LinearPropagator::symmetric(const Eigen::MatrixXd& M) {
  require_square(M, "LinearPropagator::symmetric");
  require_finite(M, "LinearPropagator::symmetric");
  return symmetrizable(M, Eigen::VectorXd::Ones(M.rows()));
}

LinearPropagator LinearPropagator::symmetrizable(const Eigen::MatrixXd& M, const Eigen::VectorXd& d) {
  require_square(M, "LinearPropagator::symmetrizable");
  require_finite(M, "LinearPropagator::symmetrizable");
  if (d.size() != M.rows() || (d.array() == 0.0).any()) {
    throw std::invalid_argument("LinearPropagator::symmetrizable: bad symmetrizer");
  }
  const Eigen::MatrixXd S = d.asDiagonal() * M * d.cwiseInverse().asDiagonal();
  const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, S.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("LinearPropagator::symmetrizable: D M D^{-1} is not symmetric");
  }
  const Eigen::MatrixXd Ssym = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ssym);
  if (es.info() != Eigen::Success) throw std::runtime_error("LinearPropagator: eigensolver failed");
  LinearPropagator p;
  p.backend_ = Backend::Spectral;
  p.n_ = M.rows();
  p.m_ = M;
  p.lambda_ = es.eigenvalues();
  p.q_ = es.eigenvectors();
  p.d_ = d;
  return p;
}

LinearPropagator LinearPropagator::dense(const Eigen::MatrixXd& M) {
  require_square(M, "LinearPropagator::dense");
  require_finite(M, "LinearPropagator::dense");
  LinearPropagator p;
  p.backend_ = Backend::Dense;
  p.n_ = M.rows();
  p.m_ = M;
  return p;
}

Eigen::MatrixXd LinearPropagator::matrix() const {
  if (backend_ != Backend::Sine) return m_;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_, n_);
  const double inv_h2 = 1.0 / (h_ * h_);
  for (Eigen::Index i = 0; i < n_; ++i) {
    M(i, i) = -2.0 * inv_h2;
    if (i > 0) M(i, i - 1) = inv_h2;
    if (i + 1 < n_) M(i, i + 1) = inv_h2;
  }
  return M;
}

const Eigen::VectorXd& LinearPropagator::eigenvalues() const {
  if (backend_ == Backend::Dense) throw std::logic_error("LinearPropagator: dense backend has no stored spectrum");
  return lambda_;
}

Eigen::VectorXd LinearPropagator::sine_transform(const Eigen::VectorXd& v) const {
  // DST-I through a real FFT of the odd extension of length 2(n+1).
  thread_local Eigen::FFT<double> fft;
  const Eigen::Index n = n_;
  const Eigen::Index len = 2 * (n + 1);
  std::vector<double> ext(static_cast<std::size_t>(len), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    ext[static_cast<std::size_t>(i + 1)] = v[i];
    ext[static_cast<std::size_t>(len - 1 - i)] = -v[i];
  }
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, ext);
  Eigen::VectorXd out(n);
  const double s = -0.5 * dst_->scale;
  for (Eigen::Index j = 0; j < n; ++j) out[j] = s * spectrum[static_cast<std::size_t>(j + 1)].imag();
  return out;
}

Eigen::VectorXd LinearPropagator::encode(const Eigen::VectorXd& v) const {
  if (v.size() != n_) throw std::invalid_argument("LinearPropagator::encode: dimension mismatch");
  switch (backend_) {
    case Backend::Sine: return sine_transform(v);
    case Backend::Spectral: return q_.transpose() * (d_.cwiseProduct(v));
    case Backend::Dense: return v;
  }
  return v;
}

Eigen::VectorXd LinearPropagator::decode(const Eigen::VectorXd& c) const {
  if (c.size() != n_) throw std::invalid_argument("LinearPropagator::decode: dimension mismatch");
  switch (backend_) {
    case Backend::Sine: return sine_transform(c);
    case Backend::Spectral: return (q_ * c).cwiseQuotient(d_);
    case Backend::Dense: return c;
  }
  return c;
}

Eigen::VectorXd LinearPropagator::apply(double tau, int j, const Eigen::VectorXd& v) const {
  if (v.size() != n_) throw std::invalid_argument("LinearPropagator::apply: dimension mismatch");
  if (!v.allFinite()) throw std::invalid_argument("LinearPropagator::apply: non-finite input");
  if (!(tau >= 0.0)) throw std::invalid_argument("LinearPropagator::apply: tau must be >= 0");
  if (j < 0 || j > kMaxPhiIndex) throw std::out_of_range("LinearPropagator::apply: index must lie in [0, 4]");
  if (backend_ == Backend::Dense) {
    return phi_matrices(tau * m_, j).back() * v;
  }
  Eigen::VectorXd c = encode(v);
  for (Eigen::Index i = 0; i < n_; ++i) c[i] *= phi(j, tau * lambda_[i]);
  return decode(c);
}

Eigen::MatrixXd LinearPropagator::matrix_function(const std::function<double(double)>& fn) const {
  if (backend_ == Backend::Dense) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m_);
    if (es.info() != Eigen::Success) throw std::runtime_error("matrix_function: eigensolver failed");
    const Eigen::MatrixXcd V = es.eigenvectors();
    Eigen::VectorXcd f(n_);
    for (Eigen::Index i = 0; i < n_; ++i) f[i] = fn(es.eigenvalues()[i].real());
    const Eigen::MatrixXcd F = V * f.asDiagonal() * V.inverse();
    return F.real();
  }
  Eigen::VectorXd f(n_);
  for (Eigen::Index i = 0; i < n_; ++i) f[i] = fn(lambda_[i]);
  if (backend_ == Backend::Sine) {
    // Q is symmetric and orthogonal: columns of Q f(L) Q are transforms.
    Eigen::MatrixXd out(n_, n_);
    for (Eigen::Index col = 0; col < n_; ++col) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n_);
      e[col] = 1.0;
      out.col(col) = decode(f.cwiseProduct(encode(e)));
    }
    return out;
  }
  return d_.cwiseInverse().asDiagonal() * (q_ * f.asDiagonal() * q_.transpose()) * d_.asDiagonal();
}

double LinearPropagator::reconstruction_residual() const {
  if (backend_ == Backend::Dense) return 0.0;
  const Eigen::MatrixXd M = matrix();
  const Eigen::MatrixXd R = matrix_function([](double x) { return x; });
  const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
  return (R - M).cwiseAbs().rowwise().sum().maxCoeff() / norm;
}

void PhiCache::accumulate(Eigen::VectorXd& acc, double tau, int j, double weight, const Eigen::VectorXd& coeffs) {
  if (weight == 0.0) return;
  if (prop_->backend() == Backend::Dense) {
    if (tau == 0.0) {
      acc += (weight / detail::factorial(j)) * coeffs;
      return;
    }
    acc.noalias() += weight * (dense_matrix(tau, j) * coeffs);
    return;
  }
  acc += weight * diagonal(tau, j).cwiseProduct(coeffs);
}

Eigen::VectorXd PhiCache::apply(double tau, int j, const Eigen::VectorXd& v) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(v.size());
  accumulate(acc, tau, j, 1.0, encode(v));
  return decode(acc);
}

const Eigen::VectorXd& PhiCache::diagonal(double tau, int j) {
  const Key key{tau, j};
  auto it = diag_.find(key);
  if (it != diag_.end()) return it->second;
  const Eigen::VectorXd& lambda = prop_->eigenvalues();
  Eigen::VectorXd d(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) d[i] = phi(j, tau * lambda[i]);
  return diag_.emplace(key, std::move(d)).first->second;
}

const Eigen::MatrixXd& PhiCache::dense_matrix(double tau, int j) {
  const Key key{tau, j};
  auto it = dense_.find(key);
  if (it != dense_.end()) return it->second;
  // One evaluation yields every index up to j; keep them all.
  auto all = phi_matrices(tau * prop_->matrix(), kMaxPhiIndex);
  for (int i = 0; i <= kMaxPhiIndex; ++i) dense_.emplace(Key{tau, i}, std::move(all[i]));
  return dense_.at(key);
}

}  // namespace lawson
