#pragma once

#include <Eigen/Dense>

#include <functional>

namespace lawson {

/// Truncated bivariate Taylor expansion in (t, x) around a point:
/// coefficient (a, b) multiplies dt^a dx^b, i.e. it stores
/// d^a_t d^b_x u / (a! b!). Entries with a + b > degree are not used.
///
/// NaN marks a coefficient that is not known. Arithmetic treats an exact
/// zero factor as annihilating, so unknown entries only contaminate the
/// coefficients that genuinely depend on them.
class Jet2 {
 public:
  Jet2() = default;
  explicit Jet2(int degree, double fill = 0.0);

  int degree() const { return degree_; }
  double& operator()(int a, int b) { return c_(a, b); }
  double operator()(int a, int b) const { return c_(a, b); }

  /// ∂_t^a ∂_x^b at the expansion point.
  double partial(int a, int b) const;

  /// x-series of ∂_t^a u at the expansion point, degree `degree() - a`.
  Eigen::VectorXd time_derivative_series(int a) const;

  friend Jet2 operator+(const Jet2& p, const Jet2& q);
  friend Jet2 operator-(const Jet2& p, const Jet2& q);
  friend Jet2 operator*(const Jet2& p, const Jet2& q);
  friend Jet2 operator*(double s, const Jet2& p);

 private:
  int degree_ = 0;
  Eigen::MatrixXd c_;
};

/// `derivs(m)` returns the m-th derivative of a scalar map at a point.
using DerivativeFn = std::function<double(int m, double at)>;

/// Taylor coefficients of phi(u) from those of u, using phi's derivatives at u(0,0).
Jet2 compose(const DerivativeFn& derivs, const Jet2& u);

/// Fills unknown coefficients (b >= 2) of a solution jet of
/// u_t = u_xx + F from the PDE: (a+1) c_{a+1,b} = (b+1)(b+2) c_{a,b+2} + F_{a,b}.
/// `forcing` maps the current jet of u to the jet of F; it is re-evaluated
/// until no further coefficient can be filled.
void complete_from_pde(Jet2& u, const std::function<Jet2(const Jet2&)>& forcing);

/// Univariate truncated Taylor series in s = x - x_b; coefficient b is
/// d^b_x / b!. Length is degree + 1.
namespace series {

Eigen::VectorXd add(const Eigen::VectorXd& p, const Eigen::VectorXd& q);
Eigen::VectorXd axpy(double a, const Eigen::VectorXd& p, const Eigen::VectorXd& q);  // a p + q
Eigen::VectorXd multiply(const Eigen::VectorXd& p, const Eigen::VectorXd& q);
Eigen::VectorXd compose(const DerivativeFn& derivs, const Eigen::VectorXd& u);
/// Second x-derivative; the result is two degrees shorter.
Eigen::VectorXd second_derivative(const Eigen::VectorXd& p);
/// alpha * p(0) + beta * p'(0); zero weights are skipped.
double trace(const Eigen::VectorXd& p, double alpha, double beta);

}  // namespace series

}  // namespace lawson
