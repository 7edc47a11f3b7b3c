#include "lawson/jet.hpp"

#include "lawson/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lawson {

namespace {

// Zero annihilates, so that unknown (NaN) coefficients stay confined.
inline double mul(double x, double y) { return (x == 0.0 || y == 0.0) ? 0.0 : x * y; }

}  // namespace

Jet2::Jet2(int degree, double fill) : degree_(degree), c_(Eigen::MatrixXd::Constant(degree + 1, degree + 1, fill)) {
  if (degree < 0) throw std::invalid_argument("Jet2: negative degree");
}

double Jet2::partial(int a, int b) const {
  if (a < 0 || b < 0 || a + b > degree_) throw std::out_of_range("Jet2::partial: beyond degree");
  return c_(a, b) * detail::factorial(a) * detail::factorial(b);
}

Eigen::VectorXd Jet2::time_derivative_series(int a) const {
  if (a < 0 || a > degree_) throw std::out_of_range("Jet2::time_derivative_series: beyond degree");
  Eigen::VectorXd s(degree_ - a + 1);
  const double fa = detail::factorial(a);
  for (int b = 0; b <= degree_ - a; ++b) s[b] = fa * c_(a, b);
  return s;
}

Jet2 operator+(const Jet2& p, const Jet2& q) {
  Jet2 r(std::min(p.degree_, q.degree_));
  const int n = r.degree_ + 1;
  r.c_ = p.c_.topLeftCorner(n, n) + q.c_.topLeftCorner(n, n);
  return r;
}

Jet2 operator-(const Jet2& p, const Jet2& q) { return p + (-1.0) * q; }

Jet2 operator*(double s, const Jet2& p) {
  Jet2 r(p.degree_);
  for (int a = 0; a <= p.degree_; ++a)
    for (int b = 0; a + b <= p.degree_; ++b) r.c_(a, b) = mul(s, p.c_(a, b));
  return r;
}

Jet2 operator*(const Jet2& p, const Jet2& q) {
  const int d = std::min(p.degree_, q.degree_);
  Jet2 r(d);
  for (int a = 0; a <= d; ++a) {
    for (int b = 0; a + b <= d; ++b) {
      double acc = 0.0;
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) acc += mul(p.c_(i, j), q.c_(a - i, b - j));
      r.c_(a, b) = acc;
    }
  }
  return r;
}

Jet2 compose(const DerivativeFn& derivs, const Jet2& u) {
  const int d = u.degree();
  const double u0 = u(0, 0);
  Jet2 delta = u;
  delta(0, 0) = 0.0;
  Jet2 out(d);
  out(0, 0) = derivs(0, u0);
  Jet2 power = delta;
  for (int m = 1; m <= d; ++m) {
    const double w = derivs(m, u0) / detail::factorial(m);
    if (w != 0.0) out = out + w * power;
    if (m < d) power = power * delta;
  }
  return out;
}

void complete_from_pde(Jet2& u, const std::function<Jet2(const Jet2&)>& forcing) {
  const int d = u.degree();
  for (int pass = 0; pass <= d; ++pass) {
    const Jet2 F = forcing(u);
    bool changed = false;
    for (int b = 0; b + 2 <= d; ++b) {
      for (int a = 0; a + b + 2 <= d; ++a) {
        if (!std::isnan(u(a, b + 2))) continue;
        const double value = (double(a + 1) * u(a + 1, b) - F(a, b)) / double((b + 1) * (b + 2));
        if (!std::isnan(value)) {
          u(a, b + 2) = value;
          changed = true;
        }
      }
    }
    if (!changed) return;
  }
}

namespace series {

Eigen::VectorXd add(const Eigen::VectorXd& p, const Eigen::VectorXd& q) { return axpy(1.0, p, q); }

Eigen::VectorXd axpy(double a, const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  const Eigen::Index n = std::min(p.size(), q.size());
  Eigen::VectorXd r(n);
  for (Eigen::Index i = 0; i < n; ++i) r[i] = mul(a, p[i]) + q[i];
  return r;
}

Eigen::VectorXd multiply(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  const Eigen::Index n = std::min(p.size(), q.size());
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) r[i] += mul(p[j], q[i - j]);
  return r;
}

Eigen::VectorXd compose(const DerivativeFn& derivs, const Eigen::VectorXd& u) {
  const Eigen::Index n = u.size();
  if (n == 0) return u;
  const double u0 = u[0];
  Eigen::VectorXd delta = u;
  delta[0] = 0.0;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  out[0] = derivs(0, u0);
  Eigen::VectorXd power = delta;
  for (Eigen::Index m = 1; m < n; ++m) {
    const double w = derivs(int(m), u0) / detail::factorial(int(m));
    if (w != 0.0) out = axpy(w, power, out);
    if (m + 1 < n) power = multiply(power, delta);
  }
  return out;
}

Eigen::VectorXd second_derivative(const Eigen::VectorXd& p) {
  if (p.size() < 3) return Eigen::VectorXd();
  Eigen::VectorXd r(p.size() - 2);
  for (Eigen::Index b = 0; b < r.size(); ++b) r[b] = double((b + 1) * (b + 2)) * p[b + 2];
  return r;
}

double trace(const Eigen::VectorXd& p, double alpha, double beta) {
  const auto at = [&](Eigen::Index i) {
    return i < p.size() ? p[i] : std::numeric_limits<double>::quiet_NaN();
  };
  double v = 0.0;
  if (alpha != 0.0) v += alpha * at(0);
  if (beta != 0.0) v += beta * at(1);
  return v;
}

}  // namespace series

}  // namespace lawson
