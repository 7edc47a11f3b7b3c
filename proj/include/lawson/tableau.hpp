#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace lawson {

/// p/q with q > 0.
struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return double(num) / double(den); }
};

/// Explicit Runge–Kutta coefficients. The rational originals are kept so
/// that the floating-point copies are rounded exactly once.
struct ButcherTableau {
  std::string name;
  int stages = 0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::vector<std::vector<Rational>> a_exact;
  std::vector<Rational> b_exact;
  std::vector<Rational> c_exact;

  static ButcherTableau from_rationals(std::string name, std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                                       std::vector<Rational> c);
};

/// rk2, heun3, rk4.
ButcherTableau builtin_tableau(const std::string& name);
std::vector<std::string> tableau_names();

/// Throws unless a is strictly lower triangular, sum b = 1 and row sums of a equal c.
void validate(const ButcherTableau& tab);

/// Largest p <= 4 whose order conditions all hold to 1e-12.
int classical_order(const ButcherTableau& tab);

}  // namespace lawson
