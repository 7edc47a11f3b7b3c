#pragma once

#include "lawson/discretization.hpp"
#include "lawson/jet.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace lawson {

/// Scalar reaction term phi(u); `derivative(m, u)` is the m-th derivative.
struct Reaction {
  std::string name;
  DerivativeFn derivative;

  double operator()(double u) const { return derivative(0, u); }
};

Reaction square_reaction();  // phi(u) = u^2
Reaction zero_reaction();    // phi(u) = 0

/// Exact solution with closed-form partials d^a_t d^b_x u(t, x).
struct ExactSolution {
  std::string name;
  std::function<double(int a, int b, double t, double x)> partial;

  double operator()(double t, double x) const { return partial(0, 0, t, x); }
};

/// u(t, x) = p(x) cos(x + t) with p a polynomial (coefficients in ascending powers).
ExactSolution poly_cos_solution(std::vector<double> p);
ExactSolution zero_solution();

/// Boundary operator at one endpoint: du = alpha u + beta u_x.
struct BoundaryCondition {
  double alpha = 1.0;
  double beta = 0.0;

  bool is_dirichlet() const { return beta == 0.0; }
  static BoundaryCondition dirichlet() { return {1.0, 0.0}; }
  static BoundaryCondition neumann() { return {0.0, 1.0}; }
  static BoundaryCondition robin(double alpha, double beta) { return {alpha, beta}; }
};

/// u_t = u_xx + phi(u) + h(t, x) on [0, 1] with the forcing h and the
/// boundary data g manufactured from an exact solution.
class ManufacturedProblem {
 public:
  ManufacturedProblem(std::string id, ExactSolution exact, Reaction reaction, BoundaryCondition left,
                      BoundaryCondition right, double final_time = 1.0);

  const std::string& id() const { return id_; }
  const ExactSolution& exact() const { return exact_; }
  const Reaction& reaction() const { return reaction_; }
  const BoundaryCondition& condition(Endpoint side) const { return bc_[static_cast<int>(side)]; }
  double final_time() const { return final_time_; }

  double solution(double t, double x) const { return exact_.partial(0, 0, t, x); }

  /// h(t, x) = u_t - u_xx - phi(u).
  double forcing(double t, double x) const;
  /// d^a_t d^b_x h(t, x).
  double forcing_partial(int a, int b, double t, double x) const;

  /// Taylor jet of u at (t, x) up to total degree `degree`.
  Jet2 solution_jet(double t, double x, int degree) const;
  /// Taylor jet of h at (t, x) up to total degree `degree`.
  Jet2 forcing_jet(double t, double x, int degree) const;

  /// d^d/dt^d of the boundary datum g = alpha u + beta u_x at an endpoint.
  double boundary_data(Endpoint side, int d, double t) const;
  Eigen::Vector2d boundary_vector(int d, double t) const;

  /// f(t, U) = phi(U) + P_h h(t), nodewise.
  Eigen::VectorXd nonlinearity(const DiscreteSpace& space, double t, const Eigen::VectorXd& U) const;
  /// P_h d^a_t u(t).
  Eigen::VectorXd project(const DiscreteSpace& space, double t, int a = 0) const;

 private:
  std::string id_;
  ExactSolution exact_;
  Reaction reaction_;
  BoundaryCondition bc_[2];
  double final_time_;
};

/// A_h0 U + C_h g(t) + f(t, U).
Eigen::VectorXd semidiscrete_rhs(const ManufacturedProblem& problem, const DiscreteSpace& space, double t,
                                 const Eigen::VectorXd& U);

/// Registry: dirichlet-vanishing, dirichlet-nonvanishing, mixed-nonvanishing.
ManufacturedProblem make_problem(const std::string& id);
std::vector<std::string> problem_ids();

}  // namespace lawson
