#include "lawson/problems.hpp"

#include "lawson/phi.hpp"

#include <cmath>
#include <stdexcept>

namespace lawson {

Reaction square_reaction() {
  return {"u^2", [](int m, double u) {
            switch (m) {
              case 0: return u * u;
              case 1: return 2.0 * u;
              case 2: return 2.0;
              default: return 0.0;
            }
          }};
}

Reaction zero_reaction() {
  return {"0", [](int, double) { return 0.0; }};
}

namespace {

double binomial(int n, int k) {
  return detail::factorial(n) / (detail::factorial(k) * detail::factorial(n - k));
}

// m-th derivative of sum_i p_i x^i.
double poly_derivative(const std::vector<double>& p, int m, double x) {
  double acc = 0.0;
  for (int i = int(p.size()) - 1; i >= m; --i) {
    acc = acc * x + p[static_cast<std::size_t>(i)] * detail::factorial(i) / detail::factorial(i - m);
  }
  return acc;
}

// d^n/dtheta^n cos(theta) from (cos theta, sin theta).
double cos_derivative(int n, double c, double s) {
  switch (n & 3) {
    case 0: return c;
    case 1: return -s;
    case 2: return -c;
    default: return s;
  }
}

}  // namespace

ExactSolution poly_cos_solution(std::vector<double> p) {
  std::string name = "p(x)cos(x+t)";
  return {std::move(name), [p = std::move(p)](int a, int b, double t, double x) {
            if (a < 0 || b < 0) throw std::out_of_range("partial: negative order");
            const double c = std::cos(x + t);
            const double s = std::sin(x + t);
            double acc = 0.0;
            const int top = std::min<int>(b, int(p.size()) - 1);
            for (int m = 0; m <= top; ++m) {
              acc += binomial(b, m) * poly_derivative(p, m, x) * cos_derivative(a + b - m, c, s);
            }
            return acc;
          }};
}

ExactSolution zero_solution() {
  return {"0", [](int, int, double, double) { return 0.0; }};
}

ManufacturedProblem::ManufacturedProblem(std::string id, ExactSolution exact, Reaction reaction,
                                         BoundaryCondition left, BoundaryCondition right, double final_time)
    : id_(std::move(id)), exact_(std::move(exact)), reaction_(std::move(reaction)), bc_{left, right},
      final_time_(final_time) {
  for (const auto& bc : bc_) {
    if (bc.alpha == 0.0 && bc.beta == 0.0) throw std::invalid_argument("boundary condition with alpha = beta = 0");
  }
  if (!(final_time > 0.0)) throw std::invalid_argument("final time must be positive");
}

double ManufacturedProblem::forcing(double t, double x) const {
  return exact_.partial(1, 0, t, x) - exact_.partial(0, 2, t, x) - reaction_(exact_.partial(0, 0, t, x));
}

double ManufacturedProblem::forcing_partial(int a, int b, double t, double x) const {
  return forcing_jet(t, x, a + b).partial(a, b);
}

Jet2 ManufacturedProblem::solution_jet(double t, double x, int degree) const {
  Jet2 jet(degree);
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      jet(a, b) = exact_.partial(a, b, t, x) / (detail::factorial(a) * detail::factorial(b));
  return jet;
}

Jet2 ManufacturedProblem::forcing_jet(double t, double x, int degree) const {
  const Jet2 u = solution_jet(t, x, degree + 2);
  const Jet2 phi_u = compose(reaction_.derivative, u);
  Jet2 h(degree);
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      h(a, b) = double(a + 1) * u(a + 1, b) - double((b + 1) * (b + 2)) * u(a, b + 2) - phi_u(a, b);
  return h;
}

double ManufacturedProblem::boundary_data(Endpoint side, int d, double t) const {
  const BoundaryCondition& bc = condition(side);
  const double x = side == Endpoint::Left ? 0.0 : 1.0;
  double g = 0.0;
  if (bc.alpha != 0.0) g += bc.alpha * exact_.partial(d, 0, t, x);
  if (bc.beta != 0.0) g += bc.beta * exact_.partial(d, 1, t, x);
  return g;
}

Eigen::Vector2d ManufacturedProblem::boundary_vector(int d, double t) const {
  return {boundary_data(Endpoint::Left, d, t), boundary_data(Endpoint::Right, d, t)};
}

Eigen::VectorXd ManufacturedProblem::nonlinearity(const DiscreteSpace& space, double t,
                                                  const Eigen::VectorXd& U) const {
  if (U.size() != space.size()) throw std::invalid_argument("nonlinearity: dimension mismatch");
  const Eigen::VectorXd& x = space.grid().nodes;
  Eigen::VectorXd out(U.size());
  for (Eigen::Index i = 0; i < U.size(); ++i) out[i] = reaction_(U[i]) + forcing(t, x[i]);
  return out;
}

Eigen::VectorXd ManufacturedProblem::project(const DiscreteSpace& space, double t, int a) const {
  const Eigen::VectorXd& x = space.grid().nodes;
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = exact_.partial(a, 0, t, x[i]);
  return out;
}

Eigen::VectorXd semidiscrete_rhs(const ManufacturedProblem& problem, const DiscreteSpace& space, double t,
                                 const Eigen::VectorXd& U) {
  if (U.size() != space.size()) throw std::invalid_argument("semidiscrete_rhs: dimension mismatch");
  Eigen::VectorXd r = space.stiffness_sparse() * U;
  r += space.apply_boundary(problem.boundary_vector(0, t));
  r += problem.nonlinearity(space, t, U);
  return r;
}

ManufacturedProblem make_problem(const std::string& id) {
  if (id == "dirichlet-vanishing") {
    return {id, poly_cos_solution({0.0, -1.0, 1.0}), square_reaction(), BoundaryCondition::dirichlet(),
            BoundaryCondition::dirichlet()};
  }
  if (id == "dirichlet-nonvanishing") {
    return {id, poly_cos_solution({1.0}), square_reaction(), BoundaryCondition::dirichlet(),
            BoundaryCondition::dirichlet()};
  }
  if (id == "mixed-nonvanishing") {
    return {id, poly_cos_solution({1.0}), square_reaction(), BoundaryCondition::dirichlet(),
            BoundaryCondition::neumann()};
  }
  throw std::invalid_argument("unknown problem id: " + id);
}

std::vector<std::string> problem_ids() {
  return {"dirichlet-vanishing", "dirichlet-nonvanishing", "mixed-nonvanishing"};
}

}  // namespace lawson
