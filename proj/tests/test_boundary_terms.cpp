#include "lawson/boundary_terms.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace lawson;
using Catch::Matchers::WithinAbs;

namespace {

double slope(double e1, double e2, double r) { return std::log(e1 / e2) / std::log(r); }

// Fills a history with P_h u at t - 3k, ..., t.
TraceHistory exact_history(const ManufacturedProblem& p, const DiscreteSpace& space, double t, double k) {
  TraceHistory h(k);
  for (int j = 3; j >= 0; --j) h.push(t - j * k, p.project(space, t - j * k));
  return h;
}

}  // namespace

TEST_CASE("Dirichlet traces: du = g and dAu + df = g' exactly", "[boundary]") {
  const ManufacturedProblem p = make_problem("dirichlet-nonvanishing");
  const DiscreteSpace space = build_fd_dirichlet(99);
  const ButcherTableau tab = builtin_tableau("rk4");
  for (double t : {0.0, 0.3, 0.8}) {
    const Eigen::VectorXd U = p.project(space, t);
    const TraceHistory hist = exact_history(p, space, t, 1e-3);
    for (int order : {2, 3, 4}) {
      const BoundaryTermSet s = boundary_terms(order, p, BoundaryMode::FromData, t, U, &hist, space, tab, 1e-3);
      CHECK((s.u - p.boundary_vector(0, t)).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK((s.Au + s.f - p.boundary_vector(1, t)).cwiseAbs().maxCoeff() <= 1e-12);
    }
    // df at x = 1 from data: cos^2(1 + t) + h(t, 1)
    const BoundaryTermSet s2 = terms_order2(p, BoundaryMode::FromData, t, U, space, tab, 1e-3);
    CHECK_THAT(s2.f[1], WithinAbs(std::pow(std::cos(1.0 + t), 2) + p.forcing(t, 1.0), 1e-13));
  }
}

TEST_CASE("oracle traces match closed forms for u = cos(x + t)", "[boundary]") {
  const ManufacturedProblem p = make_problem("dirichlet-nonvanishing");
  const DiscreteSpace space = build_fd_dirichlet(49);
  const ButcherTableau tab = builtin_tableau("rk4");
  const double t = 0.45;
  const TraceHistory hist = exact_history(p, space, t, 0.01);
  const BoundaryTermSet s = terms_order4(p, BoundaryMode::ExactOracle, t, p.project(space, t), hist, space, tab, 0.01);
  for (int side = 0; side < 2; ++side) {
    const double x = side;
    const double c = std::cos(x + t), sn = std::sin(x + t);
    CHECK_THAT(s.u[side], WithinAbs(c, 1e-13));
    CHECK_THAT(s.Au[side], WithinAbs(-c, 1e-13));
    CHECK_THAT(s.A2u[side], WithinAbs(c, 1e-12));
    CHECK_THAT(s.A3u[side], WithinAbs(-c, 1e-11));
    // A f = (u^2 + h)_xx = 2 u_x^2 + 2 u u_xx + h_xx
    const double Af = 2.0 * sn * sn - 2.0 * c * c + p.forcing_partial(0, 2, t, x);
    CHECK_THAT(s.Af[side], WithinAbs(Af, 1e-9));
    // A^2 f = (u^2)_xxxx + h_xxxx; (u^2)'''' = 2 (u u'''' + 4 u' u''' + 3 u''^2)
    const double A2f = 2.0 * (c * c + 4.0 * (-sn) * sn + 3.0 * c * c) + p.forcing_partial(0, 4, t, x);
    CHECK_THAT(s.A2f[side], WithinAbs(A2f, 1e-8));
    // stage f at c_i: (u + c_i k u_t)^2 + h(t + c_i k)
    for (int i = 0; i < tab.stages; ++i) {
      const double ck = tab.c[i] * 0.01;
      const double v = c - ck * sn;
      CHECK_THAT(s.stage_f[i][side], WithinAbs(v * v + p.forcing(t + ck, x), 1e-12));
    }
  }
}

TEST_CASE("order-2 data traces need no numerical differentiation", "[boundary]") {
  const ManufacturedProblem p = make_problem("dirichlet-nonvanishing");
  const DiscreteSpace space = build_fd_dirichlet(19);
  const ButcherTableau tab = builtin_tableau("rk2");
  const Eigen::VectorXd U = Eigen::VectorXd::Constant(19, 123.0);  // interior values must not matter
  const BoundaryTermSet data = terms_order2(p, BoundaryMode::FromData, 0.2, U, space, tab, 0.01);
  const BoundaryTermSet oracle = terms_order2(p, BoundaryMode::ExactOracle, 0.2, U, space, tab, 0.01);
  CHECK((data.u - oracle.u).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((data.Au - oracle.Au).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((data.f - oracle.f).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Neumann endpoint traces use the numerical node value", "[boundary]") {
  const ManufacturedProblem p = make_problem("mixed-nonvanishing");
  const DiscreteSpace space = build_fd_mixed(50);
  const ButcherTableau tab = builtin_tableau("heun3");
  const double t = 0.6, k = 0.01;
  const Eigen::VectorXd U = p.project(space, t);
  const TraceHistory hist = exact_history(p, space, t, k);
  const BoundaryTermSet d2 = terms_order2(p, BoundaryMode::FromData, t, U, space, tab, k);
  const BoundaryTermSet o2 = terms_order2(p, BoundaryMode::ExactOracle, t, U, space, tab, k);
  // dAu + df = g' holds for the derivative boundary operator as well
  CHECK_THAT(d2.Au[1] + d2.f[1], WithinAbs(p.boundary_data(Endpoint::Right, 1, t), 1e-11));
  CHECK_THAT(d2.Au[1], WithinAbs(o2.Au[1], 1e-3));
  // df = phi'(u) u_x + h_x at x = 1 with u from the grid and u_x = g
  const double u1 = U[space.size() - 1];
  const double g = p.boundary_data(Endpoint::Right, 0, t);
  CHECK_THAT(d2.f[1], WithinAbs(2.0 * u1 * g + p.forcing_partial(0, 1, t, 1.0), 1e-12));
  CHECK_THAT(d2.u[1], WithinAbs(g, 1e-14));
  // with exact nodal values the data traces approach the oracle as k shrinks
  const BoundaryTermSet d3 = terms_order3(p, BoundaryMode::FromData, t, U, hist, space, tab, k);
  const BoundaryTermSet o3 = terms_order3(p, BoundaryMode::ExactOracle, t, U, hist, space, tab, k);
  CHECK(std::abs(d3.A2u[1] - o3.A2u[1]) < 1e-3);
  CHECK(std::abs(d3.Af[1] - o3.Af[1]) < 1e-3);
  // the Dirichlet end of the mixed problem is space-differentiated
  CHECK(std::abs(d3.A2u[0] - o3.A2u[0]) < 1e-2);
}

TEST_CASE("data traces converge to oracle traces", "[boundary]") {
  const ManufacturedProblem p = make_problem("dirichlet-nonvanishing");
  const ButcherTableau tab = builtin_tableau("rk4");
  const double t = 0.5, k = 1e-3;
  std::vector<double> diff;
  for (int n : {20, 40, 80}) {
    const DiscreteSpace space = build_fd_dirichlet(n - 1);
    const Eigen::VectorXd U = p.project(space, t);
    const TraceHistory hist = exact_history(p, space, t, k);
    const BoundaryTermSet d = terms_order3(p, BoundaryMode::FromData, t, U, hist, space, tab, k);
    const BoundaryTermSet o = terms_order3(p, BoundaryMode::ExactOracle, t, U, hist, space, tab, k);
    diff.push_back(std::max((d.A2u - o.A2u).cwiseAbs().maxCoeff(), (d.Af - o.Af).cwiseAbs().maxCoeff()));
  }
  CHECK_THAT(slope(diff[0], diff[1], 2.0), WithinAbs(2.0, 0.15));
  CHECK_THAT(slope(diff[1], diff[2], 2.0), WithinAbs(2.0, 0.15));
}

TEST_CASE("BDF stencils are exact on cubics", "[boundary]") {
  const auto cubic = [](double t) { return 1.0 - 2.0 * t + 0.5 * t * t + 3.0 * t * t * t; };
  const double t = 0.7, k = 0.05;
  std::vector<double> y;
  for (int j = 0; j < 4; ++j) y.push_back(cubic(t - j * k));
  CHECK_THAT(bdf_time_derivative(y, k, 1), WithinAbs(-2.0 + t + 9.0 * t * t, 1e-11));
  CHECK_THAT(bdf_time_derivative(y, k, 2), WithinAbs(1.0 + 18.0 * t, 1e-9));
  CHECK_THROWS_AS(bdf_time_derivative(y, k, 3), std::invalid_argument);
  // the space stencil is exact on quadratics, either orientation
  const auto quad = [](double x) { return 2.0 - x + 4.0 * x * x; };
  CHECK_THAT(bdf_space_boundary_derivative(quad(0.0), quad(0.1), quad(0.2), 0.1), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(bdf_space_boundary_derivative(quad(1.0), quad(0.9), quad(0.8), -0.1), WithinAbs(7.0, 1e-12));
}

TEST_CASE("BDF error slopes", "[boundary]") {
  const auto u = [](double t) { return std::cos(1.0 + t); };
  std::vector<double> mu1, mu2, nu;
  for (double k : {4e-3, 2e-3, 1e-3}) {
    std::vector<double> y;
    for (int j = 0; j < 4; ++j) y.push_back(u(0.5 - j * k));
    mu1.push_back(std::abs(bdf_time_derivative(y, k, 1) + std::sin(1.5)));
    mu2.push_back(std::abs(bdf_time_derivative(y, k, 2) + std::cos(1.5)));
    nu.push_back(std::abs(bdf_space_boundary_derivative(u(0.0), u(k), u(2 * k), k) + std::sin(1.0)));
  }
  for (int i = 0; i < 2; ++i) {
    CHECK_THAT(slope(mu1[i], mu1[i + 1], 2.0), WithinAbs(3.0, 0.15));
    CHECK_THAT(slope(mu2[i], mu2[i + 1], 2.0), WithinAbs(2.0, 0.15));
    CHECK_THAT(slope(nu[i], nu[i + 1], 2.0), WithinAbs(2.0, 0.1));
  }
}

TEST_CASE("trace history keeps the newest equally spaced states", "[boundary]") {
  TraceHistory h(0.1);
  for (int i = 0; i < 6; ++i) h.push(0.1 * i, Eigen::VectorXd::Constant(2, i));
  CHECK(h.size() == 4);
  CHECK_THAT(h.time(0), WithinAbs(0.5, 1e-15));
  CHECK(h.state(3)[0] == 2.0);
  CHECK_THROWS_AS(h.push(0.7, Eigen::VectorXd::Zero(2)), std::invalid_argument);
  CHECK_THROWS_AS(bdf_time_derivative(TraceHistory(0.1), 1), std::invalid_argument);
  CHECK_THROWS_AS(boundary_mode_from_string("exact"), std::invalid_argument);
  CHECK(boundary_mode_from_string(to_string(BoundaryMode::FromData)) == BoundaryMode::FromData);
}
