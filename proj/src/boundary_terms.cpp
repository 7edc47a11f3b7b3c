#include "lawson/boundary_terms.hpp"

#include "lawson/jet.hpp"
#include "lawson/phi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lawson {

const char* to_string(BoundaryMode mode) {
  return mode == BoundaryMode::ExactOracle ? "oracle" : "data";
}

BoundaryMode boundary_mode_from_string(const std::string& name) {
  if (name == "oracle") return BoundaryMode::ExactOracle;
  if (name == "data") return BoundaryMode::FromData;
  throw std::invalid_argument("unknown boundary mode: " + name);
}

TraceHistory::TraceHistory(double k, std::size_t capacity) : k_(k), capacity_(capacity) {
  if (!(k > 0.0)) throw std::invalid_argument("TraceHistory: step must be positive");
  if (capacity == 0) throw std::invalid_argument("TraceHistory: zero capacity");
}

void TraceHistory::push(double t, Eigen::VectorXd U) {
  if (!entries_.empty()) {
    const double gap = t - entries_.front().first;
    if (std::abs(gap - k_) > 1e-9 * std::max(1.0, std::abs(t))) {
      throw std::invalid_argument("TraceHistory: entries must be spaced by k");
    }
  }
  entries_.emplace_front(t, std::move(U));
  if (entries_.size() > capacity_) entries_.pop_back();
}

BoundaryTermSet BoundaryTermSet::zero(int order, int stages) {
  BoundaryTermSet s;
  s.order = order;
  if (order >= 3) s.stage_f.assign(static_cast<std::size_t>(stages), Eigen::Vector2d::Zero());
  if (order >= 4) {
    s.stage_Af.assign(static_cast<std::size_t>(stages), Eigen::Vector2d::Zero());
    s.composed_f.assign(static_cast<std::size_t>(stages), Eigen::Vector2d::Zero());
  }
  return s;
}

bool BoundaryTermSet::finite() const {
  bool ok = u.allFinite() && Au.allFinite() && f.allFinite();
  if (order >= 3) {
    ok = ok && A2u.allFinite() && Af.allFinite();
    for (const auto& v : stage_f) ok = ok && v.allFinite();
  }
  if (order >= 4) {
    ok = ok && A3u.allFinite() && A2f.allFinite();
    for (const auto& v : stage_Af) ok = ok && v.allFinite();
    for (const auto& v : composed_f) ok = ok && v.allFinite();
  }
  return ok;
}

double bdf_space_boundary_derivative(double boundary_value, double nearest, double next, double h) {
  return (-3.0 * boundary_value + 4.0 * nearest - next) / (2.0 * h);
}

double bdf_time_derivative(const std::vector<double>& y, double k, int order) {
  if (y.size() < 4) throw std::invalid_argument("bdf_time_derivative: need four samples");
  if (order == 1) return (11.0 * y[0] - 18.0 * y[1] + 9.0 * y[2] - 2.0 * y[3]) / (6.0 * k);
  if (order == 2) return (2.0 * y[0] - 5.0 * y[1] + 4.0 * y[2] - y[3]) / (k * k);
  throw std::invalid_argument("bdf_time_derivative: order must be 1 or 2");
}

Eigen::VectorXd bdf_time_derivative(const TraceHistory& history, int order) {
  if (history.size() < 4) throw std::invalid_argument("bdf_time_derivative: need four history entries");
  const double k = history.step();
  const Eigen::VectorXd &y0 = history.state(0), &y1 = history.state(1), &y2 = history.state(2),
                        &y3 = history.state(3);
  if (order == 1) return (11.0 * y0 - 18.0 * y1 + 9.0 * y2 - 2.0 * y3) / (6.0 * k);
  if (order == 2) return (2.0 * y0 - 5.0 * y1 + 4.0 * y2 - y3) / (k * k);
  throw std::invalid_argument("bdf_time_derivative: order must be 1 or 2");
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Jet degree that covers every trace of the given order for both
// value (Dirichlet) and derivative (Neumann/Robin) boundary operators.
int jet_degree(int order) { return 2 * order - 1; }

double endpoint(Endpoint side) { return side == Endpoint::Left ? 0.0 : 1.0; }

// x-series of h(t, .) around x, degree d.
Eigen::VectorXd forcing_series(const ManufacturedProblem& problem, double t, double x, int d) {
  const auto& u = problem.exact().partial;
  Eigen::VectorXd U(d + 1);
  for (int b = 0; b <= d; ++b) U[b] = u(0, b, t, x) / detail::factorial(b);
  const Eigen::VectorXd phi_u = series::compose(problem.reaction().derivative, U);
  Eigen::VectorXd h(d + 1);
  for (int b = 0; b <= d; ++b) {
    h[b] = u(1, b, t, x) / detail::factorial(b) - u(0, b + 2, t, x) / detail::factorial(b) - phi_u[b];
  }
  return h;
}

struct SideContext {
  Endpoint side;
  const ManufacturedProblem& problem;
  const DiscreteSpace& space;
  double t;
  const Eigen::VectorXd& U;
  const TraceHistory* history;
};

bool history_ready(const TraceHistory* history) { return history != nullptr && history->size() >= 4; }

// Value of the Dirichlet datum divided out (u = g / alpha) at both ends;
// NaN where the end is not Dirichlet.
Eigen::Vector2d dirichlet_values(const ManufacturedProblem& problem, int d, double t) {
  Eigen::Vector2d v;
  for (int s = 0; s < 2; ++s) {
    const auto side = static_cast<Endpoint>(s);
    const BoundaryCondition& bc = problem.condition(side);
    v[s] = bc.is_dirichlet() ? problem.boundary_data(side, d, t) / bc.alpha : kNaN;
  }
  return v;
}

Jet2 data_jet(const SideContext& ctx, int order, int degree) {
  const ManufacturedProblem& problem = ctx.problem;
  const BoundaryCondition& bc = problem.condition(ctx.side);
  const double t = ctx.t;
  Jet2 J(degree, kNaN);
  const bool ready = history_ready(ctx.history);

  if (bc.is_dirichlet()) {
    for (int a = 0; a <= std::min(3, degree); ++a) {
      J(a, 0) = problem.boundary_data(ctx.side, a, t) / (bc.alpha * detail::factorial(a));
    }
    if (order >= 3) {
      J(0, 1) = ctx.space.boundary_derivative(ctx.side, dirichlet_values(problem, 0, t), ctx.U);
    }
    if (order >= 4) {
      const Eigen::VectorXd ut = ready ? bdf_time_derivative(*ctx.history, 1) : problem.project(ctx.space, t, 1);
      J(1, 1) = ctx.space.boundary_derivative(ctx.side, dirichlet_values(problem, 1, t), ut);
    }
  } else {
    const Grid1D& grid = ctx.space.grid();
    const bool unknown = ctx.side == Endpoint::Left ? grid.left_is_unknown : grid.right_is_unknown;
    if (!unknown) throw std::logic_error("boundary terms: Robin/Neumann endpoint must carry an unknown");
    const Eigen::Index node = ctx.side == Endpoint::Left ? 0 : ctx.space.size() - 1;
    const double x = endpoint(ctx.side);
    const auto from_data = [&](int a, double value) {
      // alpha d^a_t u + beta d^a_t u_x = g^(a)
      return (problem.boundary_data(ctx.side, a, t) - bc.alpha * value) / bc.beta;
    };
    const auto node_history = [&](int d) {
      if (!ready) return problem.exact().partial(d, 0, t, x);
      std::vector<double> y(4);
      for (std::size_t j = 0; j < 4; ++j) y[j] = ctx.history->state(j)[node];
      return bdf_time_derivative(y, ctx.history->step(), d);
    };
    const double u0 = ctx.U[node];
    J(0, 0) = u0;
    J(0, 1) = from_data(0, u0);
    if (order == 2) {
      // d_t u only enters through alpha u_t + beta u_tx = g', so any value
      // of u_t gives the same boundary traces.
      J(1, 0) = 0.0;
      J(1, 1) = from_data(1, 0.0);
    }
    if (order >= 3) {
      const double ut = node_history(1);
      const double utt = node_history(2);
      J(1, 0) = ut;
      J(1, 1) = from_data(1, ut);
      J(2, 0) = utt / 2.0;
      J(2, 1) = from_data(2, utt) / 2.0;
    }
    if (order >= 4) {
      // d^3_t u only enters through alpha u_ttt + beta u_ttx = g''', so any
      // value of u_ttt gives the same boundary traces.
      J(3, 0) = 0.0;
      J(3, 1) = from_data(3, 0.0) / 6.0;
    }
  }

  const Jet2 H = problem.forcing_jet(t, endpoint(ctx.side), degree);
  complete_from_pde(J, [&](const Jet2& u) { return compose(problem.reaction().derivative, u) + H; });
  return J;
}

}  // namespace

BoundaryTermSet boundary_terms(int order, const ManufacturedProblem& problem, BoundaryMode mode, double t_n,
                               const Eigen::VectorXd& U_n, const TraceHistory* history, const DiscreteSpace& space,
                               const ButcherTableau& tableau, double k) {
  if (order < 2 || order > 4) throw std::invalid_argument("boundary_terms: order must be 2, 3 or 4");
  if (U_n.size() != space.size()) throw std::invalid_argument("boundary_terms: dimension mismatch");
  const int s = tableau.stages;
  BoundaryTermSet out = BoundaryTermSet::zero(order, s);
  const int degree = jet_degree(order);
  const DerivativeFn& phi = problem.reaction().derivative;

  for (int side_index = 0; side_index < 2; ++side_index) {
    const auto side = static_cast<Endpoint>(side_index);
    const BoundaryCondition& bc = problem.condition(side);
    const double x = endpoint(side);
    const SideContext ctx{side, problem, space, t_n, U_n, history};
    const Jet2 J = mode == BoundaryMode::ExactOracle ? problem.solution_jet(t_n, x, degree)
                                                    : data_jet(ctx, order, degree);
    const auto trace = [&](const Eigen::VectorXd& q) { return series::trace(q, bc.alpha, bc.beta); };

    const Eigen::VectorXd U = J.time_derivative_series(0);
    const Eigen::VectorXd H = forcing_series(problem, t_n, x, degree);
    const Eigen::VectorXd f = series::add(series::compose(phi, U), H);
    const Eigen::VectorXd Au = series::second_derivative(U);
    out.u[side_index] = trace(U);
    out.f[side_index] = trace(f);
    out.Au[side_index] = trace(Au);
    if (order < 3) continue;

    const Eigen::VectorXd V = J.time_derivative_series(1);
    const Eigen::VectorXd A2u = series::second_derivative(Au);
    const Eigen::VectorXd Af = series::second_derivative(f);
    out.A2u[side_index] = trace(A2u);
    out.Af[side_index] = trace(Af);
    std::vector<Eigen::VectorXd> stage_f(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) {
      const double ck = tableau.c[i] * k;
      const Eigen::VectorXd arg = series::axpy(ck, V, U);
      const Eigen::VectorXd Hi = forcing_series(problem, t_n + ck, x, int(arg.size()) - 1);
      stage_f[i] = series::add(series::compose(phi, arg), Hi);
      out.stage_f[i][side_index] = trace(stage_f[i]);
    }
    if (order < 4) continue;

    const Eigen::VectorXd A3u = series::second_derivative(A2u);
    const Eigen::VectorXd A2f = series::second_derivative(Af);
    out.A3u[side_index] = trace(A3u);
    out.A2f[side_index] = trace(A2f);
    for (int i = 0; i < s; ++i) {
      const double ck = tableau.c[i] * k;
      out.stage_Af[i][side_index] = trace(series::second_derivative(stage_f[i]));
      Eigen::VectorXd arg = series::axpy(0.5 * ck * ck, A2u, series::axpy(ck, Au, U));
      for (int j = 0; j < i; ++j) {
        const double aij = tableau.a(i, j);
        if (aij == 0.0) continue;
        const double cij = (tableau.c[i] - tableau.c[j]) * k;
        arg = series::axpy(k * aij, series::axpy(cij, Af, stage_f[j]), arg);
      }
      const Eigen::VectorXd Hi = forcing_series(problem, t_n + ck, x, int(arg.size()) - 1);
      out.composed_f[i][side_index] = trace(series::add(series::compose(phi, arg), Hi));
    }
  }

  if (!out.finite()) {
    throw std::runtime_error("boundary_terms: non-finite trace (insufficient data for this boundary operator)");
  }
  return out;
}

}  // namespace lawson
