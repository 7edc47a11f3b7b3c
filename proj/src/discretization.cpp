#include "lawson/discretization.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lawson {

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::FdDirichlet: return "fd-dirichlet";
    case SpaceKind::FdMixed: return "fd-mixed";
    case SpaceKind::Collocation: return "collocation";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& name) {
  if (name == "fd-dirichlet") return SpaceKind::FdDirichlet;
  if (name == "fd-mixed") return SpaceKind::FdMixed;
  if (name == "collocation") return SpaceKind::Collocation;
  throw std::invalid_argument("unknown space discretization: " + name);
}

DiscreteSpace::DiscreteSpace(Grid1D grid, Eigen::MatrixXd stiffness, Eigen::MatrixXd boundary_map,
                             Eigen::MatrixXd differentiation)
    : grid_(std::move(grid)), a_(std::move(stiffness)), c_(std::move(boundary_map)), diff_(std::move(differentiation)) {
  const Eigen::Index n = grid_.nodes.size();
  if (a_.rows() != n || a_.cols() != n || c_.rows() != n || c_.cols() != 2) {
    throw std::invalid_argument("DiscreteSpace: inconsistent dimensions");
  }
  a_sparse_ = a_.sparseView();
}

Eigen::VectorXd DiscreteSpace::project(const std::function<double(double)>& fn) const {
  Eigen::VectorXd out(size());
  for (Eigen::Index i = 0; i < size(); ++i) out[i] = fn(grid_.nodes[i]);
  return out;
}

double DiscreteSpace::boundary_derivative(Endpoint side, const Eigen::Vector2d& boundary_values,
                                          const Eigen::VectorXd& U) const {
  if (U.size() != size()) throw std::invalid_argument("boundary_derivative: dimension mismatch");
  if (grid_.kind == SpaceKind::Collocation) {
    const Eigen::Index m = grid_.collocation_points.size();
    Eigen::VectorXd full(m);
    full[0] = boundary_values[0];
    full.segment(1, m - 2) = U;
    full[m - 1] = boundary_values[1];
    const Eigen::Index row = side == Endpoint::Left ? 0 : m - 1;
    return diff_.row(row).dot(full);
  }
  const double h = grid_.h;
  if (side == Endpoint::Left) {
    if (grid_.left_is_unknown) throw std::logic_error("boundary_derivative: left endpoint carries an unknown");
    return (-3.0 * boundary_values[0] + 4.0 * U[0] - U[1]) / (2.0 * h);
  }
  if (grid_.right_is_unknown) throw std::logic_error("boundary_derivative: right endpoint carries an unknown");
  const Eigen::Index n = size();
  return (3.0 * boundary_values[1] - 4.0 * U[n - 1] + U[n - 2]) / (2.0 * h);
}

LinearPropagator DiscreteSpace::make_propagator() const {
  switch (grid_.kind) {
    case SpaceKind::FdDirichlet: return make_propagator(Backend::Sine);
    case SpaceKind::FdMixed: return make_propagator(Backend::Spectral);
    case SpaceKind::Collocation: return make_propagator(Backend::Dense);
  }
  return make_propagator(Backend::Dense);
}

LinearPropagator DiscreteSpace::make_propagator(Backend backend) const {
  switch (backend) {
    case Backend::Sine:
      if (grid_.kind != SpaceKind::FdDirichlet) throw std::invalid_argument("sine backend needs the Dirichlet FD operator");
      return LinearPropagator::sine(size(), grid_.h);
    case Backend::Spectral:
      if (grid_.kind == SpaceKind::FdMixed) {
        // diag(1, ..., 1, 1/sqrt 2) symmetrizes the Neumann row.
        Eigen::VectorXd d = Eigen::VectorXd::Ones(size());
        d[size() - 1] = 1.0 / std::numbers::sqrt2;
        return LinearPropagator::symmetrizable(a_, d);
      }
      if (grid_.kind == SpaceKind::Collocation) throw std::invalid_argument("collocation operator is not symmetric");
      return LinearPropagator::symmetric(a_);
    case Backend::Dense: return LinearPropagator::dense(a_);
  }
  throw std::invalid_argument("unknown backend");
}

Eigen::Index fd_dirichlet_size(double h) {
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("spacing must lie in (0, 1)");
  return static_cast<Eigen::Index>(std::llround(1.0 / h)) - 1;
}

Eigen::Index fd_mixed_size(double h) {
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("spacing must lie in (0, 1)");
  return static_cast<Eigen::Index>(std::llround(1.0 / h));
}

DiscreteSpace build_fd_dirichlet(Eigen::Index n) {
  if (n < 2) throw std::invalid_argument("build_fd_dirichlet: need at least 2 unknowns");
  Grid1D grid;
  grid.kind = SpaceKind::FdDirichlet;
  grid.h = 1.0 / double(n + 1);
  grid.nodes = Eigen::VectorXd::LinSpaced(n, grid.h, double(n) * grid.h);
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = -2.0 * inv_h2;
    if (i > 0) A(i, i - 1) = inv_h2;
    if (i + 1 < n) A(i, i + 1) = inv_h2;
  }
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, 2);
  C(0, 0) = inv_h2;
  C(n - 1, 1) = inv_h2;
  return DiscreteSpace(std::move(grid), std::move(A), std::move(C));
}

DiscreteSpace build_fd_mixed(Eigen::Index n) {
  if (n < 2) throw std::invalid_argument("build_fd_mixed: need at least 2 unknowns");
  Grid1D grid;
  grid.kind = SpaceKind::FdMixed;
  grid.h = 1.0 / double(n);
  grid.nodes = Eigen::VectorXd::LinSpaced(n, grid.h, 1.0);
  grid.right_is_unknown = true;
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = -2.0 * inv_h2;
    if (i > 0) A(i, i - 1) = inv_h2;
    if (i + 1 < n) A(i, i + 1) = inv_h2;
  }
  A(n - 1, n - 2) = 2.0 * inv_h2;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, 2);
  C(0, 0) = inv_h2;
  C(n - 1, 1) = 2.0 / grid.h;
  return DiscreteSpace(std::move(grid), std::move(A), std::move(C));
}

Eigen::MatrixXd differentiation_matrix(const Eigen::VectorXd& x, const Eigen::VectorXd& w) {
  const Eigen::Index m = x.size();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double diag = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i == j) continue;
      D(i, j) = (w[j] / w[i]) / (x[i] - x[j]);
      diag -= D(i, j);
    }
    D(i, i) = diag;
  }
  return D;
}

DiscreteSpace build_collocation(Eigen::Index node_count) {
  if (node_count < 4) throw std::invalid_argument("build_collocation: need at least 4 nodes");
  const Eigen::Index m = node_count;
  const Eigen::Index deg = m - 1;
  Eigen::VectorXd x(m), w(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    x[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * double(j) / double(deg)));
    w[j] = (j % 2 == 0 ? 1.0 : -1.0) * ((j == 0 || j == deg) ? 0.5 : 1.0);
  }
  x[0] = 0.0;
  x[deg] = 1.0;
  const Eigen::MatrixXd D = differentiation_matrix(x, w);
  const Eigen::MatrixXd D2 = D * D;

  Grid1D grid;
  grid.kind = SpaceKind::Collocation;
  grid.collocation_points = x;
  grid.nodes = x.segment(1, m - 2);
  grid.h = (x.tail(m - 1) - x.head(m - 1)).minCoeff();
  Eigen::MatrixXd A = D2.block(1, 1, m - 2, m - 2);
  Eigen::MatrixXd C(m - 2, 2);
  C.col(0) = D2.block(1, 0, m - 2, 1);
  C.col(1) = D2.block(1, m - 1, m - 2, 1);
  return DiscreteSpace(std::move(grid), std::move(A), std::move(C), D);
}

Eigen::VectorXd elliptic_projection(const DiscreteSpace& space, const Eigen::Vector2d& boundary_trace,
                                    const Eigen::VectorXd& Au_samples) {
  if (Au_samples.size() != space.size()) throw std::invalid_argument("elliptic_projection: dimension mismatch");
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(space.stiffness_sparse());
  if (lu.info() != Eigen::Success) throw std::runtime_error("elliptic_projection: singular operator");
  Eigen::VectorXd x = lu.solve(Au_samples - space.apply_boundary(boundary_trace));
  if (lu.info() != Eigen::Success || !x.allFinite()) throw std::runtime_error("elliptic_projection: solve failed");
  return x;
}

Consistency consistency_measure(const DiscreteSpace& space, const std::function<double(double)>& u,
                                const std::function<double(double)>& Au, const Eigen::Vector2d& boundary_trace) {
  const Eigen::VectorXd Pu = space.project(u);
  const Eigen::VectorXd Ru = elliptic_projection(space, boundary_trace, space.project(Au));
  const Eigen::VectorXd diff = Pu - Ru;
  Consistency c;
  c.eta = diff.cwiseAbs().maxCoeff();
  c.epsilon = (space.stiffness_sparse() * diff).cwiseAbs().maxCoeff();
  return c;
}

}  // namespace lawson
