#pragma once

#include "lawson/propagator.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <string>
#include <utility>

namespace lawson {

enum class SpaceKind { FdDirichlet, FdMixed, Collocation };
enum class Endpoint { Left = 0, Right = 1 };

const char* to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& name);

/// Grid on [0, 1]. `nodes` are the positions of the unknowns.
struct Grid1D {
  SpaceKind kind = SpaceKind::FdDirichlet;
  Eigen::VectorXd nodes;
  /// Uniform spacing for finite differences, smallest node gap for collocation.
  double h = 0.0;
  bool left_is_unknown = false;
  bool right_is_unknown = false;
  /// Collocation only: all Gauss-Lobatto points including both endpoints.
  Eigen::VectorXd collocation_points;
};

/// Semidiscrete operator pair: U' = A U + C_h g(t) + f(t, U).
class DiscreteSpace {
 public:
  DiscreteSpace(Grid1D grid, Eigen::MatrixXd stiffness, Eigen::MatrixXd boundary_map,
                Eigen::MatrixXd differentiation = {});

  const Grid1D& grid() const { return grid_; }
  Eigen::Index size() const { return grid_.nodes.size(); }
  SpaceKind kind() const { return grid_.kind; }
  double h() const { return grid_.h; }
  /// CFL exponent of the boundary numerical differentiation (first derivative
  /// of a second-order operator).
  double gamma() const { return 1.0; }

  /// A_{h,0}, dense.
  const Eigen::MatrixXd& stiffness() const { return a_; }
  /// A_{h,0}, sparse (tridiagonal for finite differences).
  const Eigen::SparseMatrix<double>& stiffness_sparse() const { return a_sparse_; }
  /// C_h as an N x 2 matrix acting on (g_left, g_right).
  const Eigen::MatrixXd& boundary_map() const { return c_; }
  Eigen::VectorXd apply_boundary(const Eigen::Vector2d& g) const { return c_ * g; }

  /// P_h: nodal values of a function of x.
  Eigen::VectorXd project(const std::function<double(double)>& fn) const;

  /// x-derivative at an endpoint estimated from the endpoint value and
  /// interior unknowns: one-sided second-order (2-BDF) stencil for finite
  /// differences, derivative of the interpolating polynomial for collocation.
  /// `boundary_values` holds (left, right) endpoint values; only the ones the
  /// stencil touches are read.
  double boundary_derivative(Endpoint side, const Eigen::Vector2d& boundary_values, const Eigen::VectorXd& U) const;

  /// Picks the fastest exact backend for this operator.
  LinearPropagator make_propagator() const;
  /// Forces a backend (Sine only valid for FdDirichlet).
  LinearPropagator make_propagator(Backend backend) const;

 private:
  Grid1D grid_;
  Eigen::MatrixXd a_;
  Eigen::SparseMatrix<double> a_sparse_;
  Eigen::MatrixXd c_;
  Eigen::MatrixXd diff_;  // collocation differentiation matrix over all points
};

/// tridiag(1,-2,1)/h^2 on x_i = i h, h = 1/(n+1); C_h (g0, g1) = (g0, 0, ..., 0, g1)/h^2.
DiscreteSpace build_fd_dirichlet(Eigen::Index n);

/// Dirichlet at x=0, Neumann at x=1 on x_i = i h, h = 1/n (x_n = 1 is an
/// unknown). Last row (..., 2, -2)/h^2; C_h (g0, g1) = (g0/h^2, 0, ..., 0, 2 g1/h).
DiscreteSpace build_fd_mixed(Eigen::Index n);

/// Chebyshev-Gauss-Lobatto collocation with `node_count` points on [0, 1]
/// and Dirichlet data folded in by eliminating the endpoint rows/columns of D^2.
DiscreteSpace build_collocation(Eigen::Index node_count);

/// Convenience: unknown count for a requested spacing.
Eigen::Index fd_dirichlet_size(double h);
Eigen::Index fd_mixed_size(double h);

/// Barycentric differentiation matrix on distinct nodes.
Eigen::MatrixXd differentiation_matrix(const Eigen::VectorXd& nodes, const Eigen::VectorXd& weights);

/// R_h u = A^{-1}(P_h(Au) - C_h du): the elliptic projection.
Eigen::VectorXd elliptic_projection(const DiscreteSpace& space, const Eigen::Vector2d& boundary_trace,
                                    const Eigen::VectorXd& Au_samples);

struct Consistency {
  double epsilon = 0.0;  // ||A (P_h u - R_h u)||_inf
  double eta = 0.0;      // ||P_h u - R_h u||_inf
};

/// Consistency of the discretization on a smooth u: u and Au = u'' given as
/// functions of x, boundary_trace = du in the operator's boundary convention.
Consistency consistency_measure(const DiscreteSpace& space, const std::function<double(double)>& u,
                                const std::function<double(double)>& Au, const Eigen::Vector2d& boundary_trace);

}  // namespace lawson
