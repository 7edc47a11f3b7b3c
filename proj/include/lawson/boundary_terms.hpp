#pragma once

#include "lawson/discretization.hpp"
#include "lawson/problems.hpp"
#include "lawson/tableau.hpp"

#include <Eigen/Dense>

#include <deque>
#include <string>
#include <vector>

namespace lawson {

/// How boundary traces are produced: from the exact solution, or from
/// boundary data plus numerical differentiation of the numerical solution.
enum class BoundaryMode { ExactOracle, FromData };

const char* to_string(BoundaryMode mode);
BoundaryMode boundary_mode_from_string(const std::string& name);

/// Most recent numerical solutions, newest first, equally spaced by k.
class TraceHistory {
 public:
  explicit TraceHistory(double k, std::size_t capacity = 4);

  void push(double t, Eigen::VectorXd U);
  void clear() { entries_.clear(); }
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  double step() const { return k_; }
  /// j = 0 is the newest entry.
  double time(std::size_t j) const { return entries_.at(j).first; }
  const Eigen::VectorXd& state(std::size_t j) const { return entries_.at(j).second; }

 private:
  double k_;
  std::size_t capacity_;
  std::deque<std::pair<double, Eigen::VectorXd>> entries_;
};

/// Boundary traces consumed by the corrected steps. Every entry holds
/// (left, right) values of the boundary operator applied to the named
/// quantity at t_n. Stage entries are indexed by stage.
struct BoundaryTermSet {
  int order = 0;
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  Eigen::Vector2d Au = Eigen::Vector2d::Zero();
  Eigen::Vector2d A2u = Eigen::Vector2d::Zero();
  Eigen::Vector2d A3u = Eigen::Vector2d::Zero();
  Eigen::Vector2d f = Eigen::Vector2d::Zero();
  Eigen::Vector2d Af = Eigen::Vector2d::Zero();
  Eigen::Vector2d A2f = Eigen::Vector2d::Zero();
  /// d f(t_n + c_i k, u + c_i k u_t)
  std::vector<Eigen::Vector2d> stage_f;
  /// d A f(t_n + c_i k, u + c_i k u_t)
  std::vector<Eigen::Vector2d> stage_Af;
  /// d f(t_n + c_i k, u + c_i k Au + (c_i k)^2/2 A^2u + k sum_j a_ij [f_j + (c_i - c_j) k Af])
  std::vector<Eigen::Vector2d> composed_f;

  static BoundaryTermSet zero(int order, int stages);
  /// Finiteness of every entry the given order consumes.
  bool finite() const;
};

/// One-sided three-point derivative at an endpoint; `h` is the signed
/// spacing pointing into the domain (negative at the right end).
double bdf_space_boundary_derivative(double boundary_value, double nearest, double next, double h);

/// Backward-difference time derivative from samples y_n, y_{n-1}, y_{n-2}, y_{n-3}
/// (newest first). order 1: (11, -18, 9, -2)/(6k); order 2: (2, -5, 4, -1)/k^2.
double bdf_time_derivative(const std::vector<double>& newest_first, double k, int order);
Eigen::VectorXd bdf_time_derivative(const TraceHistory& history, int order);

/// Traces for a corrected step of the given order (2, 3 or 4) at t_n.
/// In FromData mode time-differentiated traces need four history entries;
/// with fewer, they fall back to the exact solution (startup steps).
BoundaryTermSet boundary_terms(int order, const ManufacturedProblem& problem, BoundaryMode mode, double t_n,
                               const Eigen::VectorXd& U_n, const TraceHistory* history, const DiscreteSpace& space,
                               const ButcherTableau& tableau, double k);

inline BoundaryTermSet terms_order2(const ManufacturedProblem& problem, BoundaryMode mode, double t_n,
                                    const Eigen::VectorXd& U_n, const DiscreteSpace& space,
                                    const ButcherTableau& tableau, double k) {
  return boundary_terms(2, problem, mode, t_n, U_n, nullptr, space, tableau, k);
}
inline BoundaryTermSet terms_order3(const ManufacturedProblem& problem, BoundaryMode mode, double t_n,
                                    const Eigen::VectorXd& U_n, const TraceHistory& history,
                                    const DiscreteSpace& space, const ButcherTableau& tableau, double k) {
  return boundary_terms(3, problem, mode, t_n, U_n, &history, space, tableau, k);
}
inline BoundaryTermSet terms_order4(const ManufacturedProblem& problem, BoundaryMode mode, double t_n,
                                    const Eigen::VectorXd& U_n, const TraceHistory& history,
                                    const DiscreteSpace& space, const ButcherTableau& tableau, double k) {
  return boundary_terms(4, problem, mode, t_n, U_n, &history, space, tableau, k);
}

}  // namespace lawson
