#pragma once

#include "lawson/boundary_terms.hpp"
#include "lawson/discretization.hpp"
#include "lawson/problems.hpp"
#include "lawson/propagator.hpp"
#include "lawson/tableau.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace lawson {

enum class Scheme { Classical, Corrected2, Corrected3, Corrected4 };

const char* to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);
/// Local order targeted by the boundary correction (0 for the classical scheme).
int correction_order(Scheme scheme);

/// Thrown when the numerical solution leaves the representable regime.
class BlowUp : public std::runtime_error {
 public:
  BlowUp(long step, double norm);
  long step() const { return step_; }
  double norm() const { return norm_; }

 private:
  long step_;
  double norm_;
};

/// Everything a step needs that stays fixed over a run.
struct Setup {
  const DiscreteSpace& space;
  const LinearPropagator& propagator;
  const ManufacturedProblem& problem;
  const ButcherTableau& tableau;
};

/// One Lawson step, classical or boundary-corrected, for a fixed k.
/// Vectors are kept in the propagator's transformed coordinates between
/// stages; phi actions are cached per (scale, index).
class LawsonStepper {
 public:
  LawsonStepper(const Setup& setup, Scheme scheme, double k);

  Scheme scheme() const { return scheme_; }
  double step_size() const { return k_; }

  /// Dispatches on the scheme; corrected schemes require `terms`.
  Eigen::VectorXd step(double t_n, const Eigen::VectorXd& U_n, const BoundaryTermSet* terms = nullptr);

  Eigen::VectorXd step_classical(double t_n, const Eigen::VectorXd& U_n);
  /// Corrected step of order terms.order (2, 3 or 4).
  Eigen::VectorXd step_corrected(double t_n, const Eigen::VectorXd& U_n, const BoundaryTermSet& terms);

 private:
  Eigen::VectorXd inject(const Eigen::Vector2d& trace) const { return c_hat_ * trace; }
  Eigen::VectorXd encoded_nonlinearity(double t, const Eigen::VectorXd& K, bool with_boundary);

  Setup setup_;
  Scheme scheme_;
  double k_;
  PhiCache cache_;
  Eigen::MatrixXd c_hat_;  // encoded columns of C_h
};

struct IntegrationResult {
  Eigen::VectorXd final_state;
  double final_error = 0.0;  // max-norm error at T against P_h u(T)
  long steps = 0;
  bool blew_up = false;
  long blow_up_step = -1;
};

/// Number of steps of size k covering [0, T]; T must be a multiple of k.
long step_count(double k, double T);

/// Advances P_h u(0) to T.
IntegrationResult integrate(const Setup& setup, Scheme scheme, double k, double T, BoundaryMode mode);

/// Which restarted steps a local error summarizes.
enum class LocalErrorConvention {
  FirstStep,     // || step(P_h u(0)) - P_h u(k) ||_inf
  MaxOverSteps,  // max over n of || step(P_h u(t_n)) - P_h u(t_{n+1}) ||_inf
};

const char* to_string(LocalErrorConvention convention);

struct LocalErrorResult {
  double first_error = 0.0;
  double max_error = 0.0;  // equals first_error under FirstStep
  bool blew_up = false;
  double error(LocalErrorConvention convention) const {
    return convention == LocalErrorConvention::FirstStep ? first_error : max_error;
  }
};

/// Restarted one-step errors from P_h u(t_n). Histories for time
/// differentiation are built from P_h u at earlier times; under FirstStep
/// only n = 0 is evaluated.
LocalErrorResult local_error_sweep(const Setup& setup, Scheme scheme, double k, double T, BoundaryMode mode,
                                   LocalErrorConvention convention = LocalErrorConvention::FirstStep);

}  // namespace lawson
