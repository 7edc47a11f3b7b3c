#pragma once

#include "lawson/boundary_terms.hpp"
#include "lawson/discretization.hpp"
#include "lawson/integrators.hpp"
#include "lawson/problems.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lawson {

/// One convergence study: every (space resolution, k) pair is a row.
struct StudyConfig {
  std::string name;
  std::string problem = "dirichlet-nonvanishing";
  Scheme scheme = Scheme::Classical;
  std::string tableau = "rk2";
  SpaceKind space = SpaceKind::FdDirichlet;
  /// Grid spacings for finite differences (descending).
  std::vector<double> h_list;
  /// Collocation point counts (ascending resolution).
  std::vector<int> node_list;
  /// Time steps (descending).
  std::vector<double> k_list;
  double T = 1.0;
  BoundaryMode mode = BoundaryMode::FromData;
  bool local = true;
  LocalErrorConvention local_convention = LocalErrorConvention::FirstStep;
  bool global = true;
  /// Warning threshold for k / h^gamma in runs that differentiate numerically in space.
  double cfl_bound = 10.0;
};

/// Throws std::invalid_argument on an inconsistent configuration.
void validate(const StudyConfig& cfg);

struct ErrorRow {
  double k = 0.0;
  double h = 0.0;
  double local_error = std::numeric_limits<double>::quiet_NaN();
  double global_error = std::numeric_limits<double>::quiet_NaN();
  double local_order = std::numeric_limits<double>::quiet_NaN();
  double global_order = std::numeric_limits<double>::quiet_NaN();
  double cfl_ratio = 0.0;
  std::string status = "ok";
};

struct ErrorReport {
  std::string name;
  std::vector<ErrorRow> rows;
  std::vector<std::string> warnings;

  bool blew_up() const;
};

/// log(e1/e2)/log(k1/k2); NaN unless both errors are positive and finite.
double observed_order(double e1, double e2, double k1, double k2);

/// Builds the space for one resolution entry of a config.
DiscreteSpace build_space(SpaceKind kind, double h, int nodes);

/// Runs every row (rows are independent and may run in parallel; the
/// report is assembled in config order). Blow-ups become rows with
/// infinite error and status "blow-up".
ErrorReport run_study(const StudyConfig& cfg);

/// Sampled hypothesis constants of a space discretization.
struct AuditRecord {
  double h = 0.0;
  Eigen::Index n = 0;
  std::vector<std::pair<double, double>> exp_norms;        // (tau, ||e^{tau A}||_inf)
  double inverse_norm = 0.0;                               // ||A^{-1}||_inf
  double inverse_boundary_norm = 0.0;                      // ||A^{-1} C_h||_inf
  double smoothing_constant = 0.0;                         // max_tau ||tau A e^{tau A}||_inf
  std::vector<std::pair<double, double>> summation_norms;  // (k, max_{nk<=1} ||kA sum_{r<n} e^{rkA}||_inf)
  double nonlinear_commutator = std::numeric_limits<double>::quiet_NaN();  // ||A^{-1} f_u A||_inf
  std::vector<std::string> notes;
};

/// Matrix-function samples need a dense matrix function, so they are
/// skipped (left empty) above `dense_limit` unknowns.
AuditRecord assumption_audit(const DiscreteSpace& space, const std::vector<double>& k_list,
                             const ManufacturedProblem* problem = nullptr, Eigen::Index dense_limit = 400);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

void emit_csv(const ErrorReport& report, const std::string& path);
std::string to_csv(const ErrorReport& report);

/// Worker count: LAWSON_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

}  // namespace lawson
