#include "lawson/harness.hpp"

#include "lawson/tableau.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lawson {

bool ErrorReport::blew_up() const {
  return std::any_of(rows.begin(), rows.end(), [](const ErrorRow& r) { return r.status == "blow-up"; });
}

double observed_order(double e1, double e2, double k1, double k2) {
  if (!(e1 > 0.0) || !(e2 > 0.0) || !std::isfinite(e1) || !std::isfinite(e2) || k1 == k2) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::log(e1 / e2) / std::log(k1 / k2);
}

void validate(const StudyConfig& cfg) {
  if (cfg.k_list.empty()) throw std::invalid_argument("study: empty k list");
  for (double k : cfg.k_list)
    if (!(k > 0.0)) throw std::invalid_argument("study: k must be positive");
  if (!std::is_sorted(cfg.k_list.rbegin(), cfg.k_list.rend())) throw std::invalid_argument("study: k list must be descending");
  if (!(cfg.T > 0.0)) throw std::invalid_argument("study: T must be positive");
  if (cfg.space == SpaceKind::Collocation) {
    if (cfg.node_list.empty()) throw std::invalid_argument("study: collocation needs node counts");
  } else {
    if (cfg.h_list.empty()) throw std::invalid_argument("study: empty h list");
    for (double h : cfg.h_list)
      if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("study: h must lie in (0, 1)");
    if (!std::is_sorted(cfg.h_list.rbegin(), cfg.h_list.rend())) throw std::invalid_argument("study: h list must be descending");
  }
  if (!cfg.local && !cfg.global) throw std::invalid_argument("study: nothing to compute");
  for (double k : cfg.k_list) step_count(k, cfg.T);
  const ManufacturedProblem problem = make_problem(cfg.problem);
  const bool mixed = !problem.condition(Endpoint::Right).is_dirichlet();
  if (mixed != (cfg.space == SpaceKind::FdMixed)) {
    throw std::invalid_argument("study: problem " + cfg.problem + " does not match space " + to_string(cfg.space));
  }
  builtin_tableau(cfg.tableau);
}

DiscreteSpace build_space(SpaceKind kind, double h, int nodes) {
  switch (kind) {
    case SpaceKind::FdDirichlet: return build_fd_dirichlet(fd_dirichlet_size(h));
    case SpaceKind::FdMixed: return build_fd_mixed(fd_mixed_size(h));
    case SpaceKind::Collocation: return build_collocation(nodes);
  }
  throw std::invalid_argument("unknown space kind");
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LAWSON_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(std::min<long>(v, hw));
  }
  return hw;
}

namespace {

struct Resolution {
  std::unique_ptr<DiscreteSpace> space;
  std::unique_ptr<LinearPropagator> propagator;
};

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ErrorReport run_study(const StudyConfig& cfg) {
  validate(cfg);
  const ManufacturedProblem problem = make_problem(cfg.problem);
  const ButcherTableau tableau = builtin_tableau(cfg.tableau);

  const std::size_t n_res = cfg.space == SpaceKind::Collocation ? cfg.node_list.size() : cfg.h_list.size();
  std::vector<Resolution> res(n_res);
  for (std::size_t r = 0; r < n_res; ++r) {
    const double h = cfg.space == SpaceKind::Collocation ? 0.0 : cfg.h_list[r];
    const int nodes = cfg.space == SpaceKind::Collocation ? cfg.node_list[r] : 0;
    res[r].space = std::make_unique<DiscreteSpace>(build_space(cfg.space, h, nodes));
    res[r].propagator = std::make_unique<LinearPropagator>(res[r].space->make_propagator());
  }

  ErrorReport report;
  report.name = cfg.name;
  const std::size_t nk = cfg.k_list.size();
  report.rows.resize(n_res * nk);
  parallel_for(report.rows.size(), [&](std::size_t idx) {
    const Resolution& r = res[idx / nk];
    const double k = cfg.k_list[idx % nk];
    const Setup setup{*r.space, *r.propagator, problem, tableau};
    ErrorRow& row = report.rows[idx];
    row.k = k;
    row.h = r.space->h();
    row.cfl_ratio = k / std::pow(row.h, r.space->gamma());
    if (cfg.local) {
      const LocalErrorResult loc = local_error_sweep(setup, cfg.scheme, k, cfg.T, cfg.mode, cfg.local_convention);
      row.local_error = loc.error(cfg.local_convention);
      if (loc.blew_up) row.status = "blow-up";
    }
    if (cfg.global) {
      const IntegrationResult glob = integrate(setup, cfg.scheme, k, cfg.T, cfg.mode);
      row.global_error = glob.final_error;
      if (glob.blew_up) row.status = "blow-up";
    }
  });

  for (std::size_t r = 0; r < n_res; ++r) {
    for (std::size_t i = 1; i < nk; ++i) {
      ErrorRow& cur = report.rows[r * nk + i];
      const ErrorRow& prev = report.rows[r * nk + i - 1];
      cur.local_order = observed_order(prev.local_error, cur.local_error, prev.k, cur.k);
      cur.global_order = observed_order(prev.global_error, cur.global_error, prev.k, cur.k);
    }
  }

  const bool space_numdiff = cfg.mode == BoundaryMode::FromData &&
                             (cfg.scheme == Scheme::Corrected3 || cfg.scheme == Scheme::Corrected4);
  if (space_numdiff) {
    for (ErrorRow& row : report.rows) {
      if (row.cfl_ratio > cfg.cfl_bound && row.status == "ok") {
        row.status = "cfl-exceeded";
        report.warnings.push_back("k/h = " + format_double(row.cfl_ratio) + " exceeds the CFL bound " +
                                  format_double(cfg.cfl_bound) + " at k = " + format_double(row.k));
      }
    }
  }
  const int order = classical_order(tableau);
  if ((cfg.scheme == Scheme::Corrected3 && order < 2) || (cfg.scheme == Scheme::Corrected4 && order < 3)) {
    report.warnings.push_back(std::string(to_string(cfg.scheme)) + " with tableau " + cfg.tableau + " of classical order " +
                              std::to_string(order) + ": the global-order claim needs a higher-order tableau");
  }
  return report;
}

namespace {

double inf_norm(const Eigen::MatrixXd& M) { return M.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

AuditRecord assumption_audit(const DiscreteSpace& space, const std::vector<double>& k_list,
                             const ManufacturedProblem* problem, Eigen::Index dense_limit) {
  AuditRecord rec;
  rec.h = space.h();
  rec.n = space.size();
  const Eigen::Index n = space.size();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(space.stiffness_sparse());
  if (lu.info() != Eigen::Success) throw std::runtime_error("assumption_audit: singular operator");
  const Eigen::MatrixXd Ainv = lu.solve(Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n)));
  rec.inverse_norm = inf_norm(Ainv);
  rec.inverse_boundary_norm = inf_norm(Ainv * space.boundary_map());

  if (problem != nullptr) {
    const Eigen::VectorXd u = problem->project(space, 0.5);
    Eigen::VectorXd fu(n);
    for (Eigen::Index i = 0; i < n; ++i) fu[i] = problem->reaction().derivative(1, u[i]);
    rec.nonlinear_commutator = inf_norm(Ainv * (fu.asDiagonal() * space.stiffness()));
  }

  if (n > dense_limit) {
    rec.notes.push_back("matrix-function samples skipped above " + std::to_string(dense_limit) + " unknowns");
    return rec;
  }
  const LinearPropagator prop = space.make_propagator();
  for (double tau : {1e-4, 1e-2, 1.0, 10.0}) {
    rec.exp_norms.emplace_back(tau, inf_norm(prop.matrix_function([tau](double l) { return std::exp(tau * l); })));
  }
  for (int i = 0; i <= 8; ++i) {
    const double tau = std::pow(10.0, -4.0 + 0.5 * i);
    const double v = inf_norm(prop.matrix_function([tau](double l) { return tau * l * std::exp(tau * l); }));
    rec.smoothing_constant = std::max(rec.smoothing_constant, v);
  }
  for (double k : k_list) {
    const long steps = std::max(1L, std::lround(std::floor(1.0 / k + 1e-9)));
    std::vector<long> samples;
    if (steps <= 40) {
      for (long m = 2; m <= steps; ++m) samples.push_back(m);
    } else {
      for (int i = 0; i <= 20; ++i) samples.push_back(std::lround(std::pow(double(steps), i / 20.0)));
    }
    double worst = 0.0;
    for (long m : samples) {
      if (m < 2) continue;
      // k lambda sum_{r=1}^{m-1} e^{r k lambda} in closed form.
      const auto fn = [k, m](double l) {
        const double z = k * l;
        if (std::abs(z) < 1e-12) return 0.0;
        return z * std::exp(z) * (1.0 - std::exp(double(m - 1) * z)) / (1.0 - std::exp(z));
      };
      worst = std::max(worst, inf_norm(prop.matrix_function(fn)));
    }
    rec.summation_norms.emplace_back(k, worst);
  }
  return rec;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const ErrorReport& report) {
  std::ostringstream out;
  out << "k,h,local_error,global_error,local_order,global_order,cfl_ratio,status\n";
  for (const ErrorRow& r : report.rows) {
    out << format_double(r.k) << ',' << format_double(r.h) << ',' << format_double(r.local_error) << ','
        << format_double(r.global_error) << ',' << format_double(r.local_order) << ','
        << format_double(r.global_order) << ',' << format_double(r.cfl_ratio) << ',' << r.status << '\n';
  }
  return out.str();
}

void emit_csv(const ErrorReport& report, const std::string& path) {
  const std::string text = to_csv(report);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw std::runtime_error("failed writing " + path);
}

}  // namespace lawson
