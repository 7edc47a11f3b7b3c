// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "lawson/boundary_terms.hpp"
#include "lawson/harness.hpp"
#include "lawson/integrators.hpp"
#include "lawson/phi.hpp"
#include "lawson/presets.hpp"
#include "lawson/tableau.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace lawson;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool within_rel(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::vector<double> column(const ErrorReport& r, double ErrorRow::*field, bool skip_first = false) {
  std::vector<double> out;
  for (std::size_t i = skip_first ? 1 : 0; i < r.rows.size(); ++i) out.push_back(r.rows[i].*field);
  return out;
}

std::string list(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

// Every observed order within target +- tol. `reference` holds the published
// orders of the same pairs; a pair whose published order is itself outside
// the band (a pre-asymptotic entry) must instead reproduce that published
// order to 0.05, and is reported separately.
void check_orders(Verdict& v, const std::string& label, const std::vector<double>& orders, double target, double tol,
                  const std::vector<double>& reference = {}) {
  v.detail << ' ' << label << " orders " << list(orders);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const bool ref_outside = i < reference.size() && std::abs(reference[i] - target) > tol;
    if (ref_outside) {
      v.detail << " {pair " << i + 1 << " pre-asymptotic in the reference: " << fmt(reference[i]) << "}";
      v.require(std::abs(orders[i] - reference[i]) <= 0.05, label + " pair reproduces the reference order");
    } else {
      v.require(std::abs(orders[i] - target) <= tol, label + " order within " + fmt(target) + "+-" + fmt(tol));
    }
  }
}

void check_runtime(Verdict& v, Clock::time_point start, double limit) {
  const double t = seconds_since(start);
  v.detail << " runtime " << fmt(t) << "s";
  v.require(t <= limit, "runtime <= " + fmt(limit) + "s");
}

const ErrorRow& row_at(const ErrorReport& r, double k, double h = 0.0) {
  for (const ErrorRow& row : r.rows)
    if (std::abs(row.k - k) <= 1e-12 * k && (h == 0.0 || std::abs(row.h - h) <= 1e-12 * h)) return row;
  throw std::runtime_error("row not found");
}

Verdict criterion1() {
  Verdict v;
  const auto start = Clock::now();
  const ErrorReport r = run_study(preset("table2"));
  check_orders(v, "local", column(r, &ErrorRow::local_order, true), 1.0, 0.1);
  check_orders(v, "global", column(r, &ErrorRow::global_order, true), 1.0, 0.1);
  const double g = row_at(r, 1e-3).global_error;
  v.detail << " global(k=1e-3) " << fmt(g);
  v.require(within_rel(g, 1.3461e-3, 0.15), "global error within 15% of 1.3461e-3");
  check_runtime(v, start, 30.0);
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto start = Clock::now();
  const ErrorReport loc = run_study(preset("table3"));
  const ErrorReport glob = run_study(preset("table4"));
  const std::vector<double> hs = preset("table3").h_list;
  std::vector<double> ratios;
  for (double k : preset("table3").k_list) {
    for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
      ratios.push_back(row_at(loc, k, hs[i + 1]).local_error / row_at(loc, k, hs[i]).local_error);
      ratios.push_back(row_at(glob, k, hs[i + 1]).global_error / row_at(glob, k, hs[i]).global_error);
    }
  }
  v.detail << " error ratios under h halving " << list(ratios);
  for (double q : ratios) v.require(std::abs(q - 4.0) <= 0.5, "ratio 4.0+-0.5");
  check_runtime(v, start, 120.0);
  return v;
}

Verdict criterion3() {
  Verdict v;
  const auto start = Clock::now();
  const ErrorReport r = run_study(preset("table5"));
  check_orders(v, "local", column(r, &ErrorRow::local_order, true), 2.0, 0.05);
  check_orders(v, "global", column(r, &ErrorRow::global_order, true), 2.0, 0.05);
  const double e = row_at(r, 1e-3).local_error;
  v.detail << " local(k=1e-3) " << fmt(e);
  v.require(within_rel(e, 1.5664e-7, 0.10), "local error within 10% of 1.5664e-7");
  check_runtime(v, start, 30.0);
  return v;
}

Verdict criterion4() {
  Verdict v;
  const auto start = Clock::now();
  const ErrorReport r = run_study(preset("table6"));
  const std::vector<double> lo = column(r, &ErrorRow::local_order, true);
  v.detail << " local orders " << list(lo);
  for (double p : lo) v.require(p >= 2.9 && p <= 3.0 + 1e-12, "local order in [2.9, 3.0]");
  check_orders(v, "global", column(r, &ErrorRow::global_order, true), 2.0, 0.1);
  const double g = row_at(r, 1e-3).global_error;
  v.detail << " global(k=1e-3) " << fmt(g);
  v.require(within_rel(g, 9.2309e-9, 0.25), "global error within 25% of 9.2309e-9");
  check_runtime(v, start, 60.0);
  return v;
}

Verdict criterion5() {
  Verdict v;
  const auto start = Clock::now();
  const ErrorReport r = run_study(preset("table7"));
  for (double ErrorRow::*field : {&ErrorRow::local_order, &ErrorRow::global_order}) {
    const std::vector<double> p = column(r, field, true);
    v.detail << " orders " << list(p);
    for (double q : p) v.require(std::abs(q) <= 0.1, "|order| <= 0.1");
  }
  const std::vector<double> g = column(r, &ErrorRow::global_error);
  v.detail << " global errors " << list(g);
  for (double e : g) v.require(within_rel(e, 0.537, 0.20), "global error within 20% of 0.537");
  check_runtime(v, start, 120.0);
  return v;
}

Verdict criterion6() {
  Verdict v;
  const auto start = Clock::now();
  const ErrorReport r = run_study(preset("table8"));
  check_orders(v, "local", column(r, &ErrorRow::local_order, true), 3.0, 0.15, {2.99, 3.00, 3.00});
  check_orders(v, "global", column(r, &ErrorRow::global_order, true), 3.0, 0.15, {2.70, 2.97, 3.03});
  const double g = row_at(r, 0.025).global_error;
  v.detail << " global(k=0.025) " << fmt(g);
  v.require(within_rel(g, 3.6533e-6, 0.25), "global error within 25% of 3.6533e-6");
  check_runtime(v, start, 120.0);
  return v;
}

Verdict criterion7() {
  Verdict v;
  const auto start = Clock::now();
  const ErrorReport r = run_study(preset("table9"));
  check_orders(v, "local", column(r, &ErrorRow::local_order, true), 4.0, 0.2, {4.14, 4.08, 4.04});
  check_orders(v, "global", column(r, &ErrorRow::global_order, true), 4.0, 0.2, {4.36, 4.09, 3.95});
  const double e = row_at(r, 0.2).local_error;
  v.detail << " local(k=0.2) " << fmt(e);
  v.require(within_rel(e, 1.8356e-4, 0.15), "local error within 15% of 1.8356e-4");
  check_runtime(v, start, 60.0);
  return v;
}

Verdict criterion8() {
  Verdict v;
  const auto start = Clock::now();
  const ErrorReport r = run_study(preset("table10"));
  check_orders(v, "local", column(r, &ErrorRow::local_order, true), 4.0, 0.2);
  check_orders(v, "global", column(r, &ErrorRow::global_order, true), 4.0, 0.2);
  const std::vector<double> ref_local = {3.4537e-8, 2.0441e-9, 1.1954e-10, 6.8247e-12};
  const std::vector<double> ref_global = {3.3314e-8, 2.0054e-9, 1.1968e-10, 7.0050e-12};
  const auto factor = [](double a, double b) {
    a = std::max(a, 1e-12);
    b = std::max(b, 1e-12);
    return std::max(a / b, b / a);
  };
  std::vector<double> factors;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    factors.push_back(factor(r.rows[i].local_error, ref_local[i]));
    factors.push_back(factor(r.rows[i].global_error, ref_global[i]));
  }
  v.detail << " error factors vs reference " << list(factors);
  for (double f : factors) v.require(f <= 3.0, "errors within x3 of the reference");
  check_runtime(v, start, 30.0);
  return v;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Verdict criterion9() {
  Verdict v;
  const auto start = Clock::now();

  // phi recurrence on random stable matrices
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double recurrence = 0.0;
  for (double spread : {1.0, 100.0, 1e4}) {
    Eigen::MatrixXd R(12, 12);
    for (Eigen::Index i = 0; i < R.size(); ++i) R.data()[i] = uni(rng);
    const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(R).householderQ();
    Eigen::VectorXd lambda(12);
    for (Eigen::Index i = 0; i < 12; ++i) lambda[i] = -spread * (0.5 + 0.5 * uni(rng)) - 1e-2;
    const Eigen::MatrixXd Z = Q * lambda.asDiagonal() * Q.transpose();
    const auto ph = phi_matrices(Z, 4);
    for (int j = 0; j < 4; ++j) {
      const Eigen::MatrixXd res = Z * ph[j + 1] - ph[j] + Eigen::MatrixXd::Identity(12, 12) / detail::factorial(j);
      recurrence = std::max(recurrence, max_abs(res));
    }
  }
  v.detail << " phi recurrence " << fmt(recurrence);
  v.require(recurrence <= 1e-10, "phi recurrence residual <= 1e-10");

  // cross-backend agreement
  double cross = 0.0;
  {
    const DiscreteSpace dir = build_fd_dirichlet(40);
    const DiscreteSpace mix = build_fd_mixed(40);
    const Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(40, -1.0, 1.0).array().sin();
    for (const DiscreteSpace* s : {&dir, &mix}) {
      const LinearPropagator fast = s->make_propagator();
      const LinearPropagator dense = LinearPropagator::dense(s->stiffness());
      for (double tau : {1e-4, 1e-2, 1.0})
        for (int j = 0; j <= 4; ++j) {
          const Eigen::VectorXd ref = phi_augmented(s->stiffness(), tau, j, w);
          cross = std::max({cross, max_abs(fast.apply(tau, j, w) - ref), max_abs(dense.apply(tau, j, w) - ref)});
        }
    }
  }
  v.detail << "; cross-backend " << fmt(cross);
  v.require(cross <= 1e-10, "cross-backend phi agreement <= 1e-10");

  // corrected2 with all-zero traces equals the classical step (g = 0)
  double reduction = 0.0;
  {
    const DiscreteSpace s = build_fd_dirichlet(127);
    const LinearPropagator p = s.make_propagator();
    const ManufacturedProblem pr = make_problem("dirichlet-vanishing");
    const ButcherTableau tab = builtin_tableau("rk2");
    const Setup setup{s, p, pr, tab};
    LawsonStepper a(setup, Scheme::Classical, 0.01), b(setup, Scheme::Corrected2, 0.01);
    const BoundaryTermSet zero = BoundaryTermSet::zero(2, tab.stages);
    const Eigen::VectorXd U = pr.project(s, 0.2);
    reduction = max_abs(a.step(0.2, U) - b.step(0.2, U, &zero));
  }
  v.detail << "; zero-trace reduction " << fmt(reduction);
  v.require(reduction <= 1e-14, "corrected2 == classical under zero traces");

  // Dirichlet identity dAu + df = g'
  double identity = 0.0;
  {
    const ManufacturedProblem pr = make_problem("dirichlet-nonvanishing");
    const DiscreteSpace s = build_fd_dirichlet(63);
    const ButcherTableau tab = builtin_tableau("rk2");
    for (double t : {0.0, 0.5, 1.0}) {
      const BoundaryTermSet bt = terms_order2(pr, BoundaryMode::FromData, t, pr.project(s, t), s, tab, 0.01);
      identity = std::max(identity, max_abs(bt.Au + bt.f - pr.boundary_vector(1, t)));
    }
  }
  v.detail << "; Dirichlet identity " << fmt(identity);
  v.require(identity <= 1e-12, "dAu + df = g' exactly");

  // contractivity and audit stability
  double worst_exp = 0.0;
  bool audit_stable = true;
  for (SpaceKind kind : {SpaceKind::FdDirichlet, SpaceKind::FdMixed}) {
    const ManufacturedProblem pr =
        make_problem(kind == SpaceKind::FdMixed ? "mixed-nonvanishing" : "dirichlet-nonvanishing");
    std::vector<AuditRecord> recs;
    for (double h : {1.0 / 40, 1.0 / 80, 1.0 / 160}) recs.push_back(assumption_audit(build_space(kind, h, 0), {0.1, 0.01}, &pr));
    for (const AuditRecord& r : recs)
      for (const auto& [tau, n] : r.exp_norms) worst_exp = std::max(worst_exp, n);
    const std::vector<std::function<double(const AuditRecord&)>> constants = {
        [](const AuditRecord& r) { return r.inverse_norm; },
        [](const AuditRecord& r) { return r.inverse_boundary_norm; },
        [](const AuditRecord& r) { return r.smoothing_constant; },
        [](const AuditRecord& r) { return r.nonlinear_commutator; },
        [](const AuditRecord& r) { return r.summation_norms[0].second; },
        [](const AuditRecord& r) { return r.summation_norms[1].second; }};
    for (const auto& get : constants) {
      double lo = INFINITY, hi = 0.0;
      for (const AuditRecord& r : recs) {
        lo = std::min(lo, get(r));
        hi = std::max(hi, get(r));
      }
      audit_stable = audit_stable && hi <= 2.0 * lo;
    }
  }
  v.detail << "; max ||e^{tau A}|| " << fmt(worst_exp);
  v.require(worst_exp <= 1.0 + 1e-12, "semigroup contractivity");
  v.detail << "; audit " << (audit_stable ? "stable" : "unstable");
  v.require(audit_stable, "audit constants stable across h");

  // 3-BDF exact on cubics
  const auto cubic = [](double t) { return 0.3 + t - 2.0 * t * t + 0.7 * t * t * t; };
  std::vector<double> y;
  for (int j = 0; j < 4; ++j) y.push_back(cubic(0.4 - 0.1 * j));
  const double bdf = std::abs(bdf_time_derivative(y, 0.1, 1) - (1.0 - 4.0 * 0.4 + 2.1 * 0.16));
  v.detail << "; BDF cubic " << fmt(bdf);
  v.require(bdf <= 1e-12, "3-BDF exact on cubics");

  // tableau orders
  const bool orders = classical_order(builtin_tableau("rk2")) == 2 && classical_order(builtin_tableau("heun3")) == 3 &&
                      classical_order(builtin_tableau("rk4")) == 4;
  v.require(orders, "tableau order conditions");
  v.detail << "; tableau orders " << (orders ? "2/3/4" : "wrong");
  check_runtime(v, start, 60.0);
  return v;
}

Verdict criterion10() {
  Verdict v;
  const auto start = Clock::now();
  const ManufacturedProblem pr = make_problem("dirichlet-nonvanishing");
  const double t = 0.5;
  // nu_h: 2-BDF space derivative at both ends from P_h u
  std::vector<double> nu;
  for (int n : {40, 80, 160}) {
    const DiscreteSpace s = build_fd_dirichlet(n - 1);
    const Eigen::VectorXd U = pr.project(s, t);
    const Eigen::Vector2d g = pr.boundary_vector(0, t);
    nu.push_back(std::max(std::abs(s.boundary_derivative(Endpoint::Left, g, U) - pr.exact().partial(0, 1, t, 0.0)),
                          std::abs(s.boundary_derivative(Endpoint::Right, g, U) - pr.exact().partial(0, 1, t, 1.0))));
  }
  // mu_{k,1}, mu_{k,2}: backward differences of the nodal history
  std::vector<double> mu1, mu2;
  const DiscreteSpace s = build_fd_mixed(50);
  for (double k : {0.02, 0.01, 0.005}) {
    TraceHistory h(k);
    for (int j = 3; j >= 0; --j) h.push(t - j * k, pr.project(s, t - j * k));
    mu1.push_back(max_abs(bdf_time_derivative(h, 1) - pr.project(s, t, 1)));
    mu2.push_back(max_abs(bdf_time_derivative(h, 2) - pr.project(s, t, 2)));
  }
  const auto slopes = [](const std::vector<double>& e) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) out.push_back(std::log2(e[i] / e[i + 1]));
    return out;
  };
  check_orders(v, "nu_h", slopes(nu), 2.0, 0.1);
  check_orders(v, "mu_k1", slopes(mu1), 3.0, 0.15);
  check_orders(v, "mu_k2", slopes(mu2), 2.0, 0.15);
  check_runtime(v, start, 10.0);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"Table 2 reproduction (classical rk2, vanishing Dirichlet)", criterion1},
      {"Tables 3-4 regime (classical rk2, errors x4 under h halving)", criterion2},
      {"Table 5 reproduction (corrected2 rk2)", criterion3},
      {"Table 6 reproduction (corrected3 rk2, space numdiff)", criterion4},
      {"Table 7 regime (classical heun3, mixed D/N, no convergence)", criterion5},
      {"Table 8 reproduction (corrected3 heun3, mixed D/N)", criterion6},
      {"Table 9 reproduction (corrected4 rk4, exact traces)", criterion7},
      {"Table 10 reproduction (corrected4 rk4, collocation 17 nodes)", criterion8},
      {"property suites", criterion9},
      {"numerical-differentiation orders", criterion10}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " exception: " << e.what();
    }
    std::printf("%s %zu: %s:%s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.str().c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
