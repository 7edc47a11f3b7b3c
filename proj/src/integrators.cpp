#include "lawson/integrators.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lawson {

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Classical: return "classical";
    case Scheme::Corrected2: return "corrected2";
    case Scheme::Corrected3: return "corrected3";
    case Scheme::Corrected4: return "corrected4";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "classical") return Scheme::Classical;
  if (name == "corrected2") return Scheme::Corrected2;
  if (name == "corrected3") return Scheme::Corrected3;
  if (name == "corrected4") return Scheme::Corrected4;
  throw std::invalid_argument("unknown scheme: " + name);
}

int correction_order(Scheme scheme) {
  switch (scheme) {
    case Scheme::Classical: return 0;
    case Scheme::Corrected2: return 2;
    case Scheme::Corrected3: return 3;
    case Scheme::Corrected4: return 4;
  }
  return 0;
}

BlowUp::BlowUp(long step, double norm)
    : std::runtime_error("numerical blow-up at step " + std::to_string(step)), step_(step), norm_(norm) {}

namespace {

constexpr double kBlowUpThreshold = 1e10;

void check_state(const Eigen::VectorXd& U, long step) {
  const double norm = U.cwiseAbs().maxCoeff();
  if (!std::isfinite(norm) || norm > kBlowUpThreshold) throw BlowUp(step, norm);
}

}  // namespace

LawsonStepper::LawsonStepper(const Setup& setup, Scheme scheme, double k)
    : setup_(setup), scheme_(scheme), k_(k), cache_(setup.propagator) {
  if (!(k > 0.0)) throw std::invalid_argument("LawsonStepper: k must be positive");
  if (setup.propagator.size() != setup.space.size()) throw std::invalid_argument("LawsonStepper: size mismatch");
  const Eigen::MatrixXd& C = setup.space.boundary_map();
  c_hat_.resize(C.rows(), 2);
  for (int j = 0; j < 2; ++j) c_hat_.col(j) = cache_.encode(C.col(j));
}

Eigen::VectorXd LawsonStepper::encoded_nonlinearity(double t, const Eigen::VectorXd& K, bool with_boundary) {
  Eigen::VectorXd F = cache_.encode(setup_.problem.nonlinearity(setup_.space, t, K));
  if (with_boundary) F += inject(setup_.problem.boundary_vector(0, t));
  return F;
}

Eigen::VectorXd LawsonStepper::step(double t_n, const Eigen::VectorXd& U_n, const BoundaryTermSet* terms) {
  if (scheme_ == Scheme::Classical) return step_classical(t_n, U_n);
  if (terms == nullptr) throw std::invalid_argument("LawsonStepper: corrected scheme needs boundary terms");
  if (terms->order != correction_order(scheme_)) throw std::invalid_argument("LawsonStepper: boundary terms of wrong order");
  return step_corrected(t_n, U_n, *terms);
}

Eigen::VectorXd LawsonStepper::step_classical(double t_n, const Eigen::VectorXd& U_n) {
  const ButcherTableau& tab = setup_.tableau;
  const int s = tab.stages;
  const double k = k_;
  const Eigen::VectorXd U_hat = cache_.encode(U_n);
  std::vector<Eigen::VectorXd> F(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    const double ci = tab.c[i];
    Eigen::VectorXd K;
    if (i == 0 && ci == 0.0) {
      K = U_n;
    } else {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(U_hat.size());
      cache_.accumulate(acc, ci * k, 0, 1.0, U_hat);
      for (int j = 0; j < i; ++j) cache_.accumulate(acc, (ci - tab.c[j]) * k, 0, k * tab.a(i, j), F[j]);
      K = cache_.decode(acc);
    }
    F[i] = encoded_nonlinearity(t_n + ci * k, K, true);
  }
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(U_hat.size());
  cache_.accumulate(acc, k, 0, 1.0, U_hat);
  for (int i = 0; i < s; ++i) cache_.accumulate(acc, (1.0 - tab.c[i]) * k, 0, k * tab.b[i], F[i]);
  return cache_.decode(acc);
}

Eigen::VectorXd LawsonStepper::step_corrected(double t_n, const Eigen::VectorXd& U_n, const BoundaryTermSet& terms) {
  const int p = terms.order;
  if (p < 2 || p > 4) throw std::invalid_argument("step_corrected: order must be 2, 3 or 4");
  const ButcherTableau& tab = setup_.tableau;
  const int s = tab.stages;
  const double k = k_;
  if (p >= 3 && int(terms.stage_f.size()) != s) throw std::invalid_argument("step_corrected: missing stage terms");
  if (p >= 4 && (int(terms.stage_Af.size()) != s || int(terms.composed_f.size()) != s)) {
    throw std::invalid_argument("step_corrected: missing stage terms");
  }

  // Encoded injections of the traces d A^{l-1} u, l = 1..p.
  const Eigen::Vector2d* powers[] = {&terms.u, &terms.Au, &terms.A2u, &terms.A3u};
  std::vector<Eigen::VectorXd> Au_hat(static_cast<std::size_t>(p));
  for (int l = 0; l < p; ++l) Au_hat[l] = inject(*powers[l]);
  const Eigen::VectorXd f_hat = inject(terms.f);
  const Eigen::VectorXd Af_hat = p >= 3 ? inject(terms.Af) : Eigen::VectorXd();
  const Eigen::VectorXd A2f_hat = p >= 4 ? inject(terms.A2f) : Eigen::VectorXd();

  const Eigen::VectorXd U_hat = cache_.encode(U_n);
  const Eigen::Index n = U_hat.size();
  std::vector<Eigen::VectorXd> F(static_cast<std::size_t>(s));
  std::vector<Eigen::VectorXd> stage_f_hat(static_cast<std::size_t>(s));
  if (p == 4) {
    for (int i = 0; i < s; ++i) stage_f_hat[i] = inject(terms.stage_f[i]);
  }

  for (int i = 0; i < s; ++i) {
    const double ci = tab.c[i];
    const double tau = ci * k;
    Eigen::VectorXd K;
    if (i == 0 && ci == 0.0) {
      K = U_n;
    } else {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
      cache_.accumulate(acc, tau, 0, 1.0, U_hat);
      for (int l = 1; l <= p - 1; ++l) cache_.accumulate(acc, tau, l, std::pow(tau, l), Au_hat[l - 1]);
      for (int j = 0; j < i; ++j) {
        const double w = k * tab.a(i, j);
        if (w == 0.0) continue;
        const double d = (ci - tab.c[j]) * k;
        cache_.accumulate(acc, d, 0, w, F[j]);
        if (p == 3) cache_.accumulate(acc, d, 1, w * d, f_hat);
        if (p == 4) {
          cache_.accumulate(acc, d, 1, w * d, stage_f_hat[j]);
          cache_.accumulate(acc, d, 2, w * d * d, Af_hat);
        }
      }
      K = cache_.decode(acc);
    }
    F[i] = encoded_nonlinearity(t_n + tau, K, false);
  }

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
  cache_.accumulate(acc, k, 0, 1.0, U_hat);
  for (int l = 1; l <= p; ++l) cache_.accumulate(acc, k, l, std::pow(k, l), Au_hat[l - 1]);
  for (int i = 0; i < s; ++i) {
    const double w = k * tab.b[i];
    if (w == 0.0) continue;
    const double d = (1.0 - tab.c[i]) * k;
    cache_.accumulate(acc, d, 0, w, F[i]);
    switch (p) {
      case 2:
        cache_.accumulate(acc, d, 1, w * d, f_hat);
        break;
      case 3:
        cache_.accumulate(acc, d, 1, w * d, inject(terms.stage_f[i]));
        cache_.accumulate(acc, d, 2, w * d * d, Af_hat);
        break;
      case 4:
        cache_.accumulate(acc, d, 1, w * d, inject(terms.composed_f[i]));
        cache_.accumulate(acc, d, 2, w * d * d, inject(terms.stage_Af[i]));
        cache_.accumulate(acc, d, 3, w * d * d * d, A2f_hat);
        break;
    }
  }
  return cache_.decode(acc);
}

long step_count(double k, double T) {
  if (!(k > 0.0) || !(T > 0.0)) throw std::invalid_argument("step_count: k and T must be positive");
  const double ratio = T / k;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(ratio - double(n)) > 1e-9 * ratio) throw std::invalid_argument("T must be a multiple of k");
  if (n > 10'000'000) throw std::invalid_argument("too many steps");
  return n;
}

namespace {

BoundaryTermSet terms_for(const Setup& setup, Scheme scheme, BoundaryMode mode, double t, const Eigen::VectorXd& U,
                          const TraceHistory& history, double k) {
  return boundary_terms(correction_order(scheme), setup.problem, mode, t, U, &history, setup.space, setup.tableau, k);
}

}  // namespace

IntegrationResult integrate(const Setup& setup, Scheme scheme, double k, double T, BoundaryMode mode) {
  const long steps = step_count(k, T);
  LawsonStepper stepper(setup, scheme, k);
  TraceHistory history(k);
  IntegrationResult result;
  Eigen::VectorXd U = setup.problem.project(setup.space, 0.0);
  const bool corrected = scheme != Scheme::Classical;
  for (long n = 0; n < steps; ++n) {
    const double t = double(n) * k;
    try {
      if (corrected) {
        history.push(t, U);
        const BoundaryTermSet terms = terms_for(setup, scheme, mode, t, U, history, k);
        U = stepper.step(t, U, &terms);
      } else {
        U = stepper.step(t, U);
      }
      check_state(U, n + 1);
    } catch (const BlowUp& e) {
      result.blew_up = true;
      result.blow_up_step = e.step();
      result.steps = n + 1;
      result.final_error = std::numeric_limits<double>::infinity();
      result.final_state = U;
      return result;
    } catch (const std::runtime_error&) {
      // Non-finite traces are only a blow-up symptom when the state diverges.
      if (U.allFinite() && U.cwiseAbs().maxCoeff() < 1e6) throw;
      result.blew_up = true;
      result.blow_up_step = n;
      result.steps = n;
      result.final_error = std::numeric_limits<double>::infinity();
      result.final_state = U;
      return result;
    }
  }
  result.steps = steps;
  result.final_state = U;
  result.final_error = (U - setup.problem.project(setup.space, double(steps) * k)).cwiseAbs().maxCoeff();
  return result;
}

const char* to_string(LocalErrorConvention convention) {
  return convention == LocalErrorConvention::FirstStep ? "first-step" : "max-over-steps";
}

LocalErrorResult local_error_sweep(const Setup& setup, Scheme scheme, double k, double T, BoundaryMode mode,
                                   LocalErrorConvention convention) {
  const long total = step_count(k, T);
  const long steps = convention == LocalErrorConvention::FirstStep ? 1 : total;
  LawsonStepper stepper(setup, scheme, k);
  TraceHistory history(k);
  LocalErrorResult result;
  const bool corrected = scheme != Scheme::Classical;
  Eigen::VectorXd exact = setup.problem.project(setup.space, 0.0);
  for (long n = 0; n < steps; ++n) {
    const double t = double(n) * k;
    Eigen::VectorXd next = setup.problem.project(setup.space, t + k);
    try {
      Eigen::VectorXd U1;
      if (corrected) {
        history.push(t, exact);
        const BoundaryTermSet terms = terms_for(setup, scheme, mode, t, exact, history, k);
        U1 = stepper.step(t, exact, &terms);
      } else {
        U1 = stepper.step(t, exact);
      }
      check_state(U1, n + 1);
      const double err = (U1 - next).cwiseAbs().maxCoeff();
      if (n == 0) result.first_error = err;
      result.max_error = std::max(result.max_error, err);
    } catch (const BlowUp&) {
      result.blew_up = true;
      result.max_error = std::numeric_limits<double>::infinity();
      if (n == 0) result.first_error = result.max_error;
      return result;
    }
    exact = std::move(next);
  }
  return result;
}

}  // namespace lawson
