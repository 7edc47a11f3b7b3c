#include "lawson/cli.hpp"

#include "lawson/harness.hpp"
#include "lawson/presets.hpp"
#include "lawson/tableau.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

namespace lawson {

namespace {

int finish(const ErrorReport& report, const std::string& out_path, std::ostream& out, std::ostream& err) {
  for (const std::string& w : report.warnings) err << "warning: " << w << '\n';
  if (out_path.empty()) {
    out << to_csv(report);
  } else {
    emit_csv(report, out_path);
  }
  if (report.blew_up()) {
    err << "numerical blow-up in at least one row\n";
    return kExitBlowUp;
  }
  return kExitOk;
}

void print_audit(const AuditRecord& a, std::ostream& out) {
  out << "h = " << format_double(a.h) << ", unknowns = " << a.n << '\n';
  out << "||A^-1||_inf = " << format_double(a.inverse_norm) << '\n';
  out << "||A^-1 C_h||_inf = " << format_double(a.inverse_boundary_norm) << '\n';
  for (const auto& [tau, v] : a.exp_norms) out << "||exp(" << format_double(tau) << " A)||_inf = " << format_double(v) << '\n';
  if (!a.exp_norms.empty()) out << "max_tau ||tau A exp(tau A)||_inf = " << format_double(a.smoothing_constant) << '\n';
  for (const auto& [k, v] : a.summation_norms)
    out << "max_{nk<=1} ||kA sum_{r<n} exp(rkA)||_inf at k = " << format_double(k) << ": " << format_double(v) << '\n';
  if (std::isfinite(a.nonlinear_commutator))
    out << "||A^-1 f_u A||_inf = " << format_double(a.nonlinear_commutator) << '\n';
  for (const std::string& note : a.notes) out << "note: " << note << '\n';
  out << "note: at Robin/Neumann ends the stage traces of A f also carry a k mu_{k,2} error "
         "(second time derivative by 3-BDF), which is not sampled here\n";
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lawson exponential integrators for 1-D reaction-diffusion problems"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  std::string problem = "dirichlet-nonvanishing", scheme = "classical", tableau = "rk2", space = "fd-dirichlet";
  std::string mode = "data", out_path, preset_name;
  double h = 5e-4, T = 1.0;
  int nodes = 17;
  std::vector<double> k_list;

  auto* run = app.add_subcommand("run", "Run a custom convergence study and write CSV");
  run->set_help_flag("--help", "Print this help message and exit");
  run->add_option("--problem", problem, "Problem id (see `list`)")->capture_default_str();
  run->add_option("--scheme", scheme, "classical | corrected2 | corrected3 | corrected4")
      ->check(CLI::IsMember({"classical", "corrected2", "corrected3", "corrected4"}))
      ->capture_default_str();
  run->add_option("--tableau", tableau, "rk2 | heun3 | rk4")->check(CLI::IsMember({"rk2", "heun3", "rk4"}))->capture_default_str();
  run->add_option("--space", space, "fd-dirichlet | fd-mixed | collocation")
      ->check(CLI::IsMember({"fd-dirichlet", "fd-mixed", "collocation"}))
      ->capture_default_str();
  auto* h_opt = run->add_option("--h", h, "Grid spacing for finite differences")->check(CLI::Range(1e-7, 0.5));
  auto* nodes_opt = run->add_option("--nodes", nodes, "Collocation points")->check(CLI::Range(4, 400));
  h_opt->excludes(nodes_opt);
  run->add_option("--k", k_list, "Time steps, comma separated, descending")->delimiter(',')->required();
  run->add_option("--T", T, "Final time")->capture_default_str();
  run->add_option("--boundary-mode", mode, "oracle | data")->check(CLI::IsMember({"oracle", "data"}))->capture_default_str();
  run->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  auto* pre = app.add_subcommand("preset", "Run a named reference study (table2 ... table10)");
  pre->add_option("--name", preset_name, "Preset name")->required();
  pre->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  auto* audit = app.add_subcommand("audit", "Report sampled hypothesis constants of a space discretization");
  audit->set_help_flag("--help", "Print this help message and exit");
  audit->add_option("--space", space, "fd-dirichlet | fd-mixed | collocation")
      ->check(CLI::IsMember({"fd-dirichlet", "fd-mixed", "collocation"}))
      ->capture_default_str();
  audit->add_option("--h", h, "Grid spacing")->check(CLI::Range(1e-7, 0.5));
  audit->add_option("--nodes", nodes, "Collocation points")->check(CLI::Range(4, 400));
  audit->add_option("--k", k_list, "Time steps for the summation audit")->delimiter(',');

  auto* list = app.add_subcommand("list", "List problems, tableaus and presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (list->parsed()) {
      out << "problems:\n";
      for (const auto& id : problem_ids()) out << "  " << id << '\n';
      out << "tableaus:\n";
      for (const auto& t : tableau_names()) out << "  " << t << " (classical order " << classical_order(builtin_tableau(t)) << ")\n";
      out << "presets:\n";
      for (const auto& p : preset_names()) out << "  " << p << ": " << preset_summary(p) << '\n';
      return kExitOk;
    }
    if (audit->parsed()) {
      const SpaceKind kind = space_kind_from_string(space);
      const DiscreteSpace ds = build_space(kind, h, nodes);
      const ManufacturedProblem p =
          make_problem(kind == SpaceKind::FdMixed ? "mixed-nonvanishing" : "dirichlet-nonvanishing");
      if (k_list.empty()) k_list = {0.1, 0.01};
      print_audit(assumption_audit(ds, k_list, &p), out);
      return kExitOk;
    }
    if (pre->parsed()) {
      StudyConfig cfg;
      try {
        cfg = preset(preset_name);
      } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return kExitUsage;
      }
      return finish(run_study(cfg), out_path, out, err);
    }
    StudyConfig cfg;
    cfg.name = "run";
    cfg.problem = problem;
    cfg.scheme = scheme_from_string(scheme);
    cfg.tableau = tableau;
    cfg.space = space_kind_from_string(space);
    if (cfg.space == SpaceKind::Collocation) {
      cfg.node_list = {nodes};
    } else {
      cfg.h_list = {h};
    }
    cfg.k_list = k_list;
    cfg.T = T;
    cfg.mode = boundary_mode_from_string(mode);
    try {
      validate(cfg);
    } catch (const std::invalid_argument& e) {
      err << "usage error: " << e.what() << '\n';
      return kExitUsage;
    }
    if ((cfg.scheme == Scheme::Corrected3 && classical_order(builtin_tableau(tableau)) < 2) ||
        (cfg.scheme == Scheme::Corrected4 && classical_order(builtin_tableau(tableau)) < 3)) {
      err << "warning: " << scheme << " with " << tableau << " does not reach the corrected global order\n";
    }
    return finish(run_study(cfg), out_path, out, err);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace lawson
