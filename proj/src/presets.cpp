#include "lawson/presets.hpp"

#include <stdexcept>

namespace lawson {

namespace {

const std::vector<double> kFine = {1e-3, 5e-4, 2.5e-4, 1.25e-4};
const std::vector<double> kCoarse = {0.2, 0.1, 0.05, 0.025};

StudyConfig base(std::string name, std::string problem, Scheme scheme, std::string tableau, SpaceKind space) {
  StudyConfig c;
  c.name = std::move(name);
  c.problem = std::move(problem);
  c.scheme = scheme;
  c.tableau = std::move(tableau);
  c.space = space;
  return c;
}

}  // namespace

StudyConfig preset(const std::string& name) {
  if (name == "table2") {
    StudyConfig c = base(name, "dirichlet-vanishing", Scheme::Classical, "rk2", SpaceKind::FdDirichlet);
    c.h_list = {5e-4};
    c.k_list = kFine;
    return c;
  }
  if (name == "table3" || name == "table4") {
    StudyConfig c = base(name, "dirichlet-nonvanishing", Scheme::Classical, "rk2", SpaceKind::FdDirichlet);
    c.h_list = {2e-3, 1e-3, 5e-4};
    c.k_list = kFine;
    c.local = name == "table3";
    c.global = name == "table4";
    return c;
  }
  if (name == "table5") {
    StudyConfig c = base(name, "dirichlet-nonvanishing", Scheme::Corrected2, "rk2", SpaceKind::FdDirichlet);
    c.h_list = {5e-4};
    c.k_list = kFine;
    return c;
  }
  if (name == "table6") {
    StudyConfig c = base(name, "dirichlet-nonvanishing", Scheme::Corrected3, "rk2", SpaceKind::FdDirichlet);
    c.h_list = {5e-4};
    c.k_list = {8e-3, 4e-3, 2e-3, 1e-3};
    c.cfl_bound = 1e3;  // no time differentiation; the 2-BDF space trace stays accurate at k/h = 16
    return c;
  }
  if (name == "table7") {
    StudyConfig c = base(name, "mixed-nonvanishing", Scheme::Classical, "heun3", SpaceKind::FdMixed);
    c.h_list = {1e-3};
    c.k_list = kCoarse;
    return c;
  }
  if (name == "table8") {
    StudyConfig c = base(name, "mixed-nonvanishing", Scheme::Corrected3, "heun3", SpaceKind::FdMixed);
    c.h_list = {1e-3};
    c.k_list = kCoarse;
    c.cfl_bound = 1e3;  // the Dirichlet end is the only space-differentiated trace
    return c;
  }
  if (name == "table9") {
    StudyConfig c = base(name, "dirichlet-nonvanishing", Scheme::Corrected4, "rk4", SpaceKind::FdDirichlet);
    c.h_list = {5e-4};
    c.k_list = kCoarse;
    c.mode = BoundaryMode::ExactOracle;
    return c;
  }
  if (name == "table10") {
    StudyConfig c = base(name, "dirichlet-nonvanishing", Scheme::Corrected4, "rk4", SpaceKind::Collocation);
    c.node_list = {17};
    c.k_list = {2.5e-2, 1.25e-2, 6.25e-3, 3.125e-3};
    return c;
  }
  throw std::invalid_argument("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
  return {"table2", "table3", "table4", "table5", "table6", "table7", "table8", "table9", "table10"};
}

std::string preset_summary(const std::string& name) {
  const StudyConfig c = preset(name);
  std::string s = std::string(to_string(c.scheme)) + " " + c.tableau + " on " + c.problem + ", " + to_string(c.space) +
                  ", boundary " + to_string(c.mode);
  if (c.local && !c.global) s += ", local errors";
  if (c.global && !c.local) s += ", global errors";
  return s;
}

}  // namespace lawson
