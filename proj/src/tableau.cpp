#include "lawson/tableau.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lawson {

ButcherTableau ButcherTableau::from_rationals(std::string name, std::vector<std::vector<Rational>> a,
                                              std::vector<Rational> b, std::vector<Rational> c) {
  const int s = int(b.size());
  if (s == 0 || int(c.size()) != s || int(a.size()) != s) throw std::invalid_argument("tableau: inconsistent sizes");
  ButcherTableau t;
  t.name = std::move(name);
  t.stages = s;
  t.a = Eigen::MatrixXd::Zero(s, s);
  t.b.resize(s);
  t.c.resize(s);
  for (int i = 0; i < s; ++i) {
    if (int(a[i].size()) > s) throw std::invalid_argument("tableau: row too long");
    for (int j = 0; j < int(a[i].size()); ++j) t.a(i, j) = a[i][j].value();
    t.b[i] = b[i].value();
    t.c[i] = c[i].value();
  }
  t.a_exact = std::move(a);
  t.b_exact = std::move(b);
  t.c_exact = std::move(c);
  validate(t);
  return t;
}

namespace {

// Exact p/q sum check for the simplifying assumptions.
bool rational_equal(const std::vector<Rational>& terms, Rational target) {
  long long num = 0, den = 1;
  for (const Rational& r : terms) {
    const long long l = std::lcm(den, r.den);
    num = num * (l / den) + r.num * (l / r.den);
    den = l;
  }
  return num * target.den == target.num * den;
}

}  // namespace

void validate(const ButcherTableau& tab) {
  const int s = tab.stages;
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j)
      if (tab.a(i, j) != 0.0) throw std::invalid_argument("tableau " + tab.name + ": not explicit");
  if (!rational_equal(tab.b_exact, {1, 1})) throw std::invalid_argument("tableau " + tab.name + ": weights do not sum to 1");
  for (int i = 0; i < s; ++i) {
    std::vector<Rational> row = i < int(tab.a_exact.size()) ? tab.a_exact[i] : std::vector<Rational>{};
    if (!rational_equal(row, tab.c_exact[i])) {
      throw std::invalid_argument("tableau " + tab.name + ": row sums of a differ from c");
    }
  }
}

ButcherTableau builtin_tableau(const std::string& name) {
  if (name == "rk2") {
    return ButcherTableau::from_rationals(name, {{}, {{1, 1}}}, {{1, 2}, {1, 2}}, {{0, 1}, {1, 1}});
  }
  if (name == "heun3") {
    return ButcherTableau::from_rationals(name, {{}, {{1, 3}}, {{0, 1}, {2, 3}}}, {{1, 4}, {0, 1}, {3, 4}},
                                          {{0, 1}, {1, 3}, {2, 3}});
  }
  if (name == "rk4") {
    return ButcherTableau::from_rationals(name, {{}, {{1, 3}}, {{-1, 3}, {1, 1}}, {{1, 1}, {-1, 1}, {1, 1}}},
                                          {{1, 8}, {3, 8}, {3, 8}, {1, 8}}, {{0, 1}, {1, 3}, {2, 3}, {1, 1}});
  }
  throw std::invalid_argument("unknown tableau: " + name);
}

std::vector<std::string> tableau_names() { return {"rk2", "heun3", "rk4"}; }

int classical_order(const ButcherTableau& tab) {
  validate(tab);
  const Eigen::VectorXd& b = tab.b;
  const Eigen::VectorXd& c = tab.c;
  const Eigen::MatrixXd& A = tab.a;
  const Eigen::VectorXd c2 = c.cwiseProduct(c);
  const Eigen::VectorXd Ac = A * c;
  constexpr double tol = 1e-12;
  auto ok = [&](double lhs, double rhs) { return std::abs(lhs - rhs) <= tol; };

  if (!ok(b.sum(), 1.0)) return 0;
  if (!ok(b.dot(c), 1.0 / 2.0)) return 1;
  if (!ok(b.dot(c2), 1.0 / 3.0) || !ok(b.dot(Ac), 1.0 / 6.0)) return 2;
  const bool fourth = ok(b.dot(c2.cwiseProduct(c)), 1.0 / 4.0) && ok(b.dot(c.cwiseProduct(Ac)), 1.0 / 8.0) &&
                      ok(b.dot(A * c2), 1.0 / 12.0) && ok(b.dot(A * Ac), 1.0 / 24.0);
  return fourth ? 4 : 3;
}

}  // namespace lawson
