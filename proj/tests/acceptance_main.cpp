// Acceptance runner: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "stieltjes/builtins.hpp"
#include "stieltjes/criteria.hpp"
#include "stieltjes/fractional.hpp"
#include "stieltjes/order.hpp"
#include "stieltjes/quadrature.hpp"
#include "stieltjes/reproduce.hpp"
#include "stieltjes/specfun.hpp"
#include "stieltjes/transform.hpp"

using namespace stieltjes;
using specfun::gamma_fn;
using Complex = std::complex<double>;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx,
              name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- corpus shared by the operator-level criteria --------------------

struct CorpusEntry {
  std::string name;
  Measure measure;
  double alpha;  // a valid representation order
};

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> c;
  c.push_back({"point mass at 1", Measure::dirac(1.0, 1.0), 1.0});
  {
    DensityPiece p;
    p.lo = 1.0;
    p.hi = 3.0;
    p.terms.push_back({1.0, 0.0, 0.0, 0.0, kInf, 0.0});
    c.push_back({"point mass at 2 plus block on (1,3)",
                 Measure(0.0, 0.0, {{2.0, 1.0}}, {p}), 1.0});
  }
  c.push_back({"block on (0,1)", builtins::block01_measure(), 1.0});
  c.push_back({"block on (1,inf)", builtins::block1inf_measure(), 2.0});
  {
    DensityPiece p;
    p.lo = 0.0;
    p.hi = 1.0;
    p.terms.push_back({1.0, -0.5, 0.0, 0.0, kInf, 0.0});
    c.push_back({"square-root density on (0,1)",
                 Measure(0.0, 0.0, {}, {p}), 1.0});
  }
  c.push_back({"two point masses",
               Measure(0.0, 0.0, {{0.5, 1.0}, {4.0, 0.5}}, {}), 1.0});
  return c;
}

double interior_membership(const Measure& m, double s) {
  return membership_integral(m, s) - m.atom_zero();
}

bool all_pass(const std::vector<repro::CheckResult>& checks,
              std::string& detail) {
  for (const auto& c : checks) {
    if (!c.pass) {
      detail = c.name + ": " + c.detail;
      return false;
    }
  }
  detail = std::to_string(checks.size()) + " checks";
  return true;
}

// ---- criteria ---------------------------------------------------------

void criterion1() {
  std::mt19937 rng(20130614);
  std::uniform_real_distribution<double> ad(0.3, 2.5), gap(0.2, 2.0),
      ud(0.0, 3.0), zd(0.1, 4.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double alpha = ad(rng), beta = alpha + gap(rng);
    const double u = ud(rng), z = zd(rng);
    quad::SingularIntegrand s;
    s.f = [=](double t) { return std::pow(z + u + t, -beta); };
    s.a = 0.0;
    s.b = kInf;
    s.exponent_a = beta - alpha - 1.0;
    s.exponent_b = -alpha - 1.0;
    const double g =
        gamma_fn(beta) / (gamma_fn(alpha) * gamma_fn(beta - alpha));
    const double got = g * quad::integrate_core(s, 1e-11).value;
    const double want = std::pow(u + z, -alpha);
    worst = std::max(worst, std::fabs(got - want) / want);
  }
  report(1, "power-kernel identity over 20 random parameter draws",
         worst <= 1e-8, "max rel err " + fmt(worst));
}

void criterion2() {
  bool pass = true;
  std::string detail;
  for (double alpha : {1.5, 2.0, 3.0}) {
    builtins::BuiltinParams p;
    p.alpha = alpha;
    std::string d;
    if (!all_pass(repro::reproduce_builtin("example1", p), d)) {
      pass = false;
      detail = "alpha=" + fmt(alpha) + ": " + d;
      break;
    }
  }
  if (pass) detail = "alpha in {1.5, 2, 3}";
  report(2, "bounded-block example: values, smoothing, compactness", pass,
         detail);
}

void criterion3() {
  builtins::BuiltinParams p;
  p.alpha = 2.0;
  std::string detail;
  const bool pass = all_pass(repro::reproduce_builtin("example2", p), detail);
  report(3, "unbounded-block example: smoothing, monotonicity, order drop",
         pass, detail);
}

void criterion4() {
  const auto start = std::chrono::steady_clock::now();
  builtins::BuiltinParams p;  // defaults a=0.5, b=1, c=2
  std::string detail;
  const bool pass = all_pass(repro::reproduce_builtin("example3", p), detail);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(4, "hypergeometric example: doubling ratio and Euler cross-check",
         pass && secs < 60.0, detail + ", " + fmt(secs) + " s");
}

void criterion5() {
  double worst = 0.0;
  std::string where;
  for (const auto& e : corpus()) {
    const double alpha = e.alpha + 0.2, eta = 0.7;
    const double rhs = gamma_fn(alpha) / gamma_fn(alpha + eta) *
                       interior_membership(e.measure, alpha);
    {
      const double lhs =
          interior_membership(rl_left(e.measure, eta), alpha + eta);
      const double err = std::fabs(lhs - rhs) / std::fabs(rhs);
      if (err > worst) {
        worst = err;
        where = e.name + " (left)";
      }
    }
    {
      const double lhs = interior_membership(
          kober_right(e.measure, alpha, eta), alpha + eta);
      const double err = std::fabs(lhs - rhs) / std::fabs(rhs);
      if (err > worst) {
        worst = err;
        where = e.name + " (right)";
      }
    }
  }
  report(5, "Gamma-ratio membership identity for both operators over corpus",
         worst <= 1e-6, "max rel err " + fmt(worst) + " at " + where);
}

void criterion6() {
  double worst = 0.0;
  bool pass = true;
  for (double eta : {0.3, 0.5, 0.9}) {
    {
      const Measure nu = rl_left(Measure::dirac(1.0, 1.0), eta);
      const auto F = rl_left_invert(nu, eta);
      for (const double y : log_grid(0.1, 10.0, 64)) {
        if (std::fabs(y - 1.0) < 0.05) continue;
        const double want = y > 1.0 ? 1.0 : 0.0;
        worst = std::max(worst, std::fabs(F.value(y) - want));
      }
    }
    {
      const Measure tau =
          kober_right(Measure::dirac(2.0, 1.0), 1.0, eta);
      const auto inv = kober_right_invert(tau, 1.0, eta);
      for (const double y : log_grid(0.4, 10.0, 64)) {
        if (std::fabs(y - 2.0) < 0.05) continue;
        const double want = y > 2.0 ? 1.0 : 0.0;
        worst = std::max(worst, std::fabs(inv.distribution.value(y) - want));
      }
      if (std::fabs(inv.mu_infinity) > 1e-3) pass = false;
    }
  }
  // mass-at-infinity recovery on a member that has one
  const Measure tau =
      kober_right(Measure().with_atom_infinity(1.0), 1.0, 0.5);
  const auto inv = kober_right_invert(tau, 1.0, 0.5);
  const double mu_inf_err = std::fabs(inv.mu_infinity - 1.0);
  pass = pass && worst <= 2e-4 && mu_inf_err <= 1e-3;
  report(6, "inversion round trips at eta in {0.3, 0.5, 0.9}", pass,
         "max |F - truth| " + fmt(worst) + ", mass-at-inf err " +
             fmt(mu_inf_err));
}

void criterion7() {
  const double alpha = 1.0, eta = 0.5;
  double worst = 0.0;
  const std::vector<CorpusEntry> cs = corpus();
  const std::vector<std::string> picks = {"point mass at 1",
                                          "point mass at 2 plus block on (1,3)",
                                          "block on (0,1)"};
  for (const auto& e : cs) {
    if (std::find(picks.begin(), picks.end(), e.name) == picks.end())
      continue;
    const Measure lhs = involution(rl_left(e.measure, eta), alpha + eta);
    const Measure rhs = kober_right(involution(e.measure, alpha), alpha, eta);
    for (const double y : log_grid(0.05, 3.0, 25)) {
      const double a = density_at(lhs, y), b = density_at(rhs, y);
      worst = std::max(worst, std::fabs(a - b) / (1.0 + std::fabs(a)));
    }
  }
  report(7, "involution conjugates the two fractional integrals",
         worst <= 1e-6, "max density mismatch " + fmt(worst));
}

void criterion8() {
  bool pass = true;
  for (int n = 1; n <= 10 && pass; ++n) {
    const auto ln = lah_expand(n);
    const auto lnext = lah_expand(n + 1);
    for (int m = 1; m <= n + 1; ++m) {
      const double up = (m <= n) ? std::fabs(ln(m)) : 0.0;
      const double left = (m >= 2) ? std::fabs(ln(m - 1)) : 0.0;
      if (std::fabs(lnext(m)) != (n + m) * up + left) pass = false;
    }
  }
  // operator expansion on monomials x^k for n <= 4
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const auto ln = lah_expand(n);
    for (double k : {0.0, 1.0, 2.5, -0.7}) {
      double coef = 1.0, expo = k;
      for (int i = 0; i < n; ++i) {
        coef *= -expo;
        expo += 1.0;
      }
      double sum = 0.0;
      for (int m = 1; m <= n; ++m)
        sum += ln(m) * specfun::falling_factorial(k, m);
      worst = std::max(worst, std::fabs(sum - coef) / (1.0 + std::fabs(coef)));
    }
  }
  pass = pass && worst <= 1e-13;
  report(8, "factorial-binomial coefficients: recurrence and operator law",
         pass, "monomial check err " + fmt(worst));
}

void criterion9() {
  double worst_down = 0.0, worst_up = 0.0, worst_round = 0.0;
  // point-mass family
  {
    StieltjesFunction f2{Measure::dirac(1.0, 1.0), 2.0};
    StieltjesFunction f1{Measure::dirac(1.0, 1.0), 1.0};
    auto fb = [&f2](double t) { return eval_real(f2, t); };
    const auto down = function_transition_down(fb, 1.0, 2.0, 0.0);
    for (double x : {0.5, 1.0, 4.0})
      worst_down =
          std::max(worst_down, std::fabs(down(x) - eval_real(f1, x)));

    StieltjesFunction f15{Measure::dirac(1.0, 1.0), 1.5};
    auto derivs = [&f1](int j, double t) { return derivative(f1, j, t); };
    const auto up = function_transition_up(derivs, 1.0, 1.5, 0.0);
    for (double x : {0.5, 1.0, 4.0})
      worst_up = std::max(worst_up, std::fabs(up(x) - eval_real(f15, x)));

    const auto back = function_transition_down(up, 1.0, 1.5, 0.0);
    for (double x : {0.5, 2.0})
      worst_round =
          std::max(worst_round, std::fabs(back(x) - eval_real(f1, x)));
  }
  // bounded-block family
  {
    const Measure m = builtins::block01_measure();
    StieltjesFunction f2{m, 2.0};
    StieltjesFunction f1{m, 1.0};
    auto fb = [&f2](double t) { return eval_real(f2, t); };
    const auto down = function_transition_down(fb, 1.0, 2.0, 0.0);
    for (double x : {0.5, 1.0, 5.0})
      worst_down =
          std::max(worst_down, std::fabs(down(x) - eval_real(f1, x)));

    StieltjesFunction f15{m, 1.5};
    auto derivs = [&f1](int j, double t) { return derivative(f1, j, t); };
    const auto up = function_transition_up(derivs, 1.0, 1.5, 0.0);
    for (double x : {0.5, 1.0, 5.0})
      worst_up = std::max(worst_up, std::fabs(up(x) - eval_real(f15, x)));
  }
  const bool pass =
      worst_down <= 1e-5 && worst_up <= 1e-5 && worst_round <= 1e-4;
  report(9, "function-level order transitions on both test families", pass,
         "down " + fmt(worst_down) + ", up " + fmt(worst_up) + ", round " +
             fmt(worst_round));
}

void criterion10() {
  builtins::BuiltinParams p;
  std::string detail;
  const bool pass = all_pass(repro::reproduce_builtin("remark7", p), detail);
  report(10, "two-pole counterexample suite", pass, detail);
}

void criterion11() {
  builtins::BuiltinParams p;
  p.alpha = 2.0;
  std::string detail;
  const bool pass = all_pass(repro::reproduce_builtin("remark8", p), detail);
  report(11, "order collapse under pointwise limits", pass, detail);
}

void criterion12() {
  struct Case {
    Measure m;
    double alpha;
  };
  std::vector<Case> cases;
  cases.push_back({Measure::dirac(1.0, 1.0), 1.0});
  cases.push_back({builtins::block01_measure(), 2.0});
  {
    DensityPiece p;
    p.lo = 1.0;
    p.hi = 3.0;
    p.terms.push_back({1.0, 0.0, 0.0, 0.0, kInf, 0.0});
    cases.push_back({Measure(0.0, 0.0, {{2.0, 1.0}}, {p}), 1.5});
  }
  double worst = 0.0;
  for (const auto& c : cases) {
    StieltjesFunction f{c.m, c.alpha};
    for (double z : {0.5, 1.0, 3.0}) {
      const double got = laplace_factorization_eval(f, z);
      const double want = eval_real(f, z);
      worst = std::max(worst, std::fabs(got - want) / (1.0 + std::fabs(want)));
    }
  }
  report(12, "iterated-Laplace factorization agrees with direct evaluation",
         worst <= 1e-6, "max rel err " + fmt(worst));
}

void criterion13() {
  long violations = 0;
  double min_margin = kInf;
  for (const auto& e : corpus()) {
    StieltjesFunction f{e.measure, e.alpha + 0.2};
    for (int i = 0; i < 10; ++i) {
      for (int k = 0; k < 10; ++k) {
        const Complex z{-0.05 - 0.8 * i, 0.15 + 0.65 * k};
        const auto mb = modulus_bound(f, z);
        if (mb.actual > mb.bound * (1.0 + 1e-12)) ++violations;
        min_margin = std::min(min_margin, mb.bound - mb.actual);
      }
    }
  }
  report(13, "modulus bound dominates on the left half-plane grid",
         violations == 0,
         std::to_string(violations) + " violations, min margin " +
             fmt(min_margin));
}

void criterion14() {
  bool pass = true;
  std::string detail = "atoms and densities match";
  const auto grid = log_grid(0.07, 9.0, 21);
  for (const auto& e : corpus()) {
    for (double alpha : {0.5, 1.0, 1.7, 3.0}) {
      if (std::isinf(membership_integral(e.measure, alpha)))
        continue;  // outside the operator's domain at this order
      const Measure back = involution(involution(e.measure, alpha), alpha);
      if (!measures_close(e.measure, back, grid, 1e-10)) {
        pass = false;
        detail = e.name + " at order " + fmt(alpha);
      }
    }
  }
  report(14, "the reciprocal pushforward is an involution on the corpus",
         pass, detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  criterion13();
  criterion14();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("%d of 14 criteria failed; total %.1f s\n", g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
