#include "stieltjes/reproduce.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "stieltjes/order.hpp"
#include "stieltjes/quadrature.hpp"
#include "stieltjes/specfun.hpp"

namespace stieltjes::repro {

namespace {

using builtins::BuiltinParams;
using Complex = std::complex<double>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult check(const std::string& name, bool pass, double worst,
                  double tol) {
  return {name, pass,
          "max deviation " + fmt(worst) + " against tolerance " + fmt(tol)};
}

double phi01_closed(double eps, double y) {
  if (y <= 1.0) return std::pow(y, 1.0 - eps) / (1.0 - eps);
  return (std::pow(y, 1.0 - eps) - std::pow(y - 1.0, 1.0 - eps)) /
         (1.0 - eps);
}

double phi1inf_closed(double eps, double y) {
  if (y <= 1.0) return 0.0;
  return std::pow(y - 1.0, 1.0 - eps) / (1.0 - eps);
}

double euler_integral_2f1(double a, double b, double c, double z) {
  quad::SingularIntegrand s;
  s.f = [=](double u) { return std::pow(1.0 - z * u, -a); };
  s.a = 0.0;
  s.b = 1.0;
  s.exponent_a = b - 1.0;
  s.exponent_b = c - b - 1.0;
  const double g = specfun::gamma_fn(c) /
                   (specfun::gamma_fn(b) * specfun::gamma_fn(c - b));
  return g * quad::integrate_core(s, 1e-12).value;
}

std::vector<CheckResult> checks_example1(const BuiltinParams& p) {
  std::vector<CheckResult> out;
  const auto b = builtins::make_builtin("example1", p);

  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double x = 0.1 * std::pow(100.0, i / 9.0);
    const Complex got = eval(b.f, {x, 0.0});
    const Complex want = b.fn({x, 0.0});
    worst = std::max(worst, std::abs(got - want) / (1.0 + std::abs(want)));
  }
  out.push_back(check("closed-form values (10 points)", worst <= 1e-9,
                      worst, 1e-9));

  worst = 0.0;
  const double eps = 0.4;
  for (double y : {0.05, 0.3, 0.9, 1.0001, 1.7, 4.0, 30.0, 100.0}) {
    const double got = phi(b.f.measure, eps, y);
    const double want = phi01_closed(eps, y);
    worst = std::max(worst, std::fabs(got - want) / (1.0 + want));
  }
  out.push_back(
      check("piecewise smoothing formula", worst <= 1e-8, worst, 1e-8));

  const bool compact = compact_support_shortcut(b.f.measure);
  const auto est = estimate_exact_order(b.f, 0.0, 0.025);
  const bool pinned = compact && est.lo <= p.alpha && p.alpha <= est.hi;
  out.push_back({"compact support pins the exact order", pinned,
                 "estimated interval [" + fmt(est.lo) + ", " + fmt(est.hi) +
                     "]"});
  return out;
}

std::vector<CheckResult> checks_example2(const BuiltinParams& p) {
  std::vector<CheckResult> out;
  const auto b = builtins::make_builtin("example2", p);

  double worst = 0.0;
  const double eps = 0.4;
  for (double y : {0.5, 1.5, 3.0, 10.0, 80.0}) {
    const double got = phi(b.f.measure, eps, y);
    const double want = phi1inf_closed(eps, y);
    worst = std::max(worst, std::fabs(got - want) / (1.0 + want));
  }
  out.push_back(
      check("smoothing formula (t-1)^(1-eps)/(1-eps)", worst <= 1e-8, worst,
            1e-8));

  const auto mono = monotonicity_test(b.f.measure, eps,
                                      default_phi_grid(b.f.measure));
  out.push_back({"smoothing non-decreasing on grid",
                 mono.verdict == MonotoneVerdict::kNonDecreasingOnGrid,
                 "grid of " + std::to_string(mono.samples.size()) +
                     " points"});

  const auto est = estimate_exact_order(b.f, 0.0, 0.025);
  const double target = p.alpha - 1.0;
  const bool ok = !est.inconclusive && est.lo <= target &&
                  target <= est.hi && est.hi - est.lo <= 0.05;
  out.push_back({"estimated exact order brackets alpha-1", ok,
                 "interval [" + fmt(est.lo) + ", " + fmt(est.hi) + "]"});
  return out;
}

std::vector<CheckResult> checks_example3(const BuiltinParams& p) {
  std::vector<CheckResult> out;
  const auto b = builtins::make_builtin("example3", p);

  const double eps = 0.5;
  const auto ladder = log_grid(1e2, 1e4, 5);
  const auto ratio = ratio_limit_test(b.f.measure, eps, ladder);
  const double target = std::pow(2.0, -eps);
  const bool have = ratio.estimate.has_value();
  const double got = have ? *ratio.estimate : 0.0;
  out.push_back({"doubling ratio approaches 2^-eps",
                 have && std::fabs(got - target) <= 0.02 * target,
                 "estimate " + fmt(got) + " target " + fmt(target)});

  double worst = 0.0;
  for (double z : {0.3, 1.0, 3.0}) {
    const double series = specfun::gauss_2f1(p.a, p.b, p.c, -z);
    const double euler = euler_integral_2f1(p.a, p.b, p.c, -z);
    worst = std::max(worst,
                     std::fabs(series - euler) / (1.0 + std::fabs(series)));
  }
  out.push_back(check("hypergeometric Euler-integral cross-check",
                      worst <= 1e-8, worst, 1e-8));

  double worst_eval = 0.0;
  for (double x : {0.4, 1.1, 6.0}) {
    const double via_measure = eval_real(b.f, x);
    const double direct = specfun::gauss_2f1(p.a, p.b, p.c, -x);
    worst_eval = std::max(
        worst_eval, std::fabs(via_measure - direct) / (1.0 + direct));
  }
  out.push_back(check("measure representation matches the function",
                      worst_eval <= 1e-8, worst_eval, 1e-8));
  return out;
}

std::vector<CheckResult> checks_remark7(const BuiltinParams& p) {
  std::vector<CheckResult> out;
  const auto ex = remark7_function();

  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double r = 0.1 * std::pow(100.0, (i % 10) / 9.0);
    const double th = 3.14159265358979323846 * ((i / 10) + 0.5) / 5.0 * 0.5;
    const Complex z = std::polar(r, th);
    const Complex v = ex.fn(z);
    worst = std::max(worst,
                     std::fabs(v.imag() - ex.im_formula(z.real(), z.imag())));
  }
  out.push_back(check("explicit imaginary-part formula (50 points)",
                      worst <= 1e-12, worst, 1e-12));

  const auto sec = sector_test(ex.fn, 2.0, sector_grid(2.0, 21, 20));
  out.push_back({"sector condition passes at order 2 (necessary only)",
                 !sec.violation_found, sec.detail});

  const auto at2 = sokal_test(ex.provider, 2.0, 4, 4, default_sokal_grid());
  std::string witness = "none";
  if (at2.sokal_witness) {
    witness = "n=" + std::to_string(at2.sokal_witness->n) +
              " k=" + std::to_string(at2.sokal_witness->k) +
              " x=" + fmt(at2.sokal_witness->x);
  }
  out.push_back({"derivative criterion fails at order 2", at2.violation_found,
                 "witness " + witness});

  const auto at3 = sokal_test(ex.provider, 3.0, 4, 4, default_sokal_grid());
  out.push_back({"derivative criterion clean at order 3",
                 !at3.violation_found, at3.detail});

  const auto b = builtins::make_builtin("remark7", p);
  double worst_rep = 0.0;
  for (Complex z : {Complex{0.5, 0.0}, Complex{1.0, 1.0}}) {
    const Complex via_measure = eval(b.f, z);
    worst_rep = std::max(worst_rep, std::abs(via_measure - ex.fn(z)) /
                                        (1.0 + std::abs(ex.fn(z))));
  }
  out.push_back(check("order-3 measure representation", worst_rep <= 1e-9,
                      worst_rep, 1e-9));
  return out;
}

std::vector<CheckResult> checks_remark8(const BuiltinParams& p) {
  std::vector<CheckResult> out;
  for (double m : {2.0, 3.0, 5.0}) {
    BuiltinParams q = p;
    q.m = m;
    const auto b = builtins::make_builtin("remark8", q);
    const bool compact = compact_support_shortcut(b.f.measure);
    const auto est = estimate_exact_order(b.f, 0.0, 0.025);
    const bool pinned = compact && est.lo <= p.alpha && p.alpha <= est.hi;
    out.push_back({"truncation m=" + fmt(m) + " has exact order alpha",
                   pinned,
                   "interval [" + fmt(est.lo) + ", " + fmt(est.hi) + "]"});
  }
  // pointwise limit drops one order
  StieltjesFunction limit{builtins::block1inf_measure(), p.alpha};
  const auto est = estimate_exact_order(limit, 0.0, 0.025);
  const double target = p.alpha - 1.0;
  out.push_back({"pointwise limit has exact-order evidence alpha-1",
                 !est.inconclusive && est.lo <= target && target <= est.hi,
                 "interval [" + fmt(est.lo) + ", " + fmt(est.hi) + "]"});
  return out;
}

}  // namespace

std::vector<CheckResult> reproduce_builtin(const std::string& name,
                                           const BuiltinParams& params) {
  if (name == "example1") return checks_example1(params);
  if (name == "example2") return checks_example2(params);
  if (name == "example3") return checks_example3(params);
  if (name == "remark7") return checks_remark7(params);
  if (name == "remark8") return checks_remark8(params);
  throw std::invalid_argument("unknown builtin: " + name);
}

}  // namespace stieltjes::repro
