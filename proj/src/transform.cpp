#include "stieltjes/transform.hpp"

#include <cmath>
#include <stdexcept>

#include "stieltjes/quadrature.hpp"
#include "stieltjes/specfun.hpp"

namespace stieltjes {

namespace {

using Complex = std::complex<double>;

void check_off_cut(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0)
    throw std::domain_error("eval: z on the branch cut (-inf, 0]");
}

// (w)^-s with the principal branch; positive for w > 0.
Complex power_kernel(Complex w, double s) { return std::pow(w, -s); }

Complex eval_mu(const Measure& mu, double alpha, Complex z, double rel_tol) {
  Complex acc = mu.atom_infinity();
  if (mu.atom_zero() > 0.0) acc += mu.atom_zero() * power_kernel(z, alpha);
  for (const Atom& a : mu.atoms())
    acc += a.mass * power_kernel(a.location + z, alpha);
  for (const auto& p : mu.pieces()) {
    const auto re = integrate_piece_against(
        p, [alpha, z](double u) { return power_kernel(u + z, alpha).real(); },
        -alpha, rel_tol);
    const auto im = integrate_piece_against(
        p, [alpha, z](double u) { return power_kernel(u + z, alpha).imag(); },
        -alpha, rel_tol);
    acc += Complex{re.value, im.value};
  }
  return acc;
}

Complex eval_rho(const Measure& rho, double alpha, Complex z, double rel_tol) {
  Complex acc = rho.atom_zero();
  if (rho.atom_infinity() > 0.0)
    acc += rho.atom_infinity() * power_kernel(z, alpha);
  for (const Atom& a : rho.atoms())
    acc += a.mass * power_kernel(1.0 + a.location * z, alpha);
  for (const auto& p : rho.pieces()) {
    const auto re = integrate_piece_against(
        p,
        [alpha, z](double u) { return power_kernel(1.0 + u * z, alpha).real(); },
        -alpha, rel_tol);
    const auto im = integrate_piece_against(
        p,
        [alpha, z](double u) { return power_kernel(1.0 + u * z, alpha).imag(); },
        -alpha, rel_tol);
    acc += Complex{re.value, im.value};
  }
  return acc;
}

}  // namespace

StieltjesFunction::StieltjesFunction(Measure m, double a, Representation r)
    : measure(std::move(m)), alpha(a), rep(r) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("StieltjesFunction: requires alpha > 0");
  if (std::isinf(membership_integral(measure, alpha)))
    throw std::domain_error(
        "StieltjesFunction: measure fails the order-alpha integrability "
        "condition");
}

std::complex<double> eval(const StieltjesFunction& f, std::complex<double> z) {
  check_off_cut(z);
  constexpr double rel_tol = 1e-11;
  return f.rep == Representation::kMu ? eval_mu(f.measure, f.alpha, z, rel_tol)
                                      : eval_rho(f.measure, f.alpha, z, rel_tol);
}

double eval_real(const StieltjesFunction& f, double x) {
  return eval(f, {x, 0.0}).real();
}

double derivative(const StieltjesFunction& f, int j, double x) {
  if (j < 0) throw std::invalid_argument("derivative: requires j >= 0");
  if (!(x > 0.0)) throw std::invalid_argument("derivative: requires x > 0");
  if (j == 0) return eval_real(f, x);
  const double alpha = f.alpha;
  const Measure& m = f.measure;
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  const double poch = specfun::pochhammer(alpha, j);
  constexpr double rel_tol = 1e-11;

  double acc = 0.0;
  if (f.rep == Representation::kMu) {
    acc += m.atom_zero() * std::pow(x, -alpha - j);
    for (const Atom& a : m.atoms())
      acc += a.mass * std::pow(a.location + x, -alpha - j);
    for (const auto& p : m.pieces()) {
      acc += integrate_piece_against(
                 p,
                 [alpha, j, x](double u) {
                   return std::pow(u + x, -alpha - j);
                 },
                 -alpha - j, rel_tol)
                 .value;
    }
  } else {
    acc += m.atom_infinity() * std::pow(x, -alpha - j);
    for (const Atom& a : m.atoms())
      acc += a.mass * std::pow(a.location, j) *
             std::pow(1.0 + a.location * x, -alpha - j);
    for (const auto& p : m.pieces()) {
      acc += integrate_piece_against(
                 p,
                 [alpha, j, x](double u) {
                   return std::pow(u, j) * std::pow(1.0 + u * x, -alpha - j);
                 },
                 -alpha, rel_tol)
                 .value;
    }
  }
  return sign * poch * acc;
}

StieltjesFunction reciprocal_map(const StieltjesFunction& f) {
  if (f.rep != Representation::kMu)
    throw std::invalid_argument("reciprocal_map: requires mu form");
  return StieltjesFunction(involution(f.measure, f.alpha), f.alpha,
                           Representation::kMu);
}

std::vector<double> series_coefficients(const StieltjesFunction& f,
                                        int k_max) {
  if (f.rep != Representation::kRho)
    throw std::invalid_argument("series_coefficients: requires rho form");
  const std::vector<double> mk = moments(f.measure, k_max);
  std::vector<double> c(mk.size());
  double poch = 1.0, fact = 1.0, sign = 1.0;
  for (int k = 0; k <= k_max; ++k) {
    c[k] = sign * poch / fact * mk[k];
    poch *= f.alpha + k;
    fact *= k + 1.0;
    sign = -sign;
  }
  return c;
}

namespace {

// Laplace transform of the measure's [0,inf) part at u > 0.
double laplace_of_measure(const Measure& m, double u) {
  double acc = m.atom_zero();
  for (const Atom& a : m.atoms()) acc += a.mass * std::exp(-u * a.location);
  for (const auto& p : m.pieces()) {
    // pure constant pieces have an elementary transform
    if (!p.fn && p.terms.size() == 1 && p.terms[0].p == 0.0 &&
        p.terms[0].exp_left == 0.0 && p.terms[0].exp_right == 0.0) {
      const double upper = std::isinf(p.hi) ? 0.0 : std::exp(-u * p.hi);
      acc += p.terms[0].coef * (std::exp(-u * p.lo) - upper) / u;
      continue;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    acc += integrate_piece_against(
               p, [u](double v) { return std::exp(-u * v); }, nan, 1e-10)
               .value;
  }
  return acc;
}

// Growth exponent of the measure's mass near infinity, i.e. s with
// F(t) ~ t^s; 0 for bounded mass.
double mass_growth_exponent(const Measure& m) {
  double s = 0.0;
  for (const auto& p : m.pieces()) {
    if (!std::isinf(p.hi)) continue;
    for (const auto& t : p.terms)
      s = std::max(s, t.p + t.exp_left + 1.0);
    if (p.fn && p.fn_exp_hi != 0.0) s = std::max(s, p.fn_exp_hi + 1.0);
  }
  return s;
}

}  // namespace

double laplace_factorization_eval(const StieltjesFunction& f, double z) {
  if (f.rep != Representation::kMu)
    throw std::invalid_argument("laplace_factorization_eval: requires mu form");
  if (!(z > 0.0))
    throw std::invalid_argument("laplace_factorization_eval: requires z > 0");
  if (f.measure.atom_zero() != 0.0)
    throw std::domain_error(
        "laplace_factorization_eval: not defined for a mass at 0");
  const double alpha = f.alpha;
  const Measure& m = f.measure;
  quad::SingularIntegrand si;
  si.f = [&m, alpha, z](double u) {
    return std::exp(-z * u) * std::pow(u, alpha - 1.0) *
           laplace_of_measure(m, u);
  };
  si.a = 0.0;
  si.b = kInf;
  si.exponent_a = alpha - 1.0 - mass_growth_exponent(m);
  si.exponent_b = 0.0;  // exponential decay
  const auto r = quad::integrate(si, 1e-9);
  return r.value / specfun::gamma_fn(alpha) + m.atom_infinity();
}

ModulusBound modulus_bound(const StieltjesFunction& f, std::complex<double> z) {
  if (f.rep != Representation::kMu)
    throw std::invalid_argument("modulus_bound: requires mu form");
  if (z.real() > 0.0)
    throw std::domain_error("modulus_bound: proved only for Re z <= 0");
  if (z.imag() == 0.0)
    throw std::domain_error("modulus_bound: requires Im z != 0");
  if (f.measure.atom_zero() != 0.0)
    throw std::domain_error("modulus_bound: not defined for a mass at 0");
  const double a_const = membership_integral(f.measure, f.alpha);
  ModulusBound out;
  out.bound = a_const * std::pow(std::abs((z - 1.0) / z.imag()), f.alpha) +
              f.measure.atom_infinity();
  out.actual = std::abs(eval(f, z));
  return out;
}

}  // namespace stieltjes
