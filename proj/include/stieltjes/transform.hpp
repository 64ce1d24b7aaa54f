#pragma once

#include <complex>
#include <vector>

#include "stieltjes/measure.hpp"

namespace stieltjes {

enum class Representation { kMu, kRho };

// A generalized Stieltjes function of order alpha.  In mu form
//   f(z) = int mu(du)/(u+z)^alpha + m_inf + m_0/z^alpha,
// in rho form
//   f(z) = int rho(dt)/(1+tz)^alpha + r_0 + r_inf/z^alpha,
// where the measure's masses at 0 and infinity supply (m_0, m_inf) resp.
// (r_0, r_inf).  The two forms describe the same function when the
// measures are related by the order-alpha involution.
struct StieltjesFunction {
  Measure measure;
  double alpha = 1.0;
  Representation rep = Representation::kMu;

  StieltjesFunction(Measure m, double a, Representation r = Representation::kMu);
};

// Value at a point of the cut plane C \ (-inf, 0].  Powers use the branch
// that is positive on the positive half-axis.
std::complex<double> eval(const StieltjesFunction& f, std::complex<double> z);
double eval_real(const StieltjesFunction& f, double x);

// j-th derivative at x > 0, differentiating the kernel analytically.
double derivative(const StieltjesFunction& f, int j, double x);

// g(z) = z^-alpha f(1/z); the representing measure is the involution of
// f's.  Requires mu form.
StieltjesFunction reciprocal_map(const StieltjesFunction& f);

// Taylor coefficients c_k, k = 0..k_max, of f at 0 for rho form with
// compactly supported measure: c_k = (-1)^k (alpha)_k / k! * rho_k.
std::vector<double> series_coefficients(const StieltjesFunction& f, int k_max);

// f(z) evaluated through the iterated-Laplace factorization
//   f(z) = (1/Gamma(alpha)) L(u^(alpha-1) L(mu; u) du; z) + m_inf,
// for z > 0 and m_0 = 0.
double laplace_factorization_eval(const StieltjesFunction& f, double z);

struct ModulusBound {
  double bound = 0.0;
  double actual = 0.0;
};

// |f(z)| <= A |(z-1)/Im z|^alpha + m_inf on Re z <= 0, Im z != 0, with
// A the order-alpha integrability integral of the measure.
ModulusBound modulus_bound(const StieltjesFunction& f, std::complex<double> z);

}  // namespace stieltjes
