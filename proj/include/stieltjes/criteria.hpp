#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stieltjes/transform.hpp"

namespace stieltjes {

// Closed-form derivatives f^(n)(x) for x > 0; n = 0 is the value itself.
// High mixed derivatives by finite differences are numerically hopeless,
// so every criterion below works exclusively through providers.
struct DerivativeProvider {
  std::function<double(int, double)> deriv;
  int max_order = 64;

  double operator()(int n, double x) const { return deriv(n, x); }
};

DerivativeProvider provider_from_function(const StieltjesFunction& f);
// sum_i c_i (x + a_i)^(-p): rational building block with derivatives of
// every order
struct SimplePole {
  double coef = 0.0;
  double offset = 0.0;  // the a in (x+a)
  double power = 1.0;   // the p in (x+a)^-p, p > 0
};
DerivativeProvider provider_from_poles(std::vector<SimplePole> poles);
DerivativeProvider provider_product(const DerivativeProvider& f,
                                    const DerivativeProvider& g);

struct SokalWitness {
  int n = 0;
  int k = 0;
  double x = 0.0;
  double value = 0.0;
};

struct CriterionReport {
  std::string criterion;
  bool violation_found = false;
  std::optional<SokalWitness> sokal_witness;
  std::optional<std::complex<double>> witness_point;
  bool necessary_only = false;  // a pass does not certify membership
  long samples = 0;
  std::string detail;
};

// Derivative-positivity criterion at order alpha:
// (-1)^n D^k ( x^(n+k+alpha-1) D^n f(x) ) >= 0 for the scanned n, k, x.
// Values below -1e-10 * (1 + largest Leibniz term) count as violations.
CriterionReport sokal_test(const DerivativeProvider& f, double alpha,
                           int n_max, int k_max,
                           std::span<const double> x_grid);

// F^alpha_{n,k} itself, for cross-checks.
double sokal_value(const DerivativeProvider& f, double alpha, int n, int k,
                   double x);

using ComplexFn = std::function<std::complex<double>(std::complex<double>)>;

// f(x) >= 0 on the positive axis and Im f <= 0 on the upper half-plane.
CriterionReport krein_test(const ComplexFn& f,
                           std::span<const std::complex<double>> z_grid,
                           std::span<const double> x_grid);

// Im f <= 0 on the sector 0 < arg z < pi/alpha; necessary for order-alpha
// membership, not sufficient.
CriterionReport sector_test(const ComplexFn& f, double alpha,
                            std::span<const std::complex<double>> z_grid);

// z -> f(z)^(1/alpha) for 0 < alpha <= 1 (lands in the classical cone).
ComplexFn power_map_root(const StieltjesFunction& f);

// z -> f(z^(1/alpha)) for alpha >= 1 (not surjective onto the cone).
ComplexFn power_map_stretch(const StieltjesFunction& f);

// The two-pole counterexample: passes the order-2 sector check yet fails
// the order-2 derivative criterion, and carries an order-3 representation.
struct TwoPoleExample {
  ComplexFn fn;
  DerivativeProvider provider;
  std::function<double(double, double)> im_formula;  // Im f at x + iy
  Measure order3_measure;
};
TwoPoleExample remark7_function();

// Product f*g checked at order alpha+beta through the Leibniz rule.
CriterionReport product_membership_check(const DerivativeProvider& f,
                                         double alpha,
                                         const DerivativeProvider& g,
                                         double beta, int n_max, int k_max,
                                         std::span<const double> x_grid);

// Default scan grids.
std::vector<double> default_sokal_grid();
std::vector<std::complex<double>> default_half_plane_grid();
std::vector<std::complex<double>> sector_grid(double alpha, int nr,
                                              int ntheta);

}  // namespace stieltjes
