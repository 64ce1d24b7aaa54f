#pragma once

#include <functional>
#include <vector>

#include "stieltjes/measure.hpp"
#include "stieltjes/transform.hpp"

namespace stieltjes {

// A fractional order eta > 0 with its integer part.
struct FractionalOrder {
  double eta = 0.0;
  int n = 0;
  explicit FractionalOrder(double e);
};

// Coefficients a(n,m) of (-x^2 D)^n f = sum_m a(n,m) x^(n+m) f^(m)(x).
struct LahCoefficients {
  int n = 0;
  std::vector<double> a;  // a[m-1] = a(n,m), m = 1..n
  double operator()(int m) const { return a.at(m - 1); }
};
LahCoefficients lah_expand(int n);

// Left-sided fractional integral of order eta: the output is absolutely
// continuous on (0,inf) with the mass at infinity copied and no mass at 0.
// Atoms, the mass at 0, and constant densities produce closed-form output
// terms; other densities produce numeric-only pieces.
Measure rl_left(const Measure& mu, double eta);

// Inversion of rl_left for eta in (0,1): recovers the distribution function
// by a weakly singular integral, no differentiation needed.
DistributionFunction rl_left_invert(const Measure& nu, double eta);

// Inversion for any eta > 0 on closed-form inputs: the floor(eta)-fold
// derivative is taken symbolically on the power family.  Throws
// std::domain_error when no closed path exists.
DistributionFunction rl_left_invert_closed(const Measure& nu, double eta);

// Right-sided weighted fractional integral of order eta at weight alpha:
// mass at 0 copied, no mass at infinity in the output, the input mass at
// infinity smeared into a y^(alpha-1) density.
Measure kober_right(const Measure& mu, double alpha, double eta);

struct KoberInversion {
  DistributionFunction distribution;
  double mu_infinity = 0.0;
  bool mu_infinity_converged = true;
};

// Inversion of kober_right for eta in (0,1); the mass at infinity is
// recovered from the growth of the output's distribution function along a
// geometric ladder.
KoberInversion kober_right_invert(const Measure& tau, double alpha,
                                  double eta);

// Order transitions of the representing measures: mu form goes through
// rl_left, rho form through kober_right, both with the Gamma(beta)/
// Gamma(alpha) normalization.  Requires beta > alpha.
StieltjesFunction order_raise_mu(const StieltjesFunction& f, double beta);
StieltjesFunction order_raise_rho(const StieltjesFunction& f, double beta);

// Measure of the order-(beta-eps) representation obtained by lowering a
// closed-form order-beta measure, eps in (0, min(beta,1)).  Only valid when
// the lower-order representation exists; supports atoms-free measures made
// of constants and left-anchored power terms.  Throws std::domain_error
// otherwise.
Measure order_lower_closed(const Measure& mu_beta, double beta, double eps);

// Function-level transition from order beta down to alpha < beta:
//   f_a(x) = G(b)/(G(a)G(b-a)) int_x^inf (f_b(t) - m_inf) (t-x)^(b-a-1) dt
//            + m_inf.
std::function<double(double)> function_transition_down(
    std::function<double(double)> f_beta, double alpha, double beta,
    double mu_infinity);

// Function-level transition up from alpha to beta > alpha via the
// right-sided Caputo form; needs the closed-form derivative of order
// floor(beta-alpha)+1 of f_alpha, supplied as derivs(order, x).
std::function<double(double)> function_transition_up(
    std::function<double(int, double)> f_alpha_derivs, double alpha,
    double beta, double mu_infinity);

}  // namespace stieltjes
