#pragma once

namespace stieltjes::specfun {

// Gamma function for real arguments.  Throws std::domain_error at the
// poles 0, -1, -2, ...
double gamma_fn(double x);

// log Gamma(x) for x > 0.
double lgamma_fn(double x);

// Euler beta B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), a,b > 0.
double beta_fn(double a, double b);
double lbeta_fn(double a, double b);

// Unregularized incomplete beta  B_x(a,b) = int_0^x t^(a-1)(1-t)^(b-1) dt
// for 0 <= x <= 1 and a,b > 0.
double inc_beta(double x, double a, double b);

// Regularized incomplete beta I_x(a,b) = B_x(a,b)/B(a,b).
double reg_inc_beta(double x, double a, double b);

// Gauss hypergeometric 2F1(a,b;c;z), real parameters, z < 1.
//
// Branch selection is fixed:
//   |z| <= 0.6          direct power series
//   0.6 < z < 1         connection in 1-z (log series when c-a-b is an
//                       integer or within 1e-6 of one)
//   z < -0.6            Pfaff transform w = z/(z-1), then the above
// Throws std::domain_error for z >= 1 or c a non-positive integer.
double gauss_2f1(double a, double b, double c, double z);

// Digamma (psi) function for x not a non-positive integer.
double digamma(double x);

// Rising factorial (x)_n = x(x+1)...(x+n-1), n >= 0.
double pochhammer(double x, int n);

// Falling factorial x(x-1)...(x-n+1), n >= 0.
double falling_factorial(double x, int n);

}  // namespace stieltjes::specfun
