#pragma once

#include <complex>
#include <functional>

namespace stieltjes::quad {

// An integrand on (a,b) with declared algebraic endpoint behaviour.
//
// exponent_a describes f ~ (x-a)^exponent_a near a and must be > -1.  For
// finite b, exponent_b describes f ~ (b-x)^exponent_b near b (> -1).  For
// b = inf, exponent_b is instead the algebraic tail decay of the full
// integrand, f ~ x^exponent_b, and must be < -1 (0 means "unknown").
//
// Two calling conventions share this struct:
//   integrate():      f is the full integrand.
//   integrate_core(): f is the smooth cofactor only; the integrator applies
//                     the weights (x-a)^exponent_a and, for finite b,
//                     (b-x)^exponent_b itself.  Strong singularities keep
//                     full accuracy only on this path, because the distance
//                     to the endpoint is tracked exactly through the
//                     variable substitutions.
struct SingularIntegrand {
  std::function<double(double)> f;
  double a = 0.0;
  double b = 1.0;
  double exponent_a = 0.0;
  double exponent_b = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;      // absolute error estimate
  bool converged = true;   // false when the subdivision budget ran out
  long evaluations = 0;
};

QuadResult integrate(const SingularIntegrand& s, double rel_tol);
QuadResult integrate_core(const SingularIntegrand& s, double rel_tol);

struct ComplexQuadResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  bool converged = true;
};

// Complex integration, real and imaginary parts separately, in the two
// calling conventions of integrate()/integrate_core().
ComplexQuadResult integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double exponent_a, double exponent_b, double rel_tol);
ComplexQuadResult integrate_core_complex(
    const std::function<std::complex<double>(double)>& core, double a,
    double b, double exponent_a, double exponent_b, double rel_tol);

// Global cap on adaptive panels per integrate() call.
void set_subdivision_budget(long budget);
long subdivision_budget();

}  // namespace stieltjes::quad
