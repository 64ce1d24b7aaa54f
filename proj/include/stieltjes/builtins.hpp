#pragma once

#include <string>

#include "stieltjes/criteria.hpp"
#include "stieltjes/transform.hpp"

namespace stieltjes::builtins {

// Unit density on (0,1); f(z) = [z^(1-a) - (1+z)^(1-a)]/(a-1).
Measure block01_measure();
std::complex<double> block01_closed_form(double alpha, std::complex<double> z);

// Unit density on (1,inf); f(z) = 1/((a-1)(1+z)^(a-1)).
Measure block1inf_measure();
std::complex<double> block1inf_closed_form(double alpha,
                                           std::complex<double> z);

// Hypergeometric kernel measure: G(c)/(G(b)G(c-b)) t^(a-c) (t-1)^(c-b-1)
// on (1,inf); the order-a transform is 2F1(a,b;c;-z).
Measure hypergeometric_measure(double a, double b, double c);

// Truncation of the unbounded block at m: unit density on (1,m).
Measure truncated_block_measure(double m);

struct BuiltinParams {
  double alpha = 2.0;
  double a = 0.5, b = 1.0, c = 2.0;  // hypergeometric parameters
  double m = 3.0;                    // truncation point
};

struct Builtin {
  std::string name;
  std::string provenance;  // closed form, for self-documenting reports
  StieltjesFunction f;
  DerivativeProvider provider;
  ComplexFn fn;  // direct evaluator, closed form where one exists
};

// Names: example1, example2, example3, remark7, remark8.
// Throws std::invalid_argument for anything else.
Builtin make_builtin(const std::string& name, const BuiltinParams& params);

}  // namespace stieltjes::builtins
