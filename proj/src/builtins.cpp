#include "stieltjes/builtins.hpp"

#include <cmath>
#include <stdexcept>

#include "stieltjes/specfun.hpp"

namespace stieltjes::builtins {

Measure block01_measure() { return Measure::constant_density(1.0, 0.0, 1.0); }

std::complex<double> block01_closed_form(double alpha,
                                         std::complex<double> z) {
  return (std::pow(z, 1.0 - alpha) - std::pow(1.0 + z, 1.0 - alpha)) /
         (alpha - 1.0);
}

Measure block1inf_measure() {
  return Measure::constant_density(1.0, 1.0, kInf);
}

std::complex<double> block1inf_closed_form(double alpha,
                                           std::complex<double> z) {
  return std::pow(1.0 + z, 1.0 - alpha) / (alpha - 1.0);
}

Measure hypergeometric_measure(double a, double b, double c) {
  if (!(c > b && b > 0.0 && a > 0.0))
    throw std::invalid_argument(
        "hypergeometric_measure: requires c > b > 0 and a > 0");
  DensityPiece p;
  p.lo = 1.0;
  p.hi = kInf;
  const double pref = specfun::gamma_fn(c) /
                      (specfun::gamma_fn(b) * specfun::gamma_fn(c - b));
  p.terms.push_back({pref, a - c, 1.0, c - b - 1.0, kInf, 0.0});
  return Measure(0.0, 0.0, {}, {p});
}

Measure truncated_block_measure(double m) {
  if (!(m > 1.0))
    throw std::invalid_argument("truncated_block_measure: requires m > 1");
  return Measure::constant_density(1.0, 1.0, m);
}

Builtin make_builtin(const std::string& name, const BuiltinParams& params) {
  const double alpha = params.alpha;
  if (name == "example1") {
    StieltjesFunction f{block01_measure(), alpha};
    return {"example1(alpha=" + std::to_string(alpha) + ")",
            "f(z) = int_0^1 dt/(z+t)^alpha = [z^(1-a) - (1+z)^(1-a)]/(a-1)",
            f, provider_from_function(f),
            [alpha](std::complex<double> z) {
              return block01_closed_form(alpha, z);
            }};
  }
  if (name == "example2") {
    StieltjesFunction f{block1inf_measure(), alpha};
    return {"example2(alpha=" + std::to_string(alpha) + ")",
            "f(z) = int_1^inf dt/(z+t)^alpha = 1/((a-1)(1+z)^(a-1))", f,
            provider_from_function(f),
            [alpha](std::complex<double> z) {
              return block1inf_closed_form(alpha, z);
            }};
  }
  if (name == "example3") {
    const double a = params.a, b = params.b, c = params.c;
    StieltjesFunction f{hypergeometric_measure(a, b, c), a};
    return {"example3(a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                ", c=" + std::to_string(c) + ")",
            "f(z) = 2F1(a,b;c;-z) represented over t^(a-c)(t-1)^(c-b-1) on "
            "(1,inf)",
            f, provider_from_function(f),
            [a, b, c](std::complex<double> z) -> std::complex<double> {
              if (z.imag() != 0.0)
                throw std::domain_error(
                    "example3 closed form: real arguments only");
              return {specfun::gauss_2f1(a, b, c, -z.real()), 0.0};
            }};
  }
  if (name == "remark7") {
    const auto ex = remark7_function();
    StieltjesFunction f{ex.order3_measure, 3.0};
    return {"remark7",
            "f(z) = 1/(z+1)^2 - 1/(2(z+2)^2); order-3 density 2 on (1,2], 1 "
            "on (2,inf)",
            f, ex.provider, ex.fn};
  }
  if (name == "remark8") {
    StieltjesFunction f{truncated_block_measure(params.m), alpha};
    const double m = params.m;
    return {"remark8(alpha=" + std::to_string(alpha) +
                ", m=" + std::to_string(m) + ")",
            "f_m(z) = int_1^m dt/(z+t)^alpha = "
            "[(z+1)^(1-a) - (z+m)^(1-a)]/(a-1)",
            f, provider_from_function(f),
            [alpha, m](std::complex<double> z) {
              return (std::pow(z + 1.0, 1.0 - alpha) -
                      std::pow(z + m, 1.0 - alpha)) /
                     (alpha - 1.0);
            }};
  }
  throw std::invalid_argument("unknown builtin: " + name);
}

}  // namespace stieltjes::builtins
