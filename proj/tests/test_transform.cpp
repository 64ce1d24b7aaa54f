#include "stieltjes/transform.hpp"

#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

using namespace stieltjes;
using Complex = std::complex<double>;

namespace {

// f(z) = int_0^1 dt/(z+t)^alpha = [z^(1-a) - (1+z)^(1-a)]/(a-1)
StieltjesFunction unit_density_01(double alpha) {
  return {Measure::constant_density(1.0, 0.0, 1.0), alpha};
}

// f(z) = int_1^inf dt/(z+t)^alpha = 1/((a-1)(1+z)^(a-1))
StieltjesFunction unit_density_1inf(double alpha) {
  return {Measure::constant_density(1.0, 1.0, kInf), alpha};
}

Complex closed_form_01(double alpha, Complex z) {
  return (std::pow(z, 1.0 - alpha) - std::pow(1.0 + z, 1.0 - alpha)) /
         (alpha - 1.0);
}

}  // namespace

TEST_CASE("eval: closed forms of the two prototype measures") {
  CHECK(eval_real(unit_density_01(2.0), 1.0) ==
        doctest::Approx(0.5).epsilon(1e-11));
  CHECK(eval_real(unit_density_1inf(2.0), 1.0) ==
        doctest::Approx(0.5).epsilon(1e-11));
  for (double alpha : {1.5, 2.0, 3.0}) {
    for (Complex z : {Complex{0.7, 0.0}, Complex{2.0, 1.0}, Complex{-0.5, 0.8}}) {
      const Complex got = eval(unit_density_01(alpha), z);
      const Complex want = closed_form_01(alpha, z);
      CAPTURE(alpha);
      CAPTURE(z);
      CHECK(std::abs(got - want) <= 1e-9 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("eval: pure mass at zero gives z^-alpha") {
  for (double alpha : {0.7, 1.0, 2.5}) {
    StieltjesFunction f{Measure().with_atom_zero(1.0), alpha};
    CHECK(eval_real(f, 2.0) ==
          doctest::Approx(std::pow(2.0, -alpha)).epsilon(1e-13));
  }
}

TEST_CASE("eval: branch cut rejected") {
  auto f = unit_density_01(2.0);
  CHECK_THROWS(eval(f, Complex{-1.0, 0.0}));
  CHECK_THROWS(eval(f, Complex{0.0, 0.0}));
}

TEST_CASE("eval: conjugate symmetry at random cut-plane points") {
  auto f = unit_density_01(1.5);
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> rd(0.1, 10.0), td(0.05, 0.95);
  for (int i = 0; i < 50; ++i) {
    const double r = rd(rng), th = td(rng) * 3.14159265358979323846;
    const Complex z = std::polar(r, th);
    const Complex a = eval(f, z);
    const Complex b = eval(f, std::conj(z));
    CHECK(std::abs(b - std::conj(a)) <= 1e-10 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("rho form evaluates through the reciprocal kernel") {
  // rho = delta_1 at alpha: f(z) = (1+z)^-alpha
  StieltjesFunction f{Measure::dirac(1.0, 1.0), 1.7, Representation::kRho};
  CHECK(eval_real(f, 0.4) ==
        doctest::Approx(std::pow(1.4, -1.7)).epsilon(1e-13));
  // mu form of delta_1 is the same function: involution fixed point
  StieltjesFunction g{Measure::dirac(1.0, 1.0), 1.7, Representation::kMu};
  CHECK(eval_real(f, 2.5) == doctest::Approx(eval_real(g, 2.5)).epsilon(1e-12));
}

TEST_CASE("derivatives come from the analytic kernel") {
  StieltjesFunction f{Measure::dirac(1.0, 1.0), 1.0};
  for (int j : {0, 1, 2, 3, 4}) {
    double fact = 1.0;
    for (int i = 2; i <= j; ++i) fact *= i;
    const double want = (j % 2 ? -1.0 : 1.0) * fact * std::pow(2.0, -1.0 - j);
    CHECK(derivative(f, j, 1.0) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("complete monotonicity sampling on the test family") {
  for (const auto& f : {unit_density_01(1.5), unit_density_1inf(2.0)}) {
    for (int n = 0; n <= 4; ++n) {
      for (double x : {0.2, 1.0, 3.0, 8.0}) {
        const double v = (n % 2 ? -1.0 : 1.0) * derivative(f, n, x);
        CHECK(v >= 0.0);
      }
    }
  }
}

TEST_CASE("reciprocal map") {
  // delta_1 at alpha=1 is a fixed point
  StieltjesFunction f{Measure::dirac(1.0, 1.0), 1.0};
  const auto g = reciprocal_map(f);
  REQUIRE(g.measure.atoms().size() == 1);
  CHECK(g.measure.atoms()[0].location == 1.0);
  CHECK(g.measure.atoms()[0].mass == 1.0);

  // eval identity g(z) = z^-alpha f(1/z)
  const auto f1 = unit_density_01(1.5);
  const auto g1 = reciprocal_map(f1);
  CHECK(std::abs(eval(g1, {2.0, 0.0}) -
                 std::pow(2.0, -1.5) * eval(f1, {0.5, 0.0})) < 1e-10);
  for (Complex z : {Complex{0.3, 0.1}, Complex{1.0, -2.0}, Complex{5.0, 0.0}}) {
    const Complex lhs = eval(g1, z);
    const Complex rhs = std::pow(z, -1.5) * eval(f1, 1.0 / z);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
  }

  // masses at 0 and infinity swap
  StieltjesFunction h{Measure::dirac(1.0, 1.0).with_atom_zero(0.75), 2.0};
  CHECK(reciprocal_map(h).measure.atom_infinity() == 0.75);
}

TEST_CASE("series coefficients") {
  StieltjesFunction f1{Measure::dirac(1.0, 1.0), 1.0, Representation::kRho};
  const auto c1 = series_coefficients(f1, 6);
  for (int k = 0; k <= 6; ++k)
    CHECK(c1[k] == doctest::Approx(k % 2 ? -1.0 : 1.0).epsilon(1e-13));

  StieltjesFunction f2{Measure::dirac(1.0, 1.0), 2.0, Representation::kRho};
  const auto c2 = series_coefficients(f2, 6);
  for (int k = 0; k <= 6; ++k)
    CHECK(c2[k] ==
          doctest::Approx((k % 2 ? -1.0 : 1.0) * (k + 1.0)).epsilon(1e-13));

  // partial sums converge to eval inside the disk
  StieltjesFunction f3{Measure::constant_density(1.0, 0.0, 1.0), 1.5,
                       Representation::kRho};
  const auto c3 = series_coefficients(f3, 30);
  const double z = 0.1;
  double sum = 0.0, zp = 1.0;
  std::vector<double> partial_err;
  for (int k = 0; k <= 30; ++k) {
    sum += c3[k] * zp;
    zp *= z;
    if (k >= 5 && k % 5 == 0)
      partial_err.push_back(std::fabs(sum - eval_real(f3, z)));
  }
  CHECK(std::fabs(sum - eval_real(f3, z)) < 1e-10);
  // geometric error decay along the partial sums, down to quadrature noise
  for (size_t i = 1; i < partial_err.size() - 1; ++i)
    CHECK((partial_err[i] < partial_err[i - 1] || partial_err[i] < 1e-12));

  CHECK_THROWS(series_coefficients(
      StieltjesFunction{Measure::constant_density(1.0, 1.0, kInf), 2.0,
                        Representation::kRho},
      4));
}

TEST_CASE("laplace factorization") {
  StieltjesFunction f{Measure::dirac(1.0, 1.0), 1.0};
  CHECK(laplace_factorization_eval(f, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-8));

  const auto e1 = unit_density_01(2.0);
  CHECK(std::fabs(laplace_factorization_eval(e1, 1.0) - 0.5) < 1e-6);

  StieltjesFunction g{Measure::dirac(1.0, 1.0).with_atom_infinity(3.0), 1.0};
  CHECK(std::fabs(laplace_factorization_eval(g, 1.0) - 3.5) < 1e-8);

  StieltjesFunction h{Measure::dirac(1.0, 1.0).with_atom_zero(1.0), 1.0};
  CHECK_THROWS(laplace_factorization_eval(h, 1.0));
  CHECK_THROWS(laplace_factorization_eval(f, -1.0));
}

TEST_CASE("modulus bound") {
  StieltjesFunction f{Measure::dirac(1.0, 1.0), 1.0};
  const auto mb = modulus_bound(f, {-1.0, 1.0});
  CHECK(mb.bound == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-12));
  CHECK(mb.actual == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mb.actual <= mb.bound);

  StieltjesFunction c{Measure().with_atom_infinity(2.5), 1.0};
  const auto mc = modulus_bound(c, {-2.0, 0.5});
  CHECK(mc.bound == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(mc.actual == doctest::Approx(2.5).epsilon(1e-13));

  // grid sweep on the closed-form family
  const auto e1 = unit_density_01(2.0);
  for (int i = 0; i < 10; ++i) {
    for (int k = 0; k < 10; ++k) {
      const Complex z{-0.1 - i, 0.2 + 0.7 * k};
      const auto r = modulus_bound(e1, z);
      CHECK(r.actual <= r.bound * (1.0 + 1e-9));
    }
  }

  CHECK_THROWS(modulus_bound(f, {1.0, 1.0}));   // Re z > 0
  CHECK_THROWS(modulus_bound(f, {-1.0, 0.0}));  // Im z = 0
}

TEST_CASE("constructor enforces integrability") {
  CHECK_THROWS(StieltjesFunction(Measure::constant_density(1.0, 0.0, kInf), 1.0));
  CHECK_NOTHROW(StieltjesFunction(Measure::constant_density(1.0, 0.0, kInf), 1.5));
}
