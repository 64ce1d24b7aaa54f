#include "stieltjes/criteria.hpp"

#include <cmath>
#include <complex>

#include <doctest.h>

using namespace stieltjes;
using Complex = std::complex<double>;

TEST_CASE("sokal: the canonical first-order function is clean") {
  const auto f = provider_from_poles({{1.0, 1.0, 1.0}});  // 1/(1+x)
  const auto rep = sokal_test(f, 1.0, 4, 4, default_sokal_grid());
  CHECK_FALSE(rep.violation_found);
  // and stays clean at every higher tested order
  for (double beta : {1.5, 2.0, 3.0}) {
    CHECK_FALSE(
        sokal_test(f, beta, 4, 4, default_sokal_grid()).violation_found);
  }
}

TEST_CASE("sokal: two-pole function fails at order 2, passes at order 3") {
  const auto ex = remark7_function();
  const auto at2 = sokal_test(ex.provider, 2.0, 4, 4, default_sokal_grid());
  CHECK(at2.violation_found);
  REQUIRE(at2.sokal_witness.has_value());
  CHECK(at2.sokal_witness->value < 0.0);
  // the reported violation survives local grid refinement
  const auto& w = *at2.sokal_witness;
  const double left = sokal_value(ex.provider, 2.0, w.n, w.k, w.x / 1.02);
  const double right = sokal_value(ex.provider, 2.0, w.n, w.k, w.x * 1.02);
  CHECK((left < 0.0 || right < 0.0));

  const auto at3 = sokal_test(ex.provider, 3.0, 4, 4, default_sokal_grid());
  CHECK_FALSE(at3.violation_found);
}

TEST_CASE("sokal: derivative shift identity") {
  // passing (n+1, k) at order a equals passing (n, k) at order a+1 for -f'
  const auto ex = remark7_function();
  const auto fprime = DerivativeProvider{
      [&ex](int n, double x) { return -ex.provider(n + 1, x); }, 63};
  for (int n : {0, 1, 2}) {
    for (int k : {0, 1, 3}) {
      for (double x : {0.3, 1.0, 4.0}) {
        const double a = sokal_value(ex.provider, 2.0, n + 1, k, x);
        const double b = sokal_value(fprime, 3.0, n, k, x);
        CHECK(std::fabs(a - b) <= 1e-10 * (1.0 + std::fabs(a)));
      }
    }
  }
}

TEST_CASE("sokal: measure-backed provider sanity against finite differences") {
  StieltjesFunction f{Measure::dirac(1.0, 1.0), 1.0};
  const auto prov = provider_from_function(f);
  const double x = 1.3, h = 1e-5;
  const double fd1 = (prov(0, x + h) - prov(0, x - h)) / (2.0 * h);
  CHECK(std::fabs(prov(1, x) - fd1) < 1e-7);
  const double fd2 =
      (prov(0, x + h) - 2.0 * prov(0, x) + prov(0, x - h)) / (h * h);
  CHECK(std::fabs(prov(2, x) - fd2) < 1e-4);
}

TEST_CASE("krein test") {
  const auto grid = default_half_plane_grid();
  const std::vector<double> xs = default_sokal_grid();
  {
    auto f = [](Complex z) { return 1.0 / (1.0 + z); };
    CHECK_FALSE(krein_test(f, grid, xs).violation_found);
  }
  {
    auto f = [](Complex z) { return (1.0 + z) * (1.0 + z); };
    const auto rep = krein_test(f, grid, xs);
    CHECK(rep.violation_found);
    REQUIRE(rep.witness_point.has_value());
    CHECK(rep.witness_point->imag() > 0.0);
  }
}

TEST_CASE("two-pole function: explicit imaginary part in the quarter sector") {
  const auto ex = remark7_function();
  for (double r : {0.2, 1.0, 5.0}) {
    for (double th : {0.1, 0.7, 1.4}) {
      const Complex z = std::polar(r, th);
      const Complex v = ex.fn(z);
      // the closed formula reproduces the evaluation
      CHECK(std::fabs(v.imag() - ex.im_formula(z.real(), z.imag())) < 1e-12);
      // and it is strictly negative on the open quarter sector
      CHECK(v.imag() < 0.0);
    }
  }
}

TEST_CASE("sector test") {
  const auto ex = remark7_function();
  {
    const auto rep = sector_test(ex.fn, 2.0, sector_grid(2.0, 21, 20));
    CHECK_FALSE(rep.violation_found);
    CHECK(rep.necessary_only);
  }
  {
    StieltjesFunction e1{Measure::constant_density(1.0, 0.0, 1.0), 2.0};
    auto f = [&e1](Complex z) { return eval(e1, z); };
    CHECK_FALSE(
        sector_test(f, 2.0, sector_grid(2.0, 15, 12)).violation_found);
  }
  {
    auto f = [](Complex z) { return (1.0 + z) * (1.0 + z); };
    CHECK(sector_test(f, 2.0, sector_grid(2.0, 15, 12)).violation_found);
  }
  auto f = [](Complex z) { return 1.0 / (1.0 + z); };
  CHECK_THROWS(sector_test(f, 0.5, sector_grid(2.0, 15, 12)));
}

TEST_CASE("power map root lands in the classical cone") {
  // (1+z)^(-1/2) at order 1/2; its square reciprocal map is 1/(1+z)
  StieltjesFunction f{Measure::dirac(1.0, 1.0), 0.5};
  const auto root = power_map_root(f);
  for (double x : {0.3, 1.0, 6.0}) {
    CHECK(std::fabs(root({x, 0.0}).real() - 1.0 / (1.0 + x)) < 1e-10);
  }
  CHECK_FALSE(krein_test(root, default_half_plane_grid(),
                         default_sokal_grid())
                  .violation_found);
  // alpha = 1 is the identity
  StieltjesFunction g{Measure::dirac(1.0, 1.0), 1.0};
  const auto id = power_map_root(g);
  CHECK(std::abs(id({2.0, 1.0}) - eval(g, {2.0, 1.0})) < 1e-14);
  StieltjesFunction h{Measure::dirac(1.0, 1.0), 2.0};
  CHECK_THROWS(power_map_root(h));
}

TEST_CASE("power map stretch lands in the classical cone") {
  StieltjesFunction e1{Measure::constant_density(1.0, 0.0, 1.0), 2.0};
  const auto stretched = power_map_stretch(e1);
  CHECK_FALSE(krein_test(stretched, default_half_plane_grid(),
                         default_sokal_grid())
                  .violation_found);
  StieltjesFunction h{Measure::dirac(1.0, 1.0), 0.5};
  CHECK_THROWS(power_map_stretch(h));
}

TEST_CASE("the stretch map is not surjective: a pole sneaks into the sector") {
  // g(z) = 1/(1+z) pulled back by z^2 has a pole at z = i, so it cannot
  // carry an order-2 representation; the sector scan flags the blow-up.
  auto f = [](Complex z) { return 1.0 / (1.0 + z * z); };
  const auto rep = sector_test(f, 2.0, sector_grid(2.0, 21, 20));
  CHECK(rep.violation_found);
}

TEST_CASE("product membership") {
  const auto pole = provider_from_poles({{1.0, 1.0, 1.0}});
  // (1+x)^-2 at order 2
  const auto rep =
      product_membership_check(pole, 1.0, pole, 1.0, 4, 4,
                               default_sokal_grid());
  CHECK_FALSE(rep.violation_found);

  // prototype at order 2 times the canonical pole, checked at order 3
  StieltjesFunction e1{Measure::constant_density(1.0, 0.0, 1.0), 2.0};
  const auto pe1 = provider_from_function(e1);
  const auto rep2 =
      product_membership_check(pe1, 2.0, pole, 1.0, 3, 3,
                               default_sokal_grid());
  CHECK_FALSE(rep2.violation_found);

  // order zero factors act as constants
  const auto cst = DerivativeProvider{
      [](int n, double) { return n == 0 ? 2.5 : 0.0; }, 1 << 20};
  const auto rep3 = product_membership_check(pole, 1.0, cst, 0.0, 4, 4,
                                             default_sokal_grid());
  CHECK_FALSE(rep3.violation_found);
}

TEST_CASE("order-3 representation of the two-pole function") {
  const auto ex = remark7_function();
  StieltjesFunction f3{ex.order3_measure, 3.0};
  for (Complex z : {Complex{0.5, 0.0}, Complex{1.0, 1.0}}) {
    const Complex via_measure = eval(f3, z);
    const Complex rational = ex.fn(z);
    CHECK(std::abs(via_measure - rational) <=
          1e-9 * (1.0 + std::abs(rational)));
  }
  // arithmetic spot value f(1) = 1/4 - 1/18 = 7/36
  CHECK(std::fabs(ex.fn({1.0, 0.0}).real() - 7.0 / 36.0) < 1e-15);
}
