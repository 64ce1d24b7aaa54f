#include "stieltjes/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stieltjes/specfun.hpp"

namespace stieltjes {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1.0);
  return r;
}

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

DerivativeProvider provider_from_function(const StieltjesFunction& f) {
  const StieltjesFunction copy = f;
  return {[copy](int n, double x) { return derivative(copy, n, x); }, 64};
}

DerivativeProvider provider_from_poles(std::vector<SimplePole> poles) {
  for (const auto& p : poles)
    if (!(p.power > 0.0))
      throw std::invalid_argument("provider_from_poles: requires power > 0");
  return {[poles](int n, double x) {
            double acc = 0.0;
            for (const auto& p : poles) {
              acc += p.coef * specfun::pochhammer(p.power, n) *
                     std::pow(x + p.offset, -p.power - n);
            }
            return (n % 2 ? -1.0 : 1.0) * acc;
          },
          1 << 20};
}

DerivativeProvider provider_product(const DerivativeProvider& f,
                                    const DerivativeProvider& g) {
  const auto fd = f.deriv;
  const auto gd = g.deriv;
  const int max_order = std::min(f.max_order, g.max_order);
  return {[fd, gd](int n, double x) {
            double acc = 0.0;
            for (int i = 0; i <= n; ++i)
              acc += binom(n, i) * fd(i, x) * gd(n - i, x);
            return acc;
          },
          max_order};
}

namespace {

// F with the largest Leibniz term alongside, for scale-aware sign checks.
std::pair<double, double> sokal_value_scaled(const DerivativeProvider& f,
                                             double alpha, int n, int k,
                                             double x) {
  const double p = n + k + alpha - 1.0;
  double sum = 0.0, scale = 0.0;
  for (int j = 0; j <= k; ++j) {
    const double term = binom(k, j) * specfun::falling_factorial(p, j) *
                        std::pow(x, p - j) * f(n + k - j, x);
    sum += term;
    scale = std::max(scale, std::fabs(term));
  }
  const double v = (n % 2 ? -1.0 : 1.0) * sum;
  return {v, scale};
}

}  // namespace

double sokal_value(const DerivativeProvider& f, double alpha, int n, int k,
                   double x) {
  return sokal_value_scaled(f, alpha, n, k, x).first;
}

CriterionReport sokal_test(const DerivativeProvider& f, double alpha,
                           int n_max, int k_max,
                           std::span<const double> x_grid) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("sokal_test: requires alpha > 0");
  if (n_max + k_max > f.max_order)
    throw std::invalid_argument(
        "sokal_test: provider does not reach derivative order n_max + k_max");
  CriterionReport rep;
  rep.criterion = "sokal";
  for (int n = 0; n <= n_max; ++n) {
    for (int k = 0; k <= k_max; ++k) {
      for (double x : x_grid) {
        ++rep.samples;
        const auto [v, scale] = sokal_value_scaled(f, alpha, n, k, x);
        if (v < -1e-10 * (1.0 + scale)) {
          // only report sign changes that survive a local refinement
          const double l = sokal_value(f, alpha, n, k, x / 1.03);
          const double r = sokal_value(f, alpha, n, k, x * 1.03);
          if (l < 0.0 || r < 0.0) {
            rep.violation_found = true;
            rep.sokal_witness = SokalWitness{n, k, x, v};
            rep.detail = "negative derivative combination";
            return rep;
          }
        }
      }
    }
  }
  rep.detail = "no violation found (membership evidence only)";
  return rep;
}

namespace {

bool blown_up(std::complex<double> v, double scale) {
  return !std::isfinite(v.real()) || !std::isfinite(v.imag()) ||
         std::abs(v) > 1e10 * (1.0 + scale);
}

}  // namespace

CriterionReport krein_test(const ComplexFn& f,
                           std::span<const std::complex<double>> z_grid,
                           std::span<const double> x_grid) {
  CriterionReport rep;
  rep.criterion = "krein";
  for (double x : x_grid) {
    ++rep.samples;
    const auto v = f({x, 0.0});
    if (!std::isfinite(v.real()) || v.real() < -1e-10 * (1.0 + std::abs(v))) {
      rep.violation_found = true;
      rep.witness_point = std::complex<double>{x, 0.0};
      rep.detail = "negative value on the positive axis";
      return rep;
    }
  }
  for (const auto& z : z_grid) {
    ++rep.samples;
    const auto v = f(z);
    if (blown_up(v, 0.0) || v.imag() > 1e-10 * (1.0 + std::abs(v))) {
      rep.violation_found = true;
      rep.witness_point = z;
      rep.detail = "positive imaginary part in the upper half-plane";
      return rep;
    }
  }
  rep.detail = "no violation found";
  return rep;
}

CriterionReport sector_test(const ComplexFn& f, double alpha,
                            std::span<const std::complex<double>> z_grid) {
  if (!(alpha >= 1.0))
    throw std::invalid_argument("sector_test: requires alpha >= 1");
  CriterionReport rep;
  rep.criterion = "sector";
  rep.necessary_only = true;
  // scale for the blow-up guard: membership forces local bounds away from
  // the cut, so samples far above the typical magnitude rule it out
  std::vector<std::complex<double>> vals;
  std::vector<double> mags;
  vals.reserve(z_grid.size());
  for (const auto& z : z_grid) {
    const auto v = f(z);
    vals.push_back(v);
    if (std::isfinite(v.real()) && std::isfinite(v.imag()))
      mags.push_back(std::abs(v));
  }
  double scale = 0.0;
  if (!mags.empty()) {
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2,
                     mags.end());
    scale = mags[mags.size() / 2];
  }
  for (size_t i = 0; i < vals.size(); ++i) {
    ++rep.samples;
    if (blown_up(vals[i], scale)) {
      rep.violation_found = true;
      rep.witness_point = z_grid[i];
      rep.detail = "unbounded inside the sector";
      return rep;
    }
    if (vals[i].imag() > 1e-10 * (1.0 + std::abs(vals[i]))) {
      rep.violation_found = true;
      rep.witness_point = z_grid[i];
      rep.detail = "positive imaginary part inside the sector";
      return rep;
    }
  }
  rep.detail = "no violation found (condition is necessary, not sufficient)";
  return rep;
}

ComplexFn power_map_root(const StieltjesFunction& f) {
  if (!(f.alpha <= 1.0))
    throw std::invalid_argument("power_map_root: requires alpha <= 1");
  const StieltjesFunction copy = f;
  const double inv = 1.0 / f.alpha;
  return [copy, inv](std::complex<double> z) {
    return std::pow(eval(copy, z), inv);
  };
}

ComplexFn power_map_stretch(const StieltjesFunction& f) {
  if (!(f.alpha >= 1.0))
    throw std::invalid_argument("power_map_stretch: requires alpha >= 1");
  const StieltjesFunction copy = f;
  const double inv = 1.0 / f.alpha;
  return [copy, inv](std::complex<double> z) {
    return eval(copy, std::pow(z, inv));
  };
}

TwoPoleExample remark7_function() {
  TwoPoleExample ex;
  ex.fn = [](std::complex<double> z) {
    return 1.0 / ((z + 1.0) * (z + 1.0)) -
           0.5 / ((z + 2.0) * (z + 2.0));
  };
  ex.provider = provider_from_poles({{1.0, 1.0, 2.0}, {-0.5, 2.0, 2.0}});
  ex.im_formula = [](double x, double y) {
    const double num =
        y * (30.0 + 87.0 * x + 96.0 * x * x + 50.0 * x * x * x +
             12.0 * x * x * x * x + x * x * x * x * x + 12.0 * y * y +
             22.0 * x * y * y + 12.0 * x * x * y * y +
             2.0 * x * x * x * y * y + x * y * y * y * y);
    const double d1 = 1.0 + 2.0 * x + x * x + y * y;
    const double d2 = 4.0 + 4.0 * x + x * x + y * y;
    return -num / (d1 * d1 * d2 * d2);
  };
  DensityPiece inner, outer;
  inner.lo = 1.0;
  inner.hi = 2.0;
  inner.terms.push_back({2.0, 0.0, 0.0, 0.0, kInf, 0.0});
  outer.lo = 2.0;
  outer.hi = kInf;
  outer.terms.push_back({1.0, 0.0, 0.0, 0.0, kInf, 0.0});
  ex.order3_measure = Measure(0.0, 0.0, {}, {inner, outer});
  return ex;
}

CriterionReport product_membership_check(const DerivativeProvider& f,
                                         double alpha,
                                         const DerivativeProvider& g,
                                         double beta, int n_max, int k_max,
                                         std::span<const double> x_grid) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(alpha + beta > 0.0))
    throw std::invalid_argument(
        "product_membership_check: orders must be non-negative and not both "
        "zero");
  auto rep =
      sokal_test(provider_product(f, g), alpha + beta, n_max, k_max, x_grid);
  rep.criterion = "sokal-product";
  return rep;
}

std::vector<double> default_sokal_grid() {
  std::vector<double> g(33);
  const double step = std::log(20.0 / 0.05) / 32.0;
  for (int i = 0; i < 33; ++i) g[i] = 0.05 * std::exp(i * step);
  return g;
}

std::vector<std::complex<double>> default_half_plane_grid() {
  std::vector<std::complex<double>> g;
  for (int i = 0; i < 20; ++i) {
    const double r = 0.1 * std::pow(100.0, i / 19.0);
    for (int j = 0; j < 20; ++j) {
      const double th = kPi * (j + 0.5) / 20.0;
      g.push_back(std::polar(r, th));
    }
  }
  return g;
}

std::vector<std::complex<double>> sector_grid(double alpha, int nr,
                                              int ntheta) {
  if (!(alpha >= 1.0) || nr < 2 || ntheta < 2)
    throw std::invalid_argument("sector_grid: bad parameters");
  std::vector<std::complex<double>> g;
  for (int i = 0; i < nr; ++i) {
    const double r = 0.1 * std::pow(100.0, i / (nr - 1.0));
    for (int j = 1; j <= ntheta; ++j) {
      // closed at the upper edge: members stay finite and keep the sign
      // there by continuity
      const double th = (kPi / alpha) * j / ntheta;
      g.push_back(std::polar(r, th));
    }
  }
  return g;
}

}  // namespace stieltjes
