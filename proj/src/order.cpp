#include "stieltjes/order.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stieltjes/fractional.hpp"

namespace stieltjes {

KernelIntegral phi_with_error(const Measure& mu_beta, double epsilon,
                              double y) {
  if (!(y > 0.0)) throw std::invalid_argument("phi: requires y > 0");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("phi: requires epsilon in (0, min(beta,1))");
  KernelIntegral out;
  for (const Atom& a : mu_beta.atoms()) {
    if (a.location < y)
      out.value += a.mass * std::pow(y - a.location, -epsilon);
  }
  for (const auto& p : mu_beta.pieces()) {
    if (p.lo >= y) break;
    const auto r =
        piece_kernel_integral(p, p.lo, std::min(y, p.hi), y, -epsilon, 1e-10);
    out.value += r.value;
    out.error += r.error;
  }
  return out;
}

double phi(const Measure& mu_beta, double epsilon, double y) {
  return phi_with_error(mu_beta, epsilon, y).value;
}

MonotonicityResult monotonicity_test(const Measure& mu_beta, double epsilon,
                                     std::span<const double> grid) {
  if (grid.size() < 64)
    throw std::invalid_argument("monotonicity_test: needs >= 64 grid points");
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument(
          "monotonicity_test: grid must be strictly increasing");

  MonotonicityResult res;
  res.samples.reserve(grid.size());
  for (double y : grid) {
    const auto r = phi_with_error(mu_beta, epsilon, y);
    res.samples.push_back({y, r.value, r.error});
  }
  res.verdict = MonotoneVerdict::kNonDecreasingOnGrid;
  for (size_t i = 0; i + 1 < res.samples.size(); ++i) {
    const auto& a = res.samples[i];
    const auto& b = res.samples[i + 1];
    const double slack =
        a.error + b.error + 1e-13 * (std::fabs(a.value) + std::fabs(b.value));
    if (b.value < a.value - slack) {
      res.verdict = MonotoneVerdict::kViolation;
      res.witness_y = a.y;
      res.drop = a.value - b.value;
      break;
    }
  }
  return res;
}

RatioLimitResult ratio_limit_test(const Measure& mu_beta, double epsilon,
                                  std::span<const double> ladder) {
  if (ladder.size() < 3)
    throw std::invalid_argument("ratio_limit_test: needs >= 3 ladder points");
  RatioLimitResult res;
  for (double y : ladder) {
    const double lo = phi(mu_beta, epsilon, y);
    if (!(lo > 0.0)) {
      res.inconclusive = true;
      return res;
    }
    res.ladder.push_back(y);
    res.ratios.push_back(phi(mu_beta, epsilon, 2.0 * y) / lo);
  }
  const size_t n = res.ratios.size();
  const double r1 = res.ratios[n - 3], r2 = res.ratios[n - 2],
               r3 = res.ratios[n - 1];
  double limit = r3;
  if (r2 != r1) {
    const double theta = (r3 - r2) / (r2 - r1);
    if (std::fabs(theta) < 0.9) limit = r3 + theta * (r3 - r2) / (1.0 - theta);
  }
  res.estimate = limit;
  res.spread = std::max(std::fabs(r3 - r2), std::fabs(r2 - r1));
  res.exact_evidence = limit < 1.0 - 3.0 * res.spread;
  return res;
}

bool compact_support_shortcut(const Measure& mu_beta) {
  if (mu_beta.atom_infinity() > 0.0) return false;
  if (std::isinf(mu_beta.sup_support())) return false;
  return !mu_beta.is_zero();
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo && n >= 2))
    throw std::invalid_argument("log_grid: bad parameters");
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(i * step);
  return g;
}

std::vector<double> default_phi_grid(const Measure& mu) {
  double smallest = kInf, largest = 0.0;
  for (double b : mu.breakpoints()) {
    if (b > 0.0) smallest = std::min(smallest, b);
    largest = std::max(largest, b);
  }
  if (std::isinf(smallest)) smallest = 1.0;
  if (largest <= 0.0) largest = 1.0;
  // slowly decaying tails turn monotone only far out; reach deep by default
  const double hi = std::isinf(mu.sup_support())
                        ? std::max(1e5, 256.0 * largest)
                        : 64.0 * largest;
  return log_grid(0.25 * smallest, hi, 128);
}

namespace {

bool monotone_at(const Measure& mu, double eps,
                 std::span<const double> grid) {
  return monotonicity_test(mu, eps, grid).verdict ==
         MonotoneVerdict::kNonDecreasingOnGrid;
}

}  // namespace

OrderInterval estimate_exact_order(const StieltjesFunction& f,
                                   double alpha_lo, double tol) {
  if (!(tol > 0.0)) tol = 0.025;
  const double floor_lo = std::max(0.0, alpha_lo);
  Measure mu = (f.rep == Representation::kMu)
                   ? f.measure
                   : involution(f.measure, f.alpha);
  double b = f.alpha;

  if (mu.atom_zero() > 0.0)
    return {b, b, false, "the z^-order part admits no lower order"};
  if (compact_support_shortcut(mu))
    return {b, b, false, "compact support, order is exact"};

  for (int round = 0; round < 40; ++round) {
    const std::vector<double> grid = default_phi_grid(mu);
    const double eps_cap =
        std::min(b - floor_lo, std::min(b, 1.0)) - 1e-3;
    const double eps_min = std::min({0.01, tol / 2.0, eps_cap / 2.0});
    if (!(eps_min > 0.0))
      return {floor_lo, b, false, "range below tolerance"};

    if (!monotone_at(mu, eps_min, grid)) {
      // monotone at a larger epsilon would contradict the nesting of the
      // membership classes; surface both witnesses instead of guessing
      if (monotone_at(mu, eps_cap, grid)) {
        return {floor_lo, b, true,
                "conflicting evidence: violation at epsilon " +
                    std::to_string(eps_min) + " but monotone at " +
                    std::to_string(eps_cap)};
      }
      // evidence that the order cannot drop even by eps_min
      return {std::max(floor_lo, b - eps_min), b, false,
              "smoothing is non-monotone at every tested epsilon"};
    }
    if (monotone_at(mu, eps_cap, grid)) {
      const double reached = b - eps_cap;
      if (reached <= floor_lo + tol)
        return {floor_lo, reached, false, "monotone down to the floor"};
      // an entire unit of epsilon passes: lower the representation
      try {
        mu = order_lower_closed(mu, b, 0.9);
        b -= 0.9;
        continue;
      } catch (const std::domain_error&) {
        return {floor_lo, reached, true,
                "cannot lower the representation further"};
      }
    }
    // threshold in (eps_min, eps_cap): bisect it
    double lo = eps_min, hi = eps_cap;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      (monotone_at(mu, mid, grid) ? lo : hi) = mid;
    }
    return {std::max(floor_lo, b - hi), std::min(b, b - lo), false,
            "monotonicity threshold located"};
  }
  return {floor_lo, b, true, "lowering did not terminate"};
}

OrderReport run_order_analysis(const StieltjesFunction& f,
                               std::optional<double> epsilon,
                               double estimate_tol) {
  OrderReport rep;
  rep.beta_tested = f.alpha;
  const Measure& mu = (f.rep == Representation::kMu)
                          ? f.measure
                          : involution(f.measure, f.alpha);
  const double eps_default = std::min(f.alpha, 1.0) / 2.0;
  rep.epsilon = epsilon.value_or(eps_default);
  if (!(rep.epsilon > 0.0 && rep.epsilon < std::min(f.alpha, 1.0)))
    throw std::invalid_argument(
        "order analysis: epsilon must lie in (0, min(beta,1))");

  const std::vector<double> grid = default_phi_grid(mu);
  rep.monotonicity = monotonicity_test(mu, rep.epsilon, grid);
  rep.phi_samples = rep.monotonicity.samples;

  const auto ladder = log_grid(1e2, 1e4, 5);
  const auto ratio = ratio_limit_test(mu, rep.epsilon, ladder);
  if (ratio.estimate) rep.ratio_estimate = ratio.estimate;

  if (compact_support_shortcut(mu)) {
    rep.conclusion = OrderConclusion::kExact;
    rep.evidence = "compact support";
  } else if (rep.monotonicity.verdict ==
             MonotoneVerdict::kNonDecreasingOnGrid) {
    rep.conclusion = OrderConclusion::kNotExact;
    rep.evidence = "smoothing non-decreasing on grid";
  } else {
    // a violation at this epsilon only rules out a drop past it; retry the
    // spread of epsilons before concluding
    bool any_monotone = false;
    double eps_used = rep.epsilon;
    for (double e : {0.1, 0.9 * std::min(f.alpha, 1.0)}) {
      if (e <= 0.0 || e >= std::min(f.alpha, 1.0) || e == rep.epsilon)
        continue;
      if (monotonicity_test(mu, e, grid).verdict ==
          MonotoneVerdict::kNonDecreasingOnGrid) {
        any_monotone = true;
        eps_used = e;
        break;
      }
    }
    if (any_monotone) {
      rep.conclusion = OrderConclusion::kNotExact;
      rep.evidence = "smoothing non-decreasing at epsilon = " +
                     std::to_string(eps_used);
    } else if (ratio.exact_evidence) {
      rep.conclusion = OrderConclusion::kExact;
      rep.evidence = "doubling ratio of the smoothing settles below one";
    } else {
      rep.conclusion = OrderConclusion::kExact;
      rep.evidence =
          "smoothing loses monotonicity at every tested epsilon";
    }
  }

  rep.estimated_order = estimate_exact_order(f, 0.0, estimate_tol);
  return rep;
}

}  // namespace stieltjes
