#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stieltjes/measure.hpp"
#include "stieltjes/transform.hpp"

namespace stieltjes {

// Phi(y) = int_(0,y) mu(du) / (y-u)^epsilon, the order-epsilon smoothing
// whose global monotonicity decides whether the representation order is
// exact.  Masses at 0 and infinity do not enter.
double phi(const Measure& mu_beta, double epsilon, double y);
KernelIntegral phi_with_error(const Measure& mu_beta, double epsilon,
                              double y);

struct PhiSample {
  double y = 0.0;
  double value = 0.0;
  double error = 0.0;
};

enum class MonotoneVerdict { kNonDecreasingOnGrid, kViolation, kInconclusive };

struct MonotonicityResult {
  MonotoneVerdict verdict = MonotoneVerdict::kInconclusive;
  std::vector<PhiSample> samples;
  double witness_y = 0.0;  // valid when verdict == kViolation
  double drop = 0.0;       // decrease beyond the combined error estimate
};

// Grid evidence only: a pass cannot certify monotonicity on all of (0,inf).
// The grid must be strictly increasing with at least 64 points.
MonotonicityResult monotonicity_test(const Measure& mu_beta, double epsilon,
                                     std::span<const double> grid);

struct RatioLimitResult {
  std::vector<double> ladder;
  std::vector<double> ratios;  // Phi(2y)/Phi(y) along the ladder
  std::optional<double> estimate;
  double spread = 0.0;
  bool exact_evidence = false;  // estimate < 1 - 3*spread
  bool inconclusive = false;
};

RatioLimitResult ratio_limit_test(const Measure& mu_beta, double epsilon,
                                  std::span<const double> ladder);

// Compactly supported representing measure (no mass at infinity, positive
// total mass) makes the representation order exact.
bool compact_support_shortcut(const Measure& mu_beta);

struct OrderInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool inconclusive = false;
  std::string note;
};

// Evidence-based bracketing of the exact order of f, searching down from
// f's representation order by bisecting the monotonicity threshold in
// epsilon and lowering the representation when a whole epsilon range
// passes.  Verdicts are grid evidence, not proof.
OrderInterval estimate_exact_order(const StieltjesFunction& f,
                                   double alpha_lo, double tol);

enum class OrderConclusion { kExact, kNotExact, kInconclusive };

struct OrderReport {
  double beta_tested = 0.0;
  double epsilon = 0.0;
  std::vector<PhiSample> phi_samples;
  MonotonicityResult monotonicity;
  std::optional<double> ratio_estimate;
  std::optional<OrderInterval> estimated_order;
  OrderConclusion conclusion = OrderConclusion::kInconclusive;
  std::string evidence;
};

// Full diagnostic run at one order: shortcut, monotonicity at the given
// epsilon (default min(beta,1)/2, with retries at 0.1 and 0.9 min(beta,1)
// before settling on a verdict), ratio limit, and the order estimate.
OrderReport run_order_analysis(const StieltjesFunction& f,
                               std::optional<double> epsilon,
                               double estimate_tol = 0.025);

std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> default_phi_grid(const Measure& mu);

}  // namespace stieltjes
