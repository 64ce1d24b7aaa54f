#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace stieltjes {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Atom {
  double location = 0.0;  // > 0; masses at 0 and infinity live on Measure
  double mass = 0.0;
};

// One closed-form density summand
//   coef * u^p * (u - anchor_left)^exp_left * (anchor_right - u)^exp_right.
// Anchors may lie outside the carrying interval (e.g. a kernel (u-a)^e that
// stays active past the end of the segment it started on).  anchor_left = 0
// is folded into p; exp_right requires a finite anchor_right.
struct PowerTerm {
  double coef = 0.0;
  double p = 0.0;
  double anchor_left = 0.0;
  double exp_left = 0.0;
  double anchor_right = kInf;
  double exp_right = 0.0;

  double eval(double u) const;
};

// Density segment on (lo, hi).  Closed-form content is the sum of `terms`;
// `fn` is an optional numeric-only part with declared endpoint behaviour:
// fn ~ (u-lo)^fn_exp_lo near lo, and near hi either (hi-u)^fn_exp_hi
// (finite hi) or u^fn_exp_hi as a tail power (hi = inf).
//
// sum_exp_lo / sum_exp_hi (NaN = unset) declare the endpoint behaviour of
// the TERM SUM when individual terms cancel there: e.g. the image of a
// constant under a fractional integral is c[(y-a)^e - (y-b)^e], whose
// terms grow while the sum decays.  Integrators treat such a piece jointly
// near that endpoint instead of term by term.
struct DensityPiece {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<PowerTerm> terms;
  std::function<double(double)> fn;
  double fn_exp_lo = 0.0;
  double fn_exp_hi = 0.0;
  double sum_exp_lo = std::numeric_limits<double>::quiet_NaN();
  double sum_exp_hi = std::numeric_limits<double>::quiet_NaN();

  bool closed_form() const { return !fn; }
  bool has_sum_exp_lo() const { return !std::isnan(sum_exp_lo); }
  bool has_sum_exp_hi() const { return !std::isnan(sum_exp_hi); }
  double density(double u) const;
  double terms_density(double u) const;
};

// A non-negative measure on [0, inf]: masses at the two boundary points,
// finitely many interior atoms, and piecewise densities on (0, inf).
// Immutable after construction; all operations on it are pure.
class Measure {
 public:
  Measure() = default;
  Measure(double atom_zero, double atom_infinity, std::vector<Atom> atoms,
          std::vector<DensityPiece> pieces);

  static Measure dirac(double location, double mass);
  static Measure constant_density(double c, double lo, double hi);
  static Measure zero() { return Measure(); }

  double atom_zero() const { return atom_zero_; }
  double atom_infinity() const { return atom_infinity_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }

  bool purely_closed_form() const;
  bool is_zero() const;
  // Supremum of the support of the [0,inf) part; inf when unbounded.
  double sup_support() const;
  // Finite interior breakpoints: atom locations and piece endpoints, sorted.
  std::vector<double> breakpoints() const;

  // Same measure with atoms and densities scaled by `factor`; the masses at
  // 0 and infinity are left alone.
  Measure scaled_interior(double factor) const;

  Measure with_atom_zero(double m) const;
  Measure with_atom_infinity(double m) const;

 private:
  double atom_zero_ = 0.0;
  double atom_infinity_ = 0.0;
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
};

// Left-continuous distribution evaluator x -> mu([0,x)), F(0) = 0, plus the
// separately carried mass at infinity.
struct DistributionFunction {
  std::function<double(double)> value;
  double atom_infinity = 0.0;
};

// int_[0,inf) dmu/(1+t)^alpha; the mass at infinity is not included.
// Divergence is reported as +inf.
double membership_integral(const Measure& mu, double alpha);

// F(x) = mu([0,x)), left-continuous, F(0) = 0.
double distribution(const Measure& mu, double x);

// Pushforward under t -> 1/t with weight t^-alpha; masses at 0 and infinity
// trade places.  An involution.
Measure involution(const Measure& mu, double alpha);

// Moments int t^k dmu(t), k = 0..k_max; requires compact support and no
// mass at infinity.
std::vector<double> moments(const Measure& mu, int k_max);

// Density of mu at an interior point (0 outside all pieces).
double density_at(const Measure& mu, double u);

// Equality up to tolerance: atoms and boundary masses near-exactly,
// densities pointwise on the supplied grid.
bool measures_close(const Measure& a, const Measure& b,
                    std::span<const double> grid, double tol);

// int_{x1}^{x2} of a power term; exact via elementary primitives, binomial
// expansions or incomplete beta where possible, quadrature otherwise.
// x2 may be inf.
double power_term_increment(const PowerTerm& t, double x1, double x2);

// Algebraic exponent of a term at the endpoints of a subinterval of its
// carrier: t ~ (u-lo)^e near lo, (hi-u)^e near finite hi; for hi = inf the
// value is the tail power t ~ u^e.
double term_exponent_lo(const PowerTerm& t, double lo);
double term_exponent_hi(const PowerTerm& t, double hi);

// The term with its endpoint weight factors removed: the returned function
// is smooth on [x1, x2] and
//   t(u) = core(u) * (u-x1)^term_exponent_lo * (x2-u)^term_exponent_hi
// (right weight only for finite x2).  Pairs with quad::integrate_core.
std::function<double(double)> term_smooth_core(const PowerTerm& t, double x1,
                                               double x2);

struct KernelIntegral {
  double value = 0.0;
  double error = 0.0;
};

// int over (p.lo, p.hi) of the piece's density times a kernel that is
// smooth on the closed interval; for p.hi = inf, kernel_tail declares the
// kernel's algebraic decay power (NaN = unknown, faster than algebraic).
// Term sums with cancelling tails are integrated jointly past the anchors.
KernelIntegral integrate_piece_against(
    const DensityPiece& p, const std::function<double(double)>& kernel,
    double kernel_tail, double rel_tol);

// int_{x1}^{x2} density(u) (y-u)^kappa du over a subinterval of the piece,
// x1 >= p.lo, x2 <= min(y, p.hi), kappa > -1.  Closed forms (incomplete
// beta) for constants and single-anchor power terms, quadrature otherwise.
KernelIntegral piece_kernel_integral(const DensityPiece& p, double x1,
                                     double x2, double y, double kappa,
                                     double rel_tol);

}  // namespace stieltjes
