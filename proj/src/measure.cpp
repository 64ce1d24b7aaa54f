#include "stieltjes/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stieltjes/quadrature.hpp"
#include "stieltjes/specfun.hpp"

namespace stieltjes {

namespace {

// int_{t1}^{t2} s^e ds, t2 possibly infinite.
double primitive_pow(double t1, double t2, double e) {
  if (std::isinf(t2)) {
    if (e >= -1.0) return kInf;
    return -std::pow(t1, e + 1.0) / (e + 1.0);
  }
  if (e == -1.0) return std::log(t2 / t1);
  return (std::pow(t2, e + 1.0) - std::pow(t1, e + 1.0)) / (e + 1.0);
}

constexpr int kMaxBinomialTerms = 400;

double quad_term_increment(const PowerTerm& t, double x1, double x2) {
  quad::SingularIntegrand s;
  s.f = term_smooth_core(t, x1, x2);
  s.a = x1;
  s.b = x2;
  s.exponent_a = term_exponent_lo(t, x1);
  s.exponent_b = term_exponent_hi(t, x2);
  return quad::integrate_core(s, 1e-13).value;
}

// u^p expanded about the left anchor; valid for segments within
// (A, 1.5A].  Returns NaN when the series fails to settle.
double series_left_anchor(double p, double A, double e, double s1, double s2) {
  double sum = 0.0;
  double coef = std::pow(A, p);
  for (int j = 0; j < kMaxBinomialTerms; ++j) {
    const double term = coef * primitive_pow(s1 - A, s2 - A, e + j);
    sum += term;
    if (j > 3 && std::fabs(term) <= 1e-17 * (std::fabs(sum) + 1e-300))
      return sum;
    coef *= (p - j) / ((j + 1.0) * A);
    if (coef == 0.0) return sum;  // p was a non-negative integer
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// (u-A)^e expanded in powers of A/u; valid on segments within [1.5A, inf).
double series_left_anchor_far(double p, double A, double e, double s1,
                              double s2) {
  double sum = 0.0;
  double coef = 1.0;
  for (int j = 0; j < kMaxBinomialTerms; ++j) {
    const double term = coef * primitive_pow(s1, s2, p + e - j);
    sum += term;
    if (j > 3 && std::fabs(term) <= 1e-17 * (std::fabs(sum) + 1e-300))
      return sum;
    coef *= (e - j) / (j + 1.0) * (-A);
    if (coef == 0.0) return sum;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// (B-u)^e expanded in powers of u/B; segments within (0, B/2].
double series_right_anchor_far(double p, double B, double e, double s1,
                               double s2) {
  double sum = 0.0;
  double coef = std::pow(B, e);
  for (int j = 0; j < kMaxBinomialTerms; ++j) {
    const double term = coef * primitive_pow(s1, s2, p + j);
    sum += term;
    if (j > 3 && std::fabs(term) <= 1e-17 * (std::fabs(sum) + 1e-300))
      return sum;
    coef *= (e - j) / ((j + 1.0) * (-B));
    if (coef == 0.0) return sum;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// u^p expanded about B; segments within [B/2, B).
double series_right_anchor(double p, double B, double e, double s1,
                           double s2) {
  double sum = 0.0;
  double coef = std::pow(B, p);
  for (int j = 0; j < kMaxBinomialTerms; ++j) {
    const double term = coef * primitive_pow(B - s2, B - s1, e + j);
    sum += term;
    if (j > 3 && std::fabs(term) <= 1e-17 * (std::fabs(sum) + 1e-300))
      return sum;
    coef *= (p - j) / ((j + 1.0) * (-B));
    if (coef == 0.0) return sum;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double term_exponent_lo(const PowerTerm& t, double lo) {
  double e = 0.0;
  if (t.exp_left != 0.0 && t.anchor_left == lo) e += t.exp_left;
  if (lo == 0.0) e += t.p;
  return e;
}

double term_exponent_hi(const PowerTerm& t, double hi) {
  if (std::isinf(hi)) return t.p + t.exp_left;  // tail power
  return (t.exp_right != 0.0 && t.anchor_right == hi) ? t.exp_right : 0.0;
}

std::function<double(double)> term_smooth_core(const PowerTerm& t, double x1,
                                               double x2) {
  const bool keep_p = t.p != 0.0 && x1 != 0.0;
  const bool keep_left = t.exp_left != 0.0 && t.anchor_left != x1;
  const bool keep_right = t.exp_right != 0.0 &&
                          (std::isinf(x2) || t.anchor_right != x2);
  const PowerTerm tc = t;
  return [tc, keep_p, keep_left, keep_right](double u) {
    double v = tc.coef;
    if (keep_p) v *= std::pow(u, tc.p);
    if (keep_left) v *= std::pow(u - tc.anchor_left, tc.exp_left);
    if (keep_right) v *= std::pow(tc.anchor_right - u, tc.exp_right);
    return v;
  };
}

double PowerTerm::eval(double u) const {
  double v = coef;
  if (p != 0.0) v *= std::pow(u, p);
  if (exp_left != 0.0) v *= std::pow(u - anchor_left, exp_left);
  if (exp_right != 0.0) v *= std::pow(anchor_right - u, exp_right);
  return v;
}

double DensityPiece::terms_density(double u) const {
  double v = 0.0;
  for (const auto& t : terms) v += t.eval(u);
  return v;
}

double DensityPiece::density(double u) const {
  double v = terms_density(u);
  if (fn) v += fn(u);
  return v;
}

double power_term_increment(const PowerTerm& t, double x1, double x2) {
  if (t.coef == 0.0 || x1 >= x2) return 0.0;
  if (std::isinf(x2) && t.p + t.exp_left >= -1.0) return kInf;
  const bool has_p = t.p != 0.0;
  const bool has_a = t.exp_left != 0.0;
  const bool has_b = t.exp_right != 0.0;
  const double A = t.anchor_left, B = t.anchor_right;

  if (!has_p && !has_a && !has_b) return t.coef * (x2 - x1);
  if (has_p && !has_a && !has_b)
    return t.coef * primitive_pow(x1, x2, t.p);
  if (!has_p && has_a && !has_b)
    return t.coef * primitive_pow(x1 - A, x2 - A, t.exp_left);
  if (!has_p && !has_a && has_b)
    return t.coef * primitive_pow(B - x2, B - x1, t.exp_right);

  if (has_p && has_a && !has_b) {
    const double split = 1.5 * A;
    double r = 0.0;
    bool ok = true;
    if (x1 < split) {
      const double v = series_left_anchor(t.p, A, t.exp_left, x1,
                                          std::min(x2, split));
      ok = ok && std::isfinite(v);
      r += v;
    }
    if (ok && x2 > split) {
      const double v = series_left_anchor_far(t.p, A, t.exp_left,
                                              std::max(x1, split), x2);
      ok = ok && std::isfinite(v);
      r += v;
    }
    if (ok) return t.coef * r;
    return quad_term_increment(t, x1, x2);
  }

  if (has_p && !has_a && has_b) {
    const double split = 0.5 * B;
    double r = 0.0;
    bool ok = true;
    if (x1 < split) {
      const double v = series_right_anchor_far(t.p, B, t.exp_right, x1,
                                               std::min(x2, split));
      ok = ok && std::isfinite(v);
      r += v;
    }
    if (ok && x2 > split) {
      const double v = series_right_anchor(t.p, B, t.exp_right,
                                           std::max(x1, split), x2);
      ok = ok && std::isfinite(v);
      r += v;
    }
    if (ok) return t.coef * r;
    return quad_term_increment(t, x1, x2);
  }

  if (!has_p && has_a && has_b) {
    const double len = B - A;
    const double v1 = (x1 - A) / len, v2 = (x2 - A) / len;
    const double scale = std::pow(len, t.exp_left + t.exp_right + 1.0);
    return t.coef * scale *
           (specfun::inc_beta(v2, t.exp_left + 1.0, t.exp_right + 1.0) -
            specfun::inc_beta(v1, t.exp_left + 1.0, t.exp_right + 1.0));
  }

  // all three factors: no convenient closed form
  return quad_term_increment(t, x1, x2);
}

KernelIntegral integrate_piece_against(
    const DensityPiece& p, const std::function<double(double)>& kernel,
    double kernel_tail, double rel_tol) {
  KernelIntegral out;
  auto add = [&out](const quad::QuadResult& r) {
    out.value += r.value;
    out.error += r.error;
  };
  const bool infinite = std::isinf(p.hi);

  if (!p.terms.empty()) {
    double lo = p.lo;
    double hi = p.hi;
    // joint stretch next to a lower endpoint where the term sum cancels
    if (p.has_sum_exp_lo()) {
      const double m0 =
          lo + 0.5 * (std::min(hi, 2.0 * lo + 1.0) - lo);
      quad::SingularIntegrand si;
      si.f = [&p, &kernel](double u) {
        return p.terms_density(u) * kernel(u);
      };
      si.a = lo;
      si.b = m0;
      si.exponent_a = p.sum_exp_lo;
      add(quad::integrate(si, rel_tol));
      lo = m0;
    }
    // joint tail where the term sum cancels
    if (infinite && p.has_sum_exp_hi()) {
      const double m1 = 2.0 * std::max(1.0, lo) + 1.0;
      quad::SingularIntegrand si;
      si.f = [&p, &kernel](double u) {
        return p.terms_density(u) * kernel(u);
      };
      si.a = m1;
      si.b = kInf;
      si.exponent_b =
          std::isnan(kernel_tail) ? 0.0 : p.sum_exp_hi + kernel_tail;
      add(quad::integrate(si, rel_tol));
      hi = m1;
    }
    for (const auto& t : p.terms) {
      quad::SingularIntegrand si;
      auto core = term_smooth_core(t, lo, hi);
      si.f = [core, &kernel](double u) { return core(u) * kernel(u); };
      si.a = lo;
      si.b = hi;
      si.exponent_a = (lo == p.lo) ? term_exponent_lo(t, lo) : 0.0;
      if (std::isinf(hi))
        si.exponent_b = std::isnan(kernel_tail)
                            ? 0.0
                            : t.p + t.exp_left + kernel_tail;
      else
        si.exponent_b = (hi == p.hi) ? term_exponent_hi(t, hi) : 0.0;
      add(quad::integrate_core(si, rel_tol));
    }
  }

  if (p.fn) {
    quad::SingularIntegrand si;
    si.f = [&p, &kernel](double u) { return p.fn(u) * kernel(u); };
    si.a = p.lo;
    si.b = p.hi;
    si.exponent_a = p.fn_exp_lo;
    if (infinite)
      si.exponent_b = (std::isnan(kernel_tail) || p.fn_exp_hi == 0.0)
                          ? 0.0
                          : p.fn_exp_hi + kernel_tail;
    else
      si.exponent_b = p.fn_exp_hi;
    add(quad::integrate(si, rel_tol));
  }
  return out;
}

KernelIntegral piece_kernel_integral(const DensityPiece& p, double x1,
                                     double x2, double y, double kappa,
                                     double rel_tol) {
  KernelIntegral out;
  if (!(x1 < x2)) return out;
  const bool touches_y = (x2 == y);

  if (p.has_sum_exp_lo() && x1 == p.lo && !p.terms.empty()) {
    // the term sum cancels at lo; integrate it jointly up to m0
    const double m0 = x1 + 0.5 * (std::min(x2, 2.0 * x1 + 1.0) - x1);
    quad::SingularIntegrand si;
    si.f = [&p, y, kappa](double u) {
      return p.terms_density(u) * std::pow(y - u, kappa);
    };
    si.a = x1;
    si.b = m0;
    si.exponent_a = p.sum_exp_lo;
    const auto r = quad::integrate(si, rel_tol);
    out.value += r.value;
    out.error += r.error;
    DensityPiece rest = p;
    rest.fn = nullptr;
    rest.sum_exp_lo = std::numeric_limits<double>::quiet_NaN();
    const auto inner = piece_kernel_integral(rest, m0, x2, y, kappa, rel_tol);
    out.value += inner.value;
    out.error += inner.error;
    if (p.fn) {
      DensityPiece fpart = p;
      fpart.terms.clear();
      fpart.sum_exp_lo = std::numeric_limits<double>::quiet_NaN();
      const auto fn_part =
          piece_kernel_integral(fpart, x1, x2, y, kappa, rel_tol);
      out.value += fn_part.value;
      out.error += fn_part.error;
    }
    return out;
  }

  for (const auto& t : p.terms) {
    const bool plain_p = t.exp_left == 0.0 && t.exp_right == 0.0 && t.p > -1.0;
    const bool plain_a =
        t.p == 0.0 && t.exp_right == 0.0 && t.exp_left > -1.0;
    if (plain_p || plain_a) {
      // int (u-A)^g (y-u)^kappa du via the incomplete beta in (u-A)/(y-A)
      const double A = plain_p ? 0.0 : t.anchor_left;
      const double g = plain_p ? t.p : t.exp_left;
      const double span = y - A;
      const double v1 = (x1 - A) / span, v2 = (x2 - A) / span;
      const double val = t.coef * std::pow(span, g + kappa + 1.0) *
                         (specfun::inc_beta(std::min(v2, 1.0), g + 1.0,
                                            kappa + 1.0) -
                          specfun::inc_beta(v1, g + 1.0, kappa + 1.0));
      out.value += val;
      out.error += 1e-14 * std::fabs(val);
      continue;
    }
    quad::SingularIntegrand si;
    auto core = term_smooth_core(t, x1, x2);
    if (touches_y) {
      si.f = core;
      si.exponent_b = term_exponent_hi(t, x2) + kappa;
    } else {
      si.f = [core, y, kappa](double u) {
        return core(u) * std::pow(y - u, kappa);
      };
      si.exponent_b = term_exponent_hi(t, x2);
    }
    si.a = x1;
    si.b = x2;
    si.exponent_a = term_exponent_lo(t, x1);
    const auto r = quad::integrate_core(si, rel_tol);
    out.value += r.value;
    out.error += r.error;
  }
  if (p.fn) {
    quad::SingularIntegrand si;
    si.f = [&p, y, kappa](double u) {
      return p.fn(u) * std::pow(y - u, kappa);
    };
    si.a = x1;
    si.b = x2;
    si.exponent_a = (x1 == p.lo) ? p.fn_exp_lo : 0.0;
    si.exponent_b = (touches_y ? kappa : 0.0) +
                    ((x2 == p.hi && !std::isinf(p.hi)) ? p.fn_exp_hi : 0.0);
    const auto r = quad::integrate(si, rel_tol);
    out.value += r.value;
    out.error += r.error;
  }
  return out;
}

namespace {

void normalize_piece(DensityPiece& p) {
  if (!(p.lo >= 0.0) || !(p.lo < p.hi))
    throw std::invalid_argument("DensityPiece: bad interval");
  std::vector<PowerTerm> kept;
  for (PowerTerm t : p.terms) {
    if (t.coef == 0.0) continue;
    if (t.exp_left != 0.0 && t.anchor_left == 0.0) {
      t.p += t.exp_left;
      t.exp_left = 0.0;
    }
    if (t.exp_left == 0.0) t.anchor_left = 0.0;
    if (t.exp_right == 0.0) t.anchor_right = kInf;
    if (t.exp_right != 0.0 && std::isinf(t.anchor_right))
      throw std::invalid_argument(
          "DensityPiece: right factor needs a finite anchor");
    if (t.anchor_left > p.lo)
      throw std::invalid_argument("DensityPiece: left anchor inside interval");
    if (t.anchor_right < p.hi)
      throw std::invalid_argument(
          "DensityPiece: right anchor inside interval");
    if (!p.has_sum_exp_lo() && term_exponent_lo(t, p.lo) <= -1.0)
      throw std::invalid_argument(
          "DensityPiece: non-integrable at left endpoint");
    if (!std::isinf(p.hi) && !p.has_sum_exp_hi() &&
        term_exponent_hi(t, p.hi) <= -1.0)
      throw std::invalid_argument(
          "DensityPiece: non-integrable at right endpoint");
    kept.push_back(t);
  }
  p.terms = std::move(kept);
  if (p.has_sum_exp_lo() && p.sum_exp_lo <= -1.0)
    throw std::invalid_argument("DensityPiece: sum_exp_lo must be > -1");
  if (p.has_sum_exp_hi() && !std::isinf(p.hi) && p.sum_exp_hi <= -1.0)
    throw std::invalid_argument("DensityPiece: sum_exp_hi must be > -1");
  if (p.fn) {
    if (p.fn_exp_lo <= -1.0)
      throw std::invalid_argument("DensityPiece: fn_exp_lo must be > -1");
    if (!std::isinf(p.hi) && p.fn_exp_hi <= -1.0)
      throw std::invalid_argument("DensityPiece: fn_exp_hi must be > -1");
  } else if (p.terms.empty()) {
    throw std::invalid_argument("DensityPiece: empty density");
  }
}

void check_nonnegative_samples(const DensityPiece& p) {
  const double lo = p.lo;
  const double hi = std::isinf(p.hi)
                        ? std::max(1.0, lo > 0.0 ? 100.0 * lo : 100.0)
                        : p.hi;
  const double fracs[7] = {1e-3, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0 - 1e-3};
  double scale = 0.0;
  double worst = 0.0;
  for (double f : fracs) {
    const double u = lo + (hi - lo) * f;
    const double d = p.density(u);
    scale = std::max(scale, std::fabs(d));
    worst = std::min(worst, d);
  }
  if (worst < -1e-9 * (1.0 + scale))
    throw std::invalid_argument("DensityPiece: density is negative");
}

}  // namespace

Measure::Measure(double atom_zero, double atom_infinity,
                 std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : atom_zero_(atom_zero),
      atom_infinity_(atom_infinity),
      atoms_(std::move(atoms)),
      pieces_(std::move(pieces)) {
  if (!(atom_zero_ >= 0.0) || !std::isfinite(atom_zero_))
    throw std::invalid_argument("Measure: atom_zero must be >= 0");
  if (!(atom_infinity_ >= 0.0) || !std::isfinite(atom_infinity_))
    throw std::invalid_argument("Measure: atom_infinity must be >= 0");

  std::erase_if(atoms_, [](const Atom& a) { return a.mass == 0.0; });
  for (const Atom& a : atoms_) {
    if (!(a.location > 0.0) || std::isinf(a.location))
      throw std::invalid_argument("Measure: atom location must be in (0,inf)");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass))
      throw std::invalid_argument("Measure: atom mass must be > 0");
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
  // merge coincident atoms
  std::vector<Atom> merged;
  for (const Atom& a : atoms_) {
    if (!merged.empty() && merged.back().location == a.location)
      merged.back().mass += a.mass;
    else
      merged.push_back(a);
  }
  atoms_ = std::move(merged);

  for (auto& p : pieces_) normalize_piece(p);
  std::sort(pieces_.begin(), pieces_.end(),
            [](const DensityPiece& x, const DensityPiece& y) {
              return x.lo < y.lo;
            });
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    if (pieces_[i].hi > pieces_[i + 1].lo)
      throw std::invalid_argument("Measure: density pieces overlap");
  }
  for (const auto& p : pieces_) check_nonnegative_samples(p);
}

Measure Measure::dirac(double location, double mass) {
  return Measure(0.0, 0.0, {{location, mass}}, {});
}

Measure Measure::constant_density(double c, double lo, double hi) {
  DensityPiece p;
  p.lo = lo;
  p.hi = hi;
  p.terms.push_back({c, 0.0, 0.0, 0.0, kInf, 0.0});
  return Measure(0.0, 0.0, {}, {p});
}

bool Measure::purely_closed_form() const {
  for (const auto& p : pieces_)
    if (!p.closed_form()) return false;
  return true;
}

bool Measure::is_zero() const {
  return atom_zero_ == 0.0 && atom_infinity_ == 0.0 && atoms_.empty() &&
         pieces_.empty();
}

double Measure::sup_support() const {
  double s = 0.0;
  if (atom_zero_ > 0.0) s = 0.0;
  if (!atoms_.empty()) s = std::max(s, atoms_.back().location);
  for (const auto& p : pieces_) s = std::max(s, p.hi);
  return s;
}

std::vector<double> Measure::breakpoints() const {
  std::vector<double> b;
  for (const auto& a : atoms_) b.push_back(a.location);
  for (const auto& p : pieces_) {
    b.push_back(p.lo);
    if (!std::isinf(p.hi)) b.push_back(p.hi);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

Measure Measure::scaled_interior(double factor) const {
  if (factor < 0.0)
    throw std::invalid_argument("scaled_interior: factor must be >= 0");
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.mass *= factor;
  std::vector<DensityPiece> pieces = pieces_;
  for (auto& p : pieces) {
    for (auto& t : p.terms) t.coef *= factor;
    if (p.fn) {
      auto fn = p.fn;
      p.fn = [fn, factor](double u) { return factor * fn(u); };
    }
  }
  if (factor == 0.0) {
    atoms.clear();
    pieces.clear();
  }
  return Measure(atom_zero_, atom_infinity_, std::move(atoms),
                 std::move(pieces));
}

Measure Measure::with_atom_zero(double m) const {
  return Measure(m, atom_infinity_, atoms_, pieces_);
}

Measure Measure::with_atom_infinity(double m) const {
  return Measure(atom_zero_, m, atoms_, pieces_);
}

double membership_integral(const Measure& mu, double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("membership_integral: requires alpha > 0");
  double s = mu.atom_zero();
  for (const Atom& a : mu.atoms())
    s += a.mass * std::pow(1.0 + a.location, -alpha);

  for (const auto& p : mu.pieces()) {
    const bool infinite = std::isinf(p.hi);
    if (infinite) {
      // divergence detection from the declared tail powers
      double tail = -kInf;
      if (p.has_sum_exp_hi()) {
        tail = p.sum_exp_hi;
      } else {
        for (const auto& t : p.terms)
          tail = std::max(tail, t.p + t.exp_left);
      }
      if (!p.terms.empty() && tail - alpha >= -1.0) return kInf;
      if (p.fn && p.fn_exp_hi != 0.0 && p.fn_exp_hi - alpha >= -1.0)
        return kInf;
    }
    // pure constant pieces have an elementary value
    if (!p.fn && p.terms.size() == 1 && p.terms[0].p == 0.0 &&
        p.terms[0].exp_left == 0.0 && p.terms[0].exp_right == 0.0) {
      const double c = p.terms[0].coef;
      if (alpha == 1.0)
        s += c * std::log((1.0 + p.hi) / (1.0 + p.lo));
      else
        s += c *
             (std::pow(1.0 + p.lo, 1.0 - alpha) -
              (infinite ? 0.0 : std::pow(1.0 + p.hi, 1.0 - alpha))) /
             (alpha - 1.0);
      continue;
    }
    const auto r = integrate_piece_against(
        p, [alpha](double u) { return std::pow(1.0 + u, -alpha); }, -alpha,
        1e-11);
    s += r.value;
  }
  return s;
}

double distribution(const Measure& mu, double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("distribution: requires x >= 0");
  if (x == 0.0) return 0.0;
  double s = mu.atom_zero();
  for (const Atom& a : mu.atoms()) {
    if (a.location < x) s += a.mass;
  }
  for (const auto& p : mu.pieces()) {
    if (p.lo >= x) break;
    const double x2 = std::min(x, p.hi);
    if (p.has_sum_exp_lo()) {
      // flat kernel; the shared helper owns the joint endpoint handling
      s += piece_kernel_integral(p, p.lo, x2, x2, 0.0, 1e-11).value;
      continue;
    }
    for (const auto& t : p.terms) s += power_term_increment(t, p.lo, x2);
    if (p.fn) {
      quad::SingularIntegrand si;
      si.f = p.fn;
      si.a = p.lo;
      si.b = x2;
      si.exponent_a = p.fn_exp_lo;
      si.exponent_b = (x2 == p.hi && !std::isinf(p.hi)) ? p.fn_exp_hi : 0.0;
      s += quad::integrate(si, 1e-11).value;
    }
  }
  return s;
}

Measure involution(const Measure& mu, double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("involution: requires alpha > 0");
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const Atom& a : mu.atoms())
    atoms.push_back({1.0 / a.location, a.mass * std::pow(a.location, -alpha)});

  std::vector<DensityPiece> pieces;
  pieces.reserve(mu.pieces().size());
  for (const auto& p : mu.pieces()) {
    DensityPiece q;
    q.lo = std::isinf(p.hi) ? 0.0 : 1.0 / p.hi;
    q.hi = (p.lo == 0.0) ? kInf : 1.0 / p.lo;
    for (const auto& t : p.terms) {
      PowerTerm nt;
      nt.coef = t.coef;
      if (t.exp_left != 0.0) nt.coef *= std::pow(t.anchor_left, t.exp_left);
      if (t.exp_right != 0.0) nt.coef *= std::pow(t.anchor_right, t.exp_right);
      nt.p = alpha - 2.0 - t.p - t.exp_left - t.exp_right;
      if (t.exp_right != 0.0) {
        nt.anchor_left = 1.0 / t.anchor_right;
        nt.exp_left = t.exp_right;
      }
      if (t.exp_left != 0.0) {
        nt.anchor_right = 1.0 / t.anchor_left;
        nt.exp_right = t.exp_left;
      }
      q.terms.push_back(nt);
    }
    if (p.fn) {
      auto fn = p.fn;
      q.fn = [fn, alpha](double v) {
        return std::pow(v, alpha - 2.0) * fn(1.0 / v);
      };
      if (std::isinf(p.hi))
        q.fn_exp_lo = alpha - 2.0 - p.fn_exp_hi;
      else
        q.fn_exp_lo = p.fn_exp_hi;
      if (p.lo == 0.0)
        q.fn_exp_hi = alpha - 2.0 - p.fn_exp_lo;  // tail power
      else
        q.fn_exp_hi = p.fn_exp_lo;
    }
    if (p.has_sum_exp_hi())
      q.sum_exp_lo = std::isinf(p.hi) ? alpha - 2.0 - p.sum_exp_hi
                                      : p.sum_exp_hi;
    if (p.has_sum_exp_lo())
      q.sum_exp_hi =
          (p.lo == 0.0) ? alpha - 2.0 - p.sum_exp_lo : p.sum_exp_lo;
    pieces.push_back(std::move(q));
  }
  return Measure(mu.atom_infinity(), mu.atom_zero(), std::move(atoms),
                 std::move(pieces));
}

std::vector<double> moments(const Measure& mu, int k_max) {
  if (k_max < 0) throw std::invalid_argument("moments: requires k_max >= 0");
  if (mu.atom_infinity() > 0.0 || std::isinf(mu.sup_support()))
    throw std::domain_error("moments require compact support");
  std::vector<double> out(k_max + 1, 0.0);
  out[0] += mu.atom_zero();
  for (int k = 0; k <= k_max; ++k) {
    for (const Atom& a : mu.atoms())
      out[k] += a.mass * std::pow(a.location, k);
    for (const auto& p : mu.pieces()) {
      for (PowerTerm t : p.terms) {
        t.p += k;
        out[k] += power_term_increment(t, p.lo, p.hi);
      }
      if (p.fn) {
        quad::SingularIntegrand si;
        si.f = [&p, k](double u) { return p.fn(u) * std::pow(u, k); };
        si.a = p.lo;
        si.b = p.hi;
        si.exponent_a = p.fn_exp_lo;
        si.exponent_b = p.fn_exp_hi;
        out[k] += quad::integrate(si, 1e-12).value;
      }
    }
  }
  return out;
}

double density_at(const Measure& mu, double u) {
  for (const auto& p : mu.pieces()) {
    if (u > p.lo && u < p.hi) return p.density(u);
  }
  return 0.0;
}

bool measures_close(const Measure& a, const Measure& b,
                    std::span<const double> grid, double tol) {
  auto near = [tol](double x, double y) {
    return std::fabs(x - y) <= tol * (1.0 + std::fabs(x));
  };
  if (!near(a.atom_zero(), b.atom_zero())) return false;
  if (!near(a.atom_infinity(), b.atom_infinity())) return false;
  if (a.atoms().size() != b.atoms().size()) return false;
  for (size_t i = 0; i < a.atoms().size(); ++i) {
    if (!near(a.atoms()[i].location, b.atoms()[i].location)) return false;
    if (!near(a.atoms()[i].mass, b.atoms()[i].mass)) return false;
  }
  for (double x : grid) {
    if (!near(density_at(a, x), density_at(b, x))) return false;
  }
  return true;
}

}  // namespace stieltjes
