#include "stieltjes/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "stieltjes/quadrature.hpp"
#include "stieltjes/specfun.hpp"

namespace stieltjes {

namespace {

using specfun::beta_fn;
using specfun::falling_factorial;
using specfun::gamma_fn;

bool is_nonneg_integer(double x) { return x >= 0.0 && x == std::floor(x); }

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1.0);
  return r;
}

// Density exponent of a whole piece at its endpoints (the most singular
// contribution wins at lo, the slowest decay at an infinite hi).
double piece_exp_lo(const DensityPiece& p) {
  double e = p.fn ? p.fn_exp_lo : kInf;
  if (p.has_sum_exp_lo()) {
    e = std::min(e, p.sum_exp_lo);
  } else {
    for (const auto& t : p.terms) e = std::min(e, term_exponent_lo(t, p.lo));
  }
  return std::isinf(e) ? 0.0 : e;
}

double piece_exp_hi(const DensityPiece& p) {
  if (p.has_sum_exp_hi() && !p.fn) return p.sum_exp_hi;
  const bool infinite = std::isinf(p.hi);
  double e = p.fn ? p.fn_exp_hi : (infinite ? -kInf : kInf);
  if (p.has_sum_exp_hi()) {
    e = infinite ? std::max(e, p.sum_exp_hi) : std::min(e, p.sum_exp_hi);
  } else {
    for (const auto& t : p.terms) {
      const double te = term_exponent_hi(t, p.hi);
      e = infinite ? std::max(e, te) : std::min(e, te);
    }
  }
  return std::isinf(e) ? 0.0 : e;
}

bool all_single_factor(const std::vector<PowerTerm>& terms) {
  for (const auto& t : terms) {
    int nf = (t.p != 0.0) + (t.exp_left != 0.0) + (t.exp_right != 0.0);
    if (nf > 1) return false;
  }
  return true;
}

struct StartedTerm {
  double start = 0.0;
  PowerTerm term;
};

// Tail power of a sum of single-factor terms c (y-a)^e, allowing for
// cancellation of the leading orders across equal exponents.
double sum_tail_exponent(const std::vector<PowerTerm>& terms) {
  double tail = -kInf;
  std::vector<bool> used(terms.size(), false);
  for (size_t i = 0; i < terms.size(); ++i) {
    if (used[i]) continue;
    const double e = terms[i].p + terms[i].exp_left;
    std::vector<size_t> group;
    for (size_t j = i; j < terms.size(); ++j) {
      if (!used[j] && terms[j].p + terms[j].exp_left == e) {
        group.push_back(j);
        used[j] = true;
      }
    }
    // coefficient of y^(e-k) in sum c_i (y-a_i)^e is prop. to
    // sum c_i (-a_i)^k; find the first surviving order
    double group_tail = e - 8.0;
    for (int k = 0; k <= 7; ++k) {
      double s = 0.0, scale = 0.0;
      for (size_t j : group) {
        const double a =
            terms[j].exp_left != 0.0 ? terms[j].anchor_left : 0.0;
        const double v = terms[j].coef * std::pow(-a, k);
        s += v;
        scale += std::fabs(v);
      }
      if (std::fabs(s) > 1e-11 * (scale + 1e-300)) {
        group_tail = e - k;
        break;
      }
    }
    tail = std::max(tail, group_tail);
  }
  return tail;
}

struct GenPart {
  double lo = 0.0;                      // activation point
  double hi = kInf;                     // kink/end point
  std::function<double(double)> fn;
  double exp_lo = 0.0;                  // behaviour (y-lo)^exp_lo near lo
  double exp_hi = 0.0;                  // tail power for hi = inf, else 0
};

// Assemble a measure from closed terms that switch on at their start points
// plus generic parts; cells are cut at every activation/kink point.
Measure assemble(double atom_zero, double atom_infinity,
                 const std::vector<StartedTerm>& started,
                 const std::vector<GenPart>& gens) {
  std::set<double> cuts;
  for (const auto& st : started) cuts.insert(st.start);
  for (const auto& g : gens) {
    cuts.insert(g.lo);
    if (!std::isinf(g.hi)) cuts.insert(g.hi);
  }
  cuts.erase(0.0);
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(kInf);

  std::vector<DensityPiece> pieces;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    DensityPiece cell;
    cell.lo = edges[i];
    cell.hi = edges[i + 1];
    for (const auto& st : started)
      if (st.start <= cell.lo) cell.terms.push_back(st.term);
    if (std::isinf(cell.hi) && cell.terms.size() > 1)
      cell.sum_exp_hi = sum_tail_exponent(cell.terms);

    std::vector<const GenPart*> active;
    for (const auto& g : gens)
      if (g.lo <= cell.lo && cell.hi <= g.hi) active.push_back(&g);
    if (!active.empty()) {
      std::vector<GenPart> caught;
      for (const auto* g : active) caught.push_back(*g);
      cell.fn = [caught](double y) {
        double v = 0.0;
        for (const auto& g : caught) v += g.fn(y);
        return v;
      };
      double elo = kInf, ehi = -kInf;
      for (const auto* g : active) {
        elo = std::min(elo, g->lo == cell.lo ? g->exp_lo : 0.0);
        ehi = std::max(ehi, g->exp_hi);
      }
      cell.fn_exp_lo = elo;
      cell.fn_exp_hi = std::isinf(cell.hi) ? ehi : 0.0;
    }
    if (!cell.terms.empty() || cell.fn) pieces.push_back(std::move(cell));
  }
  return Measure(atom_zero, atom_infinity, {}, std::move(pieces));
}

}  // namespace

FractionalOrder::FractionalOrder(double e) : eta(e) {
  if (!(e > 0.0))
    throw std::invalid_argument("FractionalOrder: requires eta > 0");
  n = static_cast<int>(std::floor(e));
}

LahCoefficients lah_expand(int n) {
  if (n < 1) throw std::invalid_argument("lah_expand: requires n >= 1");
  LahCoefficients out;
  out.n = n;
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  double mfact = 1.0;
  for (int m = 1; m <= n; ++m) {
    mfact *= m;
    out.a.push_back(sign * nfact / mfact * binom(n - 1, m - 1));
  }
  return out;
}

Measure rl_left(const Measure& mu, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("rl_left: requires eta > 0");
  const double gn = gamma_fn(eta);

  std::vector<StartedTerm> started;
  std::vector<GenPart> gens;

  if (mu.atom_zero() > 0.0)
    started.push_back({0.0, {mu.atom_zero() / gn, eta - 1.0, 0, 0, kInf, 0}});
  for (const Atom& a : mu.atoms())
    started.push_back({a.location,
                       {a.mass / gn, 0.0, a.location, eta - 1.0, kInf, 0.0}});

  for (const auto& p : mu.pieces()) {
    DensityPiece rest;  // the parts without a closed image
    rest.lo = p.lo;
    rest.hi = p.hi;
    for (const auto& t : p.terms) {
      if (t.p == 0.0 && t.exp_left == 0.0 && t.exp_right == 0.0) {
        const double c = t.coef / gamma_fn(eta + 1.0);
        started.push_back({p.lo, {c, 0.0, p.lo, eta, kInf, 0.0}});
        if (!std::isinf(p.hi))
          started.push_back({p.hi, {-c, 0.0, p.hi, eta, kInf, 0.0}});
      } else {
        rest.terms.push_back(t);
      }
    }
    if (p.fn) {
      rest.fn = p.fn;
      rest.fn_exp_lo = p.fn_exp_lo;
      rest.fn_exp_hi = p.fn_exp_hi;
    }
    if (rest.terms.empty() && !rest.fn) continue;
    rest.sum_exp_lo = p.sum_exp_lo;
    if (p.has_sum_exp_hi())
      rest.sum_exp_hi = all_single_factor(rest.terms)
                            ? sum_tail_exponent(rest.terms)
                            : p.sum_exp_hi;

    GenPart g;
    g.lo = p.lo;
    g.hi = kInf;  // stays active past the source piece
    g.exp_lo = piece_exp_lo(rest) + eta;
    const double tail = std::isinf(p.hi) ? piece_exp_hi(rest) : -kInf;
    g.exp_hi = (tail > -1.0) ? tail + eta : eta - 1.0;
    g.fn = [rest, eta, gn](double y) {
      const double x2 = std::min(y, rest.hi);
      return piece_kernel_integral(rest, rest.lo, x2, y, eta - 1.0, 1e-10)
                 .value /
             gn;
    };
    gens.push_back(std::move(g));
  }
  return assemble(0.0, mu.atom_infinity(), started, gens);
}

DistributionFunction rl_left_invert(const Measure& nu, double eta) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::domain_error(
        "rl_left_invert: the differentiation-free path requires eta < 1; "
        "use rl_left_invert_closed");
  const double gn = gamma_fn(1.0 - eta);
  const Measure m = nu;
  auto F = [m, eta, gn](double y) {
    if (!(y >= 0.0))
      throw std::invalid_argument("distribution: requires y >= 0");
    if (y == 0.0) return 0.0;
    double s = m.atom_zero() * std::pow(y, -eta);
    for (const Atom& a : m.atoms())
      if (a.location < y) s += a.mass * std::pow(y - a.location, -eta);
    for (const auto& p : m.pieces()) {
      if (p.lo >= y) break;
      s += piece_kernel_integral(p, p.lo, std::min(y, p.hi), y, -eta, 1e-10)
               .value;
    }
    return s / gn;
  };
  return {F, nu.atom_infinity()};
}

namespace {

// A closed-form term active on a maximal interval (lo, hi); adjacent cells
// carrying an identical term are merged back into one span.
struct Span {
  double lo = 0.0, hi = 0.0;
  PowerTerm t;
};

bool same_term(const PowerTerm& a, const PowerTerm& b) {
  return a.coef == b.coef && a.p == b.p && a.anchor_left == b.anchor_left &&
         a.exp_left == b.exp_left && a.anchor_right == b.anchor_right &&
         a.exp_right == b.exp_right;
}

std::vector<Span> merge_spans(const Measure& m) {
  std::vector<Span> spans;
  for (const auto& p : m.pieces()) {
    for (const auto& t : p.terms) {
      bool merged = false;
      for (auto& s : spans) {
        if (s.hi == p.lo && same_term(s.t, t)) {
          s.hi = p.hi;
          merged = true;
          break;
        }
      }
      if (!merged) spans.push_back({p.lo, p.hi, t});
    }
  }
  return spans;
}

struct Addend {
  double coef = 0.0;
  double anchor = 0.0;
  double g = 0.0;
};

// Rewrite a span's term as sum_j c_j (u - anchor)^(g_j) anchored at the
// span's lower end; at most one non-integer exponent is representable and
// it must sit at a left anchor equal to the span start.
std::vector<Addend> reduce_span(const Span& s) {
  struct Factor {
    double anchor;
    double e;
    bool right;
  };
  std::vector<Factor> fs;
  if (s.t.p != 0.0) fs.push_back({0.0, s.t.p, false});
  if (s.t.exp_left != 0.0) fs.push_back({s.t.anchor_left, s.t.exp_left, false});
  if (s.t.exp_right != 0.0)
    fs.push_back({s.t.anchor_right, s.t.exp_right, true});

  double base_anchor = s.lo;
  double base_g = 0.0;
  std::vector<const Factor*> integer_factors;
  int noninteger = 0;
  for (const auto& f : fs) {
    if (is_nonneg_integer(f.e)) {
      integer_factors.push_back(&f);
    } else {
      ++noninteger;
      if (f.right || f.anchor != s.lo)
        throw std::domain_error("closed-form path unavailable");
      base_anchor = f.anchor;
      base_g = f.e;
    }
  }
  if (noninteger > 1)
    throw std::domain_error("closed-form path unavailable");

  std::vector<Addend> out{{s.t.coef, base_anchor, base_g}};
  for (const auto* f : integer_factors) {
    const int m = static_cast<int>(f->e);
    std::vector<Addend> next;
    for (const auto& a : out) {
      for (int i = 0; i <= m; ++i) {
        double c;
        if (f->right)  // (B-u)^m = ((B-anchor) - (u-anchor))^m
          c = binom(m, i) * std::pow(f->anchor - a.anchor, m - i) *
              ((i % 2) ? -1.0 : 1.0);
        else  // (u-C)^m = ((u-anchor) + (anchor-C))^m
          c = binom(m, i) * std::pow(a.anchor - f->anchor, m - i);
        if (c == 0.0) continue;
        next.push_back({a.coef * c, a.anchor, a.g + i});
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

DistributionFunction rl_left_invert_closed(const Measure& nu, double eta) {
  if (!(eta > 0.0))
    throw std::invalid_argument("rl_left_invert_closed: requires eta > 0");
  const int n = static_cast<int>(std::floor(eta));
  if (!nu.purely_closed_form())
    throw std::domain_error("closed-form path unavailable");
  if (n >= 1 && !nu.atoms().empty())
    throw std::domain_error(
        "closed-form path unavailable: atoms need eta < 1");

  const double kexp = n - eta;  // kernel exponent, in (-1, 0]
  const double gn = gamma_fn(1.0 + n - eta);
  const std::vector<Span> spans = merge_spans(nu);

  // Pre-reduce every span; failures surface at construction time.
  struct Prepared {
    double lo, hi;
    std::vector<Addend> addends;
  };
  std::vector<Prepared> prep;
  for (const auto& s : spans) {
    Prepared pr{s.lo, s.hi, reduce_span(s)};
    if (!std::isinf(s.hi)) {
      for (const auto& a : pr.addends)
        if (!is_nonneg_integer(a.g))
          throw std::domain_error(
              "closed-form path unavailable: bounded span with fractional "
              "power");
    }
    prep.push_back(std::move(pr));
  }

  const Measure m = nu;
  auto F = [m, prep, n, kexp, gn, eta](double y) {
    if (!(y >= 0.0))
      throw std::invalid_argument("distribution: requires y >= 0");
    if (y == 0.0) return 0.0;
    double acc = 0.0;
    if (m.atom_zero() > 0.0)
      acc += m.atom_zero() * falling_factorial(kexp, n) * std::pow(y, -eta);
    for (const Atom& a : m.atoms())  // only reachable when n = 0
      if (a.location < y) acc += a.mass * std::pow(y - a.location, -eta);

    auto full_part = [&](const Addend& a, double upto) {
      // d^n/dy^n of B(g+1, kexp+1) (y-anchor)^(g+kexp+1), evaluated with
      // the addend re-anchored at `upto` when the span ends before y.
      const double s_full = a.g + kexp + 1.0;
      return a.coef * beta_fn(a.g + 1.0, kexp + 1.0) *
             falling_factorial(s_full, n) * std::pow(y - upto, s_full - n);
    };
    for (const auto& pr : prep) {
      if (pr.lo >= y) continue;
      for (const auto& a : pr.addends) {
        acc += full_part(a, a.anchor);
        if (!std::isinf(pr.hi) && pr.hi < y) {
          // remove the part of the kernel integral past the span's end
          const int g = static_cast<int>(a.g);
          for (int i = 0; i <= g; ++i) {
            const Addend tail{a.coef * binom(g, i) *
                                  std::pow(pr.hi - a.anchor, g - i),
                              pr.hi, static_cast<double>(i)};
            acc -= full_part(tail, pr.hi);
          }
        }
      }
    }
    return acc / gn;
  };
  return {F, nu.atom_infinity()};
}

Measure kober_right(const Measure& mu, double alpha, double eta) {
  if (!(eta > 0.0))
    throw std::invalid_argument("kober_right: requires eta > 0");
  if (!(alpha > 0.0))
    throw std::invalid_argument("kober_right: requires alpha > 0");
  const double gn = gamma_fn(eta);

  // closed contributions switch OFF at atom locations; assemble() only
  // understands switch-on points, so list the atoms' terms per cell instead.
  std::set<double> cuts;
  for (const Atom& a : mu.atoms()) cuts.insert(a.location);

  std::vector<GenPart> gens;
  for (const auto& p : mu.pieces()) {
    cuts.insert(p.lo);
    if (!std::isinf(p.hi)) cuts.insert(p.hi);
    const DensityPiece src = p;
    GenPart g;
    g.lo = 0.0;
    g.hi = p.hi;
    g.exp_lo = alpha - 1.0;
    const double shi = piece_exp_hi(src);
    g.exp_hi = std::isinf(p.hi) ? shi : 0.0;
    g.fn = [src, alpha, eta, gn](double y) {
      // y^(alpha-1)/Gamma(eta) * int_(max(y,lo))^(hi) rho(u) u^(1-eta-alpha)
      //                                               (u-y)^(eta-1) du
      const double x1 = std::max(y, src.lo);
      if (x1 >= src.hi) return 0.0;
      double acc = 0.0;
      const bool from_y = (x1 == y);
      const bool infinite = std::isinf(src.hi);
      for (const auto& t : src.terms) {
        quad::SingularIntegrand si;
        auto core = term_smooth_core(t, x1, src.hi);
        if (from_y) {
          si.f = [core, alpha, eta](double u) {
            return core(u) * std::pow(u, 1.0 - eta - alpha);
          };
        } else {
          si.f = [core, alpha, eta, y](double u) {
            return core(u) * std::pow(u, 1.0 - eta - alpha) *
                   std::pow(u - y, eta - 1.0);
          };
        }
        si.a = x1;
        si.b = src.hi;
        si.exponent_a =
            term_exponent_lo(t, x1) + (from_y ? eta - 1.0 : 0.0);
        si.exponent_b = infinite
                            ? t.p + t.exp_left - alpha
                            : term_exponent_hi(t, src.hi);
        acc += quad::integrate_core(si, 1e-10).value;
      }
      if (src.fn) {
        quad::SingularIntegrand si;
        si.f = [&src, alpha, eta, y](double u) {
          return src.fn(u) * std::pow(u, 1.0 - eta - alpha) *
                 std::pow(u - y, eta - 1.0);
        };
        si.a = x1;
        si.b = src.hi;
        si.exponent_a = (from_y ? eta - 1.0 : 0.0) +
                        (x1 == src.lo ? src.fn_exp_lo : 0.0);
        si.exponent_b = infinite ? (src.fn_exp_hi == 0.0
                                        ? 0.0
                                        : src.fn_exp_hi - alpha)
                                 : src.fn_exp_hi;
        acc += quad::integrate(si, 1e-10).value;
      }
      return std::pow(y, alpha - 1.0) * acc / gn;
    };
    gens.push_back(std::move(g));
  }

  cuts.erase(0.0);
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(kInf);

  std::vector<DensityPiece> pieces;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    DensityPiece cell;
    cell.lo = edges[i];
    cell.hi = edges[i + 1];
    for (const Atom& a : mu.atoms()) {
      if (cell.hi <= a.location) {
        cell.terms.push_back({a.mass *
                                  std::pow(a.location, 1.0 - eta - alpha) / gn,
                              alpha - 1.0, 0.0, 0.0, a.location, eta - 1.0});
      }
    }
    if (mu.atom_infinity() > 0.0)
      cell.terms.push_back(
          {mu.atom_infinity() / gn, alpha - 1.0, 0.0, 0.0, kInf, 0.0});

    std::vector<GenPart> caught;
    for (const auto& g : gens)
      if (cell.hi <= g.hi || std::isinf(g.hi)) caught.push_back(g);
    if (!caught.empty()) {
      cell.fn = [caught](double y) {
        double v = 0.0;
        for (const auto& g : caught) v += g.fn(y);
        return v;
      };
      double elo = kInf, ehi = -kInf;
      for (const auto& g : caught) {
        elo = std::min(elo, cell.lo == 0.0 ? g.exp_lo : 0.0);
        ehi = std::max(ehi, g.exp_hi);
      }
      cell.fn_exp_lo = elo;
      cell.fn_exp_hi = std::isinf(cell.hi) ? ehi : 0.0;
    }
    if (!cell.terms.empty() || cell.fn) pieces.push_back(std::move(cell));
  }
  return Measure(mu.atom_zero(), 0.0, {}, std::move(pieces));
}

KoberInversion kober_right_invert(const Measure& tau, double alpha,
                                  double eta) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::domain_error(
        "kober_right_invert: supported for eta in (0,1)");
  if (!(alpha > 0.0))
    throw std::invalid_argument("kober_right_invert: requires alpha > 0");

  const Measure m = tau;
  const double gn = gamma_fn(1.0 - eta);

  // H(x) = int_(x,inf) tau(ds) / (s^alpha (s-x)^eta)
  auto H = [m, alpha, eta](double x) {
    double acc = 0.0;
    for (const Atom& a : m.atoms())
      if (a.location > x)
        acc += a.mass * std::pow(a.location, -alpha) *
               std::pow(a.location - x, -eta);
    for (const auto& p : m.pieces()) {
      if (p.hi <= x) continue;
      const double x1 = std::max(x, p.lo);
      const bool from_x = (x1 == x);
      const bool infinite = std::isinf(p.hi);
      for (const auto& t : p.terms) {
        quad::SingularIntegrand si;
        auto core = term_smooth_core(t, x1, p.hi);
        if (from_x) {
          si.f = [core, alpha](double s) {
            return core(s) * std::pow(s, -alpha);
          };
        } else {
          si.f = [core, alpha, eta, x](double s) {
            return core(s) * std::pow(s, -alpha) * std::pow(s - x, -eta);
          };
        }
        si.a = x1;
        si.b = p.hi;
        si.exponent_a = term_exponent_lo(t, x1) + (from_x ? -eta : 0.0);
        si.exponent_b = infinite ? t.p + t.exp_left - alpha - eta
                                 : term_exponent_hi(t, p.hi);
        acc += quad::integrate_core(si, 1e-8).value;
      }
      if (p.fn) {
        quad::SingularIntegrand si;
        si.f = [&p, alpha, eta, x](double s) {
          return p.fn(s) * std::pow(s, -alpha) * std::pow(s - x, -eta);
        };
        si.a = x1;
        si.b = p.hi;
        si.exponent_a =
            (from_x ? -eta : 0.0) + (x1 == p.lo ? p.fn_exp_lo : 0.0);
        si.exponent_b =
            infinite
                ? (p.fn_exp_hi == 0.0 ? 0.0 : p.fn_exp_hi - alpha - eta)
                : p.fn_exp_hi;
        acc += quad::integrate(si, 1e-8).value;
      }
    }
    return acc;
  };

  const std::vector<double> breaks = m.breakpoints();
  auto F = [m, H, alpha, eta, gn, breaks](double y) {
    if (!(y >= 0.0))
      throw std::invalid_argument("distribution: requires y >= 0");
    if (y == 0.0) return 0.0;
    // outer integral of x^(alpha+eta-1) H(x) over (0,y), cut at the
    // breakpoints where H has kinks or kernel singularities
    std::vector<double> cuts{0.0};
    for (double b : breaks)
      if (b > 0.0 && b < y) cuts.push_back(b);
    cuts.push_back(y);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double outer = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      quad::SingularIntegrand si;
      si.f = [H, alpha, eta](double x) {
        return std::pow(x, alpha + eta - 1.0) * H(x);
      };
      si.a = cuts[i];
      si.b = cuts[i + 1];
      si.exponent_a = (cuts[i] == 0.0) ? alpha + eta - 1.0 : 0.0;
      // H ~ (s0-x)^-eta below an atom at s0
      bool atom_above = false;
      for (const Atom& a : m.atoms())
        if (a.location == cuts[i + 1]) atom_above = true;
      si.exponent_b = atom_above ? -eta : 0.0;
      outer += quad::integrate(si, 5e-8).value;
    }
    return m.atom_zero() +
           (alpha * outer - std::pow(y, alpha + eta) * H(y)) / gn;
  };

  KoberInversion out;
  out.distribution = {F, 0.0};

  // mass at infinity from the growth of the distribution function
  const double lead = alpha * gamma_fn(eta);
  std::vector<double> r;
  for (double yk : {1e2, 1e3, 1e4, 1e5})
    r.push_back(lead * std::pow(yk, -alpha) * distribution(m, yk));
  double limit = r.back();
  const double d1 = r[3] - r[2], d0 = r[2] - r[1];
  if (d0 != 0.0) {
    const double theta = d1 / d0;
    if (std::fabs(theta) < 0.9) limit = r[3] + theta * d1 / (1.0 - theta);
  }
  out.mu_infinity = std::max(0.0, limit);
  out.mu_infinity_converged = std::fabs(d1) <= std::max(0.1 * std::fabs(r[3]), 1e-3);
  return out;
}

StieltjesFunction order_raise_mu(const StieltjesFunction& f, double beta) {
  if (f.rep != Representation::kMu)
    throw std::invalid_argument("order_raise_mu: requires mu form");
  if (!(beta > f.alpha))
    throw std::invalid_argument("order_raise_mu: requires beta > alpha");
  const Measure nu = rl_left(f.measure, beta - f.alpha);
  const double scale = gamma_fn(beta) / gamma_fn(f.alpha);
  return StieltjesFunction(nu.scaled_interior(scale), beta,
                           Representation::kMu);
}

StieltjesFunction order_raise_rho(const StieltjesFunction& f, double beta) {
  if (f.rep != Representation::kRho)
    throw std::invalid_argument("order_raise_rho: requires rho form");
  if (!(beta > f.alpha))
    throw std::invalid_argument("order_raise_rho: requires beta > alpha");
  const Measure tau = kober_right(f.measure, f.alpha, beta - f.alpha);
  const double scale = gamma_fn(beta) / gamma_fn(f.alpha);
  return StieltjesFunction(tau.scaled_interior(scale), beta,
                           Representation::kRho);
}

Measure order_lower_closed(const Measure& mu_beta, double beta, double eps) {
  if (!(eps > 0.0 && eps < std::min(beta, 1.0)))
    throw std::invalid_argument(
        "order_lower_closed: requires 0 < eps < min(beta, 1)");
  if (!mu_beta.atoms().empty())
    throw std::domain_error(
        "order_lower_closed: a measure with atoms has no lower-order "
        "representation");
  if (mu_beta.atom_zero() > 0.0)
    throw std::domain_error(
        "order_lower_closed: the z^-beta part fixes the order");
  if (!mu_beta.purely_closed_form())
    throw std::domain_error("order_lower_closed: needs closed-form density");

  const double scale =
      gamma_fn(beta - eps) / (gamma_fn(beta) * gamma_fn(1.0 - eps));

  std::vector<StartedTerm> started;
  for (const Span& s : merge_spans(mu_beta)) {
    const auto& t = s.t;
    const bool constant =
        t.p == 0.0 && t.exp_left == 0.0 && t.exp_right == 0.0;
    if (constant) {
      started.push_back({s.lo, {scale * t.coef, 0.0, s.lo, -eps, kInf, 0.0}});
      if (!std::isinf(s.hi))
        started.push_back(
            {s.hi, {-scale * t.coef, 0.0, s.hi, -eps, kInf, 0.0}});
      continue;
    }
    const bool left_only = t.exp_right == 0.0 && t.p == 0.0 &&
                           t.anchor_left == s.lo && std::isinf(s.hi);
    const bool zero_anchored =
        t.exp_right == 0.0 && t.exp_left == 0.0 && s.lo == 0.0 &&
        std::isinf(s.hi);
    if (!(left_only || zero_anchored))
      throw std::domain_error(
          "order_lower_closed: unsupported density shape");
    const double g = left_only ? t.exp_left : t.p;
    const double anchor = left_only ? t.anchor_left : 0.0;
    if (!(g - eps > -1.0))
      throw std::domain_error(
          "order_lower_closed: no lower-order representation");
    const double c = scale * t.coef * beta_fn(g + 1.0, 1.0 - eps) *
                     (g + 1.0 - eps);
    started.push_back({anchor, {c, 0.0, anchor, g - eps, kInf, 0.0}});
  }
  return assemble(0.0, mu_beta.atom_infinity(), started, {});
}

std::function<double(double)> function_transition_down(
    std::function<double(double)> f_beta, double alpha, double beta,
    double mu_infinity) {
  if (!(alpha > 0.0 && beta > alpha))
    throw std::invalid_argument(
        "function_transition_down: requires 0 < alpha < beta");
  const double c =
      gamma_fn(beta) / (gamma_fn(alpha) * gamma_fn(beta - alpha));
  return [f_beta, alpha, beta, mu_infinity, c](double x) {
    if (!(x > 0.0))
      throw std::invalid_argument("transition evaluator: requires x > 0");
    quad::SingularIntegrand si;
    si.f = [f_beta, mu_infinity](double t) { return f_beta(t) - mu_infinity; };
    si.a = x;
    si.b = kInf;
    si.exponent_a = beta - alpha - 1.0;
    si.exponent_b = -alpha - 1.0;
    const auto r = quad::integrate_core(si, 1e-9);
    if (!r.converged)
      throw std::runtime_error(
          "function_transition_down: tail integral did not converge");
    return c * r.value + mu_infinity;
  };
}

std::function<double(double)> function_transition_up(
    std::function<double(int, double)> f_alpha_derivs, double alpha,
    double beta, double mu_infinity) {
  if (!f_alpha_derivs)
    throw std::invalid_argument(
        "function_transition_up: derivative provider required");
  if (!(alpha > 0.0 && beta > alpha))
    throw std::invalid_argument(
        "function_transition_up: requires 0 < alpha < beta");
  const int n = static_cast<int>(std::floor(beta - alpha)) + 1;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double c = gamma_fn(alpha) * sign /
                   (gamma_fn(beta) * gamma_fn(n - beta + alpha));
  return [f_alpha_derivs, alpha, beta, mu_infinity, n, c](double x) {
    if (!(x > 0.0))
      throw std::invalid_argument("transition evaluator: requires x > 0");
    quad::SingularIntegrand si;
    si.f = [f_alpha_derivs, n](double t) { return f_alpha_derivs(n, t); };
    si.a = x;
    si.b = kInf;
    si.exponent_a = n - beta + alpha - 1.0;
    si.exponent_b = -beta - 1.0;
    const auto r = quad::integrate_core(si, 1e-9);
    return c * r.value + mu_infinity;
  };
}

}  // namespace stieltjes
