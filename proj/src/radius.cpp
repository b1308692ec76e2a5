#include "bohrfrac/radius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bohrfrac/specfun.hpp"

namespace bohrfrac {

namespace {

struct SumEval {
  double value = 0.0;      // partial sum (a lower bound: all terms positive)
  double tail = 0.0;       // certified bound on the dropped tail
  int terms = 0;
  bool certified = false;
};

// Sum of [n]^w * Gamma(n+1)/Gamma(n+1-alpha_off) * r^n over n >= n0,
// truncated once the certified tail drops below tail_target.  When
// early_exceed is finite the loop may stop as soon as the partial sum
// passes it (sign queries on a positive-term series need no tail then).
SumEval sum_weighted_gamma_series(double alpha_off, double r, int n0,
                                  bool n_weighted, int max_terms,
                                  double early_exceed =
                                      std::numeric_limits<double>::infinity()) {
  SumEval out;
  double w = specfun::gamma_ratio(n0, alpha_off);
  double term = (n_weighted ? n0 : 1.0) * w * std::pow(r, n0);
  double sum = 0.0;
  double comp = 0.0;

  for (int n = n0; n < n0 + max_terms; ++n) {
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    out.terms = n;

    if (sum > early_exceed) {
      out.value = sum;
      return out;  // uncertified lower bound, already decisive
    }

    double ratio = r * ((n + 1.0) / (n + 1.0 - alpha_off));
    if (n_weighted) ratio *= (n + 1.0) / n;
    double t_next = term * ratio;

    // q bounds every ratio beyond n+1: the gamma factor is monotone toward
    // r (decreasing for alpha_off > 0, increasing otherwise) and the
    // n-weight factor decreases toward 1.
    double q = r * std::max(1.0, (n + 2.0) / (n + 2.0 - alpha_off));
    if (n_weighted) q *= (n + 2.0) / (n + 1.0);
    if (q < 1.0) {
      double tail = t_next / (1.0 - q);
      double target = std::max(1e-12, 1e-13 * std::abs(sum));
      if (tail <= target) {
        out.value = sum;
        out.tail = tail;
        out.certified = true;
        return out;
      }
      out.tail = tail;  // best bound so far
    }
    term = t_next;
  }
  out.value = sum;
  return out;
}

struct SideEval {
  double lhs = 0.0;
  double rhs = 0.0;
  double tail = 0.0;
  int terms = 0;
  bool certified = false;
  bool lhs_is_lower_bound = false;
};

void check_problem(const RadiusProblem& p) {
  if (!alpha_valid(p.family, p.alpha)) {
    std::ostringstream os;
    os << "radius: alpha = " << p.alpha << " invalid for family "
       << family_name(p.family);
    throw std::domain_error(os.str());
  }
  if (!(p.tol > 0.0 && p.tol <= 1e-4)) {
    std::ostringstream os;
    os << "radius: tol must lie in (0, 1e-4], got " << p.tol;
    throw std::domain_error(os.str());
  }
  if (p.max_terms < 16) {
    throw std::domain_error("radius: max_terms must be at least 16");
  }
}

// Classical alpha = 0 limits (and alpha = 1 for shifted_rho): closed forms,
// no truncation.
SideEval eval_classical(Family f, double alpha, Variant variant, double r) {
  SideEval e;
  e.certified = true;
  if (alpha == 1.0) {  // shifted_rho only
    e.lhs = r / ((1.0 - r) * (1.0 - r)) - r;
    e.rhs = 0.5 * r;
    return e;
  }
  switch (f) {
    case Family::analytic_R:
      e.lhs = r / (1.0 - r);
      e.rhs = 0.5;
      break;
    case Family::shifted_rho:
      e.lhs = r * r / (1.0 - r);
      e.rhs = 0.5 * r;
      break;
    case Family::squared_N:
      e.lhs = r / (1.0 - r);
      e.rhs = 1.0;
      break;
    case Family::univalent_K:
      e.lhs = r / ((1.0 - r) * (1.0 - r));
      e.rhs = 0.25;
      break;
    case Family::convex_P:
      e.lhs = r / (1.0 - r);
      e.rhs = 0.5;
      break;
    case Family::integral_Rint:
      e.lhs = r / (1.0 - r);
      e.rhs = 0.5;
      break;
    case Family::bloch_M:
      e.lhs = (-std::log1p(-r) / r) * (1.0 / (1.0 - r));
      e.rhs = 1.0 / (r * r);
      break;
  }
  (void)variant;  // both analytic_R conventions coincide at alpha = 0
  return e;
}

SideEval eval_sides(const RadiusProblem& p, double r, bool allow_lower_bound) {
  if (!(r > 0.0 && r < 1.0)) {
    std::ostringstream os;
    os << "radius: r must lie in (0, 1), got " << r;
    throw std::domain_error(os.str());
  }
  const double a = p.alpha;
  if (a == 0.0 || (p.family == Family::shifted_rho && a == 1.0)) {
    return eval_classical(p.family, a, p.variant, r);
  }

  SideEval e;
  double scale = 1.0;  // common power of r multiplying the truncated sum
  double rhs = 0.0;
  int n0 = 1;
  bool weighted = false;
  double alpha_off = a;

  switch (p.family) {
    case Family::analytic_R:
      rhs = (p.variant == Variant::as_tabulated)
                ? 0.5
                : 0.5 * std::exp(-specfun::log_gamma(1.0 - a));
      break;
    case Family::shifted_rho:
      n0 = 2;
      rhs = 0.5 * r * std::exp(-specfun::log_gamma(2.0 - a));
      break;
    case Family::squared_N:
      scale = std::pow(r, a);
      rhs = std::exp(-2.0 * specfun::log_gamma(1.0 - a));
      break;
    case Family::univalent_K:
      scale = std::pow(r, -a);
      weighted = true;
      rhs = specfun::boundary_limit_rhs(specfun::BoundaryKind::univalent, a);
      break;
    case Family::convex_P:
      scale = std::pow(r, -a);
      rhs = specfun::boundary_limit_rhs(specfun::BoundaryKind::convex, a);
      break;
    case Family::integral_Rint:
      alpha_off = -a;
      rhs = 0.5 * std::exp(-specfun::log_gamma(1.0 + a));
      break;
    case Family::bloch_M: {
      double f1 = specfun::hyp2f1(1.0, 1.0, 2.0 - a, r);
      double f2 = specfun::hyp2f1(2.0, 1.0, 2.0 - a, r);
      e.lhs = f1 * f2;
      e.rhs = (1.0 - a) * (1.0 - a) / (r * r);
      // both factors carry certified series tails below 1e-12 relative
      e.tail = 2.2e-12 * std::max(1.0, std::abs(e.lhs));
      e.certified = true;
      return e;
    }
  }

  double early = allow_lower_bound
                     ? rhs / scale * (1.0 + 1e-9) + 1e-300
                     : std::numeric_limits<double>::infinity();
  SumEval s = sum_weighted_gamma_series(alpha_off, r, n0, weighted,
                                        p.max_terms, early);
  e.lhs = scale * s.value;
  e.rhs = rhs;
  e.tail = scale * s.tail;
  e.terms = s.terms;
  e.certified = s.certified;
  e.lhs_is_lower_bound = !s.certified;
  if (!s.certified && !allow_lower_bound) {
    std::ostringstream os;
    os << "radius: series tail not certifiable within " << p.max_terms
       << " terms at r = " << r;
    throw PrecisionError(os.str(), e.tail);
  }
  return e;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::analytic_R: return "analytic";
    case Family::shifted_rho: return "shifted";
    case Family::squared_N: return "squared";
    case Family::univalent_K: return "univalent";
    case Family::convex_P: return "convex";
    case Family::integral_Rint: return "integral";
    case Family::bloch_M: return "bloch";
  }
  return "?";
}

const char* variant_name(Variant v) {
  return v == Variant::as_stated ? "stated" : "tabulated";
}

bool alpha_valid(Family f, double alpha) {
  if (f == Family::shifted_rho) return alpha >= 0.0 && alpha <= 1.0;
  return alpha >= 0.0 && alpha < 1.0;
}

std::pair<double, double> lhs_rhs(const RadiusProblem& p, double r) {
  check_problem(p);
  SideEval e = eval_sides(p, r, /*allow_lower_bound=*/false);
  return {e.lhs, e.rhs};
}

double tail_bound(double alpha, double r, int N, TailWeight weight) {
  if (!(r > 0.0 && r < 1.0)) {
    throw std::domain_error("tail_bound: r must lie in (0, 1)");
  }
  if (N < 0) throw std::domain_error("tail_bound: N must be nonnegative");
  double q = r * std::max(1.0, (N + 2.0) / (N + 2.0 - alpha));
  double t = specfun::gamma_ratio(N + 1, alpha) * std::pow(r, N + 1);
  if (weight == TailWeight::n_weighted) {
    q *= (N + 2.0) / (N + 1.0);
    t *= (N + 1.0);
  }
  if (!(q < 1.0)) {
    std::ostringstream os;
    os << "tail_bound: ratio bound q = " << q
       << " >= 1, no geometric certificate at N = " << N;
    throw PrecisionError(os.str(), std::numeric_limits<double>::infinity());
  }
  return t / (1.0 - q);
}

namespace detail {

BracketOutcome bracket_and_bisect(const std::function<DSample(double)>& d,
                                  double lo, double hi, int samples,
                                  double tol) {
  std::vector<double> grid(samples);
  std::vector<DSample> vals(samples);
  const double lr = std::log(hi / lo);
  for (int i = 0; i < samples; ++i) {
    grid[i] = lo * std::exp(lr * i / (samples - 1.0));
    vals[i] = d(grid[i]);
  }

  std::vector<int> cells;
  for (int i = 0; i + 1 < samples; ++i) {
    if (vals[i].sign != 0 && vals[i + 1].sign != 0 &&
        vals[i].sign != vals[i + 1].sign) {
      cells.push_back(i);
    }
  }
  if (cells.empty()) {
    std::ostringstream os;
    os << "no sign change on [" << lo << ", " << hi << "]: D(lo) = "
       << vals.front().value << ", D(hi) = " << vals.back().value;
    throw NoRootError(os.str(), vals.front().value, vals.back().value);
  }
  if (cells.size() > 1) {
    std::vector<std::pair<double, double>> cell_bounds;
    std::ostringstream os;
    os << "sample pattern is not monotone; sign-change cells:";
    for (int i : cells) {
      cell_bounds.emplace_back(grid[i], grid[i + 1]);
      os << " [" << grid[i] << ", " << grid[i + 1] << "]";
    }
    throw AmbiguityError(os.str(), std::move(cell_bounds));
  }

  BracketOutcome out;
  int i = cells.front();
  out.lo = grid[i];
  out.hi = grid[i + 1];
  out.d_lo = vals[i].value;
  out.d_hi = vals[i + 1].value;
  out.increasing = vals[i].sign < 0;
  int sign_lo = vals[i].sign;

  while (out.hi - out.lo > tol) {
    double mid = 0.5 * (out.lo + out.hi);
    DSample dm = d(mid);
    ++out.iterations;
    if (dm.sign == sign_lo) {
      out.lo = mid;
      out.d_lo = dm.value;
    } else {
      out.hi = mid;
      out.d_hi = dm.value;
    }
  }
  return out;
}

}  // namespace detail

RadiusResult solve(const RadiusProblem& p) {
  check_problem(p);

  int depth_used = 0;
  auto D = [&](double r) {
    SideEval e = eval_sides(p, r, /*allow_lower_bound=*/true);
    depth_used = std::max(depth_used, e.terms);
    double v = e.lhs - e.rhs;
    detail::DSample s;
    s.value = v;
    if (e.lhs_is_lower_bound) {
      if (v > 0.0) {
        s.sign = 1;
        return s;
      }
      std::ostringstream os;
      os << "radius: sign of D(" << r << ") undeterminable within "
         << p.max_terms << " terms";
      throw PrecisionError(os.str(), e.tail);
    }
    s.sign = (v > 0.0) ? 1 : (v < 0.0 ? -1 : 0);
    return s;
  };

  detail::BracketOutcome b =
      detail::bracket_and_bisect(D, 1e-6, 1.0 - 1e-6, 64, p.tol);

  RadiusResult res;
  res.problem = p;
  res.bracket_lo = b.lo;
  res.bracket_hi = b.hi;
  res.root = 0.5 * (b.lo + b.hi);
  res.iterations = b.iterations;
  res.increasing = b.increasing;

  SideEval at_root = eval_sides(p, res.root, /*allow_lower_bound=*/false);
  depth_used = std::max(depth_used, at_root.terms);
  res.residual = at_root.lhs - at_root.rhs;
  res.tail_bound = at_root.tail;
  res.depth_used = depth_used;

  double slope = std::abs(b.d_hi - b.d_lo) / std::max(b.hi - b.lo, 1e-300);
  res.residual_ok = std::abs(res.residual) <= 10.0 * slope * p.tol + 1e-12;
  return res;
}

namespace {

std::vector<CurvePoint> run_curve(Family family, Variant variant,
                                  std::span<const double> alphas, double tol,
                                  int max_terms, bool parallel) {
  std::vector<CurvePoint> out(alphas.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < static_cast<long>(alphas.size()); ++i) {
    CurvePoint& pt = out[i];
    pt.alpha = alphas[i];
    try {
      RadiusProblem p;
      p.family = family;
      p.alpha = alphas[i];
      p.variant = variant;
      p.tol = tol;
      p.max_terms = max_terms;
      pt.result = solve(p);
    } catch (const std::exception& ex) {
      pt.error = ex.what();
    }
  }
  return out;
}

}  // namespace

std::vector<CurvePoint> radius_curve(Family family, Variant variant,
                                     std::span<const double> alphas,
                                     double tol, int max_terms) {
  return run_curve(family, variant, alphas, tol, max_terms, true);
}

std::vector<CurvePoint> radius_curve_serial(Family family, Variant variant,
                                            std::span<const double> alphas,
                                            double tol, int max_terms) {
  return run_curve(family, variant, alphas, tol, max_terms, false);
}

}  // namespace bohrfrac
