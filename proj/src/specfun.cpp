#include "bohrfrac/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace bohrfrac::specfun {

namespace {

constexpr double kIntegerEps = 1e-9;
constexpr long double kPi = 3.14159265358979323846264338327950288L;

bool is_nonpositive_integer(double x) {
  return x <= kIntegerEps && std::abs(x - std::round(x)) < kIntegerEps;
}

// ln Gamma in extended precision: Stirling series for x >= 12, recurrence
// below.  The B18 term at x = 12 is below 1e-19, so the truncation error
// never reaches double precision.
long double log_gamma_ld(long double x) {
  static const long double kHalfLn2Pi = 0.91893853320467274178032973640562L;
  // B_{2n} / (2n (2n-1))
  static const long double stirling[] = {
      1.0L / 12.0L,          -1.0L / 360.0L,         1.0L / 1260.0L,
      -1.0L / 1680.0L,       1.0L / 1188.0L,         -691.0L / 360360.0L,
      1.0L / 156.0L,         -3617.0L / 122400.0L,
  };

  long double shift = 0.0L;
  while (x < 12.0L) {
    shift += std::log(x);
    x += 1.0L;
  }
  long double inv = 1.0L / x;
  long double inv2 = inv * inv;
  long double series = 0.0L;
  long double p = inv;
  for (long double c : stirling) {
    series += c * p;
    p *= inv2;
  }
  return (x - 0.5L) * std::log(x) - x + kHalfLn2Pi + series - shift;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "log_gamma: argument must be positive, got " << x;
    throw std::domain_error(os.str());
  }
  if (x == 1.0 || x == 2.0) return 0.0;
  return static_cast<double>(log_gamma_ld(static_cast<long double>(x)));
}

double log_gamma_signed(double x, int* sign) {
  *sign = 1;
  if (x > 0.0) return log_gamma(x);
  if (is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "log_gamma_signed: pole at nonpositive integer " << x;
    throw std::domain_error(os.str());
  }
  // Gamma(x) Gamma(1-x) = pi / sin(pi x)
  long double lx = static_cast<long double>(x);
  long double s = std::sin(kPi * lx);
  if (s < 0.0L) *sign = -1;
  long double v = std::log(kPi) - std::log(std::abs(s)) - log_gamma_ld(1.0L - lx);
  return static_cast<double>(v);
}

double gamma_ratio(long n, double alpha) {
  if (n < 0) throw std::domain_error("gamma_ratio: n must be nonnegative");
  long double num = static_cast<long double>(n) + 1.0L;
  long double den = num - static_cast<long double>(alpha);
  if (!(den > 0.0L)) {
    std::ostringstream os;
    os << "gamma_ratio: Gamma pole, n+1-alpha = " << static_cast<double>(den);
    throw std::domain_error(os.str());
  }
  if (alpha == 0.0) return 1.0;
  return static_cast<double>(std::exp(log_gamma_ld(num) - log_gamma_ld(den)));
}

namespace detail {

SeriesResult hyp2f1_series(double a, double b, double c, double z,
                           int max_terms) {
  SeriesResult res;
  double sum = 1.0;
  double comp = 0.0;  // Kahan compensation
  double term = 1.0;
  int tiny_streak = 0;
  const double az = std::abs(z);

  for (int n = 0; n < max_terms; ++n) {
    double next = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * z;
    if (next == 0.0) {
      // polynomial case: series terminated exactly
      res.value = sum;
      res.tail_bound = 0.0;
      res.terms = n + 1;
      res.certified = true;
      return res;
    }
    double y = next - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    term = next;

    if (std::abs(term) <= 1e-16 * std::abs(sum)) {
      ++tiny_streak;
    } else {
      tiny_streak = 0;
    }
    if (tiny_streak >= 3) {
      // Geometric tail certificate: each ratio factor 1 + k/(m+d) is
      // monotone toward 1 for m >= n, so its magnitude never exceeds
      // max(|value at n|, 1).
      int m = n + 1;
      double f1 = std::max(std::abs(1.0 + (a - c) / (m + c)), 1.0);
      double f2 = std::max(std::abs(1.0 + (b - 1.0) / (m + 1.0)), 1.0);
      double q = az * f1 * f2;
      if (q < 1.0) {
        double t_next =
            std::abs(term * ((a + m) * (b + m) / ((c + m) * (m + 1.0))) * z);
        res.value = sum;
        res.tail_bound = t_next / (1.0 - q);
        res.terms = m + 1;
        res.certified = true;
        if (res.tail_bound < 1e-12 * std::max(1.0, std::abs(sum))) return res;
      }
    }
  }
  res.value = sum;
  res.terms = max_terms;
  res.certified = false;
  res.tail_bound = std::abs(term);
  return res;
}

double hyp2f1_pfaff(double a, double b, double c, double z) {
  double w = z / (z - 1.0);
  SeriesResult r = hyp2f1_series(a, c - b, c, w);
  if (!r.certified) {
    throw PrecisionError("hyp2f1: Pfaff series tail not certified",
                         r.tail_bound);
  }
  return std::pow(1.0 - z, -a) * r.value;
}

double hyp2f1_near_one(double a, double b, double c, double z) {
  const double d = c - a - b;
  const double s = 1.0 - z;

  // F = G1 * 2F1(a,b;1-d;s) + s^d * G2 * 2F1(c-a,c-b;1+d;s)
  // with G1 = Gamma(c)Gamma(d)/(Gamma(c-a)Gamma(c-b)) and
  //      G2 = Gamma(c)Gamma(-d)/(Gamma(a)Gamma(b)).
  int sc, s1, s2, s3, s4;
  double lc = log_gamma_signed(c, &sc);

  double term1 = 0.0;
  if (!is_nonpositive_integer(c - a) && !is_nonpositive_integer(c - b)) {
    double g1 = lc + log_gamma_signed(d, &s1) - log_gamma_signed(c - a, &s2) -
                log_gamma_signed(c - b, &s3);
    SeriesResult r1 = hyp2f1_series(a, b, 1.0 - d, s);
    if (!r1.certified) {
      throw PrecisionError("hyp2f1: connection series tail not certified",
                           r1.tail_bound);
    }
    term1 = sc * s1 * s2 * s3 * std::exp(g1) * r1.value;
  }

  double term2 = 0.0;
  if (!is_nonpositive_integer(a) && !is_nonpositive_integer(b)) {
    double g2 = lc + log_gamma_signed(-d, &s1) - log_gamma_signed(a, &s2) -
                log_gamma_signed(b, &s4);
    SeriesResult r2 = hyp2f1_series(c - a, c - b, 1.0 + d, s);
    if (!r2.certified) {
      throw PrecisionError("hyp2f1: connection series tail not certified",
                           r2.tail_bound);
    }
    term2 = sc * s1 * s2 * s4 * std::exp(g2) * std::pow(s, d) * r2.value;
  }

  return term1 + term2;
}

}  // namespace detail

double hyp2f1(const Hyp2F1Params& p) { return hyp2f1(p.a, p.b, p.c, p.z); }

double hyp2f1(double a, double b, double c, double z) {
  if (is_nonpositive_integer(c)) {
    std::ostringstream os;
    os << "hyp2f1: c must not be zero or a negative integer, got " << c;
    throw std::domain_error(os.str());
  }
  if (std::abs(z) > 1.0) {
    std::ostringstream os;
    os << "hyp2f1: argument must lie in [-1, 1], got " << z;
    throw std::domain_error(os.str());
  }
  if (z == 0.0 || a == 0.0 || b == 0.0) return 1.0;

  const bool poly = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (poly) {
    // terminating series, converges for any z
    return detail::hyp2f1_series(a, b, c, z).value;
  }

  if (z == 1.0) {
    double d = c - a - b;
    if (!(d > 0.0)) {
      std::ostringstream os;
      os << "hyp2f1: series diverges at z = 1 for c-a-b = " << d;
      throw std::domain_error(os.str());
    }
    if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) {
      return 0.0;  // reciprocal Gamma pole in the Gauss formula
    }
    int s1, s2;
    double g = log_gamma(c) + log_gamma(d) - log_gamma_signed(c - a, &s1) -
               log_gamma_signed(c - b, &s2);
    return s1 * s2 * std::exp(g);
  }

  if (std::abs(z) <= 0.5) {
    detail::SeriesResult r = detail::hyp2f1_series(a, b, c, z);
    if (!r.certified) {
      throw PrecisionError("hyp2f1: series tail not certified", r.tail_bound);
    }
    return r.value;
  }

  if (z < 0.0) return detail::hyp2f1_pfaff(a, b, c, z);

  // z in (1/2, 1)
  double d = c - a - b;
  if (std::abs(d - std::round(d)) > 1e-8) {
    return detail::hyp2f1_near_one(a, b, c, z);
  }
  // Integer c-a-b: fall back to the defining series, which still converges
  // for z < 1, just slowly near 1.
  detail::SeriesResult r = detail::hyp2f1_series(a, b, c, z);
  if (!r.certified) {
    throw PrecisionError("hyp2f1: series tail not certified near z = 1",
                         r.tail_bound);
  }
  return r.value;
}

double boundary_limit_rhs(BoundaryKind kind, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << "boundary_limit_rhs: alpha must lie in (0, 1), got " << alpha;
    throw std::domain_error(os.str());
  }
  double a = (kind == BoundaryKind::univalent) ? 2.0 : 1.0;
  double v = hyp2f1(a, 2.0, 2.0 - alpha, -1.0);
  return std::abs(v) * std::exp(-log_gamma(2.0 - alpha));
}

}  // namespace bohrfrac::specfun
