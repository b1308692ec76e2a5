#ifndef BOHRFRAC_SPECFUN_HPP
#define BOHRFRAC_SPECFUN_HPP

#include "bohrfrac/errors.hpp"

namespace bohrfrac::specfun {

/// ln Gamma(x) for x > 0.  Absolute error <= 1e-13 on (0, 200].
/// Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// ln |Gamma(x)| for real non-pole x; *sign receives the sign of Gamma(x).
/// Negative arguments go through the reflection formula.
/// Throws std::domain_error when x is zero or a negative integer.
double log_gamma_signed(double x, int* sign);

/// Gamma(n+1) / Gamma(n+1-alpha), computed in log space.
///
/// alpha is a signed exponent offset: the derivative-direction ratio passes
/// +alpha, the integral-direction ratio Gamma(n+1)/Gamma(n+1+alpha) passes
/// -alpha.  Relative error <= 1e-12 for n <= 500, |alpha| <= 1.
/// Throws std::domain_error when n+1-alpha <= 0 (e.g. n=0, alpha=1).
double gamma_ratio(long n, double alpha);

/// Parameters of the Gauss hypergeometric function 2F1(a, b; c; z).
struct Hyp2F1Params {
  double a;
  double b;
  double c;  // not zero or a negative integer
  double z;  // in [-1, 1]; z = 1 only when c - a - b > 0
};

/// Gauss hypergeometric 2F1 for real argument z in [-1, 1].
///
/// Dispatch: direct series for |z| <= 1/2; Pfaff transformation
/// w = z/(z-1) for z in [-1, -1/2); the 1-z connection formula for
/// z in (1/2, 1) when c-a-b is not an integer (direct summation as the
/// fallback); Gauss summation at z = 1.  Relative error <= 1e-10.
/// Throws std::domain_error on invalid parameters or divergence at z = 1,
/// PrecisionError when the tail cannot be certified.
double hyp2f1(const Hyp2F1Params& p);
double hyp2f1(double a, double b, double c, double z);

enum class BoundaryKind { univalent, convex };

/// Boundary value |2F1(., .; 2-alpha; -1)| / Gamma(2-alpha) used as the
/// right-hand side of the univalent and convex radius equations:
/// parameters (2,2) for univalent, (1,2) for convex.  The argument -1 is
/// reached through the Pfaff transformation; the defining series diverges
/// there for the univalent parameters.
/// Throws std::domain_error unless 0 < alpha < 1.
double boundary_limit_rhs(BoundaryKind kind, double alpha);

namespace detail {

/// Direct Gauss series with certified geometric tail bound.
struct SeriesResult {
  double value = 0.0;
  double tail_bound = 0.0;  // bound on the dropped tail (absolute)
  int terms = 0;            // number of terms summed
  bool certified = false;   // tail_bound is valid
};

/// Sums the defining series of 2F1(a,b;c;z).  Terminates when three
/// consecutive terms fall below 1e-16 of the partial sum and the geometric
/// ratio bound certifies the tail, or when max_terms is reached
/// (certified = false in that case).
SeriesResult hyp2f1_series(double a, double b, double c, double z,
                           int max_terms = 2'000'000);

/// Pfaff-transformed evaluation (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)).
double hyp2f1_pfaff(double a, double b, double c, double z);

/// Two-term 1-z connection formula; requires c-a-b not an integer.
double hyp2f1_near_one(double a, double b, double c, double z);

}  // namespace detail

}  // namespace bohrfrac::specfun

#endif  // BOHRFRAC_SPECFUN_HPP
