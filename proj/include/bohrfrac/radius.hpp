#ifndef BOHRFRAC_RADIUS_HPP
#define BOHRFRAC_RADIUS_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bohrfrac/errors.hpp"

namespace bohrfrac {

/// The seven radius families.
enum class Family {
  analytic_R,    // bounded analytic, derivative direction
  shifted_rho,   // bounded analytic with a_0 = 0
  squared_N,     // |a_0|^2 version
  univalent_K,   // univalent, Koebe-extremal
  convex_P,      // convex, half-plane-extremal
  integral_Rint, // bounded analytic, integral direction
  bloch_M,       // Bloch class
};

/// Right-hand-side convention for the analytic_R equation: the displayed
/// form 1/(2 Gamma(1-alpha)) versus the convention 1/2 that reproduces the
/// published table.  Ignored by every other family.
enum class Variant { as_stated, as_tabulated };

constexpr int kDefaultMaxTerms = 1 << 18;

struct RadiusProblem {
  Family family = Family::analytic_R;
  double alpha = 0.0;
  Variant variant = Variant::as_stated;
  double tol = 1e-10;              // bracket tolerance, in (0, 1e-4]
  int max_terms = kDefaultMaxTerms;
};

struct RadiusResult {
  RadiusProblem problem;
  double root = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;       // LHS - RHS at root
  int iterations = 0;          // bisection steps
  int depth_used = 0;          // deepest series truncation encountered
  double tail_bound = 0.0;     // certified truncation bound at the root
  bool increasing = true;      // D < 0 left of the root, D > 0 right
  bool residual_ok = true;     // |residual| <= 10 * slope * tol
};

const char* family_name(Family f);
const char* variant_name(Variant v);

/// True when alpha is admissible for the family (alpha = 0 is the classical
/// limit branch everywhere; shifted_rho additionally admits alpha = 1).
bool alpha_valid(Family f, double alpha);

/// Evaluates both sides of the family equation at radius r in (0, 1) with
/// certified series tails.  Throws std::domain_error for invalid r/alpha and
/// PrecisionError (carrying the best bound) when the tail cannot be
/// certified within max_terms.
std::pair<double, double> lhs_rhs(const RadiusProblem& p, double r);

/// Truncation bound for the weighted gamma-ratio sums: returns
/// t_{N+1} / (1 - q) where t_{N+1} is the first dropped term and
/// q = r (N+2)/(N+2-alpha) (times (N+2)/(N+1) for the n-weighted series)
/// bounds every later term ratio.  alpha is the signed exponent offset
/// (+alpha derivative direction, -alpha integral direction; for negative
/// offsets the ratios increase toward r, so q = r is used).
/// Throws PrecisionError when q >= 1.
enum class TailWeight { plain, n_weighted };
double tail_bound(double alpha, double r, int N, TailWeight weight);

/// Finds the least r in (0, 1) with LHS(r) = RHS(r): signs of
/// D = LHS - RHS are sampled at 64 geometrically spaced points in
/// [1e-6, 1 - 1e-6]; the unique sign-change cell is bisected to tol.
/// Throws NoRootError when no sign change exists and AmbiguityError when
/// several cells change sign (minimality cannot be certified).
RadiusResult solve(const RadiusProblem& p);

/// One curve row; `error` is set (and `result` empty) when the point failed.
struct CurvePoint {
  double alpha = 0.0;
  std::optional<RadiusResult> result;
  std::string error;
};

/// Solves the family at every grid point.  Points are independent; the
/// parallel version distributes them over OpenMP threads and produces
/// bit-identical results to the serial reference in the same order.
std::vector<CurvePoint> radius_curve(Family family, Variant variant,
                                     std::span<const double> alphas,
                                     double tol = 1e-10,
                                     int max_terms = kDefaultMaxTerms);
std::vector<CurvePoint> radius_curve_serial(Family family, Variant variant,
                                            std::span<const double> alphas,
                                            double tol = 1e-10,
                                            int max_terms = kDefaultMaxTerms);

namespace detail {

/// Sign of D at a sample point plus the (possibly lower-bound) value used
/// to report it.
struct DSample {
  int sign = 0;
  double value = 0.0;
};

struct BracketOutcome {
  double lo = 0.0;
  double hi = 0.0;
  double d_lo = 0.0;
  double d_hi = 0.0;
  int iterations = 0;
  bool increasing = true;
};

/// Geometric sampling + single-cell bisection used by solve(); exposed for
/// tests of the no-root and ambiguity paths.
BracketOutcome bracket_and_bisect(const std::function<DSample(double)>& d,
                                  double lo, double hi, int samples,
                                  double tol);

}  // namespace detail

}  // namespace bohrfrac

#endif  // BOHRFRAC_RADIUS_HPP
