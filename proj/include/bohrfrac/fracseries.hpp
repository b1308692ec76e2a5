#ifndef BOHRFRAC_FRACSERIES_HPP
#define BOHRFRAC_FRACSERIES_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "bohrfrac/errors.hpp"

namespace bohrfrac {

/// Truncated power series sum c_n z^(n+offset), n = 0..depth.
///
/// For majorant work the coefficients are read as moduli; signed values are
/// permitted for oracle comparisons.  Values are immutable after
/// construction: transforms return new series.
struct FracPowerSeries {
  std::vector<double> coeffs;            // c_0 .. c_depth
  double offset = 0.0;                   // exponent shift
  std::optional<double> tail_hint;       // certified dropped-tail bound at
                                         // the radius it was computed for

  int depth() const { return static_cast<int>(coeffs.size()) - 1; }
};

enum class ExtremalKind { mobius, shifted_mobius, koebe, half_plane };

/// Extremal-function selector; `a` is the Moebius parameter in [0, 1)
/// (ignored for koebe / half_plane).
struct ExtremalFamily {
  ExtremalKind kind;
  double a = 0.0;
};

/// Riemann-Liouville fractional derivative of order alpha in [0, 1]:
/// coefficient n is scaled by Gamma(n+offset+1)/Gamma(n+offset+1-alpha) and
/// the offset decreases by alpha.  alpha = 0 is the identity, alpha = 1 the
/// classical derivative (both explicit branches).
/// Throws std::domain_error when some exponent has n+offset+1-alpha <= 0.
FracPowerSeries frac_derivative(const FracPowerSeries& s, double alpha);

/// Riemann-Liouville fractional integral of order alpha in [0, 1]:
/// coefficient n is scaled by Gamma(n+offset+1)/Gamma(n+offset+1+alpha) and
/// the offset increases by alpha.  Requires offset > -1 (integrability).
FracPowerSeries frac_integral(const FracPowerSeries& s, double alpha);

/// Kahan-compensated sum of |c_n| r^(n+offset) for r in (0, 1).
/// The caller obtains the truncation tail bound separately.
double bohr_majorant(const FracPowerSeries& s, double r);

/// Coefficients of the extremal functions used by the sharpness probes:
///   mobius         (a-z)/(1-az):    a_0 = a, a_n = -(1-a^2) a^(n-1)
///   shifted_mobius z(a-z)/(1-az):   a_1 = a, a_n = -(1-a^2) a^(n-2), n >= 2
///   koebe          z/(1-z)^2:       a_n = n
///   half_plane     z/(1-z):         a_n = 1, n >= 1
FracPowerSeries extremal_coeffs(const ExtremalFamily& fam, int depth);

/// Closed form of the fractional derivative of z^a / (1+z)^b:
///   |z|^(a-alpha) Gamma(a+1)/Gamma(a+1-alpha) 2F1(b, a+1; a+1-alpha; -z)
/// for positive integers a, b, alpha in (0, 1), z in (-1, 1).  The power
/// z^(a-alpha) is taken at |z| (modulus convention used throughout).
double lemma39_closed_form(int a, int b, double alpha, double z);

/// Independent verification path for lemma39_closed_form: expands
/// z^a (1+z)^(-b) binomially, applies the generalized power rule term by
/// term, and sums.  Throws PrecisionError (with the achieved bound) when
/// `depth` cannot certify a tail below 1e-12 at |z|.
double lemma39_series_oracle(int a, int b, double alpha, double z, int depth);

struct MajorantEval {
  double value = 0.0;
  double tail = 0.0;  // certified bound on the dropped tail at r
  int depth = 0;
};

/// Bohr majorant of the fractional transform of an extremal function,
/// with doubling depth escalation (256 up to 8192) until the certified
/// tail at r drops below 1e-12.  direction: derivative unless `integral`.
MajorantEval extremal_majorant(const ExtremalFamily& fam, double alpha,
                               double r, bool integral = false);

/// Parses the CLI coefficient-file format: one coefficient per line, with
/// an optional leading header line "offset <real>".  Blank lines are
/// ignored.  Throws ParseError carrying the 1-based line number on
/// malformed input or an empty coefficient list.
FracPowerSeries parse_coeff_stream(std::istream& in);

}  // namespace bohrfrac

#endif  // BOHRFRAC_FRACSERIES_HPP
