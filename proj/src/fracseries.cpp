#include "bohrfrac/fracseries.hpp"

#include <cctype>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>

#include "bohrfrac/specfun.hpp"

namespace bohrfrac {

namespace {

// Gamma(x)/Gamma(x-alpha) for real x > max(0, alpha), in extended precision
// via log space.
double offset_gamma_ratio(double x, double alpha) {
  if (alpha == 0.0) return 1.0;
  return std::exp(specfun::log_gamma(x) - specfun::log_gamma(x - alpha));
}

FracPowerSeries transform(const FracPowerSeries& s, double alpha, int dir) {
  if (s.coeffs.empty()) {
    throw std::domain_error("fractional transform: empty coefficient list");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "fractional transform: order must lie in [0, 1], got " << alpha;
    throw std::domain_error(os.str());
  }
  if (alpha == 0.0) return s;  // identity limit

  const double shift = dir * alpha;  // dir = +1 derivative, -1 integral
  if (dir > 0) {
    // power rule needs n+offset+1-alpha > 0 for every n; n = 0 is worst.
    // At alpha = 1 the classical branch tolerates offset 0 (constant term
    // differentiates to zero).
    bool ok = (alpha == 1.0) ? (s.offset >= 0.0)
                             : (s.offset + 1.0 - alpha > 0.0);
    if (!ok) {
      std::ostringstream os;
      os << "frac_derivative: exponent precondition violated, offset+1-alpha = "
         << s.offset + 1.0 - alpha;
      throw std::domain_error(os.str());
    }
  } else {
    if (!(s.offset > -1.0)) {
      std::ostringstream os;
      os << "frac_integral: offset must exceed -1, got " << s.offset;
      throw std::domain_error(os.str());
    }
  }

  FracPowerSeries out;
  out.coeffs.resize(s.coeffs.size());
  out.offset = s.offset - shift;

  if (alpha == 1.0 && dir > 0) {
    // classical derivative: c_n -> c_n (n+offset)
    for (size_t n = 0; n < s.coeffs.size(); ++n) {
      out.coeffs[n] = s.coeffs[n] * (static_cast<double>(n) + s.offset);
    }
    return out;
  }
  if (alpha == 1.0 && dir < 0) {
    // classical antiderivative: c_n -> c_n / (n+offset+1)
    for (size_t n = 0; n < s.coeffs.size(); ++n) {
      out.coeffs[n] = s.coeffs[n] / (static_cast<double>(n) + s.offset + 1.0);
    }
    return out;
  }

  // ratio recurrence from the n = 0 value; exact multiplicative updates
  // w_{n+1} = w_n (n+offset+1) / (n+offset+1-shift)
  double w = offset_gamma_ratio(s.offset + 1.0, shift);
  for (size_t n = 0; n < s.coeffs.size(); ++n) {
    out.coeffs[n] = s.coeffs[n] * w;
    double x = s.offset + static_cast<double>(n) + 1.0;
    w *= x / (x - shift);
  }
  return out;
}

}  // namespace

FracPowerSeries frac_derivative(const FracPowerSeries& s, double alpha) {
  return transform(s, alpha, +1);
}

FracPowerSeries frac_integral(const FracPowerSeries& s, double alpha) {
  return transform(s, alpha, -1);
}

double bohr_majorant(const FracPowerSeries& s, double r) {
  if (!(r > 0.0 && r < 1.0)) {
    std::ostringstream os;
    os << "bohr_majorant: radius must lie in (0, 1), got " << r;
    throw std::domain_error(os.str());
  }
  double sum = 0.0;
  double comp = 0.0;
  double rp = std::pow(r, s.offset);
  for (double c : s.coeffs) {
    double term = std::abs(c) * rp;
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    rp *= r;
  }
  return sum;
}

FracPowerSeries extremal_coeffs(const ExtremalFamily& fam, int depth) {
  if (depth < 1) {
    throw std::domain_error("extremal_coeffs: depth must be at least 1");
  }
  if (fam.kind == ExtremalKind::mobius || fam.kind == ExtremalKind::shifted_mobius) {
    if (!(fam.a >= 0.0 && fam.a < 1.0)) {
      std::ostringstream os;
      os << "extremal_coeffs: Moebius parameter must lie in [0, 1), got "
         << fam.a;
      throw std::domain_error(os.str());
    }
  }

  FracPowerSeries s;
  s.coeffs.assign(static_cast<size_t>(depth) + 1, 0.0);
  const double a = fam.a;
  switch (fam.kind) {
    case ExtremalKind::mobius: {
      s.coeffs[0] = a;
      double p = -(1.0 - a * a);
      for (int n = 1; n <= depth; ++n) {
        s.coeffs[n] = p;
        p *= a;
      }
      break;
    }
    case ExtremalKind::shifted_mobius: {
      s.coeffs[1] = a;
      double p = -(1.0 - a * a);
      for (int n = 2; n <= depth; ++n) {
        s.coeffs[n] = p;
        p *= a;
      }
      break;
    }
    case ExtremalKind::koebe:
      for (int n = 1; n <= depth; ++n) s.coeffs[n] = n;
      break;
    case ExtremalKind::half_plane:
      for (int n = 1; n <= depth; ++n) s.coeffs[n] = 1.0;
      break;
  }
  return s;
}

double lemma39_closed_form(int a, int b, double alpha, double z) {
  if (a < 1 || b < 1) {
    throw std::domain_error("lemma39_closed_form: a, b must be positive integers");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("lemma39_closed_form: alpha must lie in (0, 1)");
  }
  if (!(z > -1.0 && z < 1.0)) {
    throw std::domain_error("lemma39_closed_form: z must lie in (-1, 1)");
  }
  if (z == 0.0) return 0.0;
  double pre = std::pow(std::abs(z), a - alpha) *
               specfun::gamma_ratio(a, alpha);
  return pre * specfun::hyp2f1(b, a + 1.0, a + 1.0 - alpha, -z);
}

double lemma39_series_oracle(int a, int b, double alpha, double z, int depth) {
  if (a < 1 || b < 1) {
    throw std::domain_error("lemma39_series_oracle: a, b must be positive integers");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("lemma39_series_oracle: alpha must lie in (0, 1)");
  }
  if (!(z > -1.0 && z < 1.0)) {
    throw std::domain_error("lemma39_series_oracle: z must lie in (-1, 1)");
  }
  if (z == 0.0) return 0.0;

  // z^a (1+z)^(-b) = sum_n binom(b-1+n, n) (-1)^n z^(a+n); the power rule
  // sends z^(a+n) to Gamma(a+n+1)/Gamma(a+n+1-alpha) z^(a+n-alpha).
  // Factor out |z|^(a-alpha) and sum the remaining signed z^n series.
  double sum = 0.0;
  double comp = 0.0;
  double binom = 1.0;  // binom(b-1+n, n)
  double ratio = specfun::gamma_ratio(a, alpha);  // Gamma(a+n+1)/Gamma(a+n+1-alpha)
  double zp = 1.0;
  double last_abs = 0.0;
  for (int n = 0; n <= depth; ++n) {
    double term = binom * ratio * zp;
    if ((n & 1) != 0) term = -term;
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    last_abs = std::abs(term);

    binom *= static_cast<double>(b + n) / (n + 1.0);
    double x = a + n + 1.0;
    ratio *= x / (x - alpha);
    zp *= z;
  }

  // Geometric tail certificate.  The term ratio
  //   |t_{n+1}/t_n| = |z| (b+n)/(n+1) (a+n+1)/(a+n+1-alpha)
  // decreases toward |z|, so the ratio at depth+1 bounds all later ones.
  const double az = std::abs(z);
  auto term_ratio = [&](int n) {
    return az * (static_cast<double>(b + n) / (n + 1.0)) *
           ((a + n + 1.0) / (a + n + 1.0 - alpha));
  };
  double t_next = last_abs * term_ratio(depth);  // first dropped term
  double q = term_ratio(depth + 1);
  if (!(q < 1.0)) {
    throw PrecisionError("lemma39_series_oracle: tail ratio at or above 1",
                         t_next);
  }
  double tail = t_next / (1.0 - q);
  if (tail > 1e-12 * std::max(1.0, std::abs(sum))) {
    throw PrecisionError("lemma39_series_oracle: depth too small for 1e-12 tail",
                         tail);
  }
  return std::pow(az, a - alpha) * sum;
}

MajorantEval extremal_majorant(const ExtremalFamily& fam, double alpha,
                               double r, bool integral) {
  const double alpha_off = integral ? -alpha : alpha;
  for (int depth = 256; depth <= 8192; depth *= 2) {
    FracPowerSeries s = extremal_coeffs(fam, depth);
    FracPowerSeries d = integral ? frac_integral(s, alpha)
                                 : frac_derivative(s, alpha);
    double value = bohr_majorant(d, r);

    // Tail terms |c_n| w_n r^(n+offset).  The coefficient ratio is a for
    // the Moebius kinds, (n+1)/n for Koebe, 1 for the half-plane; the
    // gamma-ratio factor is monotone toward 1 in n.
    double cr_next, cr_sup;
    switch (fam.kind) {
      case ExtremalKind::mobius:
      case ExtremalKind::shifted_mobius:
        cr_next = cr_sup = fam.a;
        break;
      case ExtremalKind::koebe:
        cr_next = (depth + 1.0) / depth;
        cr_sup = (depth + 2.0) / (depth + 1.0);
        break;
      case ExtremalKind::half_plane:
      default:
        cr_next = cr_sup = 1.0;
        break;
    }
    double q = cr_sup * r * std::max(1.0, (depth + 2.0) / (depth + 2.0 - alpha_off));
    double t_last = std::abs(d.coeffs.back()) * std::pow(r, depth + d.offset);
    double t_next = t_last * cr_next * r * (depth + 1.0) / (depth + 1.0 - alpha_off);
    if (q < 1.0) {
      double tail = t_next / (1.0 - q);
      if (tail < 1e-12) return {value, tail, depth};
    }
  }
  throw PrecisionError(
      "extremal_majorant: tail not certified at maximum depth 8192", r);
}

FracPowerSeries parse_coeff_stream(std::istream& in) {
  FracPowerSeries s;
  std::string line;
  int lineno = 0;
  bool saw_value = false;

  auto parse_double = [](const std::string& text, double* out) {
    size_t pos = 0;
    try {
      *out = std::stod(text, &pos);
    } catch (const std::exception&) {
      return false;
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return pos == text.size();
  };

  while (std::getline(in, line)) {
    ++lineno;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(b, e - b + 1);

    if (!saw_value && s.coeffs.empty() && tok.rfind("offset", 0) == 0) {
      std::string rest = tok.substr(6);
      double off;
      if (!parse_double(rest, &off)) {
        std::ostringstream os;
        os << "line " << lineno << ": malformed offset header: '" << tok << "'";
        throw ParseError(os.str(), lineno);
      }
      s.offset = off;
      continue;
    }

    double c;
    if (!parse_double(tok, &c)) {
      std::ostringstream os;
      os << "line " << lineno << ": expected a coefficient, got '" << tok << "'";
      throw ParseError(os.str(), lineno);
    }
    s.coeffs.push_back(c);
    saw_value = true;
  }
  if (s.coeffs.empty()) {
    throw ParseError("empty coefficient list", lineno);
  }
  return s;
}

}  // namespace bohrfrac
