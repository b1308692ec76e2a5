// bohrfrac: Bohr radii of fractional derivatives and integrals on the unit
// disk.  Subcommands: radius, curve, majorant, verify.
//
// Exit codes: 0 ok, 1 verify-gate failure, 2 domain error, 3 no-root /
// ambiguity / precision failure, 64 usage, 65 coefficient-parse, 74 I/O.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bohrfrac/fracseries.hpp"
#include "bohrfrac/radius.hpp"
#include "bohrfrac/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitGate = 1;
constexpr int kExitDomain = 2;
constexpr int kExitNoRoot = 3;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitIo = 74;

using bohrfrac::Family;
using bohrfrac::Variant;

std::string fmt_sig(double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

struct Options {
  std::string family;
  std::string variant = "stated";
  double alpha = 0.0;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  int steps = 0;
  double r = 0.0;
  std::string coeffs_path;
  std::string preset;
  double mobius_a = 0.5;
  std::string direction = "derivative";
  double tol = 1e-10;
  double tolerance = 2e-4;  // verify report tolerance
  std::string format = "text";
  std::string out_path;
  std::optional<int> max_terms_flag;
};

Family parse_family(const std::string& name) {
  if (name == "analytic") return Family::analytic_R;
  if (name == "shifted") return Family::shifted_rho;
  if (name == "squared") return Family::squared_N;
  if (name == "univalent") return Family::univalent_K;
  if (name == "convex") return Family::convex_P;
  if (name == "integral") return Family::integral_Rint;
  if (name == "bloch") return Family::bloch_M;
  throw CLI::ValidationError("--family", "unknown family '" + name + "'");
}

Variant parse_variant(const std::string& name) {
  if (name == "stated") return Variant::as_stated;
  if (name == "tabulated") return Variant::as_tabulated;
  throw CLI::ValidationError("--variant", "unknown variant '" + name + "'");
}

// flags > BOHRFRAC_MAX_TERMS > built-in default
int resolve_max_terms(const Options& opt) {
  if (opt.max_terms_flag) {
    if (*opt.max_terms_flag < 16) {
      throw CLI::ValidationError("--max-terms", "must be at least 16");
    }
    return *opt.max_terms_flag;
  }
  const char* env = std::getenv("BOHRFRAC_MAX_TERMS");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || v < 16) {
      throw CLI::ValidationError(
          "BOHRFRAC_MAX_TERMS",
          "must be a positive integer >= 16, got '" + std::string(env) + "'");
    }
    return static_cast<int>(v);
  }
  return bohrfrac::kDefaultMaxTerms;
}

// Output is buffered and written in one shot so failures never leave a
// partial result file behind.
int emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
    return kExitOk;
  }
  std::ofstream f(out_path);
  if (!f) {
    std::cerr << "bohrfrac: cannot open '" << out_path << "' for writing\n";
    return kExitIo;
  }
  f << body;
  f.close();
  if (!f) {
    std::cerr << "bohrfrac: write to '" << out_path << "' failed\n";
    return kExitIo;
  }
  return kExitOk;
}

std::string radius_result_text(const bohrfrac::RadiusResult& res) {
  std::ostringstream os;
  os << "family     " << family_name(res.problem.family) << '\n'
     << "variant    " << variant_name(res.problem.variant) << '\n'
     << "alpha      " << fmt_sig(res.problem.alpha, 6) << '\n'
     << "root       " << fmt_sig(res.root, 6) << '\n'
     << "bracket    [" << fmt_sig(res.bracket_lo, 6) << ", "
     << fmt_sig(res.bracket_hi, 6) << "]\n"
     << "residual   " << fmt_sig(res.residual, 6) << '\n'
     << "iterations " << res.iterations << '\n'
     << "depth      " << res.depth_used << '\n'
     << "tail_bound " << fmt_sig(res.tail_bound, 6) << '\n';
  if (!res.residual_ok) os << "flag       residual exceeds 10*slope*tol\n";
  return os.str();
}

std::string radius_result_csv(const bohrfrac::RadiusResult& res) {
  std::ostringstream os;
  os << "family,variant,alpha,root,bracket_lo,bracket_hi,residual,iterations,"
        "depth_used,tail_bound\n";
  os << family_name(res.problem.family) << ',' << variant_name(res.problem.variant)
     << ',' << fmt_sig(res.problem.alpha, 12) << ',' << fmt_sig(res.root, 12)
     << ',' << fmt_sig(res.bracket_lo, 12) << ',' << fmt_sig(res.bracket_hi, 12)
     << ',' << fmt_sig(res.residual, 12) << ',' << res.iterations << ','
     << res.depth_used << ',' << fmt_sig(res.tail_bound, 12) << '\n';
  return os.str();
}

std::string radius_result_json(const bohrfrac::RadiusResult& res) {
  std::ostringstream os;
  os << "{\"family\": \"" << family_name(res.problem.family) << "\""
     << ", \"variant\": \"" << variant_name(res.problem.variant) << "\""
     << ", \"alpha\": " << fmt_sig(res.problem.alpha, 12)
     << ", \"root\": " << fmt_sig(res.root, 12)
     << ", \"bracket_lo\": " << fmt_sig(res.bracket_lo, 12)
     << ", \"bracket_hi\": " << fmt_sig(res.bracket_hi, 12)
     << ", \"residual\": " << fmt_sig(res.residual, 12)
     << ", \"iterations\": " << res.iterations
     << ", \"depth_used\": " << res.depth_used
     << ", \"tail_bound\": " << fmt_sig(res.tail_bound, 12) << "}\n";
  return os.str();
}

int cmd_radius(const Options& opt) {
  bohrfrac::RadiusProblem p;
  p.family = parse_family(opt.family);
  p.variant = parse_variant(opt.variant);
  p.alpha = opt.alpha;
  p.tol = opt.tol;
  p.max_terms = resolve_max_terms(opt);

  if (!bohrfrac::alpha_valid(p.family, p.alpha)) {
    std::cerr << "bohrfrac: alpha = " << p.alpha << " out of range for family "
              << family_name(p.family) << '\n';
    return kExitDomain;
  }

  bohrfrac::RadiusResult res = bohrfrac::solve(p);
  std::string body;
  if (opt.format == "csv") body = radius_result_csv(res);
  else if (opt.format == "json") body = radius_result_json(res);
  else body = radius_result_text(res);
  return emit(body, opt.out_path);
}

const char* point_status(const bohrfrac::CurvePoint& pt) {
  if (pt.result) return "ok";
  if (pt.error.find("no sign change") != std::string::npos) return "no-root";
  if (pt.error.find("not monotone") != std::string::npos) return "ambiguous";
  if (pt.error.find("alpha") != std::string::npos) return "domain";
  return "error";
}

int cmd_curve(const Options& opt) {
  Family family = parse_family(opt.family);
  Variant variant = parse_variant(opt.variant);

  const double family_max = (family == Family::shifted_rho) ? 1.0 : 1.0 - 1e-9;
  if (!(opt.alpha_min >= 0.0 && opt.alpha_min < opt.alpha_max &&
        opt.alpha_max <= family_max)) {
    std::cerr << "bohrfrac: need 0 <= alpha-min < alpha-max <= family max\n";
    return kExitUsage;
  }

  std::vector<double> grid(opt.steps);
  for (int i = 0; i < opt.steps; ++i) {
    grid[i] = opt.alpha_min +
              (opt.alpha_max - opt.alpha_min) * i / (opt.steps - 1.0);
  }

  std::vector<bohrfrac::CurvePoint> pts = bohrfrac::radius_curve(
      family, variant, grid, opt.tol, resolve_max_terms(opt));

  std::ostringstream os;
  if (opt.format == "json") {
    os << "[\n";
    for (size_t i = 0; i < pts.size(); ++i) {
      const auto& pt = pts[i];
      os << "  {\"alpha\": " << fmt_sig(pt.alpha, 12) << ", \"root\": "
         << (pt.result ? fmt_sig(pt.result->root, 12) : "null")
         << ", \"residual\": "
         << (pt.result ? fmt_sig(pt.result->residual, 12) : "null")
         << ", \"status\": \"" << point_status(pt) << "\"}"
         << (i + 1 < pts.size() ? ",\n" : "\n");
    }
    os << "]\n";
  } else {
    const int digits = (opt.format == "csv") ? 12 : 6;
    os << "alpha,root,residual,status\n";
    for (const auto& pt : pts) {
      os << fmt_sig(pt.alpha, digits) << ','
         << (pt.result ? fmt_sig(pt.result->root, digits) : "nan") << ','
         << (pt.result ? fmt_sig(pt.result->residual, digits) : "nan") << ','
         << point_status(pt) << '\n';
    }
  }
  return emit(os.str(), opt.out_path);
}

int cmd_majorant(const Options& opt) {
  if (opt.coeffs_path.empty() == opt.preset.empty()) {
    std::cerr << "bohrfrac: majorant needs exactly one of --coeffs, --preset\n";
    return kExitUsage;
  }
  bool integral = false;
  if (opt.direction == "integral") integral = true;
  else if (opt.direction != "derivative") {
    std::cerr << "bohrfrac: --direction must be derivative or integral\n";
    return kExitUsage;
  }
  if (!(opt.alpha >= 0.0 && opt.alpha <= 1.0)) {
    std::cerr << "bohrfrac: alpha = " << opt.alpha << " out of [0, 1]\n";
    return kExitDomain;
  }
  if (!(opt.r > 0.0 && opt.r < 1.0)) {
    std::cerr << "bohrfrac: r = " << opt.r << " out of (0, 1)\n";
    return kExitDomain;
  }

  double value = 0.0;
  double tail = 0.0;
  if (!opt.preset.empty()) {
    bohrfrac::ExtremalFamily fam;
    if (opt.preset == "koebe") fam.kind = bohrfrac::ExtremalKind::koebe;
    else if (opt.preset == "half_plane") fam.kind = bohrfrac::ExtremalKind::half_plane;
    else if (opt.preset == "mobius") fam.kind = bohrfrac::ExtremalKind::mobius;
    else if (opt.preset == "shifted_mobius") fam.kind = bohrfrac::ExtremalKind::shifted_mobius;
    else {
      std::cerr << "bohrfrac: unknown preset '" << opt.preset
                << "' (koebe, half_plane, mobius, shifted_mobius)\n";
      return kExitUsage;
    }
    fam.a = opt.mobius_a;
    bohrfrac::MajorantEval ev = bohrfrac::extremal_majorant(fam, opt.alpha, opt.r, integral);
    value = ev.value;
    tail = ev.tail;
  } else {
    std::ifstream in(opt.coeffs_path);
    if (!in) {
      std::cerr << "bohrfrac: cannot read '" << opt.coeffs_path << "'\n";
      return kExitIo;
    }
    bohrfrac::FracPowerSeries s = bohrfrac::parse_coeff_stream(in);
    bohrfrac::FracPowerSeries t = integral
                                      ? bohrfrac::frac_integral(s, opt.alpha)
                                      : bohrfrac::frac_derivative(s, opt.alpha);
    value = bohrfrac::bohr_majorant(t, opt.r);
    tail = 0.0;  // finite coefficient list, nothing dropped
  }

  std::ostringstream os;
  if (opt.format == "json") {
    os << "{\"majorant\": " << fmt_sig(value, 12) << ", \"tail_bound\": "
       << fmt_sig(tail, 12) << ", \"alpha\": " << fmt_sig(opt.alpha, 12)
       << ", \"r\": " << fmt_sig(opt.r, 12) << ", \"direction\": \""
       << opt.direction << "\"}\n";
  } else if (opt.format == "csv") {
    os << "majorant,tail_bound,alpha,r,direction\n"
       << fmt_sig(value, 12) << ',' << fmt_sig(tail, 12) << ','
       << fmt_sig(opt.alpha, 12) << ',' << fmt_sig(opt.r, 12) << ','
       << opt.direction << '\n';
  } else {
    os << "majorant   " << fmt_sig(value, 6) << '\n'
       << "tail_bound " << fmt_sig(tail, 6) << '\n';
  }
  return emit(os.str(), opt.out_path);
}

int cmd_verify(const Options& opt) {
  std::vector<bohrfrac::verify::ReportRow> rows =
      bohrfrac::verify::reproduce_tables(opt.tolerance);
  std::vector<bohrfrac::verify::ProbeReport> probes =
      bohrfrac::verify::run_all_probes();

  bool probes_ok = true;
  for (const auto& p : probes) {
    probes_ok = probes_ok && p.holds_below && p.violated_above;
  }
  bool gate = bohrfrac::verify::report_gate(rows) && probes_ok;

  std::string body;
  if (opt.format == "json") {
    body = bohrfrac::verify::report_to_json(rows);
  } else if (opt.format == "csv") {
    body = bohrfrac::verify::report_to_csv(rows);
  } else {
    body = bohrfrac::verify::report_to_text(rows) + "\n" +
           bohrfrac::verify::probes_to_text(probes) + "\ngate: " +
           (gate ? "pass" : "FAIL") + "\n";
  }
  int rc = emit(body, opt.out_path);
  if (rc != kExitOk) return rc;
  if (!opt.out_path.empty()) {
    std::cout << "gate: " << (gate ? "pass" : "FAIL") << "\n";
  }
  return gate ? kExitOk : kExitGate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bohr radii for fractional derivatives and integrals of "
               "analytic function classes on the unit disk"};
  app.require_subcommand(1);

  Options opt;
  const std::vector<std::string> formats = {"csv", "json", "text"};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember(formats));
    sub->add_option("--out", opt.out_path, "write output to file");
    sub->add_option("--tol", opt.tol, "root bracket tolerance")
        ->check(CLI::Range(1e-15, 1e-4));
    sub->add_option("--max-terms", opt.max_terms_flag, "series truncation cap");
  };

  CLI::App* radius = app.add_subcommand("radius", "solve one radius problem");
  radius->add_option("--family", opt.family, "radius family")->required();
  radius->add_option("--alpha", opt.alpha, "fractional order")->required();
  radius->add_option("--variant", opt.variant, "analytic rhs convention: stated|tabulated");
  add_common(radius);

  CLI::App* curve = app.add_subcommand("curve", "solve over an alpha grid");
  curve->add_option("--family", opt.family)->required();
  curve->add_option("--variant", opt.variant);
  curve->add_option("--alpha-min", opt.alpha_min)->required();
  curve->add_option("--alpha-max", opt.alpha_max)->required();
  curve->add_option("--steps", opt.steps, "grid points (>= 2)")->required()
      ->check(CLI::Range(2, 1000000));
  add_common(curve);

  CLI::App* majorant = app.add_subcommand("majorant", "Bohr majorant of a transformed series");
  majorant->add_option("--coeffs", opt.coeffs_path, "coefficient file");
  majorant->add_option("--preset", opt.preset, "koebe|half_plane|mobius|shifted_mobius");
  majorant->add_option("--mobius-a", opt.mobius_a, "Moebius parameter a in [0,1)");
  majorant->add_option("--alpha", opt.alpha)->required();
  majorant->add_option("--r", opt.r, "evaluation radius in (0,1)")->required();
  majorant->add_option("--direction", opt.direction, "derivative|integral");
  add_common(majorant);

  CLI::App* verify = app.add_subcommand("verify", "reproduce reference tables + sharpness probes");
  verify->add_option("--tolerance", opt.tolerance, "match tolerance")
      ->check(CLI::Range(1e-12, 1.0));
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (radius->parsed()) return cmd_radius(opt);
    if (curve->parsed()) return cmd_curve(opt);
    if (majorant->parsed()) return cmd_majorant(opt);
    if (verify->parsed()) return cmd_verify(opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "bohrfrac: " << e.what() << '\n';
    return kExitUsage;
  } catch (const bohrfrac::ParseError& e) {
    std::cerr << "bohrfrac: " << e.what() << '\n';
    return kExitParse;
  } catch (const bohrfrac::NoRootError& e) {
    std::cerr << "bohrfrac: " << e.what() << '\n';
    return kExitNoRoot;
  } catch (const bohrfrac::AmbiguityError& e) {
    std::cerr << "bohrfrac: " << e.what() << '\n';
    return kExitNoRoot;
  } catch (const bohrfrac::PrecisionError& e) {
    std::cerr << "bohrfrac: " << e.what() << '\n';
    return kExitNoRoot;
  } catch (const std::domain_error& e) {
    std::cerr << "bohrfrac: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "bohrfrac: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
