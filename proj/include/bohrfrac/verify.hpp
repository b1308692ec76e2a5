#ifndef BOHRFRAC_VERIFY_HPP
#define BOHRFRAC_VERIFY_HPP

#include <string>
#include <utility>
#include <vector>

#include "bohrfrac/radius.hpp"

namespace bohrfrac::verify {

enum class TableId { T1_R, T2_rho, T3_N, T3_K, T4_P, T6_M };

/// Reference table: (alpha, published value) rows transcribed verbatim.
struct TableFixture {
  TableId id;
  Family family;
  std::vector<std::pair<double, double>> rows;
};

const std::vector<TableFixture>& table_fixtures();

enum class RowStatus { match, mismatch, variant_match, error };

struct ReportRow {
  TableId table_id;
  double alpha = 0.0;
  double published = 0.0;
  double computed = 0.0;   // NaN when status == error
  double abs_delta = 0.0;  // NaN when status == error
  RowStatus status = RowStatus::error;
  std::string note;
  // not part of the serialized schema:
  Variant variant = Variant::as_stated;
  bool gating = true;
};

/// One row per fixture entry; the analytic table is evaluated under both
/// right-hand-side conventions (the as_stated rows are expected mismatches
/// and do not gate).  Solver failures surface as status == error rows.
std::vector<ReportRow> reproduce_tables(double tolerance = 2e-4);

/// True when every gating row matched (variant_match counts as a match).
bool report_gate(const std::vector<ReportRow>& rows);

struct ProbeReport {
  Family family = Family::analytic_R;
  Variant variant = Variant::as_stated;
  double alpha = 0.0;
  double margin = 0.05;
  double root = 0.0;
  double r_below = 0.0;
  double r_above = 0.0;
  bool holds_below = false;    // majorant <= bound at r_below for every probe
  bool violated_above = false; // some probe exceeds the bound at r_above
  double witness_a = 0.0;      // Moebius parameter of the violating probe
                               // (NaN for the fixed Koebe/half-plane probes)
  double max_excess_below = 0.0;  // max(majorant - bound) at r_below
  double max_excess_above = 0.0;  // max(majorant - bound) at r_above
};

/// Evaluates the family's extremal majorant just below the computed radius
/// (bound must hold, with the truncation tail charged against it) and at
/// r = root + margin * (1 - root) (some probe must exceed the bound).
/// Moebius-parameter families scan a in {0, 0.05, ..., 0.95}.
ProbeReport sharpness_probe(Family family, Variant variant, double alpha,
                            double margin = 0.05);

/// The probe set run by the verify command: analytic (both conventions),
/// shifted, univalent, convex at alpha in {0.2, 0.5}.
std::vector<ProbeReport> run_all_probes();

const char* table_name(TableId id);
const char* status_name(RowStatus s);

/// Serialization of the reproduction report.  JSON is an array of objects
/// with exactly the fields table_id, alpha, published, computed, abs_delta,
/// status, note; numbers carry 12 significant digits (6 in the text form).
std::string report_to_json(const std::vector<ReportRow>& rows);
std::string report_to_text(const std::vector<ReportRow>& rows);
std::string report_to_csv(const std::vector<ReportRow>& rows);

std::string probes_to_text(const std::vector<ProbeReport>& probes);

}  // namespace bohrfrac::verify

#endif  // BOHRFRAC_VERIFY_HPP
