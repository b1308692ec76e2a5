#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "json.hpp"

#include "bohrfrac/verify.hpp"

using namespace bohrfrac;
using namespace bohrfrac::verify;

TEST_CASE("fixtures carry the published rows verbatim") {
  const auto& fx = table_fixtures();
  REQUIRE(fx.size() == 6);
  CHECK(fx[0].id == TableId::T1_R);
  CHECK(fx[0].rows.size() == 5);
  CHECK(fx[1].rows.size() == 5);
  CHECK(fx[2].rows.size() == 6);
  CHECK(fx[3].rows.size() == 6);
  CHECK(fx[4].rows.size() == 6);
  CHECK(fx[5].rows.size() == 6);

  CHECK(fx[1].rows[2] == std::pair<double, double>{0.5, 0.26004});
  CHECK(fx[3].rows[3] == std::pair<double, double>{0.3, 0.07377});
  CHECK(fx[5].rows[4] == std::pair<double, double>{0.8, 0.160589});
}

TEST_CASE("reproduce_tables: completeness and statuses") {
  auto rows = reproduce_tables();
  // 5 alphas twice for the analytic table + 5+6+6+6+6
  REQUIRE(rows.size() == 39);

  int stated_rows = 0, tabulated_rows = 0;
  for (const ReportRow& r : rows) {
    if (r.table_id != TableId::T1_R) {
      CHECK(r.status == RowStatus::match);
      CHECK(r.gating);
      CHECK(r.abs_delta <= 2e-4);
      continue;
    }
    if (r.variant == Variant::as_tabulated) {
      ++tabulated_rows;
      CHECK(r.status == RowStatus::variant_match);
      CHECK(r.gating);
    } else {
      ++stated_rows;
      CHECK(!r.gating);
      if (r.alpha == 0.0) {
        CHECK(r.status == RowStatus::match);  // conventions coincide at 0
      } else {
        CHECK(r.status == RowStatus::mismatch);
      }
    }
  }
  CHECK(stated_rows == 5);
  CHECK(tabulated_rows == 5);
  CHECK(report_gate(rows));
}

TEST_CASE("the as_stated analytic row at alpha=0.2 computes near 0.278") {
  auto rows = reproduce_tables();
  bool found = false;
  for (const ReportRow& r : rows) {
    if (r.table_id == TableId::T1_R && r.variant == Variant::as_stated &&
        r.alpha == 0.2) {
      found = true;
      CHECK(std::abs(r.computed - 0.2780129197574790) <= 1e-6);
      CHECK(r.status == RowStatus::mismatch);
      CHECK(std::abs(r.published - 0.30841) <= 1e-12);
    }
  }
  CHECK(found);
}

TEST_CASE("squared_N rows note roots below 1/2") {
  auto rows = reproduce_tables();
  for (const ReportRow& r : rows) {
    if (r.table_id == TableId::T3_N && r.alpha > 0.0) {
      CHECK(r.note.find("root below 1/2") != std::string::npos);
    }
  }
}

TEST_CASE("reports are deterministic bit-for-bit") {
  auto a = reproduce_tables();
  auto b = reproduce_tables();
  CHECK(report_to_json(a) == report_to_json(b));
  CHECK(report_to_csv(a) == report_to_csv(b));
  CHECK(report_to_text(a) == report_to_text(b));
}

TEST_CASE("report JSON parses and exposes exactly the schema fields") {
  auto rows = reproduce_tables();
  nlohmann::json doc = nlohmann::json::parse(report_to_json(rows));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == rows.size());
  const std::set<std::string> expect = {"table_id", "alpha",  "published",
                                        "computed", "abs_delta", "status",
                                        "note"};
  for (const auto& obj : doc) {
    std::set<std::string> keys;
    for (auto it = obj.begin(); it != obj.end(); ++it) keys.insert(it.key());
    CHECK(keys == expect);
  }
  CHECK(doc[0]["table_id"] == "T1_R");
}

TEST_CASE("report CSV header matches the schema") {
  auto rows = reproduce_tables();
  std::string csv = report_to_csv(rows);
  CHECK(csv.rfind("table_id,alpha,published,computed,abs_delta,status,note\n",
                  0) == 0);
}

TEST_CASE("sharpness probe: convex family at the classical limit") {
  ProbeReport rep = sharpness_probe(Family::convex_P, Variant::as_stated, 0.0);
  CHECK(std::abs(rep.root - 1.0 / 3.0) <= 1e-9);
  CHECK(rep.holds_below);
  CHECK(rep.violated_above);
  // half-plane majorant r/(1-r) against the distance 1/2
  CHECK(std::abs(rep.max_excess_below) <= 1e-6);
  CHECK(rep.max_excess_above > 0.01);
}

TEST_CASE("sharpness probe: univalent family rides the Koebe function") {
  ProbeReport rep = sharpness_probe(Family::univalent_K, Variant::as_stated, 0.0);
  CHECK(std::abs(rep.root - (3.0 - 2.0 * std::sqrt(2.0))) <= 1e-9);
  CHECK(rep.holds_below);
  CHECK(rep.violated_above);
  CHECK(std::isnan(rep.witness_a));
}

TEST_CASE("sharpness probe: analytic family finds a Moebius witness") {
  for (Variant v : {Variant::as_stated, Variant::as_tabulated}) {
    ProbeReport rep = sharpness_probe(Family::analytic_R, v, 0.5);
    CHECK(rep.holds_below);
    CHECK(rep.violated_above);
    CHECK(rep.witness_a >= 0.7);
  }
}

TEST_CASE("sharpness probe rejects families without an extremal probe") {
  CHECK_THROWS_AS(sharpness_probe(Family::squared_N, Variant::as_stated, 0.2),
                  std::domain_error);
  CHECK_THROWS_AS(sharpness_probe(Family::bloch_M, Variant::as_stated, 0.2),
                  std::domain_error);
}

TEST_CASE("the full probe set passes") {
  auto probes = run_all_probes();
  REQUIRE(probes.size() == 10);
  for (const ProbeReport& p : probes) {
    CAPTURE(family_name(p.family));
    CAPTURE(p.alpha);
    CHECK(p.holds_below);
    CHECK(p.violated_above);
  }
  std::string text = probes_to_text(probes);
  CHECK(text.find("analytic") != std::string::npos);
  CHECK(text.find("tabulated") != std::string::npos);
}
