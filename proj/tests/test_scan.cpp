#include <doctest.h>

#include <json.hpp>
#include <set>

#include "tvlab/enumeration.hpp"
#include "tvlab/scan.hpp"

using namespace tvlab;

namespace {

const char* kLine =
    R"({"n":2,"generators":[[{"exps":[1,0],"coeff":{"scale":1}},{"exps":[0,1],"coeff":{"scale":1}},{"exps":[0,0],"coeff":{"scale":-1}}]]})";

}  // namespace

TEST_CASE("torsion enumeration") {
  std::vector<TorusPoint> pts = torsion_points(1, 3, {});
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].to_string() == "0/1");
  CHECK(pts[1].to_string() == "1/2");
  CHECK(pts[2].to_string() == "1/3");
  CHECK(pts[3].to_string() == "2/3");

  EnumOptions p2;
  p2.p = 2;
  p2.filter = TorsionFilter::PPrimary;
  std::vector<TorusPoint> pp = torsion_points(1, 4, p2);
  std::set<std::string> seen;
  for (const auto& p : pp) seen.insert(p.to_string());
  CHECK(seen == std::set<std::string>{"0/1", "1/2", "1/4", "3/4"});

  CHECK(torsion_points(2, 2, {}).size() == 4);

  EnumOptions mixed;
  mixed.p = 2;
  mixed.filter = TorsionFilter::Mixed;
  for (const auto& p : torsion_points(1, 12, mixed)) {
    Int tame;
    unsigned long k = p_valuation(p.order(), 2, &tame);
    CHECK(k > 0);
    CHECK(tame > 1);
  }

  EnumOptions capped;
  capped.p = 2;
  capped.max_p_level = 1;
  for (const auto& p : torsion_points(1, 12, capped)) {
    Int tame;
    CHECK(p_valuation(p.order(), 2, &tame) <= 1);
  }

  // Points are enumerated exactly once.
  std::vector<TorusPoint> all = torsion_points(2, 6, {});
  std::set<std::string> keys;
  for (const auto& p : all) keys.insert(p.to_string());
  CHECK(keys.size() == all.size());
}

TEST_CASE("gap scan on the line") {
  Subvariety x = Subvariety::from_json_text(kLine);
  ScanOptions opts;
  opts.p = 7;
  opts.bound = 12;
  opts.precision = 30;
  ScanReport rep = scan_gap(x, opts);
  CHECK(rep.scanned == rep.rows.size());
  std::set<std::string> members;
  for (const auto& m : rep.members) members.insert(m.to_string());
  CHECK(members == std::set<std::string>{"1/6,5/6", "5/6,1/6"});
  REQUIRE(rep.min_nonmember.has_value());
  CHECK(rep.min_nonmember->kind() == DistanceValue::Kind::Valuation);
  CHECK(rep.min_nonmember->valuation() > 0);
  CHECK(rep.below_precision_count == 0);

  // CSV row count equals the number of scanned points (plus header).
  std::string csv = rep.to_csv();
  size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == rep.scanned + 1);

  // JSON totals are consistent.
  auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["scanned"].get<size_t>() == rep.scanned);
  CHECK(j["member_count"].get<size_t>() == 2);
  CHECK(j["rows"].get<size_t>() == rep.scanned);

  // Determinism.
  ScanReport rep2 = scan_gap(x, opts);
  CHECK(rep.to_csv() == rep2.to_csv());
  CHECK(rep.witness == rep2.witness);

  // Histogram totals match the number of rows.
  size_t hist_total = 0;
  for (const auto& [order, h] : rep.histogram)
    for (const auto& [key, count] : h) hist_total += count;
  CHECK(hist_total == rep.scanned);
}

TEST_CASE("scan reports are identical across worker counts") {
  Subvariety x = Subvariety::from_json_text(kLine);
  ScanOptions one;
  one.p = 7;
  one.bound = 14;
  one.workers = 1;
  one.check_stability = false;
  ScanOptions three = one;
  three.workers = 3;
  ScanReport a = scan_gap(x, one);
  ScanReport b = scan_gap(x, three);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.witness == b.witness);
  REQUIRE(a.min_nonmember.has_value());
  REQUIRE(b.min_nonmember.has_value());
  CHECK(*a.min_nonmember == *b.min_nonmember);
}

TEST_CASE("all-embeddings scan reports the conservative minimum") {
  Subvariety x = Subvariety::from_json_text(kLine);
  ScanOptions base;
  base.p = 7;
  base.bound = 6;
  base.check_stability = false;
  ScanReport plain = scan_gap(x, base);
  ScanOptions all = base;
  all.all_embeddings = true;
  ScanReport conservative = scan_gap(x, all);
  CHECK(plain.members.size() == conservative.members.size());
  REQUIRE(plain.min_nonmember.has_value());
  REQUIRE(conservative.min_nonmember.has_value());
  // The all-embeddings minimum distance can only move up (valuation down).
  CHECK(conservative.min_nonmember->valuation() <= plain.min_nonmember->valuation());
}

TEST_CASE("precision exhaustion is reported per point, scan continues") {
  Subvariety x = Subvariety::from_json_text(kLine);
  ScanOptions opts;
  opts.p = 7;
  opts.bound = 6;
  opts.precision = 1;
  opts.check_stability = false;
  ScanReport rep = scan_gap(x, opts);
  CHECK(rep.scanned > 0);
  CHECK(rep.rows.size() == rep.scanned);
  CHECK(rep.below_precision_count > 0);  // e.g. (1/2,1/3) evaluates to 4*7
  CHECK(rep.members.size() == 2);        // membership stays symbolic
  REQUIRE(rep.min_nonmember.has_value());
  CHECK(rep.min_nonmember->kind() == DistanceValue::Kind::BelowPrecision);
}

TEST_CASE("habegger rows agree across both routes") {
  for (long p : {3L, 5L}) {
    auto rows = habegger_table(p, 4, 30);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
      CHECK(row.ok);
      CHECK(row.v_integer == row.n);  // exact for base 2 at p in {3, 5}
    }
  }
  CHECK_THROWS_AS(habegger_table(2, 4, 30), std::invalid_argument);
  CHECK_THROWS_AS(habegger_table(3, 20, 30), std::invalid_argument);
}
