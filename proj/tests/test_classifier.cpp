#include <catch2/catch_amalgamated.hpp>
#include <set>
#include <sstream>

#include "ocposet/classifier.hpp"
#include "support.hpp"

using namespace ocposet;

namespace {

using Yes = std::set<std::string>;

// Verdicts for the named posets, frozen from first principles:
// each yes is backed by a validated witness, each no by a verified refusal
// (checked again below). Posets with twins inherit the profile of their twin
// quotient, which for 3+1+1, D, Y and Y_dual is exactly 3+1.
const std::map<std::string, Yes>& expected_profiles() {
  static const std::map<std::string, Yes> table = {
      {"2+2", {"CD", "ACD", "BCD", "ABCD"}},
      {"3+1", {"AB", "AC", "AD", "CD", "ABC", "ABD", "ACD", "BCD", "ABCD"}},
      {"4+1", {}},
      {"3+1+1", {"AB", "AC", "AD", "CD", "ABC", "ABD", "ACD", "BCD", "ABCD"}},
      {"H", {"AB", "ABC", "ABD", "BCD", "ABCD"}},
      {"V", {}},
      {"Z", {"AC", "AD", "ABC", "ABD", "ACD", "ABCD"}},
      {"D", {"AB", "AC", "AD", "CD", "ABC", "ABD", "ACD", "BCD", "ABCD"}},
      {"Y", {"AB", "AC", "AD", "CD", "ABC", "ABD", "ACD", "BCD", "ABCD"}},
      {"Y_dual", {"AB", "AC", "AD", "CD", "ABC", "ABD", "ACD", "BCD", "ABCD"}},
      {"X1", {"BCD", "ABCD"}},
      {"X2", {"ACD", "ABCD"}},
      {"X3", {"ABCD"}},
  };
  return table;
}

}  // namespace

TEST_CASE("classifying the named posets") {
  for (const auto& [name, yes] : expected_profiles()) {
    CAPTURE(name);
    auto p = catalog(name);
    auto cp = classify(p);
    for (TypeSet s : TypeSet::all_nonempty()) {
      CAPTURE(s.str());
      REQUIRE(cp.of(s) == (yes.count(s.str()) > 0));
      if (cp.of(s)) {
        REQUIRE(validate(cp.witnesses.at(s.mask()), p, s).ok);
      } else {
        REQUIRE(verify_certificate(p, cp.refusals.at(s.mask())));
      }
    }
  }
}

TEST_CASE("spot witnesses behind the contested verdicts") {
  // H admits a BCD placement (B escapes the all-C forcing at the inner chain)
  Representation h;
  h.allowed = TypeSet::parse("BCD");
  h.intervals = {{"x", {Dyadic(0), IntervalType::D}}, {"y", {Dyadic(1), IntervalType::B}},
                 {"v", {Dyadic(1), IntervalType::C}}, {"z", {Dyadic(2), IntervalType::B}},
                 {"u", {Dyadic(2), IntervalType::D}}, {"w", {Dyadic(3), IntervalType::C}}};
  CHECK(validate(h, catalog("H"), TypeSet::parse("BCD")).ok);

  // 3+1+1 admits a BCD placement once its twins share an interval
  Representation t;
  t.allowed = TypeSet::parse("BCD");
  t.intervals = {{"x", {Dyadic(0), IntervalType::D}}, {"y", {Dyadic(1), IntervalType::B}},
                 {"z", {Dyadic(2), IntervalType::D}}, {"u", {Dyadic(1), IntervalType::C}},
                 {"v", {Dyadic(1), IntervalType::C}}};
  CHECK(validate(t, catalog("3+1+1"), TypeSet::parse("BCD")).ok);

  // D admits an ACD placement the same way (twins y, w at one interval)
  Representation d;
  d.allowed = TypeSet::parse("ACD");
  d.intervals = {{"x", {Dyadic(0), IntervalType::C}}, {"y", {Dyadic(1), IntervalType::C}},
                 {"w", {Dyadic(1), IntervalType::C}}, {"z", {Dyadic(2), IntervalType::C}},
                 {"v", {Dyadic(1), IntervalType::A}}};
  CHECK(validate(d, catalog("D"), TypeSet::parse("ACD")).ok);
}

TEST_CASE("interval order and unit interval order tests") {
  CHECK_FALSE(is_interval_order(catalog("2+2")));
  CHECK(is_interval_order(catalog("3+1")));
  CHECK(is_interval_order(catalog("H")));
  CHECK(is_interval_order(catalog("Z")));
  CHECK_FALSE(is_interval_order(catalog("X1")));
  CHECK_FALSE(is_interval_order(catalog("X2")));

  CHECK_FALSE(is_unit_interval_order(catalog("3+1")));
  CHECK_FALSE(is_unit_interval_order(catalog("2+2")));
  auto chain = Poset::from_relations({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(is_unit_interval_order(chain));
  CHECK(is_interval_order(chain));
  CHECK(is_unit_interval_order(Poset::from_relations({"a", "b", "c"}, {})));

  // the singleton classes are exactly the unit interval orders
  for (int n = 1; n <= 4; ++n)
    for (const auto& p : enumerate_posets(n)) {
      CAPTURE(n, p.strict_pairs());
      auto cp = classify(p);
      REQUIRE(cp.of(TypeSet::parse("A")) == is_unit_interval_order(p));
      REQUIRE(cp.of(TypeSet::parse("BC")) == is_unit_interval_order(p));
    }
}

TEST_CASE("twin-freeness") {
  for (const char* nm : {"2+2", "3+1", "4+1", "H", "V", "Z", "X1", "X2", "X3"}) {
    CAPTURE(nm);
    CHECK(is_twin_free(catalog(nm)));
  }
  for (const char* nm : {"3+1+1", "D", "Y", "Y_dual"}) {
    CAPTURE(nm);
    CHECK_FALSE(is_twin_free(catalog(nm)));
  }
}

TEST_CASE("forbidden-subposet characterization of AB-orders") {
  CHECK(ab_characterization(catalog("H")));
  CHECK(ab_characterization(catalog("3+1")));
  CHECK_FALSE(ab_characterization(catalog("2+2")));   // not an interval order
  CHECK_FALSE(ab_characterization(catalog("Z")));     // contains Z
  CHECK_FALSE(ab_characterization(catalog("4+1")));
  CHECK_FALSE(ab_characterization(catalog("X2")));    // contains 2+2
  // the characterization is defined on twin-free posets only
  CHECK_THROWS_AS(ab_characterization(catalog("Y")), Error);
  CHECK_THROWS_AS(ab_characterization(catalog("3+1+1")), Error);
  try {
    ab_characterization(catalog("D"));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_twin_free);
  }

  // it agrees with the recognizer on every twin-free poset up to n = 5
  for (int n = 1; n <= 5; ++n)
    for (const auto& p : enumerate_posets(n)) {
      if (!is_twin_free(p)) continue;
      CAPTURE(n, p.strict_pairs());
      REQUIRE(ab_characterization(p) == classify(p).of(TypeSet::parse("AB")));
    }
}

TEST_CASE("region labels") {
  CHECK(venn_region(catalog("2+2")) == "2{CD}3{ACD+BCD}");
  CHECK(venn_region(catalog("3+1")) == "2{AB+AC+CD}3{ABC+ACD+BCD}");
  CHECK(venn_region(catalog("H")) == "2{AB}3{ABC+BCD}");
  CHECK(venn_region(catalog("Z")) == "2{AC}3{ABC+ACD}");
  CHECK(venn_region(catalog("X1")) == "2{}3{BCD}");
  CHECK(venn_region(catalog("X3")) == "2{}3{}");
  auto single = Poset::from_relations({"a"}, {});
  CHECK(venn_region(single) == "2{AB+AC+BC+CD}3{ABC+ACD+BCD}");
  CHECK_THROWS_AS(venn_region(catalog("Y")), Error);
}

TEST_CASE("census coherence for small sizes") {
  for (int n : {1, 2, 3}) {
    auto t = census(n);
    CAPTURE(n);
    CHECK(t.discrepancies.empty());
    // below four elements every poset admits every class
    for (const auto& row : t.rows)
      for (TypeSet s : TypeSet::all_nonempty()) REQUIRE(row.verdict[s.mask()]);
  }

  auto t4 = census(4);
  REQUIRE(t4.rows.size() == 16);
  CHECK(t4.discrepancies.empty());
  auto key22 = catalog("2+2").canonical_encoding();
  auto key31 = catalog("3+1").canonical_encoding();
  bool saw22 = false, saw31 = false;
  for (const auto& row : t4.rows) {
    if (row.encoding == key22) {
      saw22 = true;
      CHECK_FALSE(row.verdict[TypeSet::parse("AB").mask()]);
      CHECK(row.verdict[TypeSet::parse("CD").mask()]);
      CHECK_FALSE(row.interval_order);
      CHECK_FALSE(row.unit_interval_order);
      CHECK(row.twin_free);
      REQUIRE(row.region.has_value());
      CHECK(*row.region == "2{CD}3{ACD+BCD}");
      CHECK(row.trichotomy_kind == Trichotomy::Kind::zero_cycles);
      REQUIRE(row.ab.has_value());
      CHECK_FALSE(*row.ab);
    }
    if (row.encoding == key31) {
      saw31 = true;
      CHECK(row.verdict[TypeSet::parse("AB").mask()]);
      CHECK_FALSE(row.verdict[TypeSet::parse("BC").mask()]);
      CHECK(row.interval_order);
      CHECK_FALSE(row.unit_interval_order);
      CHECK(row.trichotomy_kind == Trichotomy::Kind::zero_cycles);
    }
  }
  CHECK(saw22);
  CHECK(saw31);

  auto t5 = census(5);
  CHECK(t5.rows.size() == 63);
  CHECK(t5.discrepancies.empty());
}

TEST_CASE("census filters and threading") {
  auto full = census(4);
  auto tf = census(4, true);
  auto insep = census(4, false, true);
  int tf_count = 0, insep_count = 0;
  for (const auto& row : full.rows) {
    tf_count += row.twin_free ? 1 : 0;
    insep_count += row.inseparable ? 1 : 0;
  }
  CHECK(static_cast<int>(tf.rows.size()) == tf_count);
  CHECK(static_cast<int>(insep.rows.size()) == insep_count);
  for (const auto& row : tf.rows) CHECK(row.twin_free);
  for (const auto& row : insep.rows) CHECK(row.inseparable);

  int regions_total = 0;
  for (const auto& [label, count] : full.region_counts) regions_total += count;
  CHECK(regions_total == tf_count);

  auto parallel = census(4, false, false, 4);
  REQUIRE(parallel.rows.size() == full.rows.size());
  for (std::size_t i = 0; i < full.rows.size(); ++i) {
    REQUIRE(parallel.rows[i].encoding == full.rows[i].encoding);
    REQUIRE(parallel.rows[i].verdict == full.rows[i].verdict);
  }
  CHECK(parallel.discrepancies.empty());
}

TEST_CASE("census csv shape") {
  auto t = census(4);
  auto text = census_csv(t);
  std::istringstream is(text);
  std::string header;
  std::getline(is, header);
  CHECK(header ==
        "poset_id,encoding,n,A,B,C,D,AB,AC,AD,BC,BD,CD,ABC,ABD,ACD,BCD,ABCD,"
        "twin_free,inseparable,interval_order,unit_interval_order,ab_characterization,"
        "trichotomy,region");
  int lines = 0;
  std::string line;
  std::set<std::string> trich;
  while (std::getline(is, line)) {
    ++lines;
    REQUIRE(std::count(line.begin(), line.end(), ',') ==
            std::count(header.begin(), header.end(), ','));
    auto last = line.rfind(',');
    auto prev = line.rfind(',', last - 1);
    trich.insert(line.substr(prev + 1, last - prev - 1));
  }
  CHECK(lines == 16);
  CHECK(trich == std::set<std::string>{"negative", "zero"});  // no positives at n = 4

  CHECK(std::string(trichotomy_name(Trichotomy::Kind::positive_cycle)) == "positive");
  CHECK(std::string(trichotomy_name(Trichotomy::Kind::all_negative)) == "negative");
  CHECK(std::string(trichotomy_name(Trichotomy::Kind::zero_cycles)) == "zero");
}
