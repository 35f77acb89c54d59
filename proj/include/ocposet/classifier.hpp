#pragma once

#include <array>
#include <atomic>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "error.hpp"
#include "forcing.hpp"
#include "interval.hpp"
#include "poset.hpp"
#include "recognizer.hpp"
#include "representation.hpp"

namespace ocposet {

struct ClassProfile {
  std::array<bool, 16> verdict{};  // indexed by TypeSet mask
  std::map<unsigned, Representation> witnesses;
  std::map<unsigned, Certificate> refusals;

  bool of(TypeSet s) const { return verdict[s.mask()]; }
};

// Runs recognize for all 15 non-empty S. The class-level symmetries are
// theorems, so they are asserted on every result instead of being exploited.
inline ClassProfile classify(const Poset& p) {
  ClassProfile cp;
  for (TypeSet s : TypeSet::all_nonempty()) {
    RecognizeResult res = recognize(p, s);
    if (std::holds_alternative<Representation>(res)) {
      cp.verdict[s.mask()] = true;
      cp.witnesses.emplace(s.mask(), std::get<Representation>(std::move(res)));
    } else {
      cp.refusals.emplace(s.mask(), std::get<Certificate>(std::move(res)));
    }
  }
  const unsigned ma = TypeSet::parse("A").mask(), mb = TypeSet::parse("B").mask(),
                 mc = TypeSet::parse("C").mask(), md = TypeSet::parse("D").mask();
  require_internal(cp.verdict[ma] == cp.verdict[mb] && cp.verdict[mb] == cp.verdict[mc] &&
                       cp.verdict[mc] == cp.verdict[md],
                   "singleton class verdicts diverge");
  for (TypeSet s : TypeSet::all_nonempty()) {
    require_internal(cp.verdict[s.mask()] == cp.verdict[s.swap_cd().mask()],
                     "CD-swap symmetry broken");
    if (!cp.verdict[s.mask()]) continue;
    for (TypeSet t : TypeSet::all_nonempty())
      if ((s.mask() & t.mask()) == s.mask())
        require_internal(cp.verdict[t.mask()], "monotonicity broken");
  }
  return cp;
}

inline bool is_interval_order(const Poset& p) {
  return !p.contains_induced(catalog("2+2")).has_value();
}

inline bool is_unit_interval_order(const Poset& p) {
  return !p.contains_induced(catalog("2+2")).has_value() &&
         !p.contains_induced(catalog("3+1")).has_value();
}

inline bool is_twin_free(const Poset& p) {
  for (const auto& cls : p.twin_partition().classes)
    if (cls.size() > 1) return false;
  return true;
}

// Forbidden-subposet characterization of AB-orders for twin-free posets.
inline bool ab_characterization(const Poset& p) {
  if (!is_twin_free(p)) fail(Errc::not_twin_free, "characterization requires a twin-free poset");
  if (!is_interval_order(p)) return false;
  for (const char* f : {"4+1", "3+1+1", "Z", "D", "Y", "Y_dual"})
    if (p.contains_induced(catalog(f)).has_value()) return false;
  return true;
}

// Membership vector over the four size-2 classes and three size-3 classes.
inline std::string region_label(const ClassProfile& cp) {
  auto join = [&](std::initializer_list<const char*> names) {
    std::string out;
    for (const char* nm : names) {
      if (!cp.verdict[TypeSet::parse(nm).mask()]) continue;
      if (!out.empty()) out += '+';
      out += nm;
    }
    return out;
  };
  return "2{" + join({"AB", "AC", "BC", "CD"}) + "}3{" + join({"ABC", "ACD", "BCD"}) + "}";
}

inline std::string venn_region(const Poset& p) {
  if (!is_twin_free(p)) fail(Errc::not_twin_free, "region labels are for twin-free posets");
  return region_label(classify(p));
}

struct CensusRow {
  int poset_id = 0;
  std::string encoding;
  int n = 0;
  std::array<bool, 16> verdict{};
  bool twin_free = false;
  bool inseparable = false;
  bool interval_order = false;
  bool unit_interval_order = false;
  std::optional<bool> ab;  // twin-free rows only
  Trichotomy::Kind trichotomy_kind = Trichotomy::Kind::all_negative;
  std::optional<std::string> region;  // twin-free rows only
};

struct CensusTable {
  std::vector<CensusRow> rows;
  std::map<std::string, int> region_counts;      // over twin-free rows
  std::vector<std::string> discrepancies;        // must stay empty
};

namespace census_detail {

inline void cross_check(const Poset& p, const CensusRow& row, std::vector<std::string>& out) {
  auto add = [&](const std::string& msg) {
    out.push_back("poset " + std::to_string(row.poset_id) + " (n=" + std::to_string(row.n) +
                  "): " + msg);
  };
  auto v = [&](const char* s) { return row.verdict[TypeSet::parse(s).mask()]; };
  for (const char* s : {"A", "B", "C", "D", "BC", "BD"})
    if (v(s) != row.unit_interval_order)
      add(std::string("verdict ") + s + " disagrees with the unit-interval-order test");
  if (row.ab && v("AB") != *row.ab)
    add("verdict AB disagrees with the forbidden-subposet characterization");
  bool all_true = true, all_false = true;
  for (TypeSet s : TypeSet::all_nonempty()) {
    all_true = all_true && row.verdict[s.mask()];
    all_false = all_false && !row.verdict[s.mask()];
  }
  if (row.trichotomy_kind == Trichotomy::Kind::positive_cycle && !all_false)
    add("positive forcing cycle but some class verdict is true");
  if (row.trichotomy_kind == Trichotomy::Kind::all_negative && !all_true)
    add("all forcing cycles negative but some class verdict is false");
  bool has22 = p.contains_induced(catalog("2+2")).has_value();
  bool hasZ = p.contains_induced(catalog("Z")).has_value();
  bool hasH = p.contains_induced(catalog("H")).has_value();
  if (v("CD") && !has22 && !(v("AB") && v("AC"))) add("CD-order without 2+2 must be AB and AC");
  if (v("AC") && !hasZ && !(v("AB") && v("CD"))) add("AC-order without Z must be AB and CD");
  if (v("AB") && !hasH && !(v("CD") && v("AC"))) add("AB-order without H must be CD and AC");
}

}  // namespace census_detail

// Classifies every isomorphism class with exactly n elements and cross-checks
// each verdict against the independent characterizations.
inline CensusTable census(int n, bool twin_free_only = false, bool inseparable_only = false,
                          int threads = 1) {
  std::vector<Poset> all = enumerate_posets(n);
  std::vector<CensusRow> rows(all.size());
  std::vector<std::vector<std::string>> discs(all.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= all.size()) return;
      const Poset& p = all[i];
      CensusRow& row = rows[i];
      row.poset_id = static_cast<int>(i);
      row.encoding = p.canonical_encoding();
      row.n = p.size();
      ClassProfile cp = classify(p);
      row.verdict = cp.verdict;
      row.twin_free = is_twin_free(p);
      row.inseparable = p.block_decomposition().blocks.size() == 1;
      row.interval_order = is_interval_order(p);
      row.unit_interval_order = is_unit_interval_order(p);
      if (row.twin_free) {
        row.ab = ab_characterization(p);
        row.region = region_label(cp);
      }
      row.trichotomy_kind = trichotomy(p).kind;
      census_detail::cross_check(p, row, discs[i]);
    }
  };
  if (threads < 1) threads = 1;
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  CensusTable out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (twin_free_only && !rows[i].twin_free) continue;
    if (inseparable_only && !rows[i].inseparable) continue;
    if (rows[i].region) ++out.region_counts[*rows[i].region];
    for (auto& d : discs[i]) out.discrepancies.push_back(std::move(d));
    out.rows.push_back(std::move(rows[i]));
  }
  return out;
}

inline const char* trichotomy_name(Trichotomy::Kind k) {
  switch (k) {
    case Trichotomy::Kind::positive_cycle: return "positive";
    case Trichotomy::Kind::all_negative: return "negative";
    case Trichotomy::Kind::zero_cycles: return "zero";
  }
  return "?";
}

inline std::string census_csv(const CensusTable& table) {
  std::ostringstream os;
  os << "poset_id,encoding,n";
  for (TypeSet s : TypeSet::all_nonempty()) os << ',' << s.str();
  os << ",twin_free,inseparable,interval_order,unit_interval_order,ab_characterization,"
        "trichotomy,region\n";
  for (const CensusRow& r : table.rows) {
    os << r.poset_id << ',' << r.encoding << ',' << r.n;
    for (TypeSet s : TypeSet::all_nonempty()) os << ',' << (r.verdict[s.mask()] ? 1 : 0);
    os << ',' << (r.twin_free ? 1 : 0) << ',' << (r.inseparable ? 1 : 0) << ','
       << (r.interval_order ? 1 : 0) << ',' << (r.unit_interval_order ? 1 : 0) << ','
       << (r.ab ? (*r.ab ? "1" : "0") : "-") << ',' << trichotomy_name(r.trichotomy_kind) << ','
       << (r.region ? *r.region : "-") << '\n';
  }
  return os.str();
}

}  // namespace ocposet
