#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dyadic.hpp"
#include "error.hpp"
#include "interval.hpp"
#include "poset.hpp"

namespace ocposet {

using TypeMap = std::map<std::string, IntervalType>;

struct CenterGroup {
  Dyadic center;
  std::vector<std::string> members;  // ordered by first occurrence along the pinning cycle
};

namespace assign_detail {

// All ordered sequences of `len` distinct types from s, lexicographic.
inline std::vector<std::vector<IntervalType>> assignments(TypeSet s, int len) {
  std::vector<std::vector<IntervalType>> out;
  auto types = s.types();
  std::vector<IntervalType> cur;
  std::vector<char> used(types.size(), 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      cur.push_back(types[i]);
      self(self);
      cur.pop_back();
      used[i] = 0;
    }
  };
  rec(rec);
  return out;
}

struct Level {
  Dyadic center;
  std::vector<int> members;  // q element ids in group order
  std::vector<std::vector<IntervalType>> nodes;
  std::vector<char> alive;
  std::vector<std::vector<int>> back;  // per node, ascending indices into previous level
};

// Group q's elements by pinned center; consecutive occupied centers must be
// exactly 1 apart. Returns nullopt at the t_j > |S| gate.
inline std::optional<std::vector<Level>> build_levels(const Poset& q,
                                                      const std::map<std::string, Dyadic>& centers,
                                                      TypeSet s,
                                                      const std::vector<std::string>& member_order) {
  if (q.size() == 0) fail(Errc::empty_input, "no elements to type");
  if (static_cast<int>(centers.size()) != q.size())
    fail(Errc::element_mismatch, "centers do not cover the poset exactly");
  std::map<Dyadic, std::vector<int>> groups;
  for (int i = 0; i < q.size(); ++i) {
    auto it = centers.find(q.name(i));
    if (it == centers.end()) fail(Errc::element_mismatch, "no center for '" + q.name(i) + "'");
    groups[it->second].push_back(i);
  }
  std::map<int, int> rank;  // element id -> position in member_order
  for (std::size_t k = 0; k < member_order.size(); ++k)
    rank.emplace(q.index(member_order[k]), static_cast<int>(k));
  std::vector<Level> levels;
  const Dyadic* prev = nullptr;
  for (auto& [c, members] : groups) {
    if (prev && c - *prev != Dyadic(1))
      fail(Errc::center_gap_invalid, "occupied centers " + prev->str() + " and " + c.str() +
                                         " are not exactly 1 apart");
    prev = &c;
    std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
      auto ra = rank.find(a), rb = rank.find(b);
      if (ra != rank.end() && rb != rank.end()) return ra->second < rb->second;
      if (ra != rank.end() || rb != rank.end()) return ra != rank.end();
      return a < b;
    });
    if (static_cast<int>(members.size()) > s.size()) return std::nullopt;
    Level lv;
    lv.center = c;
    lv.members = members;
    lv.nodes = assignments(s, static_cast<int>(members.size()));
    lv.alive.assign(lv.nodes.size(), 1);
    lv.back.assign(lv.nodes.size(), {});
    levels.push_back(std::move(lv));
  }
  return levels;
}

// Same-center pairs are incomparable for any types; a comparable pair inside
// one level dooms every assignment of that level.
inline bool level_internally_ok(const Poset& q, const Level& lv) {
  for (std::size_t i = 0; i < lv.members.size(); ++i)
    for (std::size_t j = i + 1; j < lv.members.size(); ++j)
      if (q.comparable(lv.members[i], lv.members[j])) return false;
  return true;
}

inline bool cross_compatible(const Poset& q, const Level& lo, const std::vector<IntervalType>& tlo,
                             const Level& hi, const std::vector<IntervalType>& thi) {
  for (std::size_t i = 0; i < lo.members.size(); ++i)
    for (std::size_t j = 0; j < hi.members.size(); ++j) {
      int a = lo.members[i], b = hi.members[j];
      bool rep_before = gap_one_before(tlo[i], thi[j]);
      if (rep_before != q.less(a, b)) return false;
      if (q.less(b, a)) return false;  // wrong direction can never be realized
    }
  return true;
}

// Runs the sweep; true iff a surviving node remains at the top level.
inline bool sweep(const Poset& q, std::vector<Level>& levels) {
  for (auto& lv : levels)
    if (!level_internally_ok(q, lv)) return false;
  for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
    Level& a = levels[j];
    Level& b = levels[j + 1];
    for (std::size_t nb = 0; nb < b.nodes.size(); ++nb)
      for (std::size_t na = 0; na < a.nodes.size(); ++na)
        if (a.alive[na] && cross_compatible(q, a, a.nodes[na], b, b.nodes[nb]))
          b.back[nb].push_back(static_cast<int>(na));
    bool any = false;
    for (std::size_t nb = 0; nb < b.nodes.size(); ++nb) {
      b.alive[nb] = !b.back[nb].empty();
      any = any || b.alive[nb];
    }
    if (!any) return false;
  }
  return true;
}

}  // namespace assign_detail

// Compatibility of two typed groups at consecutive centers.
inline bool compatible(const Poset& q, const CenterGroup& g1,
                       const std::vector<IntervalType>& t1, const CenterGroup& g2,
                       const std::vector<IntervalType>& t2) {
  if (g2.center - g1.center != Dyadic(1))
    fail(Errc::center_gap_invalid, "groups are not at consecutive centers");
  if (t1.size() != g1.members.size() || t2.size() != g2.members.size())
    fail(Errc::element_mismatch, "assignment length does not match group size");
  assign_detail::Level a, b;
  a.center = g1.center;
  b.center = g2.center;
  for (const auto& m : g1.members) a.members.push_back(q.index(m));
  for (const auto& m : g2.members) b.members.push_back(q.index(m));
  return assign_detail::level_internally_ok(q, a) && assign_detail::level_internally_ok(q, b) &&
         assign_detail::cross_compatible(q, a, t1, b, t2);
}

// Procedure sweep deciding whether q admits an S-typing at the pinned centers;
// on success returns the lexicographically smallest witness along back-links.
inline std::optional<TypeMap> assign_types(const Poset& q,
                                           const std::map<std::string, Dyadic>& centers, TypeSet s,
                                           const std::vector<std::string>& member_order = {}) {
  if (s.empty()) fail(Errc::empty_type_set, "no allowed types");
  auto levels = assign_detail::build_levels(q, centers, s, member_order);
  if (!levels) return std::nullopt;
  if (!assign_detail::sweep(q, *levels)) return std::nullopt;
  TypeMap out;
  int pick = -1;
  for (std::size_t j = levels->size(); j-- > 0;) {
    assign_detail::Level& lv = (*levels)[j];
    if (pick < 0) {  // top level: first survivor is lexicographically least
      for (std::size_t nb = 0; nb < lv.nodes.size(); ++nb)
        if (lv.alive[nb]) {
          pick = static_cast<int>(nb);
          break;
        }
    }
    for (std::size_t i = 0; i < lv.members.size(); ++i)
      out[q.name(lv.members[i])] = lv.nodes[pick][i];
    pick = j > 0 ? lv.back[pick].front() : -1;
  }
  return out;
}

// Back-walk path count from surviving top-level nodes down to the bottom.
inline std::uint64_t assign_path_count(const Poset& q,
                                       const std::map<std::string, Dyadic>& centers, TypeSet s,
                                       const std::vector<std::string>& member_order = {}) {
  auto levels = assign_detail::build_levels(q, centers, s, member_order);
  if (!levels) return 0;
  if (!assign_detail::sweep(q, *levels)) return 0;
  std::vector<std::uint64_t> count((*levels)[0].nodes.size(), 1);
  for (std::size_t j = 1; j < levels->size(); ++j) {
    assign_detail::Level& lv = (*levels)[j];
    std::vector<std::uint64_t> next(lv.nodes.size(), 0);
    for (std::size_t nb = 0; nb < lv.nodes.size(); ++nb)
      for (int na : lv.back[nb]) next[nb] += count[na];
    count = std::move(next);
  }
  std::uint64_t total = 0;
  auto& top = levels->back();
  for (std::size_t nb = 0; nb < top.nodes.size(); ++nb)
    if (top.alive[nb]) total += count[nb];
  return total;
}

// Independent oracle: try every |S|^|Q| type function and validate directly.
inline std::optional<TypeMap> brute_force_types(const Poset& q,
                                                const std::map<std::string, Dyadic>& centers,
                                                TypeSet s) {
  if (s.empty()) fail(Errc::empty_type_set, "no allowed types");
  if (q.size() == 0) fail(Errc::empty_input, "no elements to type");
  if (q.size() > 12) fail(Errc::size_limit_exceeded, "brute force capped at 12 elements");
  if (static_cast<int>(centers.size()) != q.size())
    fail(Errc::element_mismatch, "centers do not cover the poset exactly");
  std::vector<Dyadic> c(q.size());
  for (int i = 0; i < q.size(); ++i) {
    auto it = centers.find(q.name(i));
    if (it == centers.end()) fail(Errc::element_mismatch, "no center for '" + q.name(i) + "'");
    c[i] = it->second;
  }
  auto types = s.types();
  std::vector<std::size_t> pick(q.size(), 0);
  while (true) {
    bool ok = true;
    for (int i = 0; ok && i < q.size(); ++i)
      for (int j = 0; ok && j < q.size(); ++j) {
        if (i == j) continue;
        PlacedInterval a{c[i], types[pick[i]]}, b{c[j], types[pick[j]]};
        if (precedes(a, b) != q.less(i, j)) ok = false;
      }
    if (ok) {
      TypeMap out;
      for (int i = 0; i < q.size(); ++i) out[q.name(i)] = types[pick[i]];
      return out;
    }
    std::size_t d = pick.size();
    while (d-- > 0) {
      if (++pick[d] < types.size()) break;
      pick[d] = 0;
      if (d == 0) return std::nullopt;
    }
  }
}

}  // namespace ocposet
