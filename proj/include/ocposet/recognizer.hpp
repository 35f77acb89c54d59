#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "assign_types.hpp"
#include "dyadic.hpp"
#include "error.hpp"
#include "forcing.hpp"
#include "interval.hpp"
#include "poset.hpp"
#include "representation.hpp"

namespace ocposet {

struct NsReport {
  bool lo_changed = false;
  bool hi_changed = false;
  bool changed() const { return lo_changed || hi_changed; }
};

// One pass of the core labeling algorithm. Locals index into `active`;
// active[0] is the pass anchor whose center is pinned to `base`.
struct PassState {
  const Poset* p = nullptr;
  int pass = 0;
  std::vector<int> active;       // element ids, anchor first
  Dyadic base;
  std::vector<Dyadic> lo, hi;    // center bounds by local index
  std::vector<int> f, g;         // local that last raised lo / lowered hi, -1 if none
  std::vector<std::uint8_t> done;  // k*k pair matrix, 1 = examined and stable
  std::set<int> pending;         // linear i*k+j of unexamined pairs, i,j >= 1
};

inline PassState start_pass(const Poset& bp, int pass, std::vector<int> active, Dyadic base,
                            const std::vector<Dyadic>& lo_by_id,
                            const std::vector<Dyadic>& hi_by_id) {
  if (active.empty()) fail(Errc::empty_input, "pass needs at least one active element");
  PassState st;
  st.p = &bp;
  st.pass = pass;
  st.active = std::move(active);
  st.base = base;
  int k = static_cast<int>(st.active.size());
  st.lo.resize(k);
  st.hi.resize(k);
  for (int t = 0; t < k; ++t) {
    st.lo[t] = lo_by_id.at(st.active[t]);
    st.hi[t] = hi_by_id.at(st.active[t]);
  }
  st.lo[0] = st.hi[0] = base;
  st.f.assign(k, -1);
  st.g.assign(k, -1);
  st.done.assign(static_cast<std::size_t>(k) * k, 1);
  for (int i = 1; i < k; ++i)
    for (int j = 1; j < k; ++j)
      if (i != j) {
        st.done[i * k + j] = 0;
        st.pending.insert(i * k + j);
      }
  return st;
}

inline PassState start_pass(const Poset& bp, int pass, const std::vector<int>& active,
                            Dyadic base) {
  std::vector<Dyadic> lo(bp.size(), Dyadic(-(bp.size() + 1)));
  std::vector<Dyadic> hi(bp.size(), Dyadic(bp.size() + 1));
  return start_pass(bp, pass, active, base, lo, hi);
}

// Narrowing rules 1-4 for source i against target j. After a bound's first
// change within a pass, every further move is by at least 1; asserted here.
inline NsReport narrowing_step(PassState& st, int i, int j) {
  const Poset& p = *st.p;
  int a = st.active[i], b = st.active[j];
  NsReport r;
  if (p.less(a, b)) {
    Dyadic cand = st.lo[i] + Dyadic(1);
    if (st.lo[j] < cand) {
      require_internal(st.f[j] == -1 || cand - st.lo[j] >= Dyadic(1), "lower bound crept");
      st.lo[j] = cand;
      st.f[j] = i;
      r.lo_changed = true;
    }
  } else if (p.less(b, a)) {
    Dyadic cand = st.hi[i] - Dyadic(1);
    if (st.hi[j] > cand) {
      require_internal(st.g[j] == -1 || st.hi[j] - cand >= Dyadic(1), "upper bound crept");
      st.hi[j] = cand;
      st.g[j] = i;
      r.hi_changed = true;
    }
  } else if (a != b) {
    Dyadic cl = st.lo[i] - Dyadic(1);
    if (st.lo[j] < cl) {
      require_internal(st.f[j] == -1 || cl - st.lo[j] >= Dyadic(1), "lower bound crept");
      st.lo[j] = cl;
      st.f[j] = i;
      r.lo_changed = true;
    }
    Dyadic ch = st.hi[i] + Dyadic(1);
    if (st.hi[j] > ch) {
      require_internal(st.g[j] == -1 || st.hi[j] - ch >= Dyadic(1), "upper bound crept");
      st.hi[j] = ch;
      st.g[j] = i;
      r.hi_changed = true;
    }
  }
  return r;
}

// Anchor sweep run once at the start of each pass; reports a violated local.
inline std::optional<int> init_sweep(PassState& st) {
  for (int j = 1; j < static_cast<int>(st.active.size()); ++j) {
    narrowing_step(st, 0, j);
    if (st.lo[j] > st.hi[j]) return j;
  }
  return std::nullopt;
}

struct LoopResult {
  std::optional<int> violated;  // local with lo > hi, if the pass failed
  std::vector<int> fixed;       // locals with lo == hi at the fixpoint
};

// Drains the pending pair set smallest-(i,j) first; a change reopens row j
// and column j.
inline LoopResult labeling_loop(PassState& st) {
  int k = static_cast<int>(st.active.size());
  while (!st.pending.empty()) {
    int lin = *st.pending.begin();
    int i = lin / k, j = lin % k;
    NsReport r = narrowing_step(st, i, j);
    if (!r.changed()) {
      st.done[lin] = 1;
      st.pending.erase(st.pending.begin());
      continue;
    }
    if (st.lo[j] > st.hi[j]) return {j, {}};
    for (int t = 1; t < k; ++t) {
      if (t == j) continue;
      for (int lin2 : {j * k + t, t * k + j})
        if (st.done[lin2]) {
          st.done[lin2] = 0;
          st.pending.insert(lin2);
        }
    }
  }
  LoopResult out;
  for (int t = 0; t < k; ++t)
    if (st.lo[t] == st.hi[t]) out.fixed.push_back(t);
  return out;
}

// Rebuilds a positive forcing cycle from the f/g provenance chains after a
// bound violation at local jm.
inline Certificate trace_certificate(const PassState& st, int jm) {
  const Poset& p = *st.p;
  auto to_ids = [&](const std::vector<int>& locals) {
    std::vector<int> ids;
    for (int l : locals) ids.push_back(st.active[l]);
    return ids;
  };
  auto cycle_from = [&](const std::vector<int>& locals) -> Certificate {
    ForcingTrail cyc = forcing_detail::trail_from_ids(p, to_ids(locals));
    if (trail_value(p, cyc) <= 0) fail(Errc::internal_trace_broken, "traced cycle not positive");
    return PositiveCycleCert{std::move(cyc)};
  };

  std::vector<int> down;  // anchor ... jm, following f ancestry (arcs f(w) -> w)
  if (st.f[jm] != -1) {
    std::vector<int> pos(st.active.size(), -1);
    std::vector<int> w{jm};
    pos[jm] = 0;
    while (true) {
      int nxt = st.f[w.back()];
      if (nxt == -1) break;
      if (pos[nxt] != -1) {
        std::vector<int> cyc{nxt};
        for (std::size_t s = w.size(); s-- > static_cast<std::size_t>(pos[nxt]);)
          cyc.push_back(w[s]);
        return cycle_from(cyc);
      }
      pos[nxt] = static_cast<int>(w.size());
      w.push_back(nxt);
    }
    if (w.back() != 0) fail(Errc::internal_trace_broken, "lower-bound chain misses the anchor");
    down.assign(w.rbegin(), w.rend());
  }

  std::vector<int> up;  // jm ... anchor, following g forward (arcs w -> g(w))
  if (st.g[jm] != -1) {
    std::vector<int> pos(st.active.size(), -1);
    std::vector<int> w{jm};
    pos[jm] = 0;
    while (true) {
      int nxt = st.g[w.back()];
      if (nxt == -1) break;
      if (pos[nxt] != -1) {
        std::vector<int> cyc(w.begin() + pos[nxt], w.end());
        cyc.push_back(nxt);
        return cycle_from(cyc);
      }
      pos[nxt] = static_cast<int>(w.size());
      w.push_back(nxt);
    }
    if (w.back() != 0) fail(Errc::internal_trace_broken, "upper-bound chain misses the anchor");
    up = w;
  }

  if (down.empty() || up.empty())
    fail(Errc::internal_trace_broken, "violation lacks a closable provenance cycle");
  std::vector<int> cyc = down;
  cyc.insert(cyc.end(), up.begin() + 1, up.end());
  return cycle_from(cyc);
}

// True when the relation between x and y is forced by the centers alone,
// independent of which types they get.
inline bool type_independent(const std::string& x, const std::string& y, const Dyadic& cx,
                             const Dyadic& cy, const Poset& p) {
  int a = p.index(x), b = p.index(y);
  if (p.less(a, b)) return cx + Dyadic(1) < cy;
  if (p.less(b, a)) return cy + Dyadic(1) < cx;
  Dyadic d = cx < cy ? cy - cx : cx - cy;
  return d < Dyadic(1);
}

struct RecognizeTrace {
  int blocks = 0;
  int passes = 0;       // across all blocks
  int assign_calls = 0;
  bool late_pass_failure = false;  // a bound violation in some pass r >= 1
  std::map<std::string, std::pair<int, int>> fixed_in;  // element -> {block, pass}
};

using RecognizeResult = std::variant<Representation, Certificate>;

namespace recognize_detail {

// Multi-pass core on one inseparable twin-free block.
inline RecognizeResult core(const Poset& bp, TypeSet s, int block_index, RecognizeTrace* trace) {
  int n = bp.size();
  std::vector<Dyadic> lo(n, Dyadic(-(n + 1))), hi(n, Dyadic(n + 1));
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  std::map<int, Dyadic> centers;
  std::map<int, IntervalType> types;
  int pass = 0;
  while (!active.empty()) {
    int v0 = active.front();
    Dyadic base = pass == 0 ? Dyadic(0) : lo[v0] + Dyadic::half_pow(pass);
    PassState st = start_pass(bp, pass, active, base, lo, hi);
    std::optional<int> violated = init_sweep(st);
    std::vector<int> fixed_locals;
    if (!violated) {
      LoopResult lr = labeling_loop(st);
      violated = lr.violated;
      fixed_locals = std::move(lr.fixed);
    }
    if (violated) {
      if (trace && pass > 0) trace->late_pass_failure = true;
      return trace_certificate(st, *violated);
    }
    for (std::size_t t = 0; t < st.active.size(); ++t) {
      lo[st.active[t]] = st.lo[t];
      hi[st.active[t]] = st.hi[t];
    }
    require_internal(!fixed_locals.empty() && fixed_locals.front() == 0,
                     "pass fixed set misses its anchor");
    std::vector<int> x_ids;
    for (int t : fixed_locals) x_ids.push_back(st.active[t]);
    std::map<std::string, Dyadic> x_centers;
    std::vector<std::string> x_names;
    for (int id : x_ids) {
      x_names.push_back(bp.name(id));
      x_centers.emplace(bp.name(id), lo[id]);
    }
    std::optional<ForcingTrail> cycle;
    std::vector<std::string> order = x_names;
    if (x_ids.size() >= 2) {
      cycle = zero_cycle_through(bp, x_names);
      order.clear();
      std::set<std::string> seen;
      for (const auto& nm : cycle->nodes)
        if (seen.insert(nm).second) order.push_back(nm);
      require_internal(order.size() == x_names.size(), "pinning cycle strays outside the pass");
    }
    Poset q = bp.induced_ids(x_ids);
    auto tm = assign_types(q, x_centers, s, order);
    if (trace) ++trace->assign_calls;
    if (!tm) {
      require_internal(cycle.has_value(), "type assignment cannot fail on a single element");
      return ZeroCycleCert{*cycle, x_centers, s};
    }
    for (int id : x_ids) {
      centers.emplace(id, lo[id]);
      types.emplace(id, tm->at(bp.name(id)));
      if (trace) trace->fixed_in[bp.name(id)] = {block_index, pass};
    }
    if (trace) ++trace->passes;
    std::vector<int> next;
    std::set<int> gone(x_ids.begin(), x_ids.end());
    for (int id : active)
      if (!gone.count(id)) next.push_back(id);
    active = std::move(next);
    ++pass;
  }
  Representation rep;
  rep.allowed = s;
  for (int i = 0; i < n; ++i) rep.intervals.emplace(bp.name(i), PlacedInterval{centers.at(i), types.at(i)});
  return rep;
}

}  // namespace recognize_detail

// Decides whether p is an S-order: a validated representation, or a
// certificate that verifies against p.
inline RecognizeResult recognize(const Poset& p, TypeSet s, RecognizeTrace* trace = nullptr) {
  if (s.empty()) fail(Errc::empty_type_set, "no allowed types");
  Representation empty_rep;
  empty_rep.allowed = s;
  if (p.size() == 0) return empty_rep;
  TwinPartition tp = p.twin_partition();
  std::vector<int> reps = tp.representatives();
  Poset q = p.induced_ids(reps);
  BlockDecomposition bd = q.block_decomposition();
  if (trace) trace->blocks = static_cast<int>(bd.blocks.size());
  std::vector<Representation> parts;
  for (std::size_t b = 0; b < bd.blocks.size(); ++b) {
    Poset bp = q.induced_ids(bd.blocks[b]);
    RecognizeResult res = recognize_detail::core(bp, s, static_cast<int>(b), trace);
    if (std::holds_alternative<Certificate>(res)) return std::get<Certificate>(res);
    parts.push_back(std::get<Representation>(std::move(res)));
  }
  Representation rep = concatenate(parts);
  rep.allowed = s;
  for (const auto& cls : tp.classes) {
    const PlacedInterval& iv = rep.intervals.at(p.name(cls.front()));
    for (std::size_t k = 1; k < cls.size(); ++k) {
      rep.intervals.emplace(p.name(cls[k]), iv);
      if (trace) {
        auto it = trace->fixed_in.find(p.name(cls.front()));
        if (it != trace->fixed_in.end()) trace->fixed_in[p.name(cls[k])] = it->second;
      }
    }
  }
  ValidationReport vr = validate(rep, p, s);
  require_internal(vr.ok, "recognizer produced an invalid representation");
  return rep;
}

}  // namespace ocposet
