#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dyadic.hpp"
#include "error.hpp"
#include "interval.hpp"
#include "poset.hpp"

namespace ocposet {

enum class Step : int { prec = +1, par = -1 };

// Walk x_0 ... x_t where each step is either upward (x_k comes before x_k+1)
// or sideways (incomparable). A cycle is a trail with x_0 = x_t.
struct ForcingTrail {
  std::vector<std::string> nodes;
  std::vector<Step> steps;

  bool closed() const { return !nodes.empty() && nodes.front() == nodes.back(); }
};

// up - side over the whole trail; validates every step against p.
inline int trail_value(const Poset& p, const ForcingTrail& t) {
  if (t.nodes.empty()) fail(Errc::empty_input, "empty trail");
  if (t.steps.size() + 1 != t.nodes.size())
    fail(Errc::invalid_step, "step count does not match node count");
  int val = 0;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    int a = p.index(t.nodes[k]), b = p.index(t.nodes[k + 1]);
    if (t.steps[k] == Step::prec) {
      if (!p.less(a, b))
        fail(Errc::invalid_step, "marked upward but " + t.nodes[k] + " not below " + t.nodes[k + 1]);
      ++val;
    } else {
      if (!p.incomparable(a, b))
        fail(Errc::invalid_step, "marked sideways but " + t.nodes[k] + "," + t.nodes[k + 1] + " comparable");
      --val;
    }
  }
  return val;
}

namespace forcing_detail {

struct Arc {
  int u, v, w;
};

// u -> v weight +1 when u comes before v; both directions weight -1 when
// incomparable. Ordered by (u, v) for determinism.
inline std::vector<Arc> arcs_of(const Poset& p) {
  std::vector<Arc> arcs;
  for (int u = 0; u < p.size(); ++u)
    for (int v = 0; v < p.size(); ++v) {
      if (u == v) continue;
      if (p.less(u, v))
        arcs.push_back({u, v, +1});
      else if (!p.less(v, u))
        arcs.push_back({u, v, -1});
    }
  return arcs;
}

struct LongestPaths {
  bool positive_cycle = false;
  int entry = -1;          // vertex relaxed in the detection round
  std::vector<int> dist;   // longest distance from a virtual 0-arc source
  std::vector<int> pred;
};

inline LongestPaths longest_paths(const Poset& p, const std::vector<Arc>& arcs) {
  int n = p.size();
  LongestPaths lp;
  lp.dist.assign(n, 0);
  lp.pred.assign(n, -1);
  for (int round = 0; round <= n; ++round) {
    bool changed = false;
    for (const Arc& a : arcs) {
      if (lp.dist[a.u] + a.w > lp.dist[a.v]) {
        lp.dist[a.v] = lp.dist[a.u] + a.w;
        lp.pred[a.v] = a.u;
        changed = true;
        lp.entry = a.v;
      }
    }
    if (!changed) return lp;
  }
  lp.positive_cycle = true;
  return lp;
}

inline Step step_between(const Poset& p, int a, int b) {
  if (p.less(a, b)) return Step::prec;
  require_internal(p.incomparable(a, b), "walk step is neither upward nor sideways");
  return Step::par;
}

inline ForcingTrail trail_from_ids(const Poset& p, const std::vector<int>& ids) {
  ForcingTrail t;
  t.nodes.reserve(ids.size());
  for (int v : ids) t.nodes.push_back(p.name(v));
  for (std::size_t k = 0; k + 1 < ids.size(); ++k)
    t.steps.push_back(step_between(p, ids[k], ids[k + 1]));
  return t;
}

inline ForcingTrail extract_positive_cycle(const Poset& p, const LongestPaths& lp) {
  int n = p.size();
  int v = lp.entry;
  for (int i = 0; i < n; ++i) v = lp.pred[v];
  std::vector<int> walk;          // v, pred(v), pred^2(v), ...
  std::vector<char> seen(n, 0);
  int start = v;
  while (!seen[v]) {
    walk.push_back(v);
    seen[v] = 1;
    v = lp.pred[v];
  }
  require_internal(v == start, "predecessor walk left its own cycle");
  std::vector<int> ids;           // forward orientation: arcs run pred(x) -> x
  ids.push_back(start);
  for (std::size_t i = walk.size(); i-- > 1;) ids.push_back(walk[i]);
  ids.push_back(start);
  ForcingTrail cyc = trail_from_ids(p, ids);
  require_internal(trail_value(p, cyc) > 0, "extracted cycle not positive");
  return cyc;
}

struct TightGraph {
  std::vector<std::vector<int>> adj;   // tight out-neighbors, ascending
  std::vector<int> scc;                // component id per vertex
  std::vector<int> scc_size;
};

inline TightGraph tight_graph(const Poset& p, const std::vector<Arc>& arcs,
                              const std::vector<int>& dist) {
  int n = p.size();
  TightGraph tg;
  tg.adj.assign(n, {});
  std::vector<std::vector<int>> radj(n);
  for (const Arc& a : arcs)
    if (dist[a.u] + a.w == dist[a.v]) {
      tg.adj[a.u].push_back(a.v);
      radj[a.v].push_back(a.u);
    }
  // Kosaraju.
  std::vector<int> order;
  std::vector<char> vis(n, 0);
  for (int s = 0; s < n; ++s) {
    if (vis[s]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
    vis[s] = 1;
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      if (i < tg.adj[u].size()) {
        int w = tg.adj[u][i++];
        if (!vis[w]) {
          vis[w] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  tg.scc.assign(n, -1);
  int comp = 0;
  for (std::size_t i = order.size(); i-- > 0;) {
    int s = order[i];
    if (tg.scc[s] >= 0) continue;
    std::vector<int> stack{s};
    tg.scc[s] = comp;
    int sz = 0;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      ++sz;
      for (int w : radj[u])
        if (tg.scc[w] < 0) {
          tg.scc[w] = comp;
          stack.push_back(w);
        }
    }
    tg.scc_size.push_back(sz);
    ++comp;
  }
  return tg;
}

// Unique path to `to` in the BFS tree over tight arcs, excluding the start
// node itself from the returned list.
inline std::optional<std::vector<int>> bfs_path(const TightGraph& tg, int from, int to) {
  int n = static_cast<int>(tg.adj.size());
  std::vector<int> par(n, -2);
  std::deque<int> q{from};
  par[from] = -1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int w : tg.adj[u])
      if (par[w] == -2) {
        par[w] = u;
        if (w == to) {
          std::vector<int> path;
          for (int x = to; x != from; x = par[x]) path.push_back(x);
          std::reverse(path.begin(), path.end());
          return path;
        }
        q.push_back(w);
      }
  }
  return std::nullopt;
}

// Shortest closed tight walk through base (base appears again at the end).
inline std::optional<std::vector<int>> bfs_loop(const TightGraph& tg, int base) {
  std::optional<std::vector<int>> best;
  for (int w : tg.adj[base]) {
    std::optional<std::vector<int>> tail;
    if (w == base) continue;  // no self-loops exist, defensive
    tail = bfs_path(tg, w, base);
    if (!tail) continue;
    std::vector<int> loop{w};
    loop.insert(loop.end(), tail->begin(), tail->end());
    if (!best || loop.size() < best->size()) best = loop;
  }
  return best;
}

}  // namespace forcing_detail

struct Trichotomy {
  enum class Kind { positive_cycle, all_negative, zero_cycles } kind = Kind::all_negative;
  std::optional<ForcingTrail> witness;   // positive cycle, or one value-0 cycle
  std::vector<std::string> pinned;       // elements lying on some value-0 cycle
};

inline ForcingTrail zero_cycle_through(const Poset& p, const std::vector<std::string>& targets);

// Forcing-cycle trichotomy: a positive cycle, or none and no value-0 cycle
// either, or value-0 cycles whose elements get pinned centers.
inline Trichotomy trichotomy(const Poset& p) {
  Trichotomy out;
  if (p.size() == 0) return out;
  auto arcs = forcing_detail::arcs_of(p);
  auto lp = forcing_detail::longest_paths(p, arcs);
  if (lp.positive_cycle) {
    out.kind = Trichotomy::Kind::positive_cycle;
    out.witness = forcing_detail::extract_positive_cycle(p, lp);
    return out;
  }
  auto tg = forcing_detail::tight_graph(p, arcs, lp.dist);
  for (int v = 0; v < p.size(); ++v)
    if (tg.scc_size[tg.scc[v]] >= 2) out.pinned.push_back(p.name(v));
  if (out.pinned.empty()) return out;
  out.kind = Trichotomy::Kind::zero_cycles;
  out.witness = zero_cycle_through(p, {out.pinned.front()});
  return out;
}

// One value-0 cycle visiting all targets: starts at the smallest-index
// target, walks shortest tight paths to the remaining targets in index order
// (skipping any already visited), then closes back to the base.
inline ForcingTrail zero_cycle_through(const Poset& p, const std::vector<std::string>& targets) {
  if (targets.empty()) fail(Errc::empty_input, "no targets");
  std::vector<int> ids;
  for (const auto& t : targets) ids.push_back(p.index(t));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto arcs = forcing_detail::arcs_of(p);
  auto lp = forcing_detail::longest_paths(p, arcs);
  if (lp.positive_cycle) fail(Errc::no_such_cycle, "poset has a positive forcing cycle");
  auto tg = forcing_detail::tight_graph(p, arcs, lp.dist);
  int base = ids.front();
  for (int t : ids)
    if (tg.scc[t] != tg.scc[base] || tg.scc_size[tg.scc[t]] < 2)
      fail(Errc::no_such_cycle, "'" + p.name(t) + "' lies on no shared value-0 cycle");
  std::vector<int> walk{base};
  std::vector<char> visited(p.size(), 0);
  visited[base] = 1;
  int cur = base;
  for (std::size_t k = 1; k < ids.size(); ++k) {
    int t = ids[k];
    if (visited[t]) continue;
    auto leg = forcing_detail::bfs_path(tg, cur, t);
    if (!leg) fail(Errc::no_such_cycle, "no tight path to '" + p.name(t) + "'");
    for (int v : *leg) {
      walk.push_back(v);
      visited[v] = 1;
    }
    cur = t;
  }
  if (cur == base) {
    auto loop = forcing_detail::bfs_loop(tg, base);
    if (!loop) fail(Errc::no_such_cycle, "'" + p.name(base) + "' lies on no value-0 cycle");
    for (int v : *loop) walk.push_back(v);
  } else {
    auto leg = forcing_detail::bfs_path(tg, cur, base);
    if (!leg) fail(Errc::no_such_cycle, "no tight path closing the cycle");
    for (int v : *leg) walk.push_back(v);
  }
  ForcingTrail cyc = forcing_detail::trail_from_ids(p, walk);
  require_internal(trail_value(p, cyc) == 0, "tight cycle value not zero");
  return cyc;
}

struct PositiveCycleCert {
  ForcingTrail cycle;
};

// A value-0 cycle whose pinned centers admit no type assignment from allowed.
struct ZeroCycleCert {
  ForcingTrail cycle;
  std::map<std::string, Dyadic> centers;
  TypeSet allowed;
};

using Certificate = std::variant<PositiveCycleCert, ZeroCycleCert>;

namespace forcing_detail {

inline void check_cycle_shape(const Poset& p, const ForcingTrail& t) {
  if (t.nodes.empty()) fail(Errc::malformed_certificate, "certificate cycle has no nodes");
  if (t.steps.size() + 1 != t.nodes.size())
    fail(Errc::malformed_certificate, "certificate step/node counts disagree");
  for (const auto& n : t.nodes)
    if (!p.contains(n)) fail(Errc::malformed_certificate, "certificate names unknown '" + n + "'");
  if (t.nodes.front() != t.nodes.back())
    fail(Errc::malformed_certificate, "certificate trail is not closed");
}

inline bool steps_match(const Poset& p, const ForcingTrail& t) {
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    int a = p.index(t.nodes[k]), b = p.index(t.nodes[k + 1]);
    if (t.steps[k] == Step::prec ? !p.less(a, b) : !p.incomparable(a, b)) return false;
  }
  return true;
}

}  // namespace forcing_detail

inline bool verify_certificate(const Poset& p, const Certificate& cert) {
  if (const auto* pc = std::get_if<PositiveCycleCert>(&cert)) {
    forcing_detail::check_cycle_shape(p, pc->cycle);
    if (!forcing_detail::steps_match(p, pc->cycle)) return false;
    int val = 0;
    for (Step s : pc->cycle.steps) val += static_cast<int>(s);
    return val > 0;
  }
  const auto& zc = std::get<ZeroCycleCert>(cert);
  forcing_detail::check_cycle_shape(p, zc.cycle);
  if (zc.allowed.empty()) fail(Errc::malformed_certificate, "certificate allows no types");
  for (const auto& n : zc.cycle.nodes)
    if (!zc.centers.count(n))
      fail(Errc::malformed_certificate, "no pinned center for '" + n + "'");
  if (!forcing_detail::steps_match(p, zc.cycle)) return false;
  int val = 0;
  for (Step s : zc.cycle.steps) val += static_cast<int>(s);
  if (val != 0) return false;
  // Pinning: along a value-0 cycle, centers step by exactly the mark.
  for (std::size_t k = 0; k < zc.cycle.steps.size(); ++k) {
    const Dyadic& a = zc.centers.at(zc.cycle.nodes[k]);
    const Dyadic& b = zc.centers.at(zc.cycle.nodes[k + 1]);
    if (b - a != Dyadic(static_cast<int>(zc.cycle.steps[k]))) return false;
  }
  // No type function over the allowed set may realize p on these elements.
  std::vector<std::string> elems;
  for (const auto& n : zc.cycle.nodes)
    if (std::find(elems.begin(), elems.end(), n) == elems.end()) elems.push_back(n);
  if (elems.size() > 12) fail(Errc::size_limit_exceeded, "zero-cycle brute force capped at 12 elements");
  auto types = zc.allowed.types();
  std::vector<std::size_t> pick(elems.size(), 0);
  std::vector<int> eid;
  for (const auto& n : elems) eid.push_back(p.index(n));
  while (true) {
    bool match = true;
    for (std::size_t i = 0; match && i < elems.size(); ++i)
      for (std::size_t j = 0; match && j < elems.size(); ++j) {
        if (i == j) continue;
        PlacedInterval a{zc.centers.at(elems[i]), types[pick[i]]};
        PlacedInterval b{zc.centers.at(elems[j]), types[pick[j]]};
        if (precedes(a, b) != p.less(eid[i], eid[j])) match = false;
      }
    if (match) return false;  // a valid typing exists: the certificate lies
    std::size_t d = 0;
    while (d < pick.size() && ++pick[d] == types.size()) pick[d++] = 0;
    if (d == pick.size()) break;
  }
  return true;
}

}  // namespace ocposet
