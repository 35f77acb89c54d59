#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace ocposet {

enum class Rel { before, after, incomparable };

struct TwinPartition {
  std::vector<std::vector<int>> classes;  // ordered by smallest member; members ascending
  std::vector<int> class_of;              // element -> class index
  std::vector<int> representatives() const {
    std::vector<int> reps;
    reps.reserve(classes.size());
    for (const auto& c : classes) reps.push_back(c.front());
    return reps;
  }
};

struct BlockDecomposition {
  std::vector<std::vector<int>> blocks;  // bottom block first; members ascending
};

// Finite strict poset over named elements. The relation is stored fully
// transitively closed; construction rejects cycles.
class Poset {
public:
  Poset() = default;

  static Poset from_relations(const std::vector<std::string>& names,
                              const std::vector<std::pair<std::string, std::string>>& strict) {
    Poset p;
    p.names_ = names;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) {
      if (!p.idx_.emplace(names[i], i).second)
        fail(Errc::duplicate_element, "duplicate element '" + names[i] + "'");
    }
    p.less_.assign(names.size() * names.size(), 0);
    for (const auto& [a, b] : strict) p.less_[p.index(a) * p.size() + p.index(b)] = 1;
    p.close_and_check();
    return p;
  }

  // matrix[i*n+j] must already be a strict order (used by canonical rebuilds).
  static Poset from_matrix(const std::vector<std::string>& names,
                           const std::vector<std::uint8_t>& matrix) {
    Poset p;
    p.names_ = names;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) p.idx_.emplace(names[i], i);
    p.less_ = matrix;
    p.close_and_check();
    return p;
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  int index(const std::string& name) const {
    auto it = idx_.find(name);
    if (it == idx_.end()) fail(Errc::unknown_name, "unknown element '" + name + "'");
    return it->second;
  }
  bool contains(const std::string& name) const { return idx_.count(name) != 0; }

  bool less(int i, int j) const { return less_[i * size() + j] != 0; }
  bool less(const std::string& a, const std::string& b) const { return less(index(a), index(b)); }
  bool comparable(int i, int j) const { return less(i, j) || less(j, i); }
  bool incomparable(int i, int j) const { return i != j && !comparable(i, j); }
  Rel rel(int i, int j) const {
    if (less(i, j)) return Rel::before;
    if (less(j, i)) return Rel::after;
    return Rel::incomparable;
  }

  int comparable_pairs() const {
    int c = 0;
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j)
        if (comparable(i, j)) ++c;
    return c;
  }

  std::vector<std::pair<std::string, std::string>> strict_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (less(i, j)) out.emplace_back(names_[i], names_[j]);
    return out;
  }

  Poset induced_ids(const std::vector<int>& keep) const {
    Poset p;
    int m = static_cast<int>(keep.size());
    p.names_.reserve(m);
    for (int i : keep) {
      p.names_.push_back(names_[i]);
      if (!p.idx_.emplace(names_[i], static_cast<int>(p.names_.size()) - 1).second)
        fail(Errc::duplicate_element, "duplicate element in induced selection");
    }
    p.less_.assign(m * m, 0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) p.less_[a * m + b] = less(keep[a], keep[b]) ? 1 : 0;
    p.check_invariants();
    return p;
  }

  Poset induced(const std::vector<std::string>& keep) const {
    std::vector<int> ids;
    ids.reserve(keep.size());
    for (const auto& n : keep) ids.push_back(index(n));
    return induced_ids(ids);
  }

  Poset dual() const {
    Poset p;
    p.names_ = names_;
    p.idx_ = idx_;
    int n = size();
    p.less_.assign(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p.less_[i * n + j] = less(j, i) ? 1 : 0;
    p.check_invariants();
    return p;
  }

  bool twins(int a, int b) const {
    if (a == b || comparable(a, b)) return false;
    for (int k = 0; k < size(); ++k) {
      if (k == a || k == b) continue;
      if (less(a, k) != less(b, k) || less(k, a) != less(k, b)) return false;
    }
    return true;
  }

  TwinPartition twin_partition() const {
    TwinPartition tp;
    tp.class_of.assign(size(), -1);
    for (int i = 0; i < size(); ++i) {
      for (auto& cls : tp.classes) {
        if (twins(cls.front(), i)) {
          tp.class_of[i] = tp.class_of[cls.front()];
          cls.push_back(i);
          break;
        }
      }
      if (tp.class_of[i] < 0) {
        tp.class_of[i] = static_cast<int>(tp.classes.size());
        tp.classes.push_back({i});
      }
    }
    return tp;
  }

  // A cut of size k splits the elements into a bottom part V (|V| = k) with
  // every member below every non-member. For each k the only candidate is
  // {x : |successors of x| >= n-k}; blocks are slices between successive cuts.
  BlockDecomposition block_decomposition() const {
    int n = size();
    std::vector<int> succ(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (less(i, j)) ++succ[i];
    std::vector<std::vector<int>> cuts;
    for (int k = 1; k < n; ++k) {
      std::vector<int> cand;
      for (int i = 0; i < n; ++i)
        if (succ[i] >= n - k) cand.push_back(i);
      if (static_cast<int>(cand.size()) != k) continue;
      std::vector<char> in(n, 0);
      for (int i : cand) in[i] = 1;
      bool ok = true;
      for (int i : cand)
        for (int j = 0; ok && j < n; ++j)
          if (!in[j] && !less(i, j)) ok = false;
      if (ok) cuts.push_back(std::move(cand));
    }
    BlockDecomposition bd;
    std::vector<char> taken(n, 0);
    for (const auto& cut : cuts) {
      std::vector<int> block;
      for (int i : cut)
        if (!taken[i]) {
          block.push_back(i);
          taken[i] = 1;
        }
      require_internal(!block.empty(), "cut chain not strictly nested");
      bd.blocks.push_back(std::move(block));
    }
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
      if (!taken[i]) rest.push_back(i);
    if (!rest.empty()) bd.blocks.push_back(std::move(rest));
    return bd;
  }

  bool is_isomorphic(const Poset& other) const {
    if (size() != other.size()) return false;
    if (comparable_pairs() != other.comparable_pairs()) return false;
    auto sa = invariant_tuples(), sb = other.invariant_tuples();
    {
      auto ta = sa, tb = sb;
      std::sort(ta.begin(), ta.end());
      std::sort(tb.begin(), tb.end());
      if (ta != tb) return false;
    }
    std::vector<int> map_ab(size(), -1), used(size(), 0);
    return iso_search(other, sa, sb, map_ab, used, 0);
  }

  // Injective map of pattern elements onto an induced copy inside this poset.
  std::optional<std::vector<std::pair<std::string, std::string>>> contains_induced(
      const Poset& pattern) const {
    int np = pattern.size();
    if (np > size()) return std::nullopt;
    // Most-constrained-first: search pattern vertices by descending degree.
    std::vector<int> order(np);
    for (int i = 0; i < np; ++i) order[i] = i;
    auto deg = [&](const Poset& p, int i) {
      int d = 0;
      for (int j = 0; j < p.size(); ++j)
        if (p.comparable(i, j)) ++d;
      return d;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      int da = deg(pattern, a), db = deg(pattern, b);
      return da != db ? da > db : a < b;
    });
    std::vector<int> indeg_h(size(), 0), outdeg_h(size(), 0), indeg_p(np, 0), outdeg_p(np, 0);
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (less(i, j)) {
          ++outdeg_h[i];
          ++indeg_h[j];
        }
    for (int i = 0; i < np; ++i)
      for (int j = 0; j < np; ++j)
        if (pattern.less(i, j)) {
          ++outdeg_p[i];
          ++indeg_p[j];
        }
    std::vector<int> img(np, -1);
    std::vector<char> used(size(), 0);
    auto search = [&](auto&& self, int depth) -> bool {
      if (depth == np) return true;
      int v = order[depth];
      for (int cand = 0; cand < size(); ++cand) {
        if (used[cand] || indeg_p[v] > indeg_h[cand] || outdeg_p[v] > outdeg_h[cand]) continue;
        bool ok = true;
        for (int d = 0; ok && d < depth; ++d) {
          int w = order[d];
          if (pattern.less(v, w) != less(cand, img[w]) ||
              pattern.less(w, v) != less(img[w], cand))
            ok = false;
        }
        if (!ok) continue;
        img[v] = cand;
        used[cand] = 1;
        if (self(self, depth + 1)) return true;
        used[cand] = 0;
        img[v] = -1;
      }
      return false;
    };
    if (!search(search, 0)) return std::nullopt;
    std::vector<std::pair<std::string, std::string>> emb;
    emb.reserve(np);
    for (int i = 0; i < np; ++i) emb.emplace_back(pattern.name(i), name(img[i]));
    return emb;
  }

  // Lexicographically minimal relation matrix over orderings consistent with
  // per-element invariants; exact for n <= 8 (fits a 64-bit key).
  std::vector<std::uint8_t> canonical_matrix() const {
    int n = size();
    if (n > 8) fail(Errc::size_limit_exceeded, "canonical form supported for n <= 8");
    auto tup = invariant_tuples();
    std::vector<std::array<long, 4>> distinct;
    for (auto& t : tup) distinct.push_back(t);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::vector<int>> classes(distinct.size());
    for (int i = 0; i < n; ++i) {
      int c = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), tup[i]) -
                               distinct.begin());
      classes[c].push_back(i);
    }
    std::vector<int> perm(n);
    std::uint64_t best = ~0ULL;
    bool have = false;
    auto leaf = [&]() {
      std::uint64_t key = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) key = (key << 1) | (less(perm[i], perm[j]) ? 1u : 0u);
      if (!have || key < best) {
        best = key;
        have = true;
      }
    };
    auto rec = [&](auto&& self, std::size_t ci, int pos) -> void {
      if (ci == classes.size()) {
        leaf();
        return;
      }
      std::vector<int> members = classes[ci];
      std::sort(members.begin(), members.end());
      do {
        for (std::size_t k = 0; k < members.size(); ++k) perm[pos + k] = members[k];
        self(self, ci + 1, pos + static_cast<int>(members.size()));
      } while (std::next_permutation(members.begin(), members.end()));
    };
    rec(rec, 0, 0);
    std::vector<std::uint8_t> out(n * n, 0);
    for (int b = n * n - 1; b >= 0; --b) {
      out[b] = best & 1u;
      best >>= 1;
    }
    return out;
  }

  std::uint64_t canonical_key() const {
    auto m = canonical_matrix();
    std::uint64_t key = 0;
    for (auto b : m) key = (key << 1) | b;
    return key;
  }

  std::string canonical_encoding() const {
    auto m = canonical_matrix();
    std::string s;
    s.reserve(m.size());
    for (auto b : m) s.push_back(b ? '1' : '0');
    return s;
  }

private:
  void close_and_check() {
    int n = size();
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (less_[i * n + k])
          for (int j = 0; j < n; ++j)
            if (less_[k * n + j]) less_[i * n + j] = 1;
    for (int i = 0; i < n; ++i)
      if (less_[i * n + i]) fail(Errc::cycle_detected, "relation has a cycle through '" + names_[i] + "'");
    check_invariants();
  }

  void check_invariants() const {
    int n = size();
    for (int i = 0; i < n; ++i) {
      require_internal(!less(i, i), "irreflexivity");
      for (int j = 0; j < n; ++j) {
        require_internal(!(less(i, j) && less(j, i)), "antisymmetry");
        for (int k = 0; k < n; ++k)
          require_internal(!(less(i, j) && less(j, k)) || less(i, k), "transitivity");
      }
    }
  }

  // (height below, height above, indeg, outdeg): isomorphism-invariant.
  std::vector<std::array<long, 4>> invariant_tuples() const {
    int n = size();
    std::vector<std::array<long, 4>> t(n, {0, 0, 0, 0});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (less(i, j)) {
          ++t[i][3];
          ++t[j][2];
        }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return t[a][2] < t[b][2]; });
    for (int i : order)
      for (int j = 0; j < n; ++j)
        if (less(j, i)) t[i][0] = std::max(t[i][0], t[j][0] + 1);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return t[a][3] < t[b][3]; });
    for (int i : order)
      for (int j = 0; j < n; ++j)
        if (less(i, j)) t[i][1] = std::max(t[i][1], t[j][1] + 1);
    return t;
  }

  bool iso_search(const Poset& other, const std::vector<std::array<long, 4>>& sa,
                  const std::vector<std::array<long, 4>>& sb, std::vector<int>& map_ab,
                  std::vector<int>& used, int i) const {
    if (i == size()) return true;
    for (int j = 0; j < size(); ++j) {
      if (used[j] || sa[i] != sb[j]) continue;
      bool ok = true;
      for (int k = 0; ok && k < i; ++k)
        if (less(i, k) != other.less(j, map_ab[k]) || less(k, i) != other.less(map_ab[k], j))
          ok = false;
      if (!ok) continue;
      map_ab[i] = j;
      used[j] = 1;
      if (iso_search(other, sa, sb, map_ab, used, i + 1)) return true;
      used[j] = 0;
    }
    return false;
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> idx_;
  std::vector<std::uint8_t> less_;
};

inline Poset catalog(const std::string& name) {
  using P = std::vector<std::pair<std::string, std::string>>;
  auto mk = [](std::vector<std::string> names, P covers) {
    return Poset::from_relations(names, covers);
  };
  if (name == "2+2") return mk({"x", "y", "z", "w"}, {{"x", "y"}, {"z", "w"}});
  if (name == "3+1") return mk({"x", "y", "z", "u"}, {{"x", "y"}, {"y", "z"}});
  if (name == "4+1") return mk({"x", "y", "z", "w", "v"}, {{"x", "y"}, {"y", "z"}, {"z", "w"}});
  if (name == "3+1+1") return mk({"x", "y", "z", "u", "v"}, {{"x", "y"}, {"y", "z"}});
  if (name == "H")
    return mk({"x", "y", "z", "w", "u", "v"},
              {{"x", "y"}, {"y", "z"}, {"z", "w"}, {"y", "u"}, {"v", "z"}});
  if (name == "V")
    return mk({"a", "b", "c", "d", "e", "m"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "e"}});
  if (name == "Z")
    return mk({"x", "y", "z", "w", "v", "u"},
              {{"x", "y"}, {"y", "z"}, {"z", "w"}, {"x", "v"}, {"u", "w"}});
  if (name == "D")
    return mk({"x", "y", "z", "w", "v"}, {{"x", "y"}, {"y", "z"}, {"x", "w"}, {"w", "z"}});
  if (name == "Y") return mk({"x", "y", "z", "w", "v"}, {{"x", "y"}, {"y", "z"}, {"y", "w"}});
  if (name == "Y_dual") return catalog("Y").dual();
  if (name == "X1")
    return mk({"x", "y", "z", "u", "v", "w", "t"},
              {{"x", "y"},
               {"y", "z"},
               {"u", "v"},
               {"v", "w"},
               {"x", "t"},
               {"u", "t"},
               {"t", "z"},
               {"t", "w"}});
  if (name == "X2")
    return mk({"x", "y", "z", "u", "v", "w", "t"},
              {{"x", "y"}, {"y", "z"}, {"u", "v"}, {"v", "w"}, {"x", "w"}, {"u", "z"}});
  if (name == "X3")
    return mk({"x", "y", "z", "u", "v", "w", "t", "s"},
              {{"x", "y"},
               {"y", "z"},
               {"u", "v"},
               {"v", "w"},
               {"x", "t"},
               {"u", "t"},
               {"t", "z"},
               {"t", "w"}});
  fail(Errc::unknown_catalog_name, "unknown catalog poset '" + name + "'");
}

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"2+2", "3+1", "4+1", "3+1+1", "H",  "V", "Z",
                                                 "D",   "Y",   "Y_dual", "X1", "X2", "X3"};
  return names;
}

// All isomorphism classes on exactly n elements, built by repeatedly adding a
// new maximal element above a down-set, deduplicated by canonical form.
inline std::vector<Poset> enumerate_posets(int n) {
  if (n < 1 || n > 7) fail(Errc::size_limit_exceeded, "enumeration supported for 1 <= n <= 7");
  std::vector<std::string> letters = {"a", "b", "c", "d", "e", "f", "g"};
  std::vector<std::vector<std::uint8_t>> cur = {{0}};  // 1x1 matrix
  for (int k = 2; k <= n; ++k) {
    std::map<std::uint64_t, std::vector<std::uint8_t>> next;
    int m = k - 1;
    for (const auto& mat : cur) {
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        bool down_set = true;
        for (int d = 0; down_set && d < m; ++d)
          if (mask & (1u << d))
            for (int z = 0; z < m; ++z)
              if (mat[z * m + d] && !(mask & (1u << z))) down_set = false;
        if (!down_set) continue;
        std::vector<std::uint8_t> ext(k * k, 0);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) ext[i * k + j] = mat[i * m + j];
        for (int d = 0; d < m; ++d)
          if (mask & (1u << d)) ext[d * k + (k - 1)] = 1;
        std::vector<std::string> nm(letters.begin(), letters.begin() + k);
        Poset cand = Poset::from_matrix(nm, ext);
        auto cmat = cand.canonical_matrix();
        std::uint64_t key = 0;
        for (auto b : cmat) key = (key << 1) | b;
        next.emplace(key, std::move(cmat));
      }
    }
    cur.clear();
    for (auto& [key, mat] : next) cur.push_back(std::move(mat));
  }
  std::vector<Poset> out;
  out.reserve(cur.size());
  std::vector<std::string> nm(letters.begin(), letters.begin() + n);
  for (auto& mat : cur) out.push_back(Poset::from_matrix(nm, mat));
  return out;
}

}  // namespace ocposet
