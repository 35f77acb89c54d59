#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <ocposet/ocposet.hpp>

namespace testsupport {

using namespace ocposet;

inline std::vector<std::string> element_names(int n, const std::string& prefix = "e") {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

// Random poset: random arcs consistent with a shuffled topological order,
// then transitive closure.
inline Poset random_poset(std::mt19937& rng, int n, double edge_prob) {
  auto names = element_names(n);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution flip(edge_prob);
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (flip(rng)) rel.emplace_back(names[order[i]], names[order[j]]);
  return Poset::from_relations(names, rel);
}

// Same poset under a random permutation of which name sits where.
inline Poset relabeled(const Poset& p, std::mt19937& rng) {
  int n = p.size();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = p.name(perm[i]);
  std::vector<std::uint8_t> m(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = p.less(perm[i], perm[j]) ? 1 : 0;
  return Poset::from_matrix(names, m);
}

// Random placed intervals with quarter-integer centers and types from s.
inline Representation random_representation(std::mt19937& rng, int n, TypeSet s) {
  Representation r;
  r.allowed = s;
  auto types = s.types();
  std::uniform_int_distribution<int> center(-4 * n, 4 * n);
  std::uniform_int_distribution<std::size_t> pick(0, types.size() - 1);
  auto names = element_names(n);
  for (const auto& nm : names)
    r.intervals.emplace(nm, PlacedInterval{Dyadic::from_parts(center(rng), 2), types[pick(rng)]});
  return r;
}

}  // namespace testsupport
