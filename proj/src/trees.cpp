// Copyright 2026 The spinboson Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <map>
#include <queue>

#include "disjoint_set.hpp"
#include "spinboson/combinatorics.hpp"
#include "spinboson/error.hpp"

namespace spinboson {

std::vector<Pair> OpenedStructure::tree_edges() const {
  std::vector<Pair> out;
  out.reserve(tree.size());
  for (const TreeEdge& e : tree) out.push_back(make_pair_sorted(e.parent, e.child));
  std::sort(out.begin(), out.end());
  return out;
}

OpenedStructure open_cycles(const PerfectMatching& matching, const ForestSelection& selection, bool require_spanning) {
  const int p = matching.order();
  const BlockPartition partition = partition_join(matching);
  OpenedStructure out;

  // One deleted P-edge per cycle: the one whose smaller endpoint is minimal.
  std::vector<Pair> all = matching.pairs();  // sorted by smaller endpoint
  std::vector<char> cycle_done(partition.size(), 0);
  for (const Pair& e : all) {
    const int block = partition.block_of[e[0] / 2];
    if (!cycle_done[block]) {
      cycle_done[block] = 1;
      out.deleted_edges.push_back(e);
    } else {
      out.opened_matching.push_back(e);
    }
  }

  // Adjacency of (P-opened)^# + F, remembering how each edge arose.
  struct Link {
    int to;
    bool forest;
    int point_here;
    int point_there;
  };
  std::vector<std::vector<Link>> adj(p);
  for (const Pair& e : out.opened_matching) {
    const int a = e[0] / 2, b = e[1] / 2;
    if (a == b) continue;
    adj[a].push_back({b, false, e[0], e[1]});
    adj[b].push_back({a, false, e[1], e[0]});
  }
  for (const Pair& e : selection.micro_edges) {
    adj[e[0]].push_back({e[1], true, -1, -1});
    adj[e[1]].push_back({e[0], true, -1, -1});
  }
  std::size_t edge_count = 0;
  for (const auto& links : adj) edge_count += links.size();
  edge_count /= 2;

  out.parent.assign(p, -1);
  out.offspring.assign(p, 0);
  std::vector<char> seen(p, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    const int a = q.front();
    q.pop();
    for (const Link& l : adj[a]) {
      if (seen[l.to]) continue;
      seen[l.to] = 1;
      ++reached;
      out.parent[l.to] = a;
      OpenedStructure::TreeEdge te;
      te.parent = a;
      te.child = l.to;
      te.from_forest = l.forest;
      te.link = l.forest ? Pair{a, l.to} : Pair{l.point_here, l.point_there};
      out.tree.push_back(te);
      if (l.forest) ++out.offspring[a];
      q.push(l.to);
    }
  }
  out.spanning = reached == p && edge_count == static_cast<std::size_t>(p - 1);
  if (require_spanning && !out.spanning) {
    throw StructureError("cycle opening does not yield a spanning tree: (P, F) is not connecting");
  }
  return out;
}

std::vector<std::vector<Pair>> enumerate_labeled_trees(int n) {
  if (n < 1) throw ArgumentError("tree needs at least one vertex");
  if (n > 7) throw ResourceError("labeled tree enumeration is capped at 7 vertices");
  std::vector<Pair> all;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) all.push_back({a, b});
  }
  std::vector<std::vector<Pair>> trees;
  const int need = n - 1;
  // Walk all subsets of size n-1 via a selection mask.
  std::vector<char> pick(all.size(), 0);
  std::fill(pick.begin(), pick.begin() + need, 1);
  do {
    detail::DisjointSet sets(n);
    std::vector<Pair> edges;
    bool acyclic = true;
    for (std::size_t i = 0; i < all.size() && acyclic; ++i) {
      if (!pick[i]) continue;
      edges.push_back(all[i]);
      acyclic = sets.unite(all[i][0], all[i][1]);
    }
    if (acyclic) trees.push_back(std::move(edges));  // n-1 acyclic edges on n vertices span
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return trees;
}

std::uint64_t cayley_degree_count(std::span<const int> degrees) {
  const int n = static_cast<int>(degrees.size());
  if (n == 1) return degrees[0] == 0 ? 1 : 0;
  int sum = 0;
  for (int d : degrees) {
    if (d < 1) return 0;
    sum += d;
  }
  if (sum != 2 * n - 2) return 0;
  auto factorial = [](int k) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  };
  std::uint64_t value = factorial(n - 2);
  for (int d : degrees) value /= factorial(d - 1);
  return value;
}

bool is_compatible(const PerfectMatching& matching, const ForestSelection& selection, std::span<const Pair> tree) {
  const int p = matching.order();
  if (static_cast<int>(tree.size()) != p - 1) return false;
  std::vector<Pair> remaining(tree.begin(), tree.end());
  for (Pair& e : remaining) e = make_pair_sorted(e[0], e[1]);
  std::sort(remaining.begin(), remaining.end());
  for (const Pair& f : selection.micro_edges) {
    auto it = std::lower_bound(remaining.begin(), remaining.end(), f);
    if (it == remaining.end() || *it != f) return false;
    remaining.erase(it);
  }
  // What is left must be each cycle's contracted edges with exactly one removed.
  const BlockPartition partition = partition_join(matching);
  const ContractedMultigraph sharp = contracted_multigraph(matching);
  std::vector<int> per_block(partition.size(), 0);
  for (const Pair& e : remaining) {
    const int x = partition.block_of[e[0]];
    if (x != partition.block_of[e[1]]) return false;
    if (sharp.multiplicity(e[0], e[1]) == 0) return false;
    ++per_block[x];
  }
  for (int x = 0; x < partition.size(); ++x) {
    const int m = static_cast<int>(partition.blocks[x].size());
    if (per_block[x] != (m >= 2 ? m - 1 : 0)) return false;
  }
  return true;
}

std::uint64_t count_compatible_pairs(std::span<const Pair> tree, int p, int p_max) {
  check_order(p, p_max);
  if (static_cast<int>(tree.size()) != p - 1) throw ArgumentError("a tree on p base pairs has p - 1 edges");
  detail::DisjointSet sets(p);
  for (const Pair& e : tree) {
    if (e[0] < 0 || e[1] < 0 || e[0] >= p || e[1] >= p || e[0] == e[1] || !sets.unite(e[0], e[1])) {
      throw ArgumentError("edges do not form a tree on the base pairs");
    }
  }
  std::uint64_t count = 0;
  for_each_matching(p, [&](const PerfectMatching& m) {
    for_each_forest_selection(m, true, [&](const ForestSelection& f) {
      if (is_compatible(m, f, tree)) ++count;
    }, p_max);
  }, p_max);
  return count;
}

}  // namespace spinboson
