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
#include <string>

#include "disjoint_set.hpp"
#include "spinboson/combinatorics.hpp"
#include "spinboson/error.hpp"

namespace spinboson {

void check_order(int p, int p_max) {
  if (p < 1) throw ArgumentError("order p must be >= 1");
  if (p_max > kHardPMax) {
    throw ResourceError("p_max " + std::to_string(p_max) + " exceeds the hard cap " + std::to_string(kHardPMax));
  }
  if (p > p_max) {
    throw ResourceError("order " + std::to_string(p) + " exceeds p_max " + std::to_string(p_max) +
                        " (enumeration grows factorially)");
  }
}

PerfectMatching PerfectMatching::base(int p) {
  PerfectMatching m;
  m.partner_.resize(2 * p);
  for (int i = 0; i < 2 * p; ++i) m.partner_[i] = i ^ 1;
  return m;
}

PerfectMatching PerfectMatching::from_pairs(int p, std::span<const Pair> pairs) {
  if (p < 1 || static_cast<int>(pairs.size()) != p) throw ArgumentError("a perfect matching on 2p points has p pairs");
  PerfectMatching m;
  m.partner_.assign(2 * p, -1);
  for (const Pair& e : pairs) {
    const int a = e[0], b = e[1];
    if (a < 0 || b < 0 || a >= 2 * p || b >= 2 * p || a == b) throw ArgumentError("matching pair out of range");
    if (m.partner_[a] != -1 || m.partner_[b] != -1) throw ArgumentError("matching pairs must be disjoint");
    m.partner_[a] = b;
    m.partner_[b] = a;
  }
  return m;
}

std::vector<Pair> PerfectMatching::pairs() const {
  std::vector<Pair> out;
  out.reserve(partner_.size() / 2);
  for (int a = 0; a < static_cast<int>(partner_.size()); ++a) {
    if (a < partner_[a]) out.push_back({a, partner_[a]});
  }
  return out;
}

std::uint64_t matching_count(int p) {
  std::uint64_t count = 1;
  for (int k = 1; k <= p; ++k) count *= static_cast<std::uint64_t>(2 * k - 1);
  return count;
}

namespace {

// Pair the lowest free point with every later free point, recursively.
void extend(std::vector<int>& partner, int n, const std::function<void(const std::vector<int>&)>& visit) {
  int first = 0;
  while (first < n && partner[first] != -1) ++first;
  if (first == n) {
    visit(partner);
    return;
  }
  for (int other = first + 1; other < n; ++other) {
    if (partner[other] != -1) continue;
    partner[first] = other;
    partner[other] = first;
    extend(partner, n, visit);
    partner[first] = -1;
    partner[other] = -1;
  }
}

}  // namespace

void for_each_matching(int p, const std::function<void(const PerfectMatching&)>& visit, int p_max) {
  check_order(p, p_max);
  std::vector<int> partner(2 * p, -1);
  extend(partner, 2 * p, [&](const std::vector<int>& current) {
    std::vector<Pair> pairs;
    for (int a = 0; a < 2 * p; ++a) {
      if (a < current[a]) pairs.push_back({a, current[a]});
    }
    visit(PerfectMatching::from_pairs(p, pairs));
  });
}

std::vector<PerfectMatching> enumerate_matchings(int p, int p_max) {
  std::vector<PerfectMatching> out;
  out.reserve(matching_count(std::min(p, kHardPMax)));
  for_each_matching(p, [&](const PerfectMatching& m) { out.push_back(m); }, p_max);
  return out;
}

BlockPartition partition_join(const PerfectMatching& matching) {
  const int p = matching.order();
  detail::DisjointSet sets(2 * p);
  for (int i = 0; i < p; ++i) sets.unite(2 * i, 2 * i + 1);
  for (const Pair& e : matching.pairs()) sets.unite(e[0], e[1]);

  BlockPartition out;
  out.block_of.assign(p, -1);
  std::map<int, int> root_to_block;
  for (int i = 0; i < p; ++i) {
    const int root = sets.find(2 * i);
    auto [it, inserted] = root_to_block.try_emplace(root, static_cast<int>(out.blocks.size()));
    if (inserted) {
      out.blocks.emplace_back();
      out.point_supports.emplace_back();
    }
    out.block_of[i] = it->second;
    out.blocks[it->second].push_back(i);
    out.point_supports[it->second].push_back(2 * i);
    out.point_supports[it->second].push_back(2 * i + 1);
  }
  // Base pairs are visited in increasing order, so blocks are already sorted
  // by their first entry and their contents are sorted.
  return out;
}

int ContractedMultigraph::multiplicity(int a, int b) const {
  const Pair key = make_pair_sorted(a, b);
  for (const MultiEdge& e : edges) {
    if (e.base_pairs == key) return e.multiplicity;
  }
  return 0;
}

int ContractedMultigraph::total_multiplicity() const {
  int total = 0;
  for (const MultiEdge& e : edges) total += e.multiplicity;
  return total;
}

ContractedMultigraph contracted_multigraph(const PerfectMatching& matching) {
  ContractedMultigraph out;
  out.order = matching.order();
  std::map<Pair, MultiEdge> edges;
  for (const Pair& e : matching.pairs()) {
    const int a = e[0] / 2, b = e[1] / 2;
    if (a == b) continue;
    MultiEdge& me = edges[make_pair_sorted(a, b)];
    me.base_pairs = make_pair_sorted(a, b);
    ++me.multiplicity;
    me.realizations.push_back(e);
  }
  for (auto& [key, edge] : edges) out.edges.push_back(std::move(edge));
  return out;
}

}  // namespace spinboson
