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
#include <cmath>
#include <numeric>
#include <queue>

#include "disjoint_set.hpp"
#include "spinboson/combinatorics.hpp"
#include "spinboson/error.hpp"
#include "spinboson/rng.hpp"
#include "spinboson/stats.hpp"

namespace spinboson {

bool ForestSelection::contains(int a, int b) const {
  const Pair key = make_pair_sorted(a, b);
  return std::binary_search(micro_edges.begin(), micro_edges.end(), key);
}

bool validate_forest_selection(const BlockPartition& partition, ForestSelection& selection) {
  std::sort(selection.micro_edges.begin(), selection.micro_edges.end());
  if (std::adjacent_find(selection.micro_edges.begin(), selection.micro_edges.end()) != selection.micro_edges.end()) {
    return false;
  }
  const int p = static_cast<int>(partition.block_of.size());
  selection.induced_edges.clear();
  detail::DisjointSet sets(partition.size());
  for (const Pair& e : selection.micro_edges) {
    if (e[0] < 0 || e[1] >= p || e[0] == e[1]) return false;
    const int x = partition.block_of[e[0]];
    const int y = partition.block_of[e[1]];
    if (x == y) return false;  // internal to a block
    // A repeated block pair would close a cycle of length 2 in the induced
    // graph, so the union-find test also enforces "at most one per block pair".
    if (!sets.unite(x, y)) return false;
    selection.induced_edges.push_back(make_pair_sorted(x, y));
  }
  return true;
}

bool is_connecting(const PerfectMatching& matching, const ForestSelection& selection) {
  const int p = matching.order();
  std::vector<std::vector<int>> adj(p);
  for (const Pair& e : matching.pairs()) {
    const int a = e[0] / 2, b = e[1] / 2;
    if (a == b) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const Pair& e : selection.micro_edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  std::vector<char> seen(p, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (int b : adj[a]) {
      if (!seen[b]) {
        seen[b] = 1;
        ++reached;
        stack.push_back(b);
      }
    }
  }
  return reached == p;
}

void for_each_forest_selection(const PerfectMatching& matching, bool connecting_only,
                               const std::function<void(const ForestSelection&)>& visit, int p_max) {
  check_order(matching.order(), p_max);
  const BlockPartition partition = partition_join(matching);
  const int k = partition.size();
  std::vector<Pair> block_pairs;
  for (int x = 0; x < k; ++x) {
    for (int y = x + 1; y < k; ++y) block_pairs.push_back({x, y});
  }
  const std::uint32_t subsets = 1u << block_pairs.size();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    const int edges = std::popcount(mask);
    if (connecting_only && edges != k - 1) continue;
    std::vector<Pair> chosen;
    detail::DisjointSet sets(k);
    bool forest = true;
    for (std::size_t i = 0; i < block_pairs.size() && forest; ++i) {
      if (!(mask & (1u << i))) continue;
      chosen.push_back(block_pairs[i]);
      forest = sets.unite(block_pairs[i][0], block_pairs[i][1]);
    }
    if (!forest) continue;

    // Cartesian product of micro realizations A in X, B in Y per block edge.
    std::vector<std::size_t> choice(chosen.size(), 0);
    while (true) {
      ForestSelection sel;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        const auto& bx = partition.blocks[chosen[i][0]];
        const auto& by = partition.blocks[chosen[i][1]];
        const std::size_t c = choice[i];
        sel.micro_edges.push_back(make_pair_sorted(bx[c / by.size()], by[c % by.size()]));
      }
      validate_forest_selection(partition, sel);
      visit(sel);

      std::size_t i = 0;
      for (; i < chosen.size(); ++i) {
        const std::size_t options = partition.blocks[chosen[i][0]].size() * partition.blocks[chosen[i][1]].size();
        if (++choice[i] < options) break;
        choice[i] = 0;
      }
      if (i == chosen.size()) break;
    }
  }
}

std::vector<ForestSelection> enumerate_forest_selections(const PerfectMatching& matching, bool connecting_only,
                                                         int p_max) {
  std::vector<ForestSelection> out;
  for_each_forest_selection(matching, connecting_only, [&](const ForestSelection& f) { out.push_back(f); }, p_max);
  return out;
}

std::optional<std::vector<int>> forest_path(const BlockPartition& partition, const ForestSelection& selection,
                                            int block_x, int block_y) {
  if (block_x == block_y) return std::vector<int>{};
  const int k = partition.size();
  std::vector<std::vector<std::pair<int, int>>> adj(k);  // (neighbor, edge index)
  for (std::size_t i = 0; i < selection.induced_edges.size(); ++i) {
    const Pair& e = selection.induced_edges[i];
    adj[e[0]].push_back({e[1], static_cast<int>(i)});
    adj[e[1]].push_back({e[0], static_cast<int>(i)});
  }
  std::vector<int> via_edge(k, -1), prev(k, -1);
  std::vector<char> seen(k, 0);
  std::queue<int> q;
  q.push(block_x);
  seen[block_x] = 1;
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    if (x == block_y) break;
    for (auto [y, edge] : adj[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      prev[y] = x;
      via_edge[y] = edge;
      q.push(y);
    }
  }
  if (!seen[block_y]) return std::nullopt;
  std::vector<int> path;
  for (int x = block_y; x != block_x; x = prev[x]) path.push_back(via_edge[x]);
  std::sort(path.begin(), path.end());
  return path;
}

double interpolated_coupling(const BlockPartition& partition, const ForestSelection& selection,
                             std::span<const double> v, int a, int b) {
  if (selection.contains(a, b)) {
    throw ArgumentError("interpolated coupling is undefined for a micro edge of the forest selection");
  }
  if (v.size() != selection.size()) throw ArgumentError("one interpolation parameter per micro edge is required");
  const int x = partition.block_of[a];
  const int y = partition.block_of[b];
  if (x == y) return 1.0;
  const auto path = forest_path(partition, selection, x, y);
  if (!path) return 0.0;
  double r = 1.0;
  for (int edge : *path) r = std::min(r, v[edge]);
  return r;
}

CouplingStructure::CouplingStructure(const BlockPartition& partition, const ForestSelection& selection)
    : order_(static_cast<int>(partition.block_of.size())), forest_size_(static_cast<int>(selection.size())) {
  if (forest_size_ > 31) throw ResourceError("forest selection too large");
  kind_.assign(static_cast<std::size_t>(order_) * order_, Kind::disconnected);
  mask_.assign(kind_.size(), 0u);
  for (int a = 0; a < order_; ++a) {
    for (int b = a + 1; b < order_; ++b) {
      Kind kind;
      std::uint32_t mask = 0;
      if (selection.contains(a, b)) {
        kind = Kind::forest_edge;
      } else if (partition.block_of[a] == partition.block_of[b]) {
        kind = Kind::same_block;
      } else if (auto path = forest_path(partition, selection, partition.block_of[a], partition.block_of[b])) {
        kind = Kind::path;
        for (int e : *path) mask |= 1u << e;
      } else {
        kind = Kind::disconnected;
      }
      kind_[index(a, b)] = kind_[index(b, a)] = kind;
      mask_[index(a, b)] = mask_[index(b, a)] = mask;
    }
  }
  std::vector<int> perm(forest_size_);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    orderings_.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

double CouplingStructure::hardcore_weight_exact(std::span<const std::uint8_t> overlap) const {
  std::uint32_t masks[64];
  int count = 0;
  for (int a = 0; a < order_; ++a) {
    for (int b = a + 1; b < order_; ++b) {
      if (!overlap[index(a, b)]) continue;
      switch (kind_[index(a, b)]) {
        case Kind::same_block:
          return 0.0;  // r = 1 kills the term
        case Kind::path:
          masks[count++] = mask_[index(a, b)];
          break;
        default:
          break;
      }
    }
  }
  if (count == 0) return 1.0;
  // With y = 1 - v, each factor (1 - min_path v) is the largest y on the
  // path. On the ordering y_{s0} > y_{s1} > ... the integrand is a monomial
  // prod y_{sj}^{e_j}, whose integral over the ordered simplex is
  // prod_j 1 / (e_j + ... + e_{m-1} + m - j).
  const int m = forest_size_;
  double total = 0.0;
  int exponents[32];
  for (const auto& order : orderings_) {
    std::fill(exponents, exponents + m, 0);
    for (int c = 0; c < count; ++c) {
      for (int j = 0; j < m; ++j) {
        if (masks[c] & (1u << order[j])) {
          ++exponents[j];
          break;
        }
      }
    }
    double term = 1.0;
    int suffix = 0;
    for (int j = m - 1; j >= 0; --j) {
      suffix += exponents[j];
      term /= static_cast<double>(suffix + m - j);
    }
    total += term;
  }
  return total;
}

namespace {

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

double CouplingStructure::hardcore_weight_sampled(std::span<const std::uint8_t> overlap, std::uint64_t points,
                                                  std::uint64_t seed) const {
  if (points == 0) throw ArgumentError("quasi-Monte Carlo needs at least one point");
  std::vector<std::uint32_t> masks;
  for (int a = 0; a < order_; ++a) {
    for (int b = a + 1; b < order_; ++b) {
      if (!overlap[index(a, b)]) continue;
      if (kind_[index(a, b)] == Kind::same_block) return 0.0;
      if (kind_[index(a, b)] == Kind::path) masks.push_back(mask_[index(a, b)]);
    }
  }
  if (masks.empty()) return 1.0;
  const int m = forest_size_;
  if (m > static_cast<int>(std::size(kPrimes))) throw ResourceError("too many interpolation parameters for Halton");
  RandomStream rng(seed, 0);
  std::vector<double> shift(m);
  for (double& s : shift) s = rng.uniform();
  std::vector<double> v(m);
  NeumaierSum acc;
  for (std::uint64_t i = 0; i < points; ++i) {
    for (int l = 0; l < m; ++l) {
      const double x = radical_inverse(i + 1, kPrimes[l]) + shift[l];
      v[l] = x - std::floor(x);
    }
    double prod = 1.0;
    for (std::uint32_t mask : masks) {
      double r = 1.0;
      for (int l = 0; l < m; ++l) {
        if (mask & (1u << l)) r = std::min(r, v[l]);
      }
      prod *= 1.0 - r;
    }
    acc.add(prod);
  }
  return acc.value() / static_cast<double>(points);
}

}  // namespace spinboson
