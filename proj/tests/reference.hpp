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

#pragma once

// Test-side reference implementations. They share no code with the library
// beyond the Pair type and are deliberately naive.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "spinboson/combinatorics.hpp"

namespace spinboson::reference {

struct Components {
  std::vector<int> label;
  explicit Components(int n) : label(n) { std::iota(label.begin(), label.end(), 0); }
  int find(int x) { return label[x] == x ? x : label[x] = find(label[x]); }
  bool join(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    label[a] = b;
    return true;
  }
};

inline Pair sorted(int a, int b) { return a < b ? Pair{a, b} : Pair{b, a}; }

// All perfect matchings of 0..2p-1, from every permutation.
inline std::vector<std::vector<Pair>> matchings(int p) {
  std::vector<int> perm(2 * p);
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::vector<Pair>> seen;
  do {
    std::vector<Pair> m;
    for (int i = 0; i < p; ++i) m.push_back(sorted(perm[2 * i], perm[2 * i + 1]));
    std::sort(m.begin(), m.end());
    seen.insert(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {seen.begin(), seen.end()};
}

// Block representative of each base pair under P_base + P.
inline std::vector<int> blocks(int p, const std::vector<Pair>& m) {
  Components c(p);
  for (const Pair& e : m) c.join(e[0] / 2, e[1] / 2);
  std::vector<int> out(p);
  for (int a = 0; a < p; ++a) out[a] = c.find(a);
  return out;
}

// Lengths of the cycles of P_base + P, walked point by point.
inline std::vector<int> cycle_lengths(int p, const std::vector<Pair>& m) {
  std::vector<int> partner(2 * p);
  for (const Pair& e : m) partner[e[0]] = e[1], partner[e[1]] = e[0];
  std::vector<char> seen(2 * p, 0);
  std::vector<int> out;
  for (int start = 0; start < 2 * p; ++start) {
    if (seen[start]) continue;
    int len = 0, x = start;
    do {
      seen[x] = seen[x ^ 1] = 1;
      len += 2;
      x = partner[x ^ 1];
    } while (x != start);
    out.push_back(len);
  }
  return out;
}

// Connecting F (sets of base-pair pairs) by brute force over all subsets.
inline std::vector<std::vector<Pair>> connecting_forests(int p, const std::vector<Pair>& m) {
  const std::vector<int> block = blocks(p, m);
  std::vector<Pair> cand;
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) cand.push_back({a, b});
  }
  std::vector<std::vector<Pair>> out;
  for (std::uint32_t mask = 0; mask < (1u << cand.size()); ++mask) {
    bool ok = true;
    std::set<Pair> block_pairs;
    Components forest(p);
    std::vector<Pair> chosen;
    for (std::size_t i = 0; i < cand.size() && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      const int x = block[cand[i][0]], y = block[cand[i][1]];
      ok = x != y && block_pairs.insert(sorted(x, y)).second && forest.join(x, y);
      chosen.push_back(cand[i]);
    }
    if (!ok) continue;
    Components all(p);
    for (const Pair& e : m) all.join(e[0] / 2, e[1] / 2);
    for (const Pair& e : chosen) all.join(e[0], e[1]);
    bool connected = true;
    for (int a = 1; a < p; ++a) connected = connected && all.find(a) == all.find(0);
    if (connected) out.push_back(chosen);
  }
  return out;
}

// For each labeled tree on the base pairs: the number of connecting (P, F)
// from which some choice of one deleted P-edge per cycle produces it.
inline std::map<std::vector<Pair>, std::uint64_t> compatible_counts(int p) {
  std::map<std::vector<Pair>, std::uint64_t> out;
  for (const auto& m : matchings(p)) {
    const std::vector<int> block = blocks(p, m);
    std::map<int, std::vector<Pair>> per_block;
    for (const Pair& e : m) per_block[block[e[0] / 2]].push_back(e);
    std::vector<std::vector<Pair>> cycles;
    for (auto& [b, edges] : per_block) cycles.push_back(edges);
    for (const auto& f : connecting_forests(p, m)) {
      std::set<std::vector<Pair>> trees;
      std::vector<std::size_t> pick(cycles.size(), 0);
      while (true) {
        std::set<Pair> edges(f.begin(), f.end());
        for (std::size_t x = 0; x < cycles.size(); ++x) {
          for (std::size_t i = 0; i < cycles[x].size(); ++i) {
            const Pair& e = cycles[x][i];
            if (i != pick[x] && e[0] / 2 != e[1] / 2) edges.insert(sorted(e[0] / 2, e[1] / 2));
          }
        }
        if (static_cast<int>(edges.size()) == p - 1) {
          Components c(p);
          bool tree = true;
          for (const Pair& e : edges) tree = tree && c.join(e[0], e[1]);
          if (tree) trees.insert({edges.begin(), edges.end()});
        }
        std::size_t x = 0;
        while (x < cycles.size() && ++pick[x] == cycles[x].size()) pick[x++] = 0;
        if (x == cycles.size()) break;
      }
      for (const auto& t : trees) ++out[t];
    }
  }
  return out;
}

// E[X(t_1) ... X(t_q)] for sorted times.
inline double moment(const std::vector<double>& t) {
  if (t.size() % 2) return 0.0;
  double gaps = 0.0;
  for (std::size_t i = 0; i < t.size(); i += 2) gaps += t[i + 1] - t[i];
  return std::exp(-2.0 * gaps);
}

// prod over base-pair pairs of 1{closed intervals disjoint}.
inline double hardcore(const std::vector<double>& t) {
  const std::size_t p = t.size() / 2;
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a + 1; b < p; ++b) {
      if (std::max(t[2 * a], t[2 * b]) <= std::min(t[2 * a + 1], t[2 * b + 1])) return 0.0;
    }
  }
  return 1.0;
}

}  // namespace spinboson::reference
