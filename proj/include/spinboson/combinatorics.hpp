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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

// Combinatorial objects indexing the cluster terms. Points are 0-based,
// 0..2p-1; base pair i is {2i, 2i+1}. Base pairs are referred to by index.

namespace spinboson {

using Pair = std::array<int, 2>;  // always stored with [0] < [1]

inline constexpr int kDefaultPMax = 4;
inline constexpr int kHardPMax = 6;

// Throws ResourceError if p exceeds p_max or p_max exceeds the hard cap, and
// ArgumentError if p < 1.
void check_order(int p, int p_max);

inline Pair make_pair_sorted(int a, int b) { return a < b ? Pair{a, b} : Pair{b, a}; }

class PerfectMatching {
 public:
  // The base matching {{0,1},{2,3},...}.
  static PerfectMatching base(int p);
  // Validates that the pairs partition 0..2p-1.
  static PerfectMatching from_pairs(int p, std::span<const Pair> pairs);

  int order() const { return static_cast<int>(partner_.size() / 2); }
  int partner(int point) const { return partner_[point]; }
  // Pairs sorted by smaller endpoint.
  std::vector<Pair> pairs() const;

  bool operator==(const PerfectMatching&) const = default;

 private:
  std::vector<int> partner_;
};

// (2p)! / (2^p p!)
std::uint64_t matching_count(int p);

void for_each_matching(int p, const std::function<void(const PerfectMatching&)>& visit, int p_max = kDefaultPMax);
std::vector<PerfectMatching> enumerate_matchings(int p, int p_max = kDefaultPMax);

// Blocks of the join of the base matching with P: connected components of
// the 2-factor, as sets of base pairs and as point supports.
struct BlockPartition {
  std::vector<int> block_of;                     // base pair -> block id
  std::vector<std::vector<int>> blocks;          // base pairs, sorted; blocks sorted by first entry
  std::vector<std::vector<int>> point_supports;  // points, sorted; parallel to blocks

  int size() const { return static_cast<int>(blocks.size()); }
};

BlockPartition partition_join(const PerfectMatching& matching);

struct MultiEdge {
  Pair base_pairs;                // {A, B}, A < B
  int multiplicity = 0;           // 1 or 2
  std::vector<Pair> realizations; // the P-edges {a, b} inducing it
};

// P contracted onto base pairs; P-edges internal to a base pair are dropped.
struct ContractedMultigraph {
  int order = 0;
  std::vector<MultiEdge> edges;  // sorted by base_pairs

  int multiplicity(int a, int b) const;
  int total_multiplicity() const;
};

ContractedMultigraph contracted_multigraph(const PerfectMatching& matching);

// A set of micro edges between base pairs, at most one per pair of blocks,
// none inside a block, inducing a forest on the blocks.
struct ForestSelection {
  std::vector<Pair> micro_edges;    // base-pair pairs, sorted
  std::vector<Pair> induced_edges;  // block pairs, parallel to micro_edges

  std::size_t size() const { return micro_edges.size(); }
  bool contains(int a, int b) const;
};

// Checks the three selection rules against the partition; fills in
// induced_edges when valid.
bool validate_forest_selection(const BlockPartition& partition, ForestSelection& selection);

// True when the contracted multigraph plus the selection connects all base
// pairs (checked by direct reachability).
bool is_connecting(const PerfectMatching& matching, const ForestSelection& selection);

void for_each_forest_selection(const PerfectMatching& matching, bool connecting_only,
                               const std::function<void(const ForestSelection&)>& visit, int p_max = kDefaultPMax);
std::vector<ForestSelection> enumerate_forest_selections(const PerfectMatching& matching, bool connecting_only,
                                                         int p_max = kDefaultPMax);

// Indices (into selection.micro_edges) of the edges on the unique path
// between two blocks in the induced forest, or nullopt if the blocks lie in
// different trees.
std::optional<std::vector<int>> forest_path(const BlockPartition& partition, const ForestSelection& selection,
                                            int block_x, int block_y);

// r(F, v)_{A,B}: 1 inside a block, min of v along the induced forest path
// between the blocks of A and B, 0 when they are not joined. Throws
// ArgumentError when {A, B} is itself a micro edge of F.
double interpolated_coupling(const BlockPartition& partition, const ForestSelection& selection,
                             std::span<const double> v, int a, int b);

// Per-pair description of r(F, .) for a fixed (P, F), used to integrate the
// interpolated hardcore factors over v.
class CouplingStructure {
 public:
  enum class Kind : std::uint8_t { forest_edge, same_block, disconnected, path };

  CouplingStructure(const BlockPartition& partition, const ForestSelection& selection);

  int order() const { return order_; }
  int forest_size() const { return forest_size_; }
  Kind kind(int a, int b) const { return kind_[index(a, b)]; }
  // Bitmask over micro-edge indices; meaningful for Kind::path.
  std::uint32_t path_mask(int a, int b) const { return mask_[index(a, b)]; }

  // int_{[0,1]^F} prod over non-F pairs with overlap[a][b] of (1 - r(F,v)_{ab}),
  // evaluated exactly by summing over the orderings of v. overlap is a p*p
  // row-major 0/1 matrix. F edges are not included (the caller handles the
  // -1{overlap} factors).
  double hardcore_weight_exact(std::span<const std::uint8_t> overlap) const;

  // Same integral by randomized quasi-Monte Carlo (shifted Halton points).
  double hardcore_weight_sampled(std::span<const std::uint8_t> overlap, std::uint64_t points,
                                 std::uint64_t seed) const;

 private:
  std::size_t index(int a, int b) const { return static_cast<std::size_t>(a) * order_ + b; }

  int order_ = 0;
  int forest_size_ = 0;
  std::vector<Kind> kind_;
  std::vector<std::uint32_t> mask_;
  std::vector<std::vector<int>> orderings_;
};

// Result of deleting one P-edge per cycle of the 2-factor and joining the
// remaining contracted edges with the forest selection.
struct OpenedStructure {
  struct TreeEdge {
    int parent = -1;
    int child = -1;
    bool from_forest = false;
    // For contracted edges: the P-edge as (point in parent, point in child).
    // For forest edges: (parent, child) base pairs.
    Pair link{};
  };

  std::vector<Pair> opened_matching;  // P with one edge per cycle removed
  std::vector<Pair> deleted_edges;    // one per cycle
  std::vector<TreeEdge> tree;         // BFS order from the root base pair 0
  std::vector<int> parent;            // per base pair; -1 for the root or unreached
  std::vector<int> offspring;         // q_A: children attached through forest edges
  bool spanning = false;

  std::vector<Pair> tree_edges() const;  // as base-pair pairs, sorted
};

// Opening rule: in each cycle delete the P-edge with the smallest lower
// endpoint. Throws StructureError when require_spanning and the tree does not
// span all base pairs.
OpenedStructure open_cycles(const PerfectMatching& matching, const ForestSelection& selection,
                            bool require_spanning = true);

// All labeled trees on n vertices (edge lists, sorted), by exhaustive search
// over (n-1)-edge subsets of the complete graph.
std::vector<std::vector<Pair>> enumerate_labeled_trees(int n);

// (n-2)! / prod (d_i - 1)! for a degree sequence summing to 2n-2.
std::uint64_t cayley_degree_count(std::span<const int> degrees);

// Whether `tree` (edges on base pairs) arises from (P, F) by some choice of
// cycle opening.
bool is_compatible(const PerfectMatching& matching, const ForestSelection& selection, std::span<const Pair> tree);

// Number of (P, F connecting) compatible with the tree.
std::uint64_t count_compatible_pairs(std::span<const Pair> tree, int p, int p_max = kDefaultPMax);

}  // namespace spinboson
