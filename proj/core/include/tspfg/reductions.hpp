#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tspfg/instance.hpp"

namespace tspfg {

struct ThreeOptInstance {
  SymmetricWeightedGraph graph;
  Tour tour;
};

// Builds a tour instance on 2n vertices (the a/b copies of each input vertex,
// interleaved along the tour) that admits an improving 3-opt move iff the
// input graph contains a triangle of negative total weight. Requires n >= 3.
ThreeOptInstance nt_to_3opt(const SymmetricWeightedGraph& g);

// One way of reconnecting the three tour pieces left by removing three
// pairwise endpoint-disjoint tour edges (the a-, b-, and c-gap): each bit
// says whether the connecting edge attaches to the left (0) or right (1)
// side of its gap.
struct CharacteristicBits {
  int lab, rab, lac, rac, lbc, rbc;
  bool operator==(const CharacteristicBits&) const = default;
};

// The bit settings that complete the 6-vertex gap template into a single
// cycle without re-inserting a removed edge, found by exhaustive filtering
// of all 64 assignments; deterministic order.
std::vector<CharacteristicBits> valid_characteristics();

struct NtReduction {
  // True when a quadratic precheck already found an improving move (a 2-move,
  // or a 3-move whose removed edges share an endpoint); graph is then a fixed
  // constant-size instance with a negative triangle.
  bool precheck_hit = false;
  SymmetricWeightedGraph graph;
  // When precheck_hit is false: one 3n-vertex tripartite component per entry,
  // component c's vertex (letter, i) at index c*3n + letter*n + i with
  // letter 0 = x, 1 = y, 2 = z.
  std::vector<CharacteristicBits> characteristics;
  int n = 0;  // tour length of the source instance
};

// The produced graph has a negative triangle iff the tour admits an improving
// 3-opt move. Distances are shifted to non-negative internally (uniform
// shifts leave every move delta unchanged) so the 3M fallback weight
// dominates any triangle that uses it.
NtReduction threeopt_to_nt(const SymmetricWeightedGraph& g, const Tour& t);

// Lexicographically smallest vertex triple with negative total edge weight.
std::optional<std::array<int, 3>> negative_triangle_bruteforce(
    const SymmetricWeightedGraph& g);

}  // namespace tspfg
