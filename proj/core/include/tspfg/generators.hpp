#pragma once

#include <cstdint>
#include <vector>

#include "tspfg/instance.hpp"

namespace tspfg {

OrderedPointSet gen_random_points(int n, std::uint64_t seed);
SymmetricWeightedGraph gen_random_graph(int n, std::uint64_t seed, std::int64_t wmin,
                                        std::int64_t wmax);

// Encodes a set-disjointness pair (U, V) as 2n+2 ordered points on the lines
// x=0 and x=B (B = max element + 1): a bottleneck-B pyramidal tour exists
// exactly when U and V intersect. The perturbed variant nudges every point off
// the two vertical lines by distinct multiples of 1/(4B(n+1)) so all
// x-coordinates become distinct without changing the answer.
struct DisjointnessInstance {
  OrderedPointSet points;
  double B = 0.0;
};
DisjointnessInstance gen_disjointness_points(const std::vector<int>& U,
                                             const std::vector<int>& V, bool perturbed);

}  // namespace tspfg
