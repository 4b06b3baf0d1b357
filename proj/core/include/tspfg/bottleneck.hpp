#pragma once

#include <vector>

#include "tspfg/awnn.hpp"
#include "tspfg/instance.hpp"

namespace tspfg {

// True iff some pyramidal tour of the given point order has every edge of
// length at most B. Runs the linear-scan list algorithm: the set of feasible
// partial-tour chain ends is kept as a union of radius-B disks supporting
// point location, so each step costs one membership query.
bool bottleneck_decide(const OrderedPointSet& pts, double B);

struct BottleneckResult {
  double value = 0.0;  // minimum possible length of the longest tour edge
  Tour tour;           // pyramidal witness whose longest edge has that length
};

// Quadratic min-max dynamic program over (i,j)-partial tours, with witness.
BottleneckResult bottleneck_quadratic(const OrderedPointSet& pts);

// Smallest pairwise distance d for which bottleneck_decide(pts, d) holds,
// found by binary search over the sorted distinct pairwise distances.
double bottleneck_optimize(const OrderedPointSet& pts);

// Same optimum computed by the row-maintenance scheme: the DP row lives in a
// BottleneckTree, one query + bulk-max + insert per point.
double bottleneck_fast(const OrderedPointSet& pts);

// Insert-only structure for weighted sites supporting
//   query(q)    = min over sites of max(effective weight, |p_k q|),
//   bulk_max(B) = effective weight := max(effective weight, B) for all
//                 currently stored sites,
// where a site's effective weight is its insertion weight raised by every
// bulk_max issued after its insertion. Sites live in static blocks of
// distinct power-of-two sizes (logarithmic method); each block keeps its
// leaves sorted by weight under a balanced hierarchy of disk-union membership
// tests and nearest-neighbor indexes, and a single accumulated bulk-max value.
class BottleneckTree {
 public:
  void insert(const Point2D& p, double w);
  void bulk_max(double B);
  double query(const Point2D& q) const;  // throws std::logic_error when empty

  int size() const { return total_; }
  std::vector<int> block_sizes() const;

 private:
  struct Site {
    Point2D p;
    double w;   // weight at block build time (earlier bulk maxes folded in)
    int index;  // insertion index, tiebreak for deterministic ordering
  };
  // Balanced hierarchy over a block's weight-sorted site range [lo, hi):
  // member answers "is q inside the union of disks D(p_j, w_j)?", nn answers
  // plain nearest-neighbor distance queries.
  struct Node {
    int lo, hi;
    int left = -1, right = -1;
    AwnnStructure member;  // sites with weight -w_j: covered iff min <= 0
    AwnnStructure nn;      // sites with weight 0
  };
  struct Block {
    std::vector<Site> sites;  // sorted by (w, index); empty means slot unused
    std::vector<Node> nodes;
    int root = -1;
    double bmax;  // max bulk value since this block was built (-inf if none)
  };

  static int build_node(Block& b, int lo, int hi);
  static Block build_block(std::vector<Site> sites);
  double query_block(const Block& b, const Point2D& q) const;
  double range_nn(const Block& b, int node, int prefix, const Point2D& q) const;

  std::vector<Block> blocks_;
  int total_ = 0;
};

}  // namespace tspfg
