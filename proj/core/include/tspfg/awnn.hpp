#pragma once

#include <vector>

#include "tspfg/geometry.hpp"

namespace tspfg {

struct WeightedSite {
  Point2D point;
  double weight = 0.0;
};

// Insert-only additively weighted nearest neighbor: minimize weight + |p q|.
// Sites live in static blocks of distinct power-of-two sizes; an insertion
// rebuilds the smallest run of full blocks into the next size. Uniform weight
// shifts (bulk_add) only touch the per-block correction terms. Each static
// block is a kd-tree searched best-bound-first with weight pruning, so answers
// are exact regardless of how well pruning happens to work.
class AwnnStructure {
 public:
  struct QueryResult {
    int site_index = -1;  // insertion index of the argmin site
    double value = 0.0;
  };

  void insert(const WeightedSite& site);
  void bulk_add(double delta);
  QueryResult query_min(const Point2D& q) const;

  int size() const { return total_; }
  std::vector<int> block_sizes() const;

 private:
  struct Entry {
    Point2D p;
    double w;   // weight with the owning block's correction at build time folded in
    int index;  // insertion index
  };
  struct Node {
    double xlo, xhi, ylo, yhi;  // subtree bounding box
    double wmin;                // min weight in subtree
    int left = -1, right = -1;
    Entry e;
  };
  struct Block {
    std::vector<Node> nodes;  // empty means slot unused
    int root = -1;
    double correction = 0.0;
    int count = 0;
  };

  int build(Block& b, std::vector<Entry>& es, int lo, int hi, int axis);
  void collect(const Block& b, int node, std::vector<Entry>& out) const;
  void query_node(const Block& b, int node, const Point2D& q, QueryResult& best) const;

  std::vector<Block> blocks_;
  int total_ = 0;
};

}  // namespace tspfg
