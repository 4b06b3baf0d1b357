#pragma once

#include <cstdint>
#include <vector>

#include "tspfg/instance.hpp"

namespace tspfg {

// The 2-move removing tour edges p and q (p < q): edges (w_p, w_{p+1}) and
// (w_q, w_{q+1}) leave, (w_p, w_q) and (w_{p+1}, w_{q+1}) enter, and the
// segment w_{p+1}..w_q is reversed.
struct TwoOptMove {
  int p = -1, q = -1;
  double delta = 0.0;
};

// Cost change of that move. Grouping inserted and removed sums separately
// makes the value bitwise invariant under swapping the two edges' roles and
// under reversing both orientations, so the engine and the naive reference
// agree exactly; it also makes degenerate shared-endpoint moves exactly 0.
inline double two_move_delta(const OrderedPointSet& pts, int u, int v, int x, int y) {
  return (euclid_dist(pts[u], pts[x]) + euclid_dist(pts[v], pts[y])) -
         (euclid_dist(pts[u], pts[v]) + euclid_dist(pts[x], pts[y]));
}

// Full O(n^2) scan; ties broken toward the lexicographically smallest (p, q).
TwoOptMove best_two_move_naive(const OrderedPointSet& pts, const Tour& t);

// Best-improvement repeated 2-opt: one search structure per tour edge e
// holding the remaining n-1 edges in path order, with lazy reversal flags
// and min-cost aggregates for both orientations, so each iteration finds the
// best 2-move from the n root aggregates and updates every structure with a
// small amount of sequential work after O(n^2) preprocessing.
//
// Each per-edge structure is a two-level tree: the root is a short ordered
// list of block descriptors; each block is a leaf run of edges stored in an
// immutable payload arena, carrying its own reversal flag and both-
// orientation aggregates. A 2-move then costs two descriptor splits, one
// reverse-and-flip pass over the descriptor list, and two in-place payload
// overwrites per structure - purely sequential memory traffic, which on real
// hardware beats pointer-chased binary trees by a wide margin. Descriptor
// fragmentation is bounded by amortized compaction.
class TourEngine {
 public:
  // Requires n >= 4.
  TourEngine(const OrderedPointSet& pts, const Tour& t);

  // Best move under the same tie rule as best_two_move_naive; its delta may
  // be non-negative when the tour is 2-opt locally optimal.
  TwoOptMove best_move() const;

  // Applies a move on the current tour; throws std::invalid_argument unless
  // 0 <= p < q < n.
  void apply(const TwoOptMove& m);

  // Applies best moves while strictly improving, up to max_iters; returns the
  // applied deltas in order.
  std::vector<double> run_to_local_opt(int max_iters);

  Tour tour() const;
  double cost() const;
  int n() const { return n_; }

 private:
  struct Edge {
    int a, b;          // stored orientation of this edge
    double smc, smrc;  // its move cost against the reference edge, both ways
  };
  // A run of consecutive path edges: arena[off .. off+len) read forward, or
  // backward with orientations flipped when rev is set.
  struct Block {
    int off, len;
    bool rev;
    double mc, mrc;  // min move cost over the run, current / flipped reading
  };
  struct TreeState {
    int u = -1, v = -1;  // reference orientation of the defining edge
    int pos = -1;        // canonical position of the defining edge
    bool flip = false;   // reference orientation opposite to canonical
    double root_mc = 0;  // min over blocks, current orientation
    std::vector<Edge> arena;
    std::vector<Block> blocks;
  };

  static void fold_block(const std::vector<Edge>& arena, Block& b);
  // Splits the block list so that a block boundary falls at rank r.
  static void split_blocks(TreeState& tr, int r);
  Edge oriented_edge(const TreeState& tr, int a, int b) const;
  void rebuild_tree(int tid, int pos);
  void compact(TreeState& tr) const;
  void audit() const;

  const OrderedPointSet& pts_;
  int n_;
  int block_cap_;                    // target leaf-run length
  std::vector<int> w_;               // current tour vertex order
  std::vector<TreeState> trees_;     // tree i belongs to some current edge
  std::vector<int> tree_at_pos_;     // canonical edge position -> tree id
};

}  // namespace tspfg
