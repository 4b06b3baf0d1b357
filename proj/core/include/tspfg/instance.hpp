#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tspfg/geometry.hpp"

namespace tspfg {

// Planar points with a fixed visiting order (index order).
struct OrderedPointSet {
  std::vector<Point2D> points;

  int n() const { return static_cast<int>(points.size()); }
  const Point2D& operator[](int i) const { return points[i]; }

  // Throws if fewer than two points, any non-finite coordinate, or duplicates.
  void validate() const;
};

// Complete graph with symmetric 64-bit integer weights, no self loops.
class SymmetricWeightedGraph {
 public:
  SymmetricWeightedGraph() = default;
  explicit SymmetricWeightedGraph(int n) : n_(n), w_(static_cast<size_t>(n) * n, 0) {
    if (n < 2) throw std::invalid_argument("graph needs at least 2 vertices");
  }

  int n() const { return n_; }
  std::int64_t weight(int i, int j) const { return w_[static_cast<size_t>(i) * n_ + j]; }
  void set_weight(int i, int j, std::int64_t w) {
    if (i == j) throw std::invalid_argument("no self loops");
    w_[static_cast<size_t>(i) * n_ + j] = w;
    w_[static_cast<size_t>(j) * n_ + i] = w;
  }
  // Max absolute weight, at least 1.
  std::int64_t max_abs_weight() const;

  const std::int64_t* row(int i) const { return w_.data() + static_cast<size_t>(i) * n_; }

 private:
  int n_ = 0;
  std::vector<std::int64_t> w_;
};

struct Tour {
  std::vector<int> order;

  int n() const { return static_cast<int>(order.size()); }
  // Throws unless order is a permutation of 0..n-1.
  void validate() const;

  static Tour identity(int n) {
    Tour t;
    t.order.resize(n);
    for (int i = 0; i < n; ++i) t.order[i] = i;
    return t;
  }
};

double tour_cost(const OrderedPointSet& pts, const Tour& t);
std::int64_t tour_cost(const SymmetricWeightedGraph& g, const Tour& t);

}  // namespace tspfg
