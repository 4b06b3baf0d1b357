#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tspfg/geometry.hpp"

namespace tspfg {

// Upper envelope of equal-radius circles, stored as a sorted run of arcs.
// Every circle contributes at most one arc and arc order equals center
// x-order, so an insertion touches one contiguous run of arcs.
class ArcEnvelope {
 public:
  struct Arc {
    Point2D c;     // owner center (in the envelope's own frame)
    int owner;     // global disk id
    double xlo, xhi;
  };

  explicit ArcEnvelope(double radius) : r_(radius) {}

  void insert(const Point2D& c, int owner);
  // True when q.y <= envelope(q.x); callers guarantee q.y >= every center y.
  bool covers(const Point2D& q) const;

  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  bool arc_affected(const Point2D& c, const Arc& a, double tol = 0.0) const;
  bool arc_fully_covered(const Point2D& c, const Arc& a) const;
  int find_affected(const Point2D& c) const;  // tree-style descent
  double upper(const Point2D& c, double x) const;
  double upper_crossing(const Point2D& a, const Point2D& b) const;
  void audit(const Point2D& c) const;

  double r_;
  std::vector<Arc> arcs_;
};

// Semi-dynamic point location in a union of congruent disks. Coordinates are
// scaled by sqrt(2)/radius on the way in so every disk has radius sqrt(2)
// against the unit grid; a cell holding a center is then fully covered, and a
// query only has to inspect the <= 21 nearby cells through the four
// directional envelopes of each.
class DiskUnion {
 public:
  explicit DiskUnion(double radius);

  void insert(const Point2D& center);
  bool contains(const Point2D& q) const;

  int size() const { return count_; }

  // Exposed for structural tests: the four envelopes of an active cell.
  struct Cell {
    ArcEnvelope top, bottom, left, right;
    std::vector<Point2D> centers;  // scaled
    Cell();
  };
  using Strip = std::map<int, Cell>;                 // active cells by y
  const std::map<int, Strip>& strips() const { return strips_; }

 private:
  const Cell* find_cell(int cx, int cy) const;

  double scale_;
  int count_ = 0;
  std::map<int, Strip> strips_;  // active strips by x
};

}  // namespace tspfg
