#pragma once

#include <cmath>

namespace tspfg {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D& a, const Point2D& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point2D& a, const Point2D& b) { return !(a == b); }
};

inline double euclid_dist(const Point2D& p, const Point2D& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return std::sqrt(dx * dx + dy * dy);
}

// Absolute tolerance for geometric comparisons. Overridable per run (CLI --eps).
inline double& geometry_eps() {
  static double eps = 1e-9;
  return eps;
}

// Global toggle for the expensive structural self-checks inside the dynamic
// structures. Tests flip this on; violations are counted, not thrown, so a
// suite can report an exact total.
struct Instrumentation {
  static bool& enabled() {
    static bool on = false;
    return on;
  }
  static long long& violations() {
    static long long count = 0;
    return count;
  }
  static void check(bool ok) {
    if (!ok) ++violations();
  }
};

}  // namespace tspfg
