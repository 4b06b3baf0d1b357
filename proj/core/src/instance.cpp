#include "tspfg/instance.hpp"

#include <algorithm>
#include <cmath>

namespace tspfg {

void OrderedPointSet::validate() const {
  if (points.size() < 2) throw std::invalid_argument("need at least 2 points");
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("non-finite coordinate");
  }
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](const Point2D& a, const Point2D& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) throw std::invalid_argument("duplicate point");
}

std::int64_t SymmetricWeightedGraph::max_abs_weight() const {
  std::int64_t m = 1;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) m = std::max<std::int64_t>(m, std::llabs(weight(i, j)));
  return m;
}

void Tour::validate() const {
  std::vector<char> seen(order.size(), 0);
  for (int v : order) {
    if (v < 0 || v >= n() || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = 1;
  }
}

double tour_cost(const OrderedPointSet& pts, const Tour& t) {
  if (t.n() != pts.n()) throw std::invalid_argument("tour/instance size mismatch");
  double c = 0.0;
  for (int i = 0; i < t.n(); ++i)
    c += euclid_dist(pts[t.order[i]], pts[t.order[(i + 1) % t.n()]]);
  return c;
}

std::int64_t tour_cost(const SymmetricWeightedGraph& g, const Tour& t) {
  if (t.n() != g.n()) throw std::invalid_argument("tour/instance size mismatch");
  std::int64_t c = 0;
  for (int i = 0; i < t.n(); ++i)
    c += g.weight(t.order[i], t.order[(i + 1) % t.n()]);
  return c;
}

}  // namespace tspfg
