#include "tspfg/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace tspfg {

OrderedPointSet gen_random_points(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  OrderedPointSet pts;
  std::set<std::pair<double, double>> used;
  while (pts.n() < n) {
    Point2D p{u(rng), u(rng)};
    if (used.insert({p.x, p.y}).second) pts.points.push_back(p);
  }
  return pts;
}

SymmetricWeightedGraph gen_random_graph(int n, std::uint64_t seed, std::int64_t wmin,
                                        std::int64_t wmax) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (wmin > wmax) throw std::invalid_argument("empty weight range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> u(wmin, wmax);
  SymmetricWeightedGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_weight(i, j, u(rng));
  return g;
}

DisjointnessInstance gen_disjointness_points(const std::vector<int>& U,
                                             const std::vector<int>& V, bool perturbed) {
  if (U.empty() || U.size() != V.size())
    throw std::invalid_argument("U and V must be non-empty and equally sized");
  for (int x : U)
    if (x <= 0) throw std::invalid_argument("set elements must be positive");
  for (int x : V)
    if (x <= 0) throw std::invalid_argument("set elements must be positive");
  const int n = static_cast<int>(U.size());
  // Visiting order climbs the left line and descends the right line.
  std::vector<int> u_sorted(U), v_sorted(V);
  std::sort(u_sorted.begin(), u_sorted.end());
  std::sort(v_sorted.begin(), v_sorted.end(), std::greater<int>());
  int m = 0;
  for (int x : U) m = std::max(m, x);
  for (int x : V) m = std::max(m, x);
  const double B = m + 1;

  DisjointnessInstance out;
  out.B = B;
  auto& pts = out.points.points;
  pts.reserve(2 * n + 2);
  for (int i = 0; i < n; ++i) pts.push_back({0.0, static_cast<double>(u_sorted[i])});
  pts.push_back({0.0, B});
  pts.push_back({B, B});
  for (int i = 0; i < n; ++i) pts.push_back({B, static_cast<double>(v_sorted[i])});

  if (perturbed) {
    // Distinct x offsets small enough that no edge length crosses the B
    // threshold: points i=1..n+1 move to x=i*delta, the rest to x=B-(i-(n+1))*delta.
    const double delta = 1.0 / (4.0 * B * (n + 1));
    for (int i = 1; i <= 2 * n + 2; ++i) {
      if (i <= n + 1)
        pts[i - 1].x = i * delta;
      else
        pts[i - 1].x = B - (i - (n + 1)) * delta;
    }
  }
  out.points.validate();
  return out;
}

}  // namespace tspfg
