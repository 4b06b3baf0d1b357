#include "tspfg/pyramidal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tspfg/awnn.hpp"

namespace tspfg {

namespace detail {

Tour reconstruct_pyramidal(int n, const std::vector<int>& pred, int kfinal) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n);
  edges.emplace_back(kfinal, n - 1);
  int i = n - 1, j = kfinal;
  while (i >= 2) {
    if (j == i - 1) {
      const int k = pred[i];
      edges.emplace_back(k, i);
      j = k;
    } else {
      edges.emplace_back(i - 1, i);
    }
    --i;
  }
  edges.emplace_back(0, 1);

  std::vector<std::array<int, 2>> adj(n, {-1, -1});
  for (auto [a, b] : edges) {
    auto attach = [&](int u, int v) {
      if (adj[u][0] < 0)
        adj[u][0] = v;
      else
        adj[u][1] = v;
    };
    attach(a, b);
    attach(b, a);
  }
  Tour t;
  t.order.reserve(n);
  int prev = -1, cur = 0;
  for (int step = 0; step < n; ++step) {
    t.order.push_back(cur);
    int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    // Deterministic start direction: from p_0 walk toward the smaller neighbor.
    if (step == 0) nxt = std::min(adj[cur][0], adj[cur][1]);
    prev = cur;
    cur = nxt;
  }
  return t;
}

}  // namespace detail

PyramidalResult pyramidal_quadratic(const OrderedPointSet& pts) {
  const int n = pts.n();
  if (n < 2) throw std::invalid_argument("need at least 2 points");
  if (n == 2)
    return {2.0 * euclid_dist(pts[0], pts[1]), Tour::identity(2)};

  std::vector<double> row(n, 0.0);  // row[j] = A[i][j] for j < i
  std::vector<int> pred(n, -1);
  row[0] = euclid_dist(pts[0], pts[1]);
  for (int i = 1; i <= n - 2; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (int k = 0; k < i; ++k) {
      const double v = row[k] + euclid_dist(pts[k], pts[i + 1]);
      if (v < best) {
        best = v;
        arg = k;
      }
    }
    const double step = euclid_dist(pts[i], pts[i + 1]);
    for (int j = 0; j < i; ++j) row[j] += step;
    row[i] = best;
    pred[i + 1] = arg;
  }
  double best = std::numeric_limits<double>::infinity();
  int kfinal = -1;
  for (int k = 0; k < n - 1; ++k) {
    const double v = row[k] + euclid_dist(pts[k], pts[n - 1]);
    if (v < best) {
      best = v;
      kfinal = k;
    }
  }
  return {best, detail::reconstruct_pyramidal(n, pred, kfinal)};
}

PyramidalResult pyramidal_fast(const OrderedPointSet& pts) {
  const int n = pts.n();
  if (n < 2) throw std::invalid_argument("need at least 2 points");
  if (n == 2)
    return {2.0 * euclid_dist(pts[0], pts[1]), Tour::identity(2)};

  AwnnStructure row;
  std::vector<int> pred(n, -1);
  row.insert({pts[0], euclid_dist(pts[0], pts[1])});

  // Shadow DP row kept only while instrumented, to cross-check the structure's
  // answers against the plain recurrence at every step.
  const bool audit = Instrumentation::enabled() && n <= 2000;
  std::vector<double> shadow;
  if (audit) {
    shadow.assign(n, 0.0);
    shadow[0] = euclid_dist(pts[0], pts[1]);
  }

  for (int i = 1; i <= n - 2; ++i) {
    const auto q = row.query_min(pts[i + 1]);
    pred[i + 1] = q.site_index;
    row.bulk_add(euclid_dist(pts[i], pts[i + 1]));
    row.insert({pts[i], q.value});
    if (audit) {
      double best = std::numeric_limits<double>::infinity();
      int arg = -1;
      for (int k = 0; k < i; ++k) {
        const double v = shadow[k] + euclid_dist(pts[k], pts[i + 1]);
        if (v < best) {
          best = v;
          arg = k;
        }
      }
      Instrumentation::check(std::fabs(best - q.value) <= 1e-9 && arg == q.site_index);
      const double step = euclid_dist(pts[i], pts[i + 1]);
      for (int j = 0; j < i; ++j) shadow[j] += step;
      shadow[i] = best;
    }
  }
  const auto fin = row.query_min(pts[n - 1]);
  return {fin.value, detail::reconstruct_pyramidal(n, pred, fin.site_index)};
}

bool is_pyramidal(const Tour& t) {
  const int n = t.n();
  // Rotate so index 0 leads, then demand a single rise to n-1 and a fall back.
  int pos0 = 0;
  while (t.order[pos0] != 0) ++pos0;
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = t.order[(pos0 + i) % n];
  if (n > 2 && seq[1] > seq[n - 1]) std::reverse(seq.begin() + 1, seq.end());
  int i = 1;
  while (i < n && seq[i] > seq[i - 1]) ++i;
  if (i < n && seq[i - 1] != n - 1) return false;
  for (; i < n; ++i)
    if (seq[i] > seq[i - 1]) return false;
  return true;
}

}  // namespace tspfg
