#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "tspfg/kopt.hpp"
#include "tspfg/reductions.hpp"

using namespace tspfg;

namespace {

SymmetricWeightedGraph random_graph(int n, std::mt19937_64& rng, int lo, int hi) {
  SymmetricWeightedGraph g(n);
  std::uniform_int_distribution<int> w(lo, hi);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_weight(i, j, w(rng));
  return g;
}

Tour three_opt_local_optimum(const SymmetricWeightedGraph& g, Tour t) {
  while (auto r = best_kmove_bruteforce(g, t, 3)) t = apply_kmove(t, r->move);
  return t;
}

// Signature of the 3-move described by a characteristic: removed-edge rank 0
// has endpoints 0 (left) and 1 (right), rank 1 endpoints 2/3, rank 2
// endpoints 4/5.
Signature sig_of(const CharacteristicBits& c) {
  std::vector<int> pi(6, -1);
  auto pair = [&](int a, int b) {
    pi[a] = b;
    pi[b] = a;
  };
  pair(c.lab, 2 + c.rab);
  pair(c.lac, 4 + c.rac);
  pair(2 + c.lbc, 4 + c.rbc);
  return Signature{pi};
}

}  // namespace

TEST_CASE("valid characteristics form cycles and include the known example") {
  const auto cs = valid_characteristics();
  CHECK(cs.size() == 4);
  // Independent structural check: degrees all 2 and one connected component
  // over the contracted-template plus connecting edges.
  for (const auto& c : cs) {
    std::vector<std::pair<int, int>> edges = {
        {1, 2}, {3, 4}, {5, 0},
        {c.lab, 2 + c.rab}, {c.lac, 4 + c.rac}, {2 + c.lbc, 4 + c.rbc}};
    std::vector<int> deg(6, 0), parent(6);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (auto [u, v] : edges) {
      ++deg[u];
      ++deg[v];
      parent[find(u)] = find(v);
    }
    for (int v = 0; v < 6; ++v) {
      CHECK(deg[v] == 2);
      CHECK(find(v) == find(0));
    }
    // Its signature must be a feasible 3-move reconnection distinct from the
    // identity (no removed edge reinserted).
    const auto s = sig_of(c);
    CHECK(signature_is_feasible(3, s));
    for (int i = 0; i < 3; ++i) CHECK(s.pi[2 * i] != 2 * i + 1);
  }
  CHECK(std::find(cs.begin(), cs.end(), CharacteristicBits{0, 1, 1, 1, 0, 0}) !=
        cs.end());
}

TEST_CASE("triangle-to-tour construction layout") {
  SymmetricWeightedGraph g(3);
  g.set_weight(0, 1, 2);
  g.set_weight(0, 2, -1);
  g.set_weight(1, 2, 1);
  const auto inst = nt_to_3opt(g);
  const std::int64_t M = g.max_abs_weight();
  REQUIRE(inst.graph.n() == 6);
  REQUIRE(inst.tour.order == Tour::identity(6).order);
  // Pair edges, connectors, copied weights, same-letter blockers.
  CHECK(inst.graph.weight(0, 1) == 0);
  CHECK(inst.graph.weight(2, 3) == 0);
  CHECK(inst.graph.weight(4, 5) == 0);
  CHECK(inst.graph.weight(1, 2) == -3 * M);
  CHECK(inst.graph.weight(3, 4) == -3 * M);
  CHECK(inst.graph.weight(5, 0) == -3 * M);
  CHECK(inst.graph.weight(0, 3) == 2);   // a_0 b_1 = w(v_0, v_1)
  CHECK(inst.graph.weight(4, 1) == -1);  // a_2 b_0 = w(v_0, v_2)
  CHECK(inst.graph.weight(2, 5) == 1);   // a_1 b_2 = w(v_1, v_2)
  // The tour-closing connector b_2 a_0 outranks the copied-weight rule.
  CHECK(inst.graph.weight(0, 5) == -3 * M);
  CHECK(inst.graph.weight(0, 2) == 3 * M);
  CHECK(inst.graph.weight(1, 3) == 3 * M);
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) {
      const std::int64_t w = inst.graph.weight(u, v);
      CHECK((w == 0 || w == 3 * M || w == -3 * M || (w >= -M && w <= M)));
    }
}

TEST_CASE("triangle presence transfers to improving 3-moves") {
  {
    SymmetricWeightedGraph g(3);
    g.set_weight(0, 1, -1);
    g.set_weight(0, 2, 0);
    g.set_weight(1, 2, 0);
    REQUIRE(negative_triangle_bruteforce(g) == std::array<int, 3>{0, 1, 2});
    const auto inst = nt_to_3opt(g);
    CHECK(best_kmove_bruteforce(inst.graph, inst.tour, 3).has_value());
  }
  {
    SymmetricWeightedGraph g(4);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) g.set_weight(i, j, 1);
    CHECK_FALSE(negative_triangle_bruteforce(g).has_value());
    const auto inst = nt_to_3opt(g);
    CHECK_FALSE(best_kmove_bruteforce(inst.graph, inst.tour, 3).has_value());
  }
  std::mt19937_64 rng(311);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const auto g = random_graph(n, rng, -10, 10);
    const auto inst = nt_to_3opt(g);
    CHECK(negative_triangle_bruteforce(g).has_value() ==
          best_kmove_bruteforce(inst.graph, inst.tour, 3).has_value());
  }
}

TEST_CASE("triangle brute force is stable under relabeling") {
  std::mt19937_64 rng(337);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const auto g = random_graph(n, rng, -8, 8);
    const auto found = negative_triangle_bruteforce(g);
    if (found) {
      const auto [i, j, k] = *found;
      CHECK(i < j);
      CHECK(j < k);
      CHECK(g.weight(i, j) + g.weight(i, k) + g.weight(j, k) < 0);
    }
    // Permute the vertices; presence of a negative triangle is invariant.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    SymmetricWeightedGraph h(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        h.set_weight(perm[a], perm[b], g.weight(a, b));
    CHECK(negative_triangle_bruteforce(h).has_value() == found.has_value());
  }
}

TEST_CASE("prechecks fire on easy improving moves") {
  OrderedPointSet pts;
  pts.points = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};  // crossing tour in index order
  const auto g = rounded_distance_graph(pts);
  const auto red = threeopt_to_nt(g, Tour::identity(4));
  CHECK(red.precheck_hit);
  REQUIRE(red.graph.n() == 3);
  CHECK(negative_triangle_bruteforce(red.graph).has_value());
}

TEST_CASE("component weights encode exact move deltas") {
  std::mt19937_64 rng(353);
  int checked = 0;
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 8 + static_cast<int>(rng() % 3);
    const auto g = random_graph(n, rng, -9, 9);
    Tour t = Tour::identity(n);
    std::shuffle(t.order.begin(), t.order.end(), rng);
    t = three_opt_local_optimum(g, t);

    const auto red = threeopt_to_nt(g, t);
    REQUIRE_FALSE(red.precheck_hit);
    // No improving 3-move left, so no negative triangle either.
    CHECK_FALSE(negative_triangle_bruteforce(red.graph).has_value());

    const int C = static_cast<int>(red.characteristics.size());
    REQUIRE(red.graph.n() == C * 3 * n);
    for (int c = 0; c < C; ++c) {
      const auto& bits = red.characteristics[c];
      const int base = c * 3 * n;
      for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j)
          for (int k = j + 2; k < n; ++k) {
            if (i == 0 && k == n - 1) continue;  // removed edges would share a vertex
            const std::int64_t tri = red.graph.weight(base + i, base + n + j) +
                                     red.graph.weight(base + i, base + 2 * n + k) +
                                     red.graph.weight(base + n + j, base + 2 * n + k);
            KMove m{3, {i, j, k}, sig_of(bits)};
            CHECK(move_is_valid(t, m));
            CHECK(move_delta(g, t, m) == tri);
            ++checked;
          }
    }
  }
  CHECK(checked >= 1000);
}

TEST_CASE("full equivalence chain on random graphs") {
  std::mt19937_64 rng(373);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const auto g = random_graph(n, rng, -20, 20);
    const bool has_triangle = negative_triangle_bruteforce(g).has_value();
    const auto inst = nt_to_3opt(g);
    const bool has_move =
        best_kmove_bruteforce(inst.graph, inst.tour, 3).has_value();
    const auto red = threeopt_to_nt(inst.graph, inst.tour);
    const bool back = negative_triangle_bruteforce(red.graph).has_value();
    CHECK(has_triangle == has_move);
    CHECK(has_move == back);
  }
}
