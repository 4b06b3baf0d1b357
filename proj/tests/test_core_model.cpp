#include <doctest.h>

#include <random>
#include <set>

#include "tspfg/generators.hpp"
#include "tspfg/io.hpp"

using namespace tspfg;

TEST_CASE("euclid_dist basics") {
  CHECK(euclid_dist({0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(euclid_dist({1, 1}, {1, 1}) == 0.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    Point2D p{u(rng), u(rng)}, q{u(rng), u(rng)};
    CHECK(euclid_dist(p, q) == euclid_dist(q, p));
  }
}

TEST_CASE("tour_cost closed forms and oracle") {
  OrderedPointSet square;
  square.points = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(tour_cost(square, Tour::identity(4)) == doctest::Approx(4.0));

  OrderedPointSet two;
  two.points = {{0, 0}, {3, 4}};
  CHECK(tour_cost(two, Tour::identity(2)) == doctest::Approx(10.0));

  auto pts = gen_random_points(10, 42);
  Tour t = Tour::identity(10);
  double again = 0.0;
  for (int i = 0; i < 10; ++i)
    again += euclid_dist(pts[t.order[i]], pts[t.order[(i + 1) % 10]]);
  CHECK(tour_cost(pts, t) == doctest::Approx(again).epsilon(1e-12));
}

TEST_CASE("tour_cost invariant under rotation and reversal") {
  auto pts = gen_random_points(12, 5);
  Tour t = Tour::identity(12);
  const double base = tour_cost(pts, t);
  Tour rot = t;
  std::rotate(rot.order.begin(), rot.order.begin() + 5, rot.order.end());
  CHECK(tour_cost(pts, rot) == doctest::Approx(base).epsilon(1e-12));
  Tour rev = t;
  std::reverse(rev.order.begin(), rev.order.end());
  CHECK(tour_cost(pts, rev) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("gen_random determinism and invariants") {
  auto a = gen_random_points(50, 99);
  auto b = gen_random_points(50, 99);
  REQUIRE(a.n() == b.n());
  for (int i = 0; i < a.n(); ++i) CHECK(a[i] == b[i]);
  CHECK_NOTHROW(a.validate());

  auto g1 = gen_random_graph(5, 1, -10, 10);
  auto g2 = gen_random_graph(5, 1, -10, 10);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      CHECK(g1.weight(i, j) == g2.weight(i, j));
      CHECK(g1.weight(i, j) == g1.weight(j, i));
      CHECK(g1.weight(i, j) >= -10);
      CHECK(g1.weight(i, j) <= 10);
    }
}

TEST_CASE("disjointness construction layout") {
  auto inst = gen_disjointness_points({1, 2}, {2, 5}, false);
  CHECK(inst.B == 6.0);
  REQUIRE(inst.points.n() == 6);
  const std::vector<Point2D> expect = {{0, 1}, {0, 2}, {0, 6}, {6, 6}, {6, 5}, {6, 2}};
  for (int i = 0; i < 6; ++i) CHECK(inst.points[i] == expect[i]);

  // Unperturbed points use exactly the two x values 0 and B.
  std::set<double> xs;
  for (const auto& p : inst.points.points) xs.insert(p.x);
  CHECK(xs == std::set<double>{0.0, 6.0});
}

TEST_CASE("perturbed disjointness keeps non-matching cross edges long") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    std::set<int> su, sv;
    std::uniform_int_distribution<int> val(1, 30);
    while (static_cast<int>(su.size()) < 5) su.insert(val(rng));
    while (static_cast<int>(sv.size()) < 5) sv.insert(val(rng));
    std::vector<int> U(su.begin(), su.end()), V(sv.begin(), sv.end());
    auto inst = gen_disjointness_points(U, V, true);
    const int n = 5;
    REQUIRE(inst.points.n() == 2 * n + 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto& pl = inst.points[i];
        const auto& pr = inst.points[n + 2 + j];
        if (pl.y != pr.y) CHECK(euclid_dist(pl, pr) > inst.B);
      }
  }
}

TEST_CASE("serialization round trip is exact") {
  auto pts = gen_random_points(17, 8);
  Instance i1 = pts;
  auto back = parse_instance(serialize_instance(i1));
  const auto& p2 = std::get<OrderedPointSet>(back);
  REQUIRE(p2.n() == pts.n());
  for (int i = 0; i < pts.n(); ++i) CHECK(p2[i] == pts[i]);

  auto g = gen_random_graph(9, 4, -1000, 1000);
  auto gb = std::get<SymmetricWeightedGraph>(parse_instance(serialize_instance(Instance{g})));
  REQUIRE(gb.n() == g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j) CHECK(gb.weight(i, j) == g.weight(i, j));

  Tour t = Tour::identity(6);
  std::swap(t.order[1], t.order[4]);
  auto tb = parse_tour(serialize_tour(t));
  CHECK(tb.order == t.order);
}

TEST_CASE("parse rejects coincident points") {
  CHECK_THROWS(parse_instance(
      R"({"type":"points","order_is_given":true,"coords":[[0,0],[1,1],[0,0]]})"));
}
