#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tspfg/generators.hpp"
#include "tspfg/two_opt_engine.hpp"

using namespace tspfg;

namespace {

double naive_cost(const OrderedPointSet& pts, const Tour& t) {
  double c = 0.0;
  for (int i = 0; i < t.n(); ++i)
    c += euclid_dist(pts[t.order[i]], pts[t.order[(i + 1) % t.n()]]);
  return c;
}

Tour apply_naive(const Tour& t, const TwoOptMove& m) {
  Tour out = t;
  std::reverse(out.order.begin() + m.p + 1, out.order.begin() + m.q + 1);
  return out;
}

}  // namespace

TEST_CASE("engine uncrosses the square in one move") {
  OrderedPointSet pts;
  pts.points = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  Instrumentation::enabled() = true;
  Instrumentation::violations() = 0;
  TourEngine eng(pts, Tour::identity(4));
  const auto m = eng.best_move();
  CHECK(m.delta == doctest::Approx(2.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(m.delta == best_two_move_naive(pts, Tour::identity(4)).delta);
  const auto hist = eng.run_to_local_opt(100);
  REQUIRE(hist.size() == 1);
  CHECK(eng.cost() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(best_two_move_naive(pts, eng.tour()).delta >= 0.0);
  CHECK(Instrumentation::violations() == 0);
  Instrumentation::enabled() = false;
}

TEST_CASE("hull tour admits no improving move") {
  OrderedPointSet pts;
  for (int i = 0; i < 12; ++i) {
    const double a = 2 * 3.14159265358979323846 * i / 12;
    pts.points.push_back({std::cos(a), std::sin(a)});
  }
  Instrumentation::enabled() = true;
  Instrumentation::violations() = 0;
  TourEngine eng(pts, Tour::identity(12));
  CHECK(eng.best_move().delta >= 0.0);
  CHECK(eng.run_to_local_opt(100).empty());
  CHECK(Instrumentation::violations() == 0);
  Instrumentation::enabled() = false;
}

TEST_CASE("move sequence matches the naive reference exactly") {
  std::mt19937_64 rng(421);
  Instrumentation::enabled() = true;
  Instrumentation::violations() = 0;
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 8 + static_cast<int>(rng() % 43);
    auto pts = gen_random_points(n, rng());
    Tour t = Tour::identity(n);
    std::shuffle(t.order.begin(), t.order.end(), rng);

    TourEngine eng(pts, t);
    Tour ref = t;
    int steps = 0;
    while (steps < 10000) {
      const auto em = eng.best_move();
      const auto nm = best_two_move_naive(pts, ref);
      CHECK(em.p == nm.p);
      CHECK(em.q == nm.q);
      CHECK(em.delta == nm.delta);  // bitwise: shared cost formula
      if (!(nm.delta < 0.0)) break;
      const double before = eng.cost();
      eng.apply(em);
      CHECK(eng.cost() == doctest::Approx(before + em.delta).epsilon(1e-9));
      ref = apply_naive(ref, nm);
      CHECK(eng.tour().order == ref.order);
      ++steps;
    }
    CHECK(steps < 10000);
    // Locally optimal under the full scan.
    CHECK(best_two_move_naive(pts, eng.tour()).delta >= 0.0);
  }
  CHECK(Instrumentation::violations() == 0);
  Instrumentation::enabled() = false;
}

TEST_CASE("history sums to the total improvement") {
  std::mt19937_64 rng(457);
  auto pts = gen_random_points(120, 999);
  Tour t = Tour::identity(120);
  std::shuffle(t.order.begin(), t.order.end(), rng);
  TourEngine eng(pts, t);
  const double before = eng.cost();
  const auto hist = eng.run_to_local_opt(100000);
  double sum = 0.0;
  for (double d : hist) {
    CHECK(d < 0.0);
    sum += d;
  }
  CHECK(eng.cost() == doctest::Approx(before + sum).epsilon(1e-6));
  CHECK(eng.cost() == doctest::Approx(naive_cost(pts, eng.tour())).epsilon(1e-9));
  CHECK(best_two_move_naive(pts, eng.tour()).delta >= 0.0);
}

TEST_CASE("degenerate adjacent-edge move leaves the tour unchanged") {
  auto pts = gen_random_points(10, 4242);
  TourEngine eng(pts, Tour::identity(10));
  const double before = eng.cost();
  const Tour t0 = eng.tour();
  eng.apply({3, 4, 0.0});  // reverses a single vertex: no-op on the cycle
  CHECK(eng.cost() == doctest::Approx(before).epsilon(1e-12));
  CHECK(eng.tour().order == t0.order);
  CHECK_THROWS(eng.apply({5, 3, 0.0}));
  CHECK_THROWS(eng.apply({-1, 3, 0.0}));
}
