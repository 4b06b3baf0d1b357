#include <doctest.h>

#include <limits>
#include <random>

#include "tspfg/generators.hpp"
#include "tspfg/pyramidal.hpp"

using namespace tspfg;

namespace {
// Exhaustive minimum over all assignments of interior points to the two chains.
double pyramidal_bruteforce(const OrderedPointSet& pts) {
  const int n = pts.n();
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 0; mask < (1 << (n - 2)); ++mask) {
    std::vector<int> up{0}, down;
    for (int i = 1; i <= n - 2; ++i)
      (mask >> (i - 1) & 1 ? up : down).push_back(i);
    up.push_back(n - 1);
    double c = 0.0;
    for (size_t i = 1; i < up.size(); ++i) c += euclid_dist(pts[up[i - 1]], pts[up[i]]);
    int prev = n - 1;
    for (auto it = down.rbegin(); it != down.rend(); ++it) {
      c += euclid_dist(pts[prev], pts[*it]);
      prev = *it;
    }
    c += euclid_dist(pts[prev], pts[0]);
    best = std::min(best, c);
  }
  return best;
}
}  // namespace

TEST_CASE("closed forms for tiny inputs") {
  OrderedPointSet two;
  two.points = {{0, 0}, {3, 4}};
  for (auto solve : {pyramidal_quadratic, pyramidal_fast}) {
    auto r = solve(two);
    CHECK(r.length == doctest::Approx(10.0));
    CHECK(r.tour.order == std::vector<int>{0, 1});
  }
  OrderedPointSet tri;
  tri.points = {{0, 0}, {4, 0}, {0, 3}};
  const double perim = 4 + 5 + 3;
  for (auto solve : {pyramidal_quadratic, pyramidal_fast}) {
    auto r = solve(tri);
    CHECK(r.length == doctest::Approx(perim));
    CHECK(tour_cost(tri, r.tour) == doctest::Approx(perim));
  }
}

TEST_CASE("quadratic solver matches exhaustive enumeration") {
  for (int seed = 0; seed < 30; ++seed) {
    auto pts = gen_random_points(8, 1000 + seed);
    auto r = pyramidal_quadratic(pts);
    CHECK(r.length == doctest::Approx(pyramidal_bruteforce(pts)).epsilon(1e-9));
    CHECK(tour_cost(pts, r.tour) == doctest::Approx(r.length).epsilon(1e-9));
    CHECK(is_pyramidal(r.tour));
  }
}

TEST_CASE("fast solver matches the quadratic oracle") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> size(5, 300);
  Instrumentation::enabled() = true;
  Instrumentation::violations() = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const int n = size(rng);
    auto pts = gen_random_points(n, rng());
    auto rq = pyramidal_quadratic(pts);
    auto rf = pyramidal_fast(pts);
    CHECK(rf.length ==
          doctest::Approx(rq.length).epsilon(1e-6));
    CHECK(tour_cost(pts, rf.tour) == doctest::Approx(rf.length).epsilon(1e-9));
    CHECK(is_pyramidal(rf.tour));
    // Shared tie rule means the witnesses coincide, not just the lengths.
    CHECK(rf.tour.order == rq.tour.order);
  }
  CHECK(Instrumentation::violations() == 0);
  Instrumentation::enabled() = false;
}

TEST_CASE("row shift identity holds against the full table") {
  auto pts = gen_random_points(40, 9);
  const int n = pts.n();
  // Full quadratic table, no rolling row.
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0));
  A[1][0] = euclid_dist(pts[0], pts[1]);
  for (int i = 1; i <= n - 2; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < i; ++k)
      best = std::min(best, A[i][k] + euclid_dist(pts[k], pts[i + 1]));
    for (int j = 0; j < i; ++j) A[i + 1][j] = A[i][j] + euclid_dist(pts[i], pts[i + 1]);
    A[i + 1][i] = best;
  }
  for (int i = 1; i <= n - 2; ++i)
    for (int j = 0; j < i; ++j)
      CHECK(A[i + 1][j] ==
            doctest::Approx(A[i][j] + euclid_dist(pts[i], pts[i + 1])).epsilon(1e-12));
  // And the rolled-up solver agrees with the table's closing rule.
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n - 1; ++k)
    best = std::min(best, A[n - 1][k] + euclid_dist(pts[k], pts[n - 1]));
  CHECK(pyramidal_quadratic(pts).length == doctest::Approx(best).epsilon(1e-12));
}
