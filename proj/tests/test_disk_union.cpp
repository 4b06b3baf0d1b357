#include <doctest.h>

#include <random>

#include "tspfg/disk_union.hpp"

using namespace tspfg;

namespace {
bool scan_contains(const std::vector<Point2D>& centers, const Point2D& q, double r) {
  for (const auto& c : centers)
    if (euclid_dist(c, q) <= r + geometry_eps()) return true;
  return false;
}
}  // namespace

TEST_CASE("empty and trivial membership") {
  DiskUnion du(1.0);
  CHECK_FALSE(du.contains({0, 0}));
  du.insert({0.5, 0.5});
  CHECK(du.contains({0.5, 0.5}));
  CHECK(du.contains({1.4, 0.5}));
  CHECK_FALSE(du.contains({1.6, 0.5}));
}

TEST_CASE("first insert produces one active cell with single-arc envelopes") {
  DiskUnion du(2.0);
  du.insert({0.3, 0.7});
  REQUIRE(du.strips().size() == 1);
  const auto& strip = du.strips().begin()->second;
  REQUIRE(strip.size() == 1);
  const auto& cell = strip.begin()->second;
  CHECK(cell.top.arcs().size() == 1);
  CHECK(cell.bottom.arcs().size() == 1);
  CHECK(cell.left.arcs().size() == 1);
  CHECK(cell.right.arcs().size() == 1);
}

TEST_CASE("inserting the same center twice leaves arc counts unchanged") {
  DiskUnion du(1.5);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 3);
  for (int i = 0; i < 30; ++i) du.insert({u(rng), u(rng)});
  du.insert({1.0, 1.0});
  std::vector<size_t> before;
  for (const auto& [x, strip] : du.strips())
    for (const auto& [y, cell] : strip) {
      before.push_back(cell.top.arcs().size());
      before.push_back(cell.bottom.arcs().size());
      before.push_back(cell.left.arcs().size());
      before.push_back(cell.right.arcs().size());
    }
  du.insert({1.0, 1.0});
  std::vector<size_t> after;
  for (const auto& [x, strip] : du.strips())
    for (const auto& [y, cell] : strip) {
      after.push_back(cell.top.arcs().size());
      after.push_back(cell.bottom.arcs().size());
      after.push_back(cell.left.arcs().size());
      after.push_back(cell.right.arcs().size());
    }
  CHECK(before == after);
}

TEST_CASE("random inserts keep structural invariants") {
  Instrumentation::enabled() = true;
  Instrumentation::violations() = 0;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 5);
  DiskUnion du(0.8);
  for (int i = 0; i < 200; ++i) du.insert({u(rng), u(rng)});
  CHECK(Instrumentation::violations() == 0);
  Instrumentation::enabled() = false;
}

TEST_CASE("agrees with linear scan on random queries") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-2, 8);
  const double r = 0.6;
  DiskUnion du(r);
  std::vector<Point2D> centers;
  for (int i = 0; i < 500; ++i) {
    Point2D c{u(rng), u(rng)};
    du.insert(c);
    centers.push_back(c);
  }
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    Point2D q{u(rng), u(rng)};
    if (du.contains(q) != scan_contains(centers, q, r)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("agrees with linear scan under clustered centers") {
  // Many centers in few cells stresses the envelope maintenance.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1.5);
  const double r = 1.1;
  DiskUnion du(r);
  std::vector<Point2D> centers;
  Instrumentation::enabled() = true;
  Instrumentation::violations() = 0;
  for (int i = 0; i < 300; ++i) {
    Point2D c{u(rng), u(rng)};
    du.insert(c);
    centers.push_back(c);
  }
  std::uniform_real_distribution<double> uq(-2, 4);
  int mismatches = 0;
  for (int i = 0; i < 5000; ++i) {
    Point2D q{uq(rng), uq(rng)};
    if (du.contains(q) != scan_contains(centers, q, r)) ++mismatches;
  }
  CHECK(mismatches == 0);
  CHECK(Instrumentation::violations() == 0);
  Instrumentation::enabled() = false;
}

TEST_CASE("collinear centers (shared x) are handled") {
  DiskUnion du(2.0);
  std::vector<Point2D> centers;
  for (int i = 1; i <= 12; ++i) {
    Point2D c{0.0, static_cast<double>(i)};
    du.insert(c);
    centers.push_back(c);
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4, 16);
  int mismatches = 0;
  for (int i = 0; i < 3000; ++i) {
    Point2D q{u(rng) / 4, u(rng)};
    if (du.contains(q) != scan_contains(centers, q, 2.0)) ++mismatches;
  }
  CHECK(mismatches == 0);
}
