#include <doctest.h>

#include <limits>
#include <random>

#include "tspfg/awnn.hpp"

using namespace tspfg;

namespace {
struct RefSite {
  Point2D p;
  double w;
};

// Linear-scan ground truth with the same tie rule (lowest insertion index).
AwnnStructure::QueryResult scan_min(const std::vector<RefSite>& sites, const Point2D& q) {
  AwnnStructure::QueryResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < sites.size(); ++i) {
    const double v = sites[i].w + euclid_dist(sites[i].p, q);
    if (v < best.value) {
      best.value = v;
      best.site_index = static_cast<int>(i);
    }
  }
  return best;
}
}  // namespace

TEST_CASE("block sizes follow the binary decomposition") {
  AwnnStructure s;
  s.insert({{0, 0}, 0});
  CHECK(s.block_sizes() == std::vector<int>{1});
  s.insert({{1, 0}, 0});
  s.insert({{2, 0}, 0});
  CHECK(s.block_sizes() == std::vector<int>{1, 2});
  for (int i = 0; i < 10; ++i) s.insert({{0, double(i)}, 0});
  CHECK(s.block_sizes() == std::vector<int>{1, 4, 8});  // 13 = 1 + 4 + 8
}

TEST_CASE("single site query and bulk_add") {
  AwnnStructure s;
  s.insert({{0, 0}, 2.0});
  auto r = s.query_min({3, 4});
  CHECK(r.value == doctest::Approx(7.0));
  CHECK(r.site_index == 0);
  s.bulk_add(1.5);
  CHECK(s.query_min({3, 4}).value == doctest::Approx(8.5));
  s.bulk_add(0.0);
  CHECK(s.query_min({3, 4}).value == doctest::Approx(8.5));
}

TEST_CASE("weight can beat proximity") {
  AwnnStructure s;
  s.insert({{0, 0}, 0.0});
  s.insert({{3, 4}, 100.0});
  auto r = s.query_min({3, 4});
  CHECK(r.value == doctest::Approx(5.0));
  CHECK(r.site_index == 0);
}

TEST_CASE("bulk_add is additive and preserves the argmin") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  AwnnStructure a, b;
  for (int i = 0; i < 37; ++i) {
    WeightedSite s{{u(rng), u(rng)}, u(rng)};
    a.insert(s);
    b.insert(s);
  }
  a.bulk_add(0.25);
  a.bulk_add(0.5);
  b.bulk_add(0.75);
  for (int i = 0; i < 50; ++i) {
    Point2D q{u(rng), u(rng)};
    auto ra = a.query_min(q);
    auto rb = b.query_min(q);
    CHECK(ra.site_index == rb.site_index);
    CHECK(ra.value == doctest::Approx(rb.value).epsilon(1e-12));
  }
}

TEST_CASE("matches linear scan through interleaved operations") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(0, 1);
  AwnnStructure s;
  std::vector<RefSite> ref;
  Instrumentation::enabled() = true;
  Instrumentation::violations() = 0;
  for (int i = 0; i < 500; ++i) {
    WeightedSite site{{u(rng), u(rng)}, u(rng) * 10};
    s.insert(site);
    ref.push_back({site.point, site.weight});
    if (i % 7 == 0) {
      const double d = u(rng);
      s.bulk_add(d);
      for (auto& r : ref) r.w += d;
    }
    Point2D q{u(rng), u(rng)};
    auto got = s.query_min(q);
    auto want = scan_min(ref, q);
    CHECK(got.value == doctest::Approx(want.value).epsilon(1e-9));
    CHECK(got.site_index == want.site_index);
  }
  // Full sweep once the structure is large.
  for (int i = 0; i < 500; ++i) {
    Point2D q{u(rng), u(rng)};
    auto got = s.query_min(q);
    auto want = scan_min(ref, q);
    CHECK(got.value == doctest::Approx(want.value).epsilon(1e-9));
    CHECK(got.site_index == want.site_index);
  }
  CHECK(Instrumentation::violations() == 0);
  Instrumentation::enabled() = false;
}

TEST_CASE("empty query throws") {
  AwnnStructure s;
  CHECK_THROWS(s.query_min({0, 0}));
}
