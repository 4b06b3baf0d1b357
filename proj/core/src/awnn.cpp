#include "tspfg/awnn.hpp"

#include <algorithm>
#include <limits>

namespace tspfg {

namespace {
double dist_to_box(const Point2D& q, double xlo, double xhi, double ylo, double yhi) {
  const double dx = std::max({xlo - q.x, 0.0, q.x - xhi});
  const double dy = std::max({ylo - q.y, 0.0, q.y - yhi});
  return std::sqrt(dx * dx + dy * dy);
}
}  // namespace

int AwnnStructure::build(Block& b, std::vector<Entry>& es, int lo, int hi, int axis) {
  if (lo >= hi) return -1;
  const int mid = (lo + hi) / 2;
  std::nth_element(es.begin() + lo, es.begin() + mid, es.begin() + hi,
                   [axis](const Entry& a, const Entry& c) {
                     return axis == 0 ? a.p.x < c.p.x : a.p.y < c.p.y;
                   });
  const int id = static_cast<int>(b.nodes.size());
  b.nodes.push_back({});
  b.nodes[id].e = es[mid];
  const int l = build(b, es, lo, mid, axis ^ 1);
  const int r = build(b, es, mid + 1, hi, axis ^ 1);
  Node& nd = b.nodes[id];
  nd.left = l;
  nd.right = r;
  nd.xlo = nd.xhi = nd.e.p.x;
  nd.ylo = nd.yhi = nd.e.p.y;
  nd.wmin = nd.e.w;
  for (int c : {l, r}) {
    if (c < 0) continue;
    const Node& ch = b.nodes[c];
    nd.xlo = std::min(nd.xlo, ch.xlo);
    nd.xhi = std::max(nd.xhi, ch.xhi);
    nd.ylo = std::min(nd.ylo, ch.ylo);
    nd.yhi = std::max(nd.yhi, ch.yhi);
    nd.wmin = std::min(nd.wmin, ch.wmin);
  }
  return id;
}

void AwnnStructure::collect(const Block& b, int node, std::vector<Entry>& out) const {
  if (node < 0) return;
  Entry e = b.nodes[node].e;
  e.w += b.correction;  // fold the correction when the block is dissolved
  out.push_back(e);
  collect(b, b.nodes[node].left, out);
  collect(b, b.nodes[node].right, out);
}

void AwnnStructure::insert(const WeightedSite& site) {
  std::vector<Entry> pool;
  pool.push_back({site.point, site.weight, total_});
  size_t t = 0;
  while (t < blocks_.size() && blocks_[t].count > 0) {
    collect(blocks_[t], blocks_[t].root, pool);
    blocks_[t] = Block{};
    ++t;
  }
  if (t == blocks_.size()) blocks_.push_back({});
  Block& b = blocks_[t];
  b.count = static_cast<int>(pool.size());
  b.correction = 0.0;
  b.nodes.reserve(pool.size());
  b.root = build(b, pool, 0, static_cast<int>(pool.size()), 0);
  ++total_;

  if (Instrumentation::enabled()) {
    // Block sizes must be the binary decomposition of the total count.
    int sum = 0;
    for (size_t i = 0; i < blocks_.size(); ++i) {
      const int c = blocks_[i].count;
      Instrumentation::check(c == 0 || c == (1 << i));
      sum += c;
    }
    Instrumentation::check(sum == total_);
  }
}

void AwnnStructure::bulk_add(double delta) {
  for (auto& b : blocks_)
    if (b.count > 0) b.correction += delta;
}

void AwnnStructure::query_node(const Block& b, int node, const Point2D& q,
                               QueryResult& best) const {
  if (node < 0) return;
  const Node& nd = b.nodes[node];
  if (best.site_index >= 0 &&
      nd.wmin + b.correction + dist_to_box(q, nd.xlo, nd.xhi, nd.ylo, nd.yhi) > best.value)
    return;
  const double v = nd.e.w + b.correction + euclid_dist(nd.e.p, q);
  if (best.site_index < 0 || v < best.value ||
      (v == best.value && nd.e.index < best.site_index)) {
    best.value = v;
    best.site_index = nd.e.index;
  }
  // Nearer child first so the bound tightens early.
  int first = nd.left, second = nd.right;
  if (first >= 0 && second >= 0) {
    const Node& a = b.nodes[first];
    const Node& c = b.nodes[second];
    if (dist_to_box(q, c.xlo, c.xhi, c.ylo, c.yhi) + c.wmin <
        dist_to_box(q, a.xlo, a.xhi, a.ylo, a.yhi) + a.wmin)
      std::swap(first, second);
  }
  query_node(b, first, q, best);
  query_node(b, second, q, best);
}

AwnnStructure::QueryResult AwnnStructure::query_min(const Point2D& q) const {
  if (total_ == 0) throw std::logic_error("query on empty structure");
  QueryResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks_)
    if (b.count > 0) query_node(b, b.root, q, best);
  return best;
}

std::vector<int> AwnnStructure::block_sizes() const {
  std::vector<int> out;
  for (const auto& b : blocks_)
    if (b.count > 0) out.push_back(b.count);
  return out;
}

}  // namespace tspfg
