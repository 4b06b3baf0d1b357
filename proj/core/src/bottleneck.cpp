#include "tspfg/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tspfg/disk_union.hpp"
#include "tspfg/pyramidal.hpp"

namespace tspfg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool bottleneck_decide(const OrderedPointSet& pts, double B) {
  const int n = pts.n();
  if (n < 2) throw std::invalid_argument("need at least 2 points");
  if (euclid_dist(pts[0], pts[1]) > B) return false;
  if (n == 2) return true;
  if (B <= 0) return false;  // distinct points force positive edge lengths

  // Live chain ends: every p_j (j < current i) admitting a feasible partial
  // tour, stored as a union of radius-B disks. Emptying drops the structure.
  DiskUnion reach(B);
  reach.insert(pts[0]);

  // Shadow boolean DP row, cross-checked against the live set when
  // instrumented: shadow[j] == (some (i,j)-partial tour has all edges <= B).
  const bool audit = Instrumentation::enabled();
  std::vector<char> shadow;
  std::vector<char> in_reach;
  if (audit) {
    shadow.assign(n, 0);
    shadow[0] = 1;
    in_reach.assign(n, 0);
    in_reach[0] = 1;
  }

  for (int t = 2; t <= n - 2; ++t) {
    const bool extend_ok = euclid_dist(pts[t - 1], pts[t]) <= B;
    const bool jump_ok = reach.contains(pts[t]);
    if (extend_ok && jump_ok) {
      reach.insert(pts[t - 1]);
    } else if (extend_ok) {
      // keep the live set as it is
    } else if (jump_ok) {
      reach = DiskUnion(B);
      reach.insert(pts[t - 1]);
    } else {
      return false;  // the live set empties and can never refill
    }
    if (audit) {
      // Advance the boolean row to i = t and compare membership.
      std::vector<char> next(n, 0);
      for (int k = 0; k < t - 1; ++k)
        if (shadow[k] && euclid_dist(pts[k], pts[t]) <= B) next[t - 1] = 1;
      for (int j = 0; j < t - 1; ++j) next[j] = shadow[j] && extend_ok;
      shadow.swap(next);
      if (extend_ok && jump_ok) {
        in_reach[t - 1] = 1;
      } else if (!extend_ok && jump_ok) {
        in_reach.assign(n, 0);
        in_reach[t - 1] = 1;
      }
      for (int j = 0; j < n; ++j) Instrumentation::check(shadow[j] == in_reach[j]);
    }
  }
  return euclid_dist(pts[n - 2], pts[n - 1]) <= B && reach.contains(pts[n - 1]);
}

BottleneckResult bottleneck_quadratic(const OrderedPointSet& pts) {
  const int n = pts.n();
  if (n < 2) throw std::invalid_argument("need at least 2 points");
  if (n == 2) return {euclid_dist(pts[0], pts[1]), Tour::identity(2)};

  std::vector<double> row(n, 0.0);  // row[j] = min bottleneck of an (i,j)-partial tour
  std::vector<int> pred(n, -1);
  row[0] = euclid_dist(pts[0], pts[1]);
  for (int i = 1; i <= n - 2; ++i) {
    double best = kInf;
    int arg = -1;
    for (int k = 0; k < i; ++k) {
      const double v = std::max(row[k], euclid_dist(pts[k], pts[i + 1]));
      if (v < best) {
        best = v;
        arg = k;
      }
    }
    const double step = euclid_dist(pts[i], pts[i + 1]);
    for (int j = 0; j < i; ++j) row[j] = std::max(row[j], step);
    row[i] = best;
    pred[i + 1] = arg;
  }
  double best = kInf;
  int kfinal = -1;
  for (int k = 0; k < n - 1; ++k) {
    const double v = std::max(row[k], euclid_dist(pts[k], pts[n - 1]));
    if (v < best) {
      best = v;
      kfinal = k;
    }
  }
  return {best, detail::reconstruct_pyramidal(n, pred, kfinal)};
}

double bottleneck_optimize(const OrderedPointSet& pts) {
  const int n = pts.n();
  if (n < 2) throw std::invalid_argument("need at least 2 points");
  std::vector<double> cand;
  cand.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cand.push_back(euclid_dist(pts[i], pts[j]));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  // decide is monotone in B and true at the largest distance.
  int lo = 0, hi = static_cast<int>(cand.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (bottleneck_decide(pts, cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return cand[lo];
}

// ---------------------------------------------------------------------------
// BottleneckTree
// ---------------------------------------------------------------------------

int BottleneckTree::build_node(Block& b, int lo, int hi) {
  const int id = static_cast<int>(b.nodes.size());
  b.nodes.push_back({lo, hi, -1, -1, {}, {}});
  {
    Node& nd = b.nodes[id];
    for (int k = lo; k < hi; ++k) {
      nd.member.insert({b.sites[k].p, -b.sites[k].w});
      nd.nn.insert({b.sites[k].p, 0.0});
    }
  }
  if (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    const int l = build_node(b, lo, mid);
    const int r = build_node(b, mid, hi);
    b.nodes[id].left = l;
    b.nodes[id].right = r;
  }
  return id;
}

BottleneckTree::Block BottleneckTree::build_block(std::vector<Site> sites) {
  Block b;
  b.bmax = -kInf;
  std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& c) {
    return a.w != c.w ? a.w < c.w : a.index < c.index;
  });
  b.sites = std::move(sites);
  b.root = build_node(b, 0, static_cast<int>(b.sites.size()));
  return b;
}

void BottleneckTree::insert(const Point2D& p, double w) {
  std::vector<Site> pool;
  pool.push_back({p, w, total_});
  size_t t = 0;
  while (t < blocks_.size() && !blocks_[t].sites.empty()) {
    // Dissolve the block, folding its accumulated bulk max into the weights.
    for (const Site& s : blocks_[t].sites)
      pool.push_back({s.p, std::max(s.w, blocks_[t].bmax), s.index});
    blocks_[t] = Block{};
    ++t;
  }
  if (t == blocks_.size()) blocks_.push_back({});
  blocks_[t] = build_block(std::move(pool));
  ++total_;
}

void BottleneckTree::bulk_max(double B) {
  for (auto& b : blocks_)
    if (!b.sites.empty()) b.bmax = std::max(b.bmax, B);
}

double BottleneckTree::range_nn(const Block& b, int node, int prefix,
                                const Point2D& q) const {
  const Node& nd = b.nodes[node];
  if (nd.lo >= prefix) return kInf;
  if (nd.hi <= prefix) return nd.nn.query_min(q).value;
  return std::min(range_nn(b, nd.left, prefix, q),
                  range_nn(b, nd.right, prefix, q));
}

// The block's accumulated bulk max raises every stored weight uniformly, so
//   min_j max(max(w_j, bmax), d_j) = max(bmax, min_j max(w_j, d_j))
// and the two-phase search can always run on build-time weights, with the
// bulk max folded in at the end.
double BottleneckTree::query_block(const Block& b, const Point2D& q) const {
  const Node& root = b.nodes[b.root];
  double b1 = kInf;
  if (root.member.query_min(q).value <= 0.0) {
    // Descend to the minimum-weight site whose disk D(p_j, w_j) contains q.
    int node = b.root;
    while (b.nodes[node].left >= 0) {
      const int l = b.nodes[node].left;
      node = b.nodes[l].member.query_min(q).value <= 0.0 ? l : b.nodes[node].right;
    }
    b1 = b.sites[b.nodes[node].lo].w;
    if (Instrumentation::enabled()) {
      // The descent must land on the first weight-ordered covered site.
      int first = -1;
      for (size_t k = 0; k < b.sites.size(); ++k)
        if (euclid_dist(b.sites[k].p, q) - b.sites[k].w <= 0.0) {
          first = static_cast<int>(k);
          break;
        }
      Instrumentation::check(first == b.nodes[node].lo);
    }
  }
  // Closest site among those with weight strictly below b1.
  const int prefix =
      b1 == kInf
          ? static_cast<int>(b.sites.size())
          : static_cast<int>(std::lower_bound(b.sites.begin(), b.sites.end(), b1,
                                              [](const Site& s, double v) {
                                                return s.w < v;
                                              }) -
                             b.sites.begin());
  const double b2 = prefix == 0 ? kInf : range_nn(b, b.root, prefix, q);
  return std::max(b.bmax, std::min(b1, b2));
}

double BottleneckTree::query(const Point2D& q) const {
  if (total_ == 0) throw std::logic_error("query on empty structure");
  double best = kInf;
  for (const auto& b : blocks_)
    if (!b.sites.empty()) best = std::min(best, query_block(b, q));
  if (Instrumentation::enabled()) {
    // Answer must equal a direct scan over effective weights.
    double ref = kInf;
    for (const auto& b : blocks_)
      for (const Site& s : b.sites)
        ref = std::min(ref, std::max(std::max(s.w, b.bmax), euclid_dist(s.p, q)));
    Instrumentation::check(std::fabs(best - ref) <= 1e-9);
  }
  return best;
}

std::vector<int> BottleneckTree::block_sizes() const {
  std::vector<int> out;
  for (const auto& b : blocks_)
    if (!b.sites.empty()) out.push_back(static_cast<int>(b.sites.size()));
  return out;
}

double bottleneck_fast(const OrderedPointSet& pts) {
  const int n = pts.n();
  if (n < 2) throw std::invalid_argument("need at least 2 points");
  if (n == 2) return euclid_dist(pts[0], pts[1]);

  BottleneckTree row;
  row.insert(pts[0], euclid_dist(pts[0], pts[1]));

  const bool audit = Instrumentation::enabled() && n <= 2000;
  std::vector<double> shadow;
  if (audit) {
    shadow.assign(n, 0.0);
    shadow[0] = euclid_dist(pts[0], pts[1]);
  }

  for (int i = 1; i <= n - 2; ++i) {
    const double val = row.query(pts[i + 1]);
    row.bulk_max(euclid_dist(pts[i], pts[i + 1]));
    row.insert(pts[i], val);
    if (audit) {
      double best = kInf;
      for (int k = 0; k < i; ++k)
        best = std::min(best, std::max(shadow[k], euclid_dist(pts[k], pts[i + 1])));
      Instrumentation::check(std::fabs(best - val) <= 1e-9);
      const double step = euclid_dist(pts[i], pts[i + 1]);
      for (int j = 0; j < i; ++j) shadow[j] = std::max(shadow[j], step);
      shadow[i] = best;
    }
  }
  return row.query(pts[n - 1]);
}

}  // namespace tspfg
