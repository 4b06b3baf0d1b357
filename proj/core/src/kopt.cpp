#include "tspfg/kopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tspfg {

namespace {

constexpr std::int64_t kInfCost = std::int64_t{1} << 62;

void validate_signature(int k, const Signature& sig) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (static_cast<int>(sig.pi.size()) != 2 * k)
    throw std::invalid_argument("signature size must be 2k");
  for (int j = 0; j < 2 * k; ++j) {
    const int p = sig.pi[j];
    if (p < 0 || p >= 2 * k || p == j || sig.pi[p] != j)
      throw std::invalid_argument("signature must be a fixed-point-free involution");
  }
}

void validate_move(const Tour& t, const KMove& m) {
  validate_signature(m.k, m.sig);
  const int n = t.n();
  if (m.k > n) throw std::invalid_argument("more removed edges than tour edges");
  if (static_cast<int>(m.positions.size()) != m.k)
    throw std::invalid_argument("move needs k positions");
  for (int i = 0; i < m.k; ++i) {
    if (m.positions[i] < 0 || m.positions[i] >= n)
      throw std::invalid_argument("position out of range");
    if (i > 0 && m.positions[i] <= m.positions[i - 1])
      throw std::invalid_argument("positions must be strictly increasing");
  }
}

// Tour slot of endpoint x (0..2k-1): endpoint 2i sits at the removed edge's
// position, endpoint 2i+1 one slot later.
int endpoint_slot(const KMove& m, int n, int x) {
  const int p = m.positions[x / 2];
  return x % 2 == 0 ? p : (p + 1) % n;
}

// The tour after the move, or nullopt when the edge exchange does not leave a
// single Hamiltonian cycle (possible when removed edges share endpoints).
std::optional<Tour> apply_move_impl(const Tour& t, const KMove& m) {
  validate_move(t, m);
  const int n = t.n();
  std::vector<char> removed(n, 0);
  for (int p : m.positions) removed[p] = 1;

  std::vector<std::pair<int, int>> edges;
  edges.reserve(n);
  for (int p = 0; p < n; ++p)
    if (!removed[p]) edges.emplace_back(t.order[p], t.order[(p + 1) % n]);
  for (int x = 0; x < 2 * m.k; ++x) {
    const int y = m.sig.pi[x];
    if (x > y) continue;
    const int u = t.order[endpoint_slot(m, n, x)];
    const int v = t.order[endpoint_slot(m, n, y)];
    if (u == v) return std::nullopt;  // shared endpoints collapsed the edge
    edges.emplace_back(u, v);
  }
  if (static_cast<int>(edges.size()) != n) return std::nullopt;

  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge id)
  for (int e = 0; e < n; ++e) {
    adj[edges[e].first].push_back({edges[e].second, e});
    adj[edges[e].second].push_back({edges[e].first, e});
  }
  for (int v = 0; v < n; ++v)
    if (adj[v].size() != 2) return std::nullopt;

  // 2-regular, so the walk from vertex 0 traces one cycle; a Hamiltonian
  // result uses all n edges.
  std::vector<char> used(n, 0);
  Tour out;
  out.order.reserve(n);
  int cur = 0;
  for (int step = 0; step < n; ++step) {
    out.order.push_back(cur);
    int nxt = -1;
    for (auto [nb, e] : adj[cur])
      if (!used[e]) {
        used[e] = 1;
        nxt = nb;
        break;
      }
    if (nxt < 0) return std::nullopt;
    cur = nxt;
  }
  if (cur != 0) return std::nullopt;
  return out;
}

}  // namespace

bool signature_is_feasible(int k, const Signature& sig) {
  validate_signature(k, sig);
  // Walk the would-be tour: inserted edge, then the tour piece leading to the
  // next removed edge. One cycle through all removed edges = feasible.
  int x = 0;
  for (int step = 1; step <= k; ++step) {
    const int y = sig.pi[x];
    x = y % 2 == 1 ? (y + 1) % (2 * k) : (y + 2 * k - 1) % (2 * k);
    if (x == 0) return step == k;
  }
  return false;
}

std::vector<Signature> enumerate_feasible_signatures(int k) {
  if (k < 2 || k > 8) throw std::invalid_argument("k must be between 2 and 8");
  std::vector<Signature> out;
  std::vector<int> pi(2 * k, -1);
  // Pair the smallest unmatched endpoint with every later one, recursively.
  auto rec = [&](auto&& self, int matched) -> void {
    if (matched == 2 * k) {
      Signature s{pi};
      if (signature_is_feasible(k, s)) out.push_back(std::move(s));
      return;
    }
    int a = 0;
    while (pi[a] >= 0) ++a;
    for (int b = a + 1; b < 2 * k; ++b) {
      if (pi[b] >= 0) continue;
      pi[a] = b;
      pi[b] = a;
      self(self, matched + 2);
      pi[a] = pi[b] = -1;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(),
            [](const Signature& a, const Signature& b) { return a.pi < b.pi; });
  return out;
}

std::vector<int> noninterfering_subset(int k, const Signature& sig) {
  if (!signature_is_feasible(k, sig))
    throw std::invalid_argument("signature is not feasible");
  // Removed and inserted edges alone form disjoint alternating cycles over
  // the 2k endpoints; consecutive removed edges on such a cycle interfere,
  // others do not.
  std::vector<char> seen(k, 0);
  std::vector<int> pick;
  for (int start = 0; start < k; ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;  // removed-edge indices in traversal order
    int x = 2 * start;
    do {
      cycle.push_back(x / 2);
      seen[x / 2] = 1;
      x = sig.pi[x ^ 1];  // across the removed edge, then the inserted edge
    } while (x / 2 != start);
    const int m = static_cast<int>(cycle.size());
    if (m == 1) {
      pick.push_back(cycle[0]);
    } else if (m % 2 == 0) {
      for (int i = 0; i < m; i += 2) pick.push_back(cycle[i]);
    } else {
      for (int i = 1; i + 1 < m; i += 2) pick.push_back(cycle[i]);
    }
  }
  std::sort(pick.begin(), pick.end());
  return pick;
}

SubdividedInstance subdivide(const SymmetricWeightedGraph& g, const Tour& t, int k) {
  const int n = g.n();
  const std::int64_t M = g.max_abs_weight();
  if (M > std::numeric_limits<std::int64_t>::max() / (32 * std::int64_t{k} * k))
    throw std::overflow_error("weights too large for the subdivision penalty");
  SubdividedInstance sub;
  sub.penalty = 2 * std::int64_t{k} * M;
  sub.graph = SymmetricWeightedGraph(2 * n);
  sub.tour = Tour::identity(2 * n);
  sub.origin.resize(2 * n);
  for (int u = 0; u < 2 * n; ++u) sub.origin[u] = t.order[u / 2];
  for (int u = 0; u < 2 * n; ++u)
    for (int v = u + 1; v < 2 * n; ++v) {
      const int i = u / 2, j = v / 2;
      sub.graph.set_weight(u, v,
                           i == j ? -sub.penalty
                                  : g.weight(t.order[i], t.order[j]));
    }
  return sub;
}

KMove lift_move(const KMove& m, const SubdividedInstance& sub, const Tour& original) {
  (void)sub;
  (void)original;
  KMove out;
  out.k = m.k;
  out.sig = m.sig;
  out.positions.reserve(m.k);
  for (int p : m.positions) {
    if (p % 2 == 0)
      throw std::invalid_argument("move removes a subdivision edge");
    out.positions.push_back((p - 1) / 2);
  }
  return out;
}

std::int64_t move_delta(const SymmetricWeightedGraph& g, const Tour& t, const KMove& m) {
  validate_move(t, m);
  const int n = t.n();
  std::int64_t d = 0;
  for (int p : m.positions) d -= g.weight(t.order[p], t.order[(p + 1) % n]);
  for (int x = 0; x < 2 * m.k; ++x) {
    const int y = m.sig.pi[x];
    if (x > y) continue;
    d += g.weight(t.order[endpoint_slot(m, n, x)], t.order[endpoint_slot(m, n, y)]);
  }
  return d;
}

bool move_is_valid(const Tour& t, const KMove& m) {
  return apply_move_impl(t, m).has_value();
}

Tour apply_kmove(const Tour& t, const KMove& m) {
  auto r = apply_move_impl(t, m);
  if (!r) throw std::invalid_argument("move does not produce a Hamiltonian cycle");
  return *r;
}

std::optional<KMoveResult> best_kmove_bruteforce(const SymmetricWeightedGraph& g,
                                                 const Tour& t, int k) {
  const int n = t.n();
  if (k < 2 || k > n) throw std::invalid_argument("k out of range");
  const auto sigs = enumerate_feasible_signatures(k);

  std::optional<KMoveResult> best;
  std::vector<int> pos(k);
  for (int i = 0; i < k; ++i) pos[i] = i;
  std::vector<int> slot(2 * k), vert(2 * k);
  while (true) {
    // Positions are endpoint-disjoint iff no two are cyclically adjacent.
    bool disjoint = true;
    for (int i = 0; i < k; ++i) {
      const int q = pos[(i + 1) % k];
      if ((pos[i] + 1) % n == q || (q + 1) % n == pos[i]) disjoint = false;
    }
    std::int64_t removed = 0;
    for (int i = 0; i < k; ++i) {
      slot[2 * i] = pos[i];
      slot[2 * i + 1] = (pos[i] + 1) % n;
      vert[2 * i] = t.order[slot[2 * i]];
      vert[2 * i + 1] = t.order[slot[2 * i + 1]];
      removed += g.weight(vert[2 * i], vert[2 * i + 1]);
    }
    for (const auto& sig : sigs) {
      std::int64_t inserted = 0;
      bool ok = true;
      for (int x = 0; x < 2 * k && ok; ++x) {
        const int y = sig.pi[x];
        if (x > y) continue;
        if (disjoint) {
          // With disjoint removed edges the only way a feasible signature
          // fails is an inserted edge duplicating a kept tour edge.
          const int a = slot[x], b = slot[y];
          if ((a + 1) % n == b && !std::binary_search(pos.begin(), pos.end(), a))
            ok = false;
          if ((b + 1) % n == a && !std::binary_search(pos.begin(), pos.end(), b))
            ok = false;
        }
        inserted += g.weight(vert[x], vert[y]);
      }
      if (!ok) continue;
      const std::int64_t d = inserted - removed;
      if (best && d >= best->delta) continue;
      KMove m{k, pos, sig};
      if (!disjoint && !move_is_valid(t, m)) continue;
      best = KMoveResult{std::move(m), d};
    }
    // next k-combination of [0, n)
    int i = k - 1;
    while (i >= 0 && pos[i] == n - k + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
  if (best && best->delta < 0) return best;
  return std::nullopt;
}

EmbedResult embed_dp(const std::vector<std::vector<std::int64_t>>& c) {
  const int s = static_cast<int>(c.size());
  if (s == 0) return {0, {}};
  const int r = static_cast<int>(c[0].size());
  if (s > r) throw std::invalid_argument("more objects than locations");
  std::vector<std::vector<std::int64_t>> V(s + 1, std::vector<std::int64_t>(r + 1, kInfCost));
  for (int y = 0; y <= r; ++y) V[0][y] = 0;
  for (int x = 1; x <= s; ++x)
    for (int y = x; y <= r; ++y) {
      std::int64_t v = V[x][y - 1];
      if (V[x - 1][y - 1] < kInfCost)
        v = std::min(v, V[x - 1][y - 1] + c[x - 1][y - 1]);
      V[x][y] = v;
    }
  EmbedResult out;
  out.value = V[s][r];
  out.locations.assign(s, -1);
  int x = s, y = r;
  while (x > 0) {
    if (y > x && V[x][y] == V[x][y - 1]) {
      --y;
    } else {
      out.locations[x - 1] = y - 1;
      --x;
      --y;
    }
  }
  return out;
}

namespace {

// Best move on a subdivided instance (identity tour over 2n vertices), where
// candidate removed edges are exactly the odd tour positions: an optimal move
// never removes a subdivision edge, and odd positions are automatically
// endpoint-disjoint.
std::optional<KMoveResult> best_kmove_disjoint(const SymmetricWeightedGraph& g2, int k) {
  const int n2 = g2.n();
  const int n = n2 / 2;  // number of candidate positions
  const auto sigs = enumerate_feasible_signatures(k);
  // Sentinel for placements whose inserted edge would duplicate a kept tour
  // edge. Any total containing it stays above any legitimate delta (bounded
  // by 2k * max weight), so the strict-improvement filter rejects it.
  const std::int64_t big = 4 * (2 * std::int64_t{k} * g2.max_abs_weight() + 1);

  auto edge_w = [&](int p) { return g2.weight(p, (p + 1) % n2); };
  // Inserted edges must not duplicate a kept subdivision edge {2i, 2i+1}.
  auto forbidden = [&](int u, int v) {
    const int lo = std::min(u, v), hi = std::max(u, v);
    return hi == lo + 1 && lo % 2 == 0;
  };

  std::optional<KMoveResult> best;
  std::vector<int> pos(k, -1);  // tour position of each removed edge, by rank

  for (const auto& sig : sigs) {
    bool identity = true;
    for (int i = 0; i < k; ++i) identity = identity && sig.pi[2 * i] == 2 * i + 1;
    if (identity) continue;  // reinserts everything, delta 0

    const auto free_ranks = noninterfering_subset(k, sig);
    std::vector<char> is_free(k, 0);
    for (int e : free_ranks) is_free[e] = 1;
    std::vector<int> frozen;
    for (int e = 0; e < k; ++e)
      if (!is_free[e]) frozen.push_back(e);
    const int f = static_cast<int>(frozen.size());
    if (n < k) continue;

    // vert(x) once positions of the relevant ranks are fixed.
    auto vert = [&](int x) {
      const int p = pos[x / 2];
      return x % 2 == 0 ? p : (p + 1) % n2;
    };

    std::vector<int> m(f);  // candidate index (position = 2*index+1) per frozen rank
    auto handle_case = [&]() {
      for (int t = 0; t < f; ++t) pos[frozen[t]] = 2 * m[t] + 1;
      std::int64_t base = 0;
      for (int e : frozen) base -= edge_w(pos[e]);
      for (int x = 0; x < 2 * k; ++x) {
        const int y = sig.pi[x];
        if (x > y || is_free[x / 2] || is_free[y / 2]) continue;
        const int u = vert(x), v = vert(y);
        if (forbidden(u, v)) return;
        base += g2.weight(u, v);
      }

      // Cost of placing free rank e at candidate index j.
      auto place_cost = [&](int e, int j) {
        const int p = 2 * j + 1;
        std::int64_t c = -edge_w(p);
        for (int x = 2 * e; x <= 2 * e + 1; ++x) {
          const int y = sig.pi[x];
          const int u = x % 2 == 0 ? p : (p + 1) % n2;
          int v;
          if (y / 2 == e) {
            if (x > y) continue;  // count the self-pair once
            v = y % 2 == 0 ? p : (p + 1) % n2;
          } else {
            v = vert(y);
          }
          if (forbidden(u, v)) return big;
          c += g2.weight(u, v);
        }
        return c;
      };

      std::int64_t total = base;
      std::vector<std::pair<int, int>> placements;  // (rank, candidate index)
      const int pieces = f + 1;
      for (int t = 0; t < pieces; ++t) {
        const int rank_lo = t == 0 ? 0 : frozen[t - 1] + 1;
        const int rank_hi = t == f ? k : frozen[t];  // exclusive
        const int loc_lo = t == 0 ? 0 : m[t - 1] + 1;
        const int loc_hi = t == f ? n : m[t];  // exclusive
        const int s = rank_hi - rank_lo;
        if (s == 0) continue;
        std::vector<std::vector<std::int64_t>> c(
            s, std::vector<std::int64_t>(loc_hi - loc_lo));
        for (int i = 0; i < s; ++i)
          for (int j = loc_lo; j < loc_hi; ++j)
            c[i][j - loc_lo] = place_cost(rank_lo + i, j);
        const auto emb = embed_dp(c);
        total += emb.value;
        for (int i = 0; i < s; ++i)
          placements.push_back({rank_lo + i, loc_lo + emb.locations[i]});
        if (total >= big) return;  // some placement was invalid
      }
      if (total >= 0 || (best && total >= best->delta)) return;
      for (auto [rank, j] : placements) pos[rank] = 2 * j + 1;
      KMove mv{k, pos, sig};
      if (Instrumentation::enabled()) {
        Instrumentation::check(move_is_valid(Tour::identity(n2), mv));
        Instrumentation::check(move_delta(g2, Tour::identity(n2), mv) == total);
      }
      best = KMoveResult{std::move(mv), total};
    };

    // Enumerate frozen candidate indices, leaving room for the free ranks
    // before, between, and after them.
    auto rec = [&](auto&& self, int t, int lo) -> void {
      if (t == f) {
        handle_case();
        return;
      }
      const int need_after = k - 1 - frozen[t];  // ranks above this frozen one
      for (int j = lo; j <= n - 1 - need_after; ++j) {
        m[t] = j;
        self(self, t + 1, j + 1 + (t + 1 < f ? frozen[t + 1] - frozen[t] - 1 : 0));
      }
    };
    rec(rec, 0, frozen[0]);
  }
  if (best && best->delta < 0) return best;
  return std::nullopt;
}

}  // namespace

std::optional<KMoveResult> best_kmove_fast(const SymmetricWeightedGraph& g,
                                           const Tour& t, int k) {
  const int n = g.n();
  if (k < 3 || k > 8) throw std::invalid_argument("k must be between 3 and 8");
  if (n < 2 * k) throw std::invalid_argument("tour too short for this k");
  const auto sub = subdivide(g, t, k);
  auto best = best_kmove_disjoint(sub.graph, k);
  if (!best) return std::nullopt;
  KMoveResult out{lift_move(best->move, sub, t), best->delta};
  if (Instrumentation::enabled()) {
    Instrumentation::check(move_is_valid(t, out.move));
    Instrumentation::check(move_delta(g, t, out.move) == out.delta);
  }
  return out;
}

SymmetricWeightedGraph rounded_distance_graph(const OrderedPointSet& pts,
                                              int scale_bits) {
  const int n = pts.n();
  SymmetricWeightedGraph g(n);
  const double scale = std::ldexp(1.0, scale_bits);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      g.set_weight(i, j,
                   static_cast<std::int64_t>(std::llround(euclid_dist(pts[i], pts[j]) * scale)));
  return g;
}

}  // namespace tspfg
