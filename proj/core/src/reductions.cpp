#include "tspfg/reductions.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "tspfg/kopt.hpp"

namespace tspfg {

ThreeOptInstance nt_to_3opt(const SymmetricWeightedGraph& g) {
  const int n = g.n();
  if (n < 3) throw std::invalid_argument("need at least 3 vertices");
  const std::int64_t M = g.max_abs_weight();
  if (M > std::numeric_limits<std::int64_t>::max() / 8)
    throw std::overflow_error("weights too large for the 3M scale");

  // Vertex i of the input becomes the pair a_i = 2i, b_i = 2i+1; the tour
  // visits a_0, b_0, a_1, b_1, ..., a_{n-1}, b_{n-1}.
  ThreeOptInstance out{SymmetricWeightedGraph(2 * n), Tour::identity(2 * n)};
  for (int u = 0; u < 2 * n; ++u)
    for (int v = u + 1; v < 2 * n; ++v) {
      const int i = u / 2, j = v / 2;
      std::int64_t w;
      if (u % 2 == v % 2) {
        w = 3 * M;  // same-letter pairs are never worth inserting
      } else {
        const int ai = u % 2 == 0 ? i : j;  // index of the a-side vertex
        const int bi = u % 2 == 0 ? j : i;  // index of the b-side vertex
        if (ai == bi)
          w = 0;  // the removable pair edges
        else if (ai == (bi + 1) % n)
          w = -3 * M;  // connectors b_i -> a_{i+1}, kept by any improving move
        else
          w = g.weight(ai, bi);
      }
      out.graph.set_weight(u, v, w);
    }
  return out;
}

std::vector<CharacteristicBits> valid_characteristics() {
  // Template: a-gap (a0, a1), b-gap (b0, b1), c-gap (c0, c1) with the kept
  // tour pieces contracted to edges a1-b0, b1-c0, c1-a0. A characteristic is
  // valid when its three connecting edges complete this into one 6-cycle.
  std::vector<CharacteristicBits> out;
  for (int bits = 0; bits < 64; ++bits) {
    const CharacteristicBits c{(bits >> 5) & 1, (bits >> 4) & 1, (bits >> 3) & 1,
                               (bits >> 2) & 1, (bits >> 1) & 1, bits & 1};
    // Vertices: a0=0, a1=1, b0=2, b1=3, c0=4, c1=5.
    const std::pair<int, int> edges[6] = {
        {1, 2}, {3, 4}, {5, 0},                        // contracted pieces
        {c.lab, 2 + c.rab}, {c.lac, 4 + c.rac}, {2 + c.lbc, 4 + c.rbc}};
    int deg[6] = {0, 0, 0, 0, 0, 0};
    std::vector<std::vector<std::pair<int, int>>> adj(6);
    for (int e = 0; e < 6; ++e) {
      ++deg[edges[e].first];
      ++deg[edges[e].second];
      adj[edges[e].first].push_back({edges[e].second, e});
      adj[edges[e].second].push_back({edges[e].first, e});
    }
    bool ok = true;
    for (int v = 0; v < 6; ++v) ok = ok && deg[v] == 2;
    if (!ok) continue;
    bool used[6] = {};
    int cur = 0, steps = 0;
    for (; steps < 6; ++steps) {
      int nxt = -1;
      for (auto [nb, e] : adj[cur])
        if (!used[e]) {
          used[e] = 1;
          nxt = nb;
          break;
        }
      if (nxt < 0) break;
      cur = nxt;
    }
    if (steps == 6 && cur == 0) out.push_back(c);
  }
  return out;
}

NtReduction threeopt_to_nt(const SymmetricWeightedGraph& g, const Tour& t) {
  t.validate();
  const int n = t.n();
  if (n != g.n()) throw std::invalid_argument("tour does not fit the graph");
  if (n < 3) throw std::invalid_argument("need at least 3 vertices");

  NtReduction out;

  // Precheck 1: any improving 2-move (covers every non-proper reconnection
  // that reuses a removed edge).
  bool hit = n >= 4 && best_kmove_bruteforce(g, t, 2).has_value();
  // Precheck 2: improving 3-moves whose removed edges share an endpoint,
  // i.e. two of the three positions are cyclically adjacent.
  if (!hit) {
    const auto sigs = enumerate_feasible_signatures(3);
    for (int p = 0; p < n && !hit; ++p) {
      const int q = (p + 1) % n;
      for (int r = 0; r < n && !hit; ++r) {
        if (r == p || r == q) continue;
        std::vector<int> pos{p, q, r};
        std::sort(pos.begin(), pos.end());
        for (const auto& sig : sigs) {
          KMove m{3, pos, sig};
          if (move_is_valid(t, m) && move_delta(g, t, m) < 0) {
            hit = true;
            break;
          }
        }
      }
    }
  }
  if (hit) {
    out.precheck_hit = true;
    out.graph = SymmetricWeightedGraph(3);
    out.graph.set_weight(0, 1, -1);
    out.graph.set_weight(0, 2, -1);
    out.graph.set_weight(1, 2, -1);
    return out;
  }

  // Shift distances to non-negative: a uniform shift changes every removed
  // and inserted triple by the same amount, so move deltas are untouched,
  // while the copied pair weights below stay in [-M, M] and the 3M fallback
  // can never participate in a negative triangle.
  std::int64_t minw = 0, maxw = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      minw = std::min(minw, g.weight(i, j));
      maxw = std::max(maxw, g.weight(i, j));
    }
  const std::int64_t shift = -minw;  // minw <= 0
  const std::int64_t M = std::max<std::int64_t>(1, maxw + shift);
  if (M > std::numeric_limits<std::int64_t>::max() / 8)
    throw std::overflow_error("weights too large for the 3M scale");
  auto d = [&](int a, int b) { return g.weight(t.order[a % n], t.order[b % n]) + shift; };
  auto step = [&](int a) { return d(a, a + 1); };

  out.characteristics = valid_characteristics();
  out.n = n;
  const int C = static_cast<int>(out.characteristics.size());
  out.graph = SymmetricWeightedGraph(C * 3 * n);
  for (int u = 0; u < C * 3 * n; ++u)
    for (int v = u + 1; v < C * 3 * n; ++v) out.graph.set_weight(u, v, 3 * M);

  // Tour positions i and j host endpoint-disjoint edges iff they are not
  // cyclically adjacent.
  auto disjoint = [&](int i, int j) {  // requires i < j
    return i + 1 < j && !(i == 0 && j == n - 1);
  };
  for (int c = 0; c < C; ++c) {
    const auto& bits = out.characteristics[c];
    const int base = c * 3 * n;
    auto X = [&](int i) { return base + i; };
    auto Y = [&](int i) { return base + n + i; };
    auto Z = [&](int i) { return base + 2 * n + i; };
    for (int i = 0; i < n; ++i)
      for (int j = i + 2; j < n; ++j) {
        if (!disjoint(i, j)) continue;
        // Pair weights: inserted edge for that gap pair minus one removed
        // edge, arranged so each triangle subtracts each removed edge once.
        out.graph.set_weight(X(i), Y(j), d(i + bits.lab, j + bits.rab) - step(i));
        out.graph.set_weight(X(i), Z(j), d(i + bits.lac, j + bits.rac) - step(j));
        out.graph.set_weight(Y(i), Z(j), d(i + bits.lbc, j + bits.rbc) - step(i));
      }
  }
  return out;
}

std::optional<std::array<int, 3>> negative_triangle_bruteforce(
    const SymmetricWeightedGraph& g) {
  const int n = g.n();
  if (n < 3) throw std::invalid_argument("need at least 3 vertices");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (g.weight(i, j) + g.weight(i, k) + g.weight(j, k) < 0)
          return std::array<int, 3>{i, j, k};
  return std::nullopt;
}

}  // namespace tspfg
