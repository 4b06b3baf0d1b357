#include "tspfg/two_opt_engine.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

namespace tspfg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TwoOptMove best_two_move_naive(const OrderedPointSet& pts, const Tour& t) {
  const int n = t.n();
  if (n < 4) throw std::invalid_argument("need at least 4 points");
  const auto& w = t.order;
  TwoOptMove best{-1, -1, kInf};
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      const double d =
          two_move_delta(pts, w[p], w[(p + 1) % n], w[q], w[(q + 1) % n]);
      if (d < best.delta) best = {p, q, d};
    }
  return best;
}

// ---------------------------------------------------------------------------
// TourEngine
// ---------------------------------------------------------------------------

TourEngine::TourEngine(const OrderedPointSet& pts, const Tour& t)
    : pts_(pts), n_(t.n()), block_cap_(64), w_(t.order) {
  if (n_ < 4) throw std::invalid_argument("need at least 4 points");
  t.validate();
  if (pts.n() != n_) throw std::invalid_argument("tour does not fit the points");
  trees_.resize(n_);
  tree_at_pos_.resize(n_);
  for (int p = 0; p < n_; ++p) {
    rebuild_tree(p, p);
    tree_at_pos_[p] = p;
  }
  if (Instrumentation::enabled()) audit();
}

void TourEngine::fold_block(const std::vector<Edge>& arena, Block& b) {
  double fwd = kInf, bwd = kInf;
  for (int i = b.off; i < b.off + b.len; ++i) {
    fwd = std::min(fwd, arena[i].smc);
    bwd = std::min(bwd, arena[i].smrc);
  }
  b.mc = b.rev ? bwd : fwd;
  b.mrc = b.rev ? fwd : bwd;
}

void TourEngine::split_blocks(TreeState& tr, int r) {
  int acc = 0;
  for (size_t i = 0; i < tr.blocks.size(); ++i) {
    if (acc == r) return;
    Block& b = tr.blocks[i];
    if (acc + b.len > r) {
      const int o = r - acc;  // 0 < o < len
      Block left, right;
      if (!b.rev) {
        left = {b.off, o, false, 0, 0};
        right = {b.off + o, b.len - o, false, 0, 0};
      } else {
        left = {b.off + b.len - o, o, true, 0, 0};
        right = {b.off, b.len - o, true, 0, 0};
      }
      fold_block(tr.arena, left);
      fold_block(tr.arena, right);
      b = right;
      tr.blocks.insert(tr.blocks.begin() + i, left);
      return;
    }
    acc += b.len;
  }
}

TourEngine::Edge TourEngine::oriented_edge(const TreeState& tr, int a, int b) const {
  return {a, b, two_move_delta(pts_, tr.u, tr.v, a, b),
          two_move_delta(pts_, tr.u, tr.v, b, a)};
}

void TourEngine::rebuild_tree(int tid, int pos) {
  TreeState& tr = trees_[tid];
  tr.pos = pos;
  tr.flip = false;
  tr.u = w_[pos];
  tr.v = w_[(pos + 1) % n_];
  tr.arena.resize(n_ - 1);
  for (int r = 0; r < n_ - 1; ++r) {
    const int t = (pos + 1 + r) % n_;
    tr.arena[r] = oriented_edge(tr, w_[t], w_[(t + 1) % n_]);
  }
  tr.blocks.clear();
  for (int off = 0; off < n_ - 1; off += block_cap_) {
    Block b{off, std::min(block_cap_, n_ - 1 - off), false, 0, 0};
    fold_block(tr.arena, b);
    tr.blocks.push_back(b);
  }
  tr.root_mc = kInf;
  for (const Block& b : tr.blocks) tr.root_mc = std::min(tr.root_mc, b.mc);
}

void TourEngine::compact(TreeState& tr) const {
  std::vector<Edge> na;
  na.reserve(tr.arena.size());
  for (const Block& b : tr.blocks) {
    if (!b.rev) {
      na.insert(na.end(), tr.arena.begin() + b.off, tr.arena.begin() + b.off + b.len);
    } else {
      for (int i = b.off + b.len - 1; i >= b.off; --i) {
        const Edge& e = tr.arena[i];
        na.push_back({e.b, e.a, e.smrc, e.smc});
      }
    }
  }
  tr.arena = std::move(na);
  tr.blocks.clear();
  const int total = static_cast<int>(tr.arena.size());
  for (int off = 0; off < total; off += block_cap_) {
    Block b{off, std::min(block_cap_, total - off), false, 0, 0};
    fold_block(tr.arena, b);
    tr.blocks.push_back(b);
  }
}

TwoOptMove TourEngine::best_move() const {
  double gmin = kInf;
  int p1 = -1;
  for (int p = 0; p < n_; ++p) {
    const double mc = trees_[tree_at_pos_[p]].root_mc;
    if (mc < gmin) {
      gmin = mc;
      p1 = p;
    }
  }
  // Partner with the same tie rule as the naive scan; every optimal partner
  // of the first optimal edge lies at a larger position.
  TwoOptMove best{-1, -1, kInf};
  for (int q = 0; q < n_; ++q) {
    if (q == p1) continue;
    const double d = two_move_delta(pts_, w_[p1], w_[(p1 + 1) % n_], w_[q],
                                    w_[(q + 1) % n_]);
    if (d < best.delta) best = {std::min(p1, q), std::max(p1, q), d};
  }
  if (Instrumentation::enabled()) {
    Instrumentation::check(best.delta == gmin);
    Instrumentation::check(best.p == p1);
  }
  return best;
}

void TourEngine::apply(const TwoOptMove& m) {
  if (m.p < 0 || m.q <= m.p || m.q >= n_)
    throw std::invalid_argument("move positions out of range");
  const int p = m.p, q = m.q;
  std::vector<int> wn = w_;
  std::reverse(wn.begin() + p + 1, wn.begin() + q + 1);

  auto elem = [&](const TreeState& tr, int r) -> std::pair<int, int> {
    if (!tr.flip) {
      const int t = (tr.pos + 1 + r) % n_;
      return {wn[t], wn[(t + 1) % n_]};
    }
    const int t = (tr.pos - 1 - r + 2 * n_) % n_;
    return {wn[(t + 1) % n_], wn[t]};
  };

  const int block_limit = 2 * ((n_ - 1 + block_cap_ - 1) / block_cap_) + 4;
  for (int tid = 0; tid < n_; ++tid) {
    TreeState& tr = trees_[tid];
    if (tr.pos == p || tr.pos == q) continue;
    auto rank = [&](int t) {
      return tr.flip ? (tr.pos - 1 - t + n_) % n_ : (t - tr.pos - 1 + n_) % n_;
    };
    const int re = rank(p), rq = rank(q);
    const int first = std::min(re, rq), second = std::max(re, rq);
    // Make block boundaries fall exactly around ranks [first .. second].
    // The inside halves of these splits start and end the run, so their
    // aggregates are left stale: the end-payload overwrite below refolds
    // them anyway. out_min accumulates the aggregates outside the run.
    auto split_at = [&](size_t i, int o, bool fold_left) {
      Block& b = tr.blocks[i];
      Block left, right;
      if (!b.rev) {
        left = {b.off, o, false, kInf, kInf};
        right = {b.off + o, b.len - o, false, kInf, kInf};
      } else {
        left = {b.off + b.len - o, o, true, kInf, kInf};
        right = {b.off, b.len - o, true, kInf, kInf};
      }
      fold_block(tr.arena, fold_left ? left : right);
      b = right;
      tr.blocks.insert(tr.blocks.begin() + i, left);
    };
    size_t i = 0;
    int acc = 0;
    double out_min = kInf;
    while (acc + tr.blocks[i].len <= first) {
      out_min = std::min(out_min, tr.blocks[i].mc);
      acc += tr.blocks[i].len;
      ++i;
    }
    if (acc < first) {
      split_at(i, first - acc, true);
      out_min = std::min(out_min, tr.blocks[i].mc);
      acc = first;
      ++i;
    }
    const size_t bi = i;
    while (acc + tr.blocks[i].len <= second) {
      acc += tr.blocks[i].len;
      ++i;
    }
    if (acc + tr.blocks[i].len > second + 1) split_at(i, second + 1 - acc, false);
    const size_t bj = i + 1;
    for (size_t k = bj; k < tr.blocks.size(); ++k)
      out_min = std::min(out_min, tr.blocks[k].mc);
    // Reverse the run of blocks with their flags and aggregates; the two
    // stale end blocks are excluded from the interior minimum.
    std::reverse(tr.blocks.begin() + bi, tr.blocks.begin() + bj);
    double in_min = kInf;
    for (size_t k = bi; k < bj; ++k) {
      Block& b = tr.blocks[k];
      b.rev = !b.rev;
      std::swap(b.mc, b.mrc);
      if (k != bi && k != bj - 1) in_min = std::min(in_min, b.mc);
    }
    // The defining edge may sit inside the reversed tour segment; its
    // canonical position and orientation then change.
    if (p < tr.pos && tr.pos < q) {
      tr.pos = p + q - tr.pos;
      tr.flip = !tr.flip;
    }
    // The run's end elements are the stale removed edges; overwrite their
    // payload in place with the inserted edges.
    auto overwrite = [&](Block& b, bool last_in_run, std::pair<int, int> ab) {
      const Edge cur = oriented_edge(tr, ab.first, ab.second);
      const int idx = (b.rev != last_in_run) ? b.off + b.len - 1 : b.off;
      tr.arena[idx] = b.rev ? Edge{cur.b, cur.a, cur.smrc, cur.smc} : cur;
      fold_block(tr.arena, b);
    };
    overwrite(tr.blocks[bi], false, elem(tr, first));
    overwrite(tr.blocks[bj - 1], true, elem(tr, second));
    tr.root_mc = std::min(std::min(out_min, in_min),
                          std::min(tr.blocks[bi].mc, tr.blocks[bj - 1].mc));
    if (static_cast<int>(tr.blocks.size()) > block_limit) compact(tr);
  }

  const int ta = tree_at_pos_[p], tb = tree_at_pos_[q];
  w_ = std::move(wn);
  rebuild_tree(ta, p);
  rebuild_tree(tb, q);
  for (int tid = 0; tid < n_; ++tid) tree_at_pos_[trees_[tid].pos] = tid;
  if (Instrumentation::enabled()) audit();
}

std::vector<double> TourEngine::run_to_local_opt(int max_iters) {
  std::vector<double> deltas;
  for (int it = 0; it < max_iters; ++it) {
    const TwoOptMove m = best_move();
    if (!(m.delta < 0.0)) break;
    apply(m);
    deltas.push_back(m.delta);
  }
  return deltas;
}

Tour TourEngine::tour() const {
  Tour t;
  t.order = w_;
  return t;
}

double TourEngine::cost() const {
  double c = 0.0;
  for (int i = 0; i < n_; ++i)
    c += euclid_dist(pts_[w_[i]], pts_[w_[(i + 1) % n_]]);
  return c;
}

void TourEngine::audit() const {
  for (int tid = 0; tid < n_; ++tid) {
    const TreeState& tr = trees_[tid];
    // Blocks partition the arena and the stored sequence must match the
    // arithmetic layout derived from the tour and the (pos, flip) state.
    std::vector<int> covered(tr.arena.size(), 0);
    int r = 0;
    for (const Block& b : tr.blocks) {
      Instrumentation::check(b.len > 0);
      for (int i = 0; i < b.len; ++i) {
        const Edge& e = tr.arena[b.rev ? b.off + b.len - 1 - i : b.off + i];
        ++covered[b.rev ? b.off + b.len - 1 - i : b.off + i];
        const int ca = b.rev ? e.b : e.a;
        const int cb = b.rev ? e.a : e.b;
        int t, wa, wb;
        if (!tr.flip) {
          t = (tr.pos + 1 + r) % n_;
          wa = w_[t];
          wb = w_[(t + 1) % n_];
        } else {
          t = (tr.pos - 1 - r + 2 * n_) % n_;
          wa = w_[(t + 1) % n_];
          wb = w_[t];
        }
        Instrumentation::check(ca == wa && cb == wb);
        // Cached per-orientation move costs must equal fresh evaluations.
        Instrumentation::check(e.smc == two_move_delta(pts_, tr.u, tr.v, e.a, e.b));
        Instrumentation::check(e.smrc == two_move_delta(pts_, tr.u, tr.v, e.b, e.a));
        ++r;
      }
      // Aggregate recurrence: block minima over both orientations, bit for
      // bit.
      Block fresh = b;
      fold_block(tr.arena, fresh);
      Instrumentation::check(fresh.mc == b.mc);
      Instrumentation::check(fresh.mrc == b.mrc);
    }
    Instrumentation::check(r == n_ - 1);
    for (int c : covered) Instrumentation::check(c == 1);
    // Root aggregate equals the fold of the blocks and a naive partner scan.
    double rootw = kInf;
    for (const Block& b : tr.blocks) rootw = std::min(rootw, b.mc);
    Instrumentation::check(rootw == tr.root_mc);
    double want = kInf;
    for (int qpos = 0; qpos < n_; ++qpos) {
      if (qpos == tr.pos) continue;
      want = std::min(want, two_move_delta(pts_, w_[tr.pos], w_[(tr.pos + 1) % n_],
                                           w_[qpos], w_[(qpos + 1) % n_]));
    }
    Instrumentation::check(tr.root_mc == want);
  }
}

}  // namespace tspfg
