#include "tspfg/disk_union.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace tspfg {

namespace {
constexpr double kRoot2 = 1.4142135623730951;
// Slack for the does-this-disk-contribute test; keeps re-inserting an existing
// disk (whose envelope values tie exactly) from minting hairline arcs.
constexpr double kDetectTol = 1e-12;
}

double ArcEnvelope::upper(const Point2D& c, double x) const {
  const double dx = x - c.x;
  return c.y + std::sqrt(std::max(0.0, r_ * r_ - dx * dx));
}

// x-coordinate where the upper halves of two equal-radius circles cross, or
// NaN when no circle intersection lies on both upper halves. In the NaN case
// one upper half stays above the other throughout their common domain and the
// envelope changes owner with a downward jump at the upper disk's domain end.
double ArcEnvelope::upper_crossing(const Point2D& a, const Point2D& b) const {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double d2 = dx * dx + dy * dy;
  const double d = std::sqrt(d2);
  const double h = std::sqrt(std::max(0.0, r_ * r_ - d2 / 4.0));
  const Point2D mid{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
  const Point2D p1{mid.x - dy / d * h, mid.y + dx / d * h};
  const Point2D p2{mid.x + dy / d * h, mid.y - dx / d * h};
  // A crossing of the upper halves must sit at or above both centers. With
  // equal radii the upper-function difference is monotone, so at most one
  // intersection qualifies.
  const double ymin = std::max(a.y, b.y) - 1e-9;
  const bool ok1 = p1.y >= ymin, ok2 = p2.y >= ymin;
  if (ok1 && !ok2) return p1.x;
  if (ok2 && !ok1) return p2.x;
  if (!ok1 && !ok2) return std::numeric_limits<double>::quiet_NaN();
  const double e1 = std::fabs(upper(a, p1.x) - upper(b, p1.x));
  const double e2 = std::fabs(upper(a, p2.x) - upper(b, p2.x));
  return e1 <= e2 ? p1.x : p2.x;
}

bool ArcEnvelope::arc_affected(const Point2D& c, const Arc& a, double tol) const {
  const double lo = std::max(a.xlo, c.x - r_);
  const double hi = std::min(a.xhi, c.x + r_);
  // A zero-width domain overlap contributes nothing; it arises when an arc
  // butts against another disk's domain end (jump boundary).
  if (!(lo < hi)) return false;
  return upper(c, lo) > upper(a.c, lo) + tol || upper(c, hi) > upper(a.c, hi) + tol;
}

bool ArcEnvelope::arc_fully_covered(const Point2D& c, const Arc& a) const {
  if (c.x - r_ > a.xlo || c.x + r_ < a.xhi) return false;
  return upper(c, a.xlo) > upper(a.c, a.xlo) && upper(c, a.xhi) > upper(a.c, a.xhi);
}

// Binary descent over the arc order: at each pivot either the new disk covers
// part of the pivot arc, or the search continues toward the new center's side.
int ArcEnvelope::find_affected(const Point2D& c) const {
  int lo = 0, hi = static_cast<int>(arcs_.size()) - 1;
  while (lo <= hi) {
    const int mid = (lo + hi) / 2;
    if (arc_affected(c, arcs_[mid], kDetectTol)) return mid;
    if (c.x < arcs_[mid].c.x)
      hi = mid - 1;
    else
      lo = mid + 1;
  }
  return -1;
}

void ArcEnvelope::insert(const Point2D& c, int owner) {
  if (arcs_.empty()) {
    arcs_.push_back({c, owner, c.x - r_, c.x + r_});
    if (Instrumentation::enabled()) audit(c);
    return;
  }
  const int m = find_affected(c);
  if (Instrumentation::enabled()) {
    // The descent must agree with a linear scan about whether any arc is
    // affected, and a found arc must really be affected.
    bool any = false;
    for (const auto& a : arcs_) any = any || arc_affected(c, a, kDetectTol);
    Instrumentation::check(any == (m >= 0));
    if (m >= 0) Instrumentation::check(arc_affected(c, arcs_[m], kDetectTol));
  }
  if (m < 0) return;  // fully below the envelope

  // Expand to the whole contiguous affected run, without the detection slack
  // so hairline-covered neighbors join the run and keep the order intact.
  int L = m, R = m;
  while (L - 1 >= 0 && arc_affected(c, arcs_[L - 1])) --L;
  while (R + 1 < static_cast<int>(arcs_.size()) && arc_affected(c, arcs_[R + 1])) ++R;

  int erase_from = L, erase_to = R;  // inclusive
  double newlo = 0.0, newhi = 0.0;
  // A partially covered boundary arc survives on the side away from the new
  // center (equal radii make the difference of upper halves monotone, so a
  // circle never pokes through the middle of an arc).
  const bool left_trim = !arc_fully_covered(c, arcs_[L]) && arcs_[L].c.x < c.x;
  const bool right_trim = !arc_fully_covered(c, arcs_[R]) && arcs_[R].c.x > c.x;
  if (left_trim) {
    double x = upper_crossing(arcs_[L].c, c);
    // No upper-half crossing: the new disk is above the old arc throughout
    // the common domain, so the old arc resumes at the new disk's domain end.
    if (std::isnan(x)) x = c.x - r_;
    arcs_[L].xhi = x;
    newlo = x;
    erase_from = L + 1;
  }
  if (right_trim) {
    double x = upper_crossing(arcs_[R].c, c);
    if (std::isnan(x)) x = c.x + r_;
    arcs_[R].xlo = x;
    newhi = x;
    erase_to = R - 1;
  }
  // Untrimmed boundaries: butt the new arc against the surviving neighbor (or
  // take the full disk extent when there is none), so intervals stay
  // contiguous even when coverage at the old boundary was borderline.
  if (!left_trim)
    newlo = erase_from == 0 ? c.x - r_ : arcs_[erase_from - 1].xhi;
  if (!right_trim)
    newhi = erase_to + 1 >= static_cast<int>(arcs_.size()) ? c.x + r_
                                                          : arcs_[erase_to + 1].xlo;
  if (Instrumentation::enabled() && L < R) {
    // In a run of two or more, the leftmost arc's owner must sit left of the
    // new center and the rightmost one right of it (or be fully covered).
    Instrumentation::check(arc_fully_covered(c, arcs_[L]) || arcs_[L].c.x < c.x);
    Instrumentation::check(arc_fully_covered(c, arcs_[R]) || arcs_[R].c.x > c.x);
  }
  auto it = arcs_.begin() + erase_from;
  if (erase_to >= erase_from) it = arcs_.erase(it, arcs_.begin() + erase_to + 1);
  arcs_.insert(it, {c, owner, newlo, newhi});
  if (Instrumentation::enabled()) audit(c);
}

void ArcEnvelope::audit(const Point2D&) const {
  // One arc per disk, center order, and interval contiguity.
  std::set<int> owners;
  for (size_t i = 0; i < arcs_.size(); ++i) {
    Instrumentation::check(owners.insert(arcs_[i].owner).second);
    Instrumentation::check(arcs_[i].xlo <= arcs_[i].xhi + 1e-9);
    if (i > 0) {
      Instrumentation::check(arcs_[i - 1].c.x < arcs_[i].c.x);
      Instrumentation::check(std::fabs(arcs_[i - 1].xhi - arcs_[i].xlo) <= 1e-9);
    }
  }
}

bool ArcEnvelope::covers(const Point2D& q) const {
  if (arcs_.empty()) return false;
  // Locate the arc whose x-interval holds q.x.
  int lo = 0, hi = static_cast<int>(arcs_.size()) - 1;
  if (q.x < arcs_[0].xlo - geometry_eps() || q.x > arcs_[hi].xhi + geometry_eps())
    return false;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (q.x <= arcs_[mid].xhi)
      hi = mid;
    else
      lo = mid + 1;
  }
  return euclid_dist(q, arcs_[lo].c) <= r_ + geometry_eps();
}

DiskUnion::Cell::Cell()
    : top(kRoot2), bottom(kRoot2), left(kRoot2), right(kRoot2) {}

DiskUnion::DiskUnion(double radius) {
  if (!(radius > 0)) throw std::invalid_argument("radius must be positive");
  scale_ = kRoot2 / radius;
}

void DiskUnion::insert(const Point2D& center) {
  const Point2D p{center.x * scale_, center.y * scale_};
  const int cx = static_cast<int>(std::floor(p.x));
  const int cy = static_cast<int>(std::floor(p.y));
  Cell& cell = strips_[cx][cy];
  const int id = count_++;
  cell.centers.push_back(p);
  cell.top.insert({p.x, p.y}, id);
  cell.bottom.insert({p.x, -p.y}, id);
  cell.right.insert({p.y, p.x}, id);
  cell.left.insert({p.y, -p.x}, id);
}

const DiskUnion::Cell* DiskUnion::find_cell(int cx, int cy) const {
  auto s = strips_.find(cx);
  if (s == strips_.end()) return nullptr;
  auto c = s->second.find(cy);
  return c == s->second.end() ? nullptr : &c->second;
}

bool DiskUnion::contains(const Point2D& q) const {
  if (count_ == 0) return false;
  const Point2D p{q.x * scale_, q.y * scale_};
  const int qx = static_cast<int>(std::floor(p.x));
  const int qy = static_cast<int>(std::floor(p.y));
  if (find_cell(qx, qy)) return true;  // a center's cell is fully covered
  for (int dx = -2; dx <= 2; ++dx)
    for (int dy = -2; dy <= 2; ++dy) {
      if (std::abs(dx) == 2 && std::abs(dy) == 2) continue;  // beyond sqrt(2)
      if (dx == 0 && dy == 0) continue;
      const Cell* cell = find_cell(qx + dx, qy + dy);
      if (!cell) continue;
      // Pick the directional envelope q lies beyond.
      const double X = qx + dx, Y = qy + dy;
      bool hit = false;
      if (p.y >= Y + 1)
        hit = cell->top.covers({p.x, p.y});
      else if (p.y < Y)
        hit = cell->bottom.covers({p.x, -p.y});
      else if (p.x >= X + 1)
        hit = cell->right.covers({p.y, p.x});
      else
        hit = cell->left.covers({p.y, -p.x});
      if (hit) return true;
    }
  return false;
}

}  // namespace tspfg
