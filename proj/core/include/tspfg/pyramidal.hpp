#pragma once

#include "tspfg/instance.hpp"

namespace tspfg {

struct PyramidalResult {
  double length = 0.0;
  Tour tour;
};

// Minimum-length pyramidal tour with respect to the given point order: one
// chain ascends through a subset of indices, the other descends through the
// rest, meeting at the first and last point.
PyramidalResult pyramidal_quadratic(const OrderedPointSet& pts);
PyramidalResult pyramidal_fast(const OrderedPointSet& pts);

// True when the visiting order has exactly one ascent followed by one descent
// (up to rotation/reflection of the cycle).
bool is_pyramidal(const Tour& t);

namespace detail {
// Rebuild the tour from the chain-extension choices of the row DP shared by
// the length and bottleneck solvers: pred[i] (i >= 2) is the chain end point
// p_i was attached to when both ends moved, kfinal closes against p_{n-1}.
Tour reconstruct_pyramidal(int n, const std::vector<int>& pred, int kfinal);
}  // namespace detail

}  // namespace tspfg
