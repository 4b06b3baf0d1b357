#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tspfg/instance.hpp"

namespace tspfg {

// Pairing of the 2k endpoints of the removed edges: endpoint j is connected
// by an inserted edge to endpoint pi[j]. Endpoints are numbered 0..2k-1 in
// tour order; removed edge i has endpoints 2i and 2i+1.
struct Signature {
  std::vector<int> pi;  // fixed-point-free involution on {0, ..., 2k-1}
  int k() const { return static_cast<int>(pi.size()) / 2; }
  bool operator==(const Signature&) const = default;
};

// A k-move on a tour: remove the tour edges at the given positions (edge p is
// {order[p], order[p+1 mod n]}, positions strictly increasing) and reconnect
// their endpoints according to the signature.
struct KMove {
  int k = 0;
  std::vector<int> positions;
  Signature sig;
};

struct KMoveResult {
  KMove move;
  std::int64_t delta = 0;  // inserted weight minus removed weight (negative = improving)
};

// True iff removing the k edges from the canonical endpoint cycle and adding
// the inserted edges of pi yields one cycle through all 2k endpoints.
bool signature_is_feasible(int k, const Signature& sig);

// All feasible signatures for k, in lexicographic order of pi. 2 <= k <= 8.
std::vector<Signature> enumerate_feasible_signatures(int k);

// Indices (into 0..k-1) of at least ceil(k/3) removed edges such that no
// inserted edge joins endpoints of two selected edges.
std::vector<int> noninterfering_subset(int k, const Signature& sig);

// The instance with every tour edge subdivided: vertex i of the tour becomes
// the pair a_i = 2i, b_i = 2i+1, the new tour is the identity order, and each
// {a_i, b_i} edge gets the large negative weight -2kM so no optimal k-move
// removes it. Removed edges of any optimal move on the result are pairwise
// endpoint-disjoint.
struct SubdividedInstance {
  SymmetricWeightedGraph graph;
  Tour tour;
  std::vector<int> origin;     // subdivided vertex -> original vertex
  std::int64_t penalty = 0;    // 2kM
};
SubdividedInstance subdivide(const SymmetricWeightedGraph& g, const Tour& t, int k);

// Map a move on the subdivided instance back to the original tour; requires
// that the move removes no {a_i, b_i} edge (i.e. only odd tour positions).
KMove lift_move(const KMove& m, const SubdividedInstance& sub, const Tour& original);

// Net cost change of applying the move; the move must be valid for t.
std::int64_t move_delta(const SymmetricWeightedGraph& g, const Tour& t, const KMove& m);

// True iff removing/inserting per the move leaves a Hamiltonian cycle.
bool move_is_valid(const Tour& t, const KMove& m);

// The resulting tour; throws std::invalid_argument when the move is invalid.
Tour apply_kmove(const Tour& t, const KMove& m);

// Exhaustive search over all position subsets and feasible signatures.
// Returns the strictly improving move of minimum delta, or nullopt.
std::optional<KMoveResult> best_kmove_bruteforce(const SymmetricWeightedGraph& g,
                                                 const Tour& t, int k);

// Minimum of sum c[i][j_i] over strictly increasing location sequences
// j_0 < ... < j_{s-1} (s = c.size() objects into r = c[0].size() locations).
struct EmbedResult {
  std::int64_t value = 0;
  std::vector<int> locations;
};
EmbedResult embed_dp(const std::vector<std::vector<std::int64_t>>& c);

// Subquadratic-in-k search: runs per feasible signature on the subdivided
// instance, freezing the removed edges outside a pairwise noninterfering set
// and embedding the rest with embed_dp, then lifts the winner back.
std::optional<KMoveResult> best_kmove_fast(const SymmetricWeightedGraph& g,
                                           const Tour& t, int k);

// Complete graph on the points with distances rounded to integers at a fixed
// binary scale, for feeding geometric instances to the k-opt machinery.
SymmetricWeightedGraph rounded_distance_graph(const OrderedPointSet& pts,
                                              int scale_bits = 20);

}  // namespace tspfg
