#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kconn/graph.hpp"

namespace kconn {

/// Size of a minimum vertex cut separating s from t, equal to the maximum
/// number of internally vertex-disjoint s-t paths (Menger). Computed by
/// unit-capacity augmenting paths on the node-split directed graph.
/// Throws if s == t or if s and t are adjacent.
int local_vertex_connectivity(const Graph& g, int s, int t);

/// Decides k-vertex-connectivity. Under the default policy a graph is
/// k-connected only if node_count >= k+1 and every removal of at most k-1
/// nodes leaves it connected. Uses a min-degree pre-check followed by the
/// fixed-pivot local-connectivity procedure: every minimum cut either misses
/// the pivot (caught by the pivot-to-non-neighbor sweep) or contains it (then
/// it separates two of the pivot's neighbors).
bool is_k_connected(const Graph& g, int k, ConnectivityPolicy policy = {});

/// Independent oracle: enumerates every vertex subset of size < k and tests
/// connectivity of the residue. Guarded to node_count <= 20.
bool is_k_connected_bruteforce(const Graph& g, int k, ConnectivityPolicy policy = {});

/// Reusable max-flow workspace for repeated local-connectivity queries on one
/// graph. Not thread-safe; use one solver per worker.
class VertexCutSolver {
  public:
    explicit VertexCutSolver(const Graph& g);

    /// Max vertex-disjoint s-t path count, capped at `cap`. Requires s != t
    /// and s, t non-adjacent.
    int local_connectivity(int s, int t, int cap);

  private:
    bool augment(int source, int sink);

    int n_ = 0;
    std::vector<int> arc_to_;
    std::vector<signed char> arc_cap_, arc_cap_init_;
    std::vector<int> first_arc_;   // CSR offsets per split node
    std::vector<int> arc_list_;    // arc ids per split node
    std::vector<int> prev_arc_;
    std::vector<int> stamp_;
    std::vector<int> queue_;
    int current_stamp_ = 0;
};

namespace bitgraph {

/// Bitmask graph utilities for exhaustive small-n work (n <= 20).
using Mask = std::uint32_t;

/// Connectivity of the subgraph induced by `nodes` over bitmask adjacency.
bool connected_in(std::span<const Mask> adj, Mask nodes, ConnectivityPolicy policy = {});

/// k-connectivity of the subgraph induced by `nodes`, by subset enumeration.
bool k_connected_in(std::span<const Mask> adj, Mask nodes, int k, ConnectivityPolicy policy = {});

/// Adjacency bitmasks of a Graph (requires node_count <= 20).
std::vector<Mask> adjacency_masks(const Graph& g);

}  // namespace bitgraph

}  // namespace kconn
