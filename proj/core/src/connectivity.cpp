#include "kconn/connectivity.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>

namespace kconn {

// --- VertexCutSolver -------------------------------------------------------
//
// Node v splits into in(v) = 2v and out(v) = 2v+1 with a capacity-1 internal
// arc; each undirected edge (u,v) becomes out(u)->in(v) and out(v)->in(u)
// with capacity 1. Reverse residual arcs pair up as (id ^ 1).

VertexCutSolver::VertexCutSolver(const Graph& g) : n_(g.node_count()) {
    const std::size_t m = g.edge_count();
    const std::size_t arcs = 2 * (static_cast<std::size_t>(n_) + 2 * m);
    arc_to_.reserve(arcs);
    arc_cap_init_.reserve(arcs);

    std::vector<std::vector<int>> out_arcs(2 * static_cast<std::size_t>(n_));
    auto add_arc = [&](int from, int to, signed char cap) {
        out_arcs[from].push_back(static_cast<int>(arc_to_.size()));
        arc_to_.push_back(to);
        arc_cap_init_.push_back(cap);
    };
    for (int v = 0; v < n_; ++v) {
        add_arc(2 * v, 2 * v + 1, 1);
        add_arc(2 * v + 1, 2 * v, 0);
    }
    for (int u = 0; u < n_; ++u) {
        for (int v : g.neighbors(u)) {
            if (u < v) {
                add_arc(2 * u + 1, 2 * v, 1);
                add_arc(2 * v, 2 * u + 1, 0);
                add_arc(2 * v + 1, 2 * u, 1);
                add_arc(2 * u, 2 * v + 1, 0);
            }
        }
    }
    arc_cap_ = arc_cap_init_;

    first_arc_.assign(2 * static_cast<std::size_t>(n_) + 1, 0);
    for (std::size_t v = 0; v < out_arcs.size(); ++v)
        first_arc_[v + 1] = first_arc_[v] + static_cast<int>(out_arcs[v].size());
    arc_list_.resize(arc_to_.size());
    for (std::size_t v = 0; v < out_arcs.size(); ++v)
        std::copy(out_arcs[v].begin(), out_arcs[v].end(), arc_list_.begin() + first_arc_[v]);

    prev_arc_.assign(2 * static_cast<std::size_t>(n_), -1);
    stamp_.assign(2 * static_cast<std::size_t>(n_), 0);
    queue_.reserve(2 * static_cast<std::size_t>(n_));
}

bool VertexCutSolver::augment(int source, int sink) {
    ++current_stamp_;
    queue_.clear();
    queue_.push_back(source);
    stamp_[source] = current_stamp_;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
        int u = queue_[head];
        for (int i = first_arc_[u]; i < first_arc_[u + 1]; ++i) {
            int a = arc_list_[i];
            if (arc_cap_[a] <= 0) continue;
            int w = arc_to_[a];
            if (stamp_[w] == current_stamp_) continue;
            stamp_[w] = current_stamp_;
            prev_arc_[w] = a;
            if (w == sink) {
                for (int v = sink; v != source;) {
                    int arc = prev_arc_[v];
                    --arc_cap_[arc];
                    ++arc_cap_[arc ^ 1];
                    // arc goes from (arc^1)'s target to v
                    v = arc_to_[arc ^ 1];
                }
                return true;
            }
            queue_.push_back(w);
        }
    }
    return false;
}

int VertexCutSolver::local_connectivity(int s, int t, int cap) {
    std::memcpy(arc_cap_.data(), arc_cap_init_.data(), arc_cap_.size() * sizeof(signed char));
    const int source = 2 * s + 1, sink = 2 * t;
    int flow = 0;
    while (flow < cap && augment(source, sink)) ++flow;
    return flow;
}

int local_vertex_connectivity(const Graph& g, int s, int t) {
    const int n = g.node_count();
    if (s < 0 || s >= n || t < 0 || t >= n) throw std::invalid_argument("node out of range");
    if (s == t) throw std::invalid_argument("local connectivity undefined for s == t");
    if (g.has_edge(s, t))
        throw std::invalid_argument("local connectivity undefined for adjacent pair");
    VertexCutSolver solver(g);
    return solver.local_connectivity(s, t, n);
}

// --- k-connectivity decision -----------------------------------------------

namespace {

bool is_complete(const Graph& g) {
    const int n = g.node_count();
    for (int v = 0; v < n; ++v)
        if (g.degree(v) != n - 1) return false;
    return true;
}

// Vacuous-convention evaluation for tiny graphs (node_count <= k): every
// removal of fewer than k nodes can isolate any pair, so the graph must be
// complete (or have at most one node).
bool tiny_vacuous_k_connected(const Graph& g) {
    return g.node_count() <= 1 || is_complete(g);
}

}  // namespace

bool is_k_connected(const Graph& g, int k, ConnectivityPolicy policy) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    const int n = g.node_count();
    const bool vacuous = policy.tiny_graph_rule == TinyGraphRule::empty_graph_is_connected;

    if (k == 1) {
        if (vacuous) return is_connected(g, policy);
        return n >= 2 && is_connected(g, policy);
    }
    if (n < k + 1) return vacuous ? tiny_vacuous_k_connected(g) : false;

    int pivot = 0;
    for (int v = 1; v < n; ++v)
        if (g.degree(v) < g.degree(pivot)) pivot = v;
    if (g.degree(pivot) < k) return false;

    VertexCutSolver solver(g);
    for (int v = 0; v < n; ++v) {
        if (v == pivot || g.has_edge(pivot, v)) continue;
        if (solver.local_connectivity(pivot, v, k) < k) return false;
    }
    const auto& nbrs = g.neighbors(pivot);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
            if (g.has_edge(nbrs[i], nbrs[j])) continue;
            if (solver.local_connectivity(nbrs[i], nbrs[j], k) < k) return false;
        }
    }
    return true;
}

bool is_k_connected_bruteforce(const Graph& g, int k, ConnectivityPolicy policy) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    const int n = g.node_count();
    if (n > 20) throw std::invalid_argument("brute-force oracle guarded to node_count <= 20");
    const auto adj = bitgraph::adjacency_masks(g);
    const bitgraph::Mask all = n == 0 ? 0 : (bitgraph::Mask{1} << n) - 1;
    return bitgraph::k_connected_in(adj, all, k, policy);
}

// --- bitmask graphs ---------------------------------------------------------

namespace bitgraph {

std::vector<Mask> adjacency_masks(const Graph& g) {
    if (g.node_count() > 20) throw std::invalid_argument("adjacency_masks: node_count > 20");
    std::vector<Mask> adj(g.node_count(), 0);
    for (int u = 0; u < g.node_count(); ++u)
        for (int v : g.neighbors(u)) adj[u] |= Mask{1} << v;
    return adj;
}

bool connected_in(std::span<const Mask> adj, Mask nodes, ConnectivityPolicy policy) {
    if (nodes == 0) return policy.tiny_graph_rule == TinyGraphRule::empty_graph_is_connected;
    Mask reached = nodes & (~nodes + 1);  // lowest set bit
    while (true) {
        Mask grown = reached;
        Mask frontier = reached;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            grown |= adj[v] & nodes;
        }
        if (grown == reached) break;
        reached = grown;
    }
    return reached == nodes;
}

namespace {

bool all_removals_connected(std::span<const Mask> adj, Mask nodes, int max_remove,
                            ConnectivityPolicy policy, Mask removed, int member_from,
                            std::span<const int> members) {
    if (!connected_in(adj, nodes & ~removed, policy)) return false;
    if (max_remove == 0) return true;
    for (std::size_t i = member_from; i < members.size(); ++i) {
        Mask bit = Mask{1} << members[i];
        if (!all_removals_connected(adj, nodes, max_remove - 1, policy, removed | bit,
                                    static_cast<int>(i) + 1, members))
            return false;
    }
    return true;
}

}  // namespace

bool k_connected_in(std::span<const Mask> adj, Mask nodes, int k, ConnectivityPolicy policy) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    const int count = std::popcount(nodes);
    const bool vacuous = policy.tiny_graph_rule == TinyGraphRule::empty_graph_is_connected;
    if (!vacuous && count < k + 1) return false;

    std::vector<int> members;
    members.reserve(count);
    for (Mask rest = nodes; rest; rest &= rest - 1) members.push_back(std::countr_zero(rest));
    return all_removals_connected(adj, nodes, std::min(k - 1, count), policy, 0, 0, members);
}

}  // namespace bitgraph

}  // namespace kconn
