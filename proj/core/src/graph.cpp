#include "kconn/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

namespace kconn {

Graph Graph::from_edges(int node_count, std::span<const std::pair<int, int>> edges) {
    if (node_count < 0) throw std::invalid_argument("node_count must be non-negative");
    Graph g(node_count);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= node_count || v < 0 || v >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loops are not allowed");
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& list : g.adj_) {
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw std::invalid_argument("duplicate edge");
    }
    return g;
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& list : adj_) twice += list.size();
    return twice / 2;
}

bool Graph::has_edge(int u, int v) const {
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int u = 0; u < node_count(); ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

int min_degree(const Graph& g) {
    if (g.node_count() == 0) throw std::invalid_argument("min_degree undefined on empty graph");
    int best = g.degree(0);
    for (int v = 1; v < g.node_count(); ++v) best = std::min(best, g.degree(v));
    return best;
}

bool is_connected(const Graph& g, ConnectivityPolicy policy) {
    const int n = g.node_count();
    if (n == 0) return policy.tiny_graph_rule == TinyGraphRule::empty_graph_is_connected;
    if (n == 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

Graph induced_subgraph(const Graph& g, std::span<const int> keep) {
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (int v : kept)
        if (v < 0 || v >= g.node_count())
            throw std::invalid_argument("induced_subgraph: node out of range");

    std::vector<int> relabel(g.node_count(), -1);
    for (std::size_t i = 0; i < kept.size(); ++i) relabel[kept[i]] = static_cast<int>(i);

    Graph sub(static_cast<int>(kept.size()));
    std::vector<std::pair<int, int>> edges;
    for (int u : kept)
        for (int v : g.neighbors(u))
            if (u < v && relabel[v] >= 0) edges.emplace_back(relabel[u], relabel[v]);
    return Graph::from_edges(static_cast<int>(kept.size()), edges);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& in) {
    int n;
    std::size_t m;
    if (!(in >> n >> m)) throw std::invalid_argument("edge list: bad header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw std::invalid_argument("edge list: truncated");
        edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
}

}  // namespace kconn
