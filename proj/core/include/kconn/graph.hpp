#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace kconn {

/// Convention for connectivity of graphs with no nodes. The empty graph is
/// disconnected by default; the alternative treats it as vacuously connected.
enum class TinyGraphRule {
    empty_graph_is_disconnected,
    empty_graph_is_connected,
};

struct ConnectivityPolicy {
    TinyGraphRule tiny_graph_rule = TinyGraphRule::empty_graph_is_disconnected;
};

/// Simple undirected labeled graph. Adjacency lists are sorted, symmetric,
/// self-loop free, and duplicate free; construction validates all of that.
/// Immutable after construction, so concurrent read access is safe.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int node_count) : adj_(node_count) {}

    /// Builds a graph from an edge list. Throws std::invalid_argument on
    /// out-of-range endpoints, self-loops, or duplicate edges.
    static Graph from_edges(int node_count, std::span<const std::pair<int, int>> edges);

    int node_count() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const;
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;

    /// Edges as (u, v) with u < v, ascending lexicographic.
    std::vector<std::pair<int, int>> edges() const;

  private:
    std::vector<std::vector<int>> adj_;
};

/// Minimum degree over all nodes. Throws on the empty graph.
int min_degree(const Graph& g);

/// True iff every pair of nodes is joined by a path. Single node: true.
/// Empty graph: per policy.
bool is_connected(const Graph& g, ConnectivityPolicy policy = {});

/// Subgraph induced by `keep`, relabeled 0..|keep|-1 in ascending order of
/// the kept original indices. Throws on out-of-range entries.
Graph induced_subgraph(const Graph& g, std::span<const int> keep);

/// Edge-list text format: header "n m", then m lines "u v" with u < v in
/// ascending lexicographic order.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);

}  // namespace kconn
