#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mmc {

using Edge = std::pair<int, int>;

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<size_t>(n)) {}

    // Self-loops throw; duplicate edges collapse.
    static Graph from_edges(int n, const std::vector<Edge>& edges);

    int n() const { return static_cast<int>(adj_.size()); }
    int m() const { return m_; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
    bool adjacent(int u, int v) const;
    int max_degree() const;
    int min_degree() const;

    // Edges as (u,v) with u<v in lexicographic order.
    std::vector<Edge> edges() const;

    // Subgraph induced by `vs` (in the given order); old_of[i] = vs[i].
    Graph induced(const std::vector<int>& vs) const;
    Graph with_edges_added(const std::vector<Edge>& extra) const;
    Graph without_edges(const std::vector<Edge>& removed) const;

    // Connected components; comp[v] is numbered by smallest vertex.
    std::vector<int> components(int* count = nullptr) const;

    bool operator==(const Graph& o) const { return adj_ == o.adj_; }

private:
    std::vector<std::vector<int>> adj_;
    int m_ = 0;
};

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Common graph families used by tests and generators.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph star_graph(int leaves);
Graph cube_graph();
Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace mmc
