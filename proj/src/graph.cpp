#include "mmc/graph.hpp"

#include <algorithm>
#include <numeric>

namespace mmc {

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::out_of_range("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        g.adj_[static_cast<size_t>(u)].push_back(v);
        g.adj_[static_cast<size_t>(v)].push_back(u);
    }
    long long deg_sum = 0;
    for (auto& a : g.adj_) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        deg_sum += static_cast<long long>(a.size());
    }
    g.m_ = static_cast<int>(deg_sum / 2);
    return g;
}

bool Graph::adjacent(int u, int v) const {
    const auto& a = adj_[static_cast<size_t>(u)];
    const auto& b = adj_[static_cast<size_t>(v)];
    if (a.size() <= b.size()) return std::binary_search(a.begin(), a.end(), v);
    return std::binary_search(b.begin(), b.end(), u);
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

int Graph::min_degree() const {
    if (adj_.empty()) return 0;
    int d = n();
    for (const auto& a : adj_) d = std::min(d, static_cast<int>(a.size()));
    return d;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<size_t>(m_));
    for (int u = 0; u < n(); ++u)
        for (int v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::induced(const std::vector<int>& vs) const {
    std::vector<int> idx(static_cast<size_t>(n()), -1);
    for (size_t i = 0; i < vs.size(); ++i) idx[static_cast<size_t>(vs[i])] = static_cast<int>(i);
    std::vector<Edge> es;
    for (size_t i = 0; i < vs.size(); ++i)
        for (int w : neighbors(vs[i])) {
            int j = idx[static_cast<size_t>(w)];
            if (j > static_cast<int>(i)) es.emplace_back(static_cast<int>(i), j);
        }
    return from_edges(static_cast<int>(vs.size()), es);
}

Graph Graph::with_edges_added(const std::vector<Edge>& extra) const {
    auto es = edges();
    es.insert(es.end(), extra.begin(), extra.end());
    return from_edges(n(), es);
}

Graph Graph::without_edges(const std::vector<Edge>& removed) const {
    std::vector<Edge> drop;
    for (auto [u, v] : removed) drop.push_back(make_edge(u, v));
    std::sort(drop.begin(), drop.end());
    std::vector<Edge> keep;
    for (auto e : edges())
        if (!std::binary_search(drop.begin(), drop.end(), e)) keep.push_back(e);
    return from_edges(n(), keep);
}

std::vector<int> Graph::components(int* count) const {
    std::vector<int> comp(static_cast<size_t>(n()), -1);
    std::vector<int> stack;
    int c = 0;
    for (int s = 0; s < n(); ++s) {
        if (comp[static_cast<size_t>(s)] >= 0) continue;
        comp[static_cast<size_t>(s)] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : neighbors(v))
                if (comp[static_cast<size_t>(w)] < 0) {
                    comp[static_cast<size_t>(w)] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    if (count) *count = c;
    return comp;
}

Graph path_graph(int n) {
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return Graph::from_edges(n, es);
}

Graph cycle_graph(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, es);
}

Graph complete_graph(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return Graph::from_edges(n, es);
}

Graph complete_bipartite(int a, int b) {
    std::vector<Edge> es;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) es.emplace_back(i, a + j);
    return Graph::from_edges(a + b, es);
}

Graph star_graph(int leaves) {
    std::vector<Edge> es;
    for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, es);
}

Graph cube_graph() {
    std::vector<Edge> es;
    for (int v = 0; v < 8; ++v)
        for (int b = 0; b < 3; ++b) {
            int w = v ^ (1 << b);
            if (v < w) es.emplace_back(v, w);
        }
    return Graph::from_edges(8, es);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    auto es = a.edges();
    for (auto [u, v] : b.edges()) es.emplace_back(u + a.n(), v + a.n());
    return Graph::from_edges(a.n() + b.n(), es);
}

}  // namespace mmc
