#include "mmc/multicut.hpp"

#include <algorithm>

namespace mmc {

std::vector<std::vector<int>> Multicut::parts() const {
    std::vector<std::vector<int>> out(static_cast<size_t>(p));
    for (size_t v = 0; v < part_of.size(); ++v)
        out[static_cast<size_t>(part_of[v])].push_back(static_cast<int>(v));
    return out;
}

std::string to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::VertexTwoCrossing: return "vertex-two-crossing";
        case ViolationKind::DisconnectedPart: return "disconnected-part";
        case ViolationKind::EmptyPart: return "empty-part";
        case ViolationKind::TooFewParts: return "too-few-parts";
    }
    return "unknown";
}

std::optional<ViolationReport> validate_multicut(const Graph& g, const std::vector<int>& part_of,
                                                 int ell) {
    if (static_cast<int>(part_of.size()) != g.n())
        throw std::invalid_argument("part_of is not total over V(G)");
    int labels = 0;
    for (int x : part_of) {
        if (x < 0) throw std::invalid_argument("negative part label");
        labels = std::max(labels, x + 1);
    }
    for (int v = 0; v < g.n(); ++v) {
        int out = 0;
        for (int w : g.neighbors(v))
            if (part_of[static_cast<size_t>(w)] != part_of[static_cast<size_t>(v)]) ++out;
        if (out > 1) return ViolationReport{ViolationKind::VertexTwoCrossing, {v}};
    }
    std::vector<char> seen(static_cast<size_t>(labels), 0);
    for (int x : part_of) seen[static_cast<size_t>(x)] = 1;
    for (int i = 0; i < labels; ++i)
        if (!seen[static_cast<size_t>(i)]) return ViolationReport{ViolationKind::EmptyPart, {i}};
    if (labels < ell) return ViolationReport{ViolationKind::TooFewParts, {labels, ell}};
    return std::nullopt;
}

std::optional<ViolationReport> validate_canonical(const Graph& g, const Multicut& mc) {
    if (auto r = validate_multicut(g, mc.part_of, 1)) return r;
    int labels = 0;
    for (int x : mc.part_of) labels = std::max(labels, x + 1);
    if (labels != mc.p) return ViolationReport{ViolationKind::EmptyPart, {mc.p}};
    Multicut c = canonicalize(g, mc.part_of);
    if (c.p != mc.p) {
        for (int v = 0; v < g.n(); ++v)
            for (int w = v + 1; w < g.n(); ++w)
                if (mc.part_of[static_cast<size_t>(v)] == mc.part_of[static_cast<size_t>(w)] &&
                    c.part_of[static_cast<size_t>(v)] != c.part_of[static_cast<size_t>(w)])
                    return ViolationReport{ViolationKind::DisconnectedPart,
                                           {mc.part_of[static_cast<size_t>(v)]}};
    }
    if (c.cut_edges != mc.cut_edges)
        return ViolationReport{ViolationKind::VertexTwoCrossing, {}};
    return std::nullopt;
}

Multicut canonicalize(const Graph& g, const std::vector<int>& part_of) {
    if (static_cast<int>(part_of.size()) != g.n())
        throw std::invalid_argument("part_of is not total over V(G)");
    Multicut mc;
    mc.part_of.assign(static_cast<size_t>(g.n()), -1);
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        if (mc.part_of[static_cast<size_t>(s)] >= 0) continue;
        int id = mc.p++;
        mc.part_of[static_cast<size_t>(s)] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v))
                if (mc.part_of[static_cast<size_t>(w)] < 0 &&
                    part_of[static_cast<size_t>(w)] == part_of[static_cast<size_t>(v)]) {
                    mc.part_of[static_cast<size_t>(w)] = id;
                    stack.push_back(w);
                }
        }
    }
    for (auto [u, v] : g.edges())
        if (mc.part_of[static_cast<size_t>(u)] != mc.part_of[static_cast<size_t>(v)])
            mc.cut_edges.emplace_back(u, v);
    return mc;
}

Multicut max_parts_of_cut(const Graph& g, const std::vector<Edge>& matching) {
    std::vector<char> hit(static_cast<size_t>(g.n()), 0);
    for (auto [u, v] : matching) {
        if (u < 0 || v < 0 || u >= g.n() || v >= g.n() || !g.adjacent(u, v))
            throw std::invalid_argument("cut edge not in graph");
        if (hit[static_cast<size_t>(u)] || hit[static_cast<size_t>(v)])
            throw std::invalid_argument("edge set is not a matching");
        hit[static_cast<size_t>(u)] = hit[static_cast<size_t>(v)] = 1;
    }
    Graph rest = g.without_edges(matching);
    int c = 0;
    auto comp = rest.components(&c);
    return canonicalize(g, comp);
}

Modulator approx_vertex_cover(const Graph& g) {
    std::vector<char> in(static_cast<size_t>(g.n()), 0);
    for (auto [u, v] : g.edges())
        if (!in[static_cast<size_t>(u)] && !in[static_cast<size_t>(v)])
            in[static_cast<size_t>(u)] = in[static_cast<size_t>(v)] = 1;
    Modulator m{ModulatorKind::VertexCover, {}};
    for (int v = 0; v < g.n(); ++v)
        if (in[static_cast<size_t>(v)]) m.vertices.push_back(v);
    return m;
}

Modulator approx_cluster_modulator(const Graph& g) {
    std::vector<char> in(static_cast<size_t>(g.n()), 0);
    for (int v = 0; v < g.n(); ++v) {
        const auto& nb = g.neighbors(v);
        for (size_t i = 0; i < nb.size() && !in[static_cast<size_t>(v)]; ++i) {
            int a = nb[i];
            if (in[static_cast<size_t>(a)]) continue;
            for (size_t j = i + 1; j < nb.size(); ++j) {
                int b = nb[j];
                if (in[static_cast<size_t>(b)] || g.adjacent(a, b)) continue;
                in[static_cast<size_t>(v)] = in[static_cast<size_t>(a)] = in[static_cast<size_t>(b)] = 1;
                break;
            }
        }
    }
    Modulator m{ModulatorKind::Cluster, {}};
    for (int v = 0; v < g.n(); ++v)
        if (in[static_cast<size_t>(v)]) m.vertices.push_back(v);
    return m;
}

Modulator approx_cocluster_modulator(const Graph& g) {
    std::vector<char> in(static_cast<size_t>(g.n()), 0);
    for (int v = 0; v < g.n(); ++v) {
        for (int a = 0; a < g.n() && !in[static_cast<size_t>(v)]; ++a) {
            if (a == v || in[static_cast<size_t>(a)] || g.adjacent(v, a)) continue;
            for (int b : g.neighbors(a)) {
                if (b <= a || b == v || in[static_cast<size_t>(b)] || g.adjacent(v, b)) continue;
                in[static_cast<size_t>(v)] = in[static_cast<size_t>(a)] = in[static_cast<size_t>(b)] = 1;
                break;
            }
        }
    }
    Modulator m{ModulatorKind::CoCluster, {}};
    for (int v = 0; v < g.n(); ++v)
        if (in[static_cast<size_t>(v)]) m.vertices.push_back(v);
    return m;
}

namespace {

std::vector<char> removal_mask(const Graph& g, const std::vector<int>& removed) {
    std::vector<char> out(static_cast<size_t>(g.n()), 0);
    for (int v : removed) out[static_cast<size_t>(v)] = 1;
    return out;
}

}  // namespace

bool is_edgeless_after(const Graph& g, const std::vector<int>& removed) {
    auto gone = removal_mask(g, removed);
    for (auto [u, v] : g.edges())
        if (!gone[static_cast<size_t>(u)] && !gone[static_cast<size_t>(v)]) return false;
    return true;
}

bool is_cluster_after(const Graph& g, const std::vector<int>& removed) {
    auto gone = removal_mask(g, removed);
    for (int v = 0; v < g.n(); ++v) {
        if (gone[static_cast<size_t>(v)]) continue;
        const auto& nb = g.neighbors(v);
        for (size_t i = 0; i < nb.size(); ++i) {
            if (gone[static_cast<size_t>(nb[i])]) continue;
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (!gone[static_cast<size_t>(nb[j])] && !g.adjacent(nb[i], nb[j])) return false;
        }
    }
    return true;
}

bool is_cocluster_after(const Graph& g, const std::vector<int>& removed) {
    auto gone = removal_mask(g, removed);
    for (int v = 0; v < g.n(); ++v) {
        if (gone[static_cast<size_t>(v)]) continue;
        for (int a = 0; a < g.n(); ++a) {
            if (a == v || gone[static_cast<size_t>(a)] || g.adjacent(v, a)) continue;
            for (int b : g.neighbors(a))
                if (b != v && !gone[static_cast<size_t>(b)] && !g.adjacent(v, b)) return false;
        }
    }
    return true;
}

bool is_valid_modulator(const Graph& g, const Modulator& mod) {
    switch (mod.kind) {
        case ModulatorKind::VertexCover: return is_edgeless_after(g, mod.vertices);
        case ModulatorKind::Cluster: return is_cluster_after(g, mod.vertices);
        case ModulatorKind::CoCluster: return is_cocluster_after(g, mod.vertices);
    }
    return false;
}

}  // namespace mmc
