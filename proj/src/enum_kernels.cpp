#include "mmc/enum_kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include "mmc/branching.hpp"

namespace mmc {

namespace {

std::vector<Edge> to_g_edges(const std::vector<int>& h_to_g, const std::vector<Edge>& es) {
    std::vector<Edge> out;
    out.reserve(es.size());
    for (auto [a, b] : es) out.push_back(make_edge(h_to_g[static_cast<size_t>(a)], h_to_g[static_cast<size_t>(b)]));
    std::sort(out.begin(), out.end());
    return out;
}

// Parts of G are the components of G - M; the cut set must survive unchanged.
bool emit_cut(const Graph& g, std::vector<Edge> m, int ell, const MulticutSink& sink, bool* ok) {
    std::sort(m.begin(), m.end());
    Multicut mc = max_parts_of_cut(g, m);
    if (mc.cut_edges != m) throw std::logic_error("lifted edge set is not a cut of G");
    *ok = mc.p >= ell;
    if (!*ok) return true;
    return sink(mc);
}

}  // namespace

VcKernel compress_vc(const Graph& g, const std::vector<int>& cover) {
    if (!is_edgeless_after(g, cover)) throw std::invalid_argument("X is not a vertex cover");
    const int n = g.n();
    std::vector<char> in_x(static_cast<size_t>(n), 0);
    VcKernel k;
    for (int x : cover) {
        if (x < 0 || x >= n) throw std::invalid_argument("cover vertex out of range");
        in_x[static_cast<size_t>(x)] = 1;
    }
    for (int v = 0; v < n; ++v)
        if (in_x[static_cast<size_t>(v)] && g.degree(v) > 0) k.cover.push_back(v);

    std::vector<char> mark(static_cast<size_t>(n), 0);
    for (int x : k.cover) {
        PendantGroup grp;
        grp.x = x;
        for (int y : g.neighbors(x))
            if (!in_x[static_cast<size_t>(y)] && g.degree(y) == 1) grp.edges.push_back(make_edge(x, y));
        if (grp.edges.empty()) continue;
        std::sort(grp.edges.begin(), grp.edges.end());
        int first = -1;
        for (int y : g.neighbors(x))
            if (!in_x[static_cast<size_t>(y)] && g.degree(y) == 1) {
                first = y;
                break;
            }
        mark[static_cast<size_t>(first)] = 1;
        grp.rep = make_edge(x, first);
        k.groups.push_back(std::move(grp));
    }
    for (size_t i = 0; i < k.cover.size(); ++i)
        for (size_t j = i + 1; j < k.cover.size(); ++j) {
            int x = k.cover[i], y = k.cover[j], taken = 0;
            for (int z : g.neighbors(x)) {
                if (taken == 3) break;
                if (in_x[static_cast<size_t>(z)] || g.degree(z) < 2 || !g.adjacent(z, y)) continue;
                mark[static_cast<size_t>(z)] = 1;
                ++taken;
            }
        }
    for (int v = 0; v < n; ++v) {
        if (mark[static_cast<size_t>(v)]) k.marked.push_back(v);
        if (mark[static_cast<size_t>(v)] || (in_x[static_cast<size_t>(v)] && g.degree(v) > 0)) k.h_to_g.push_back(v);
    }
    k.h = g.induced(k.h_to_g);
    const long long x = static_cast<long long>(k.cover.size());
    if (k.h.n() > 2 * x + 3 * (x * (x - 1) / 2)) throw std::logic_error("vertex cover kernel exceeds its size bound");
    return k;
}

void lift_vc(const Graph& g, const VcKernel& kern, const Multicut& kernel_cut, int ell,
             const MulticutSink& sink) {
    auto cut = to_g_edges(kern.h_to_g, kernel_cut.cut_edges);
    std::vector<const PendantGroup*> active;
    for (const auto& grp : kern.groups)
        if (std::binary_search(cut.begin(), cut.end(), grp.rep)) {
            active.push_back(&grp);
            cut.erase(std::lower_bound(cut.begin(), cut.end(), grp.rep));
        }
    std::vector<size_t> idx(active.size(), 0);
    while (true) {
        std::vector<Edge> m = cut;
        for (size_t i = 0; i < active.size(); ++i) m.push_back(active[i]->edges[idx[i]]);
        bool ok = true;
        if (!emit_cut(g, std::move(m), ell, sink, &ok)) return;
        if (!ok) return;  // part counts are constant on a class
        size_t i = 0;
        while (i < active.size() && ++idx[i] == active[i]->edges.size()) idx[i++] = 0;
        if (i == active.size()) return;
    }
}

namespace {

struct CoState {
    const Graph& g;
    std::vector<std::vector<char>> adj;
    std::vector<char> in_s, alive;

    explicit CoState(const Graph& gr) : g(gr) {
        const size_t n = static_cast<size_t>(g.n());
        adj.assign(n, std::vector<char>(n, 0));
        for (auto [u, v] : g.edges()) adj[static_cast<size_t>(u)][static_cast<size_t>(v)] = adj[static_cast<size_t>(v)][static_cast<size_t>(u)] = 1;
        in_s.assign(n, 0);
        alive.assign(n, 1);
    }

    bool outside(int v) const { return alive[static_cast<size_t>(v)] && !in_s[static_cast<size_t>(v)]; }

    std::vector<std::vector<int>> classes(int skip = -1) const {
        std::vector<std::vector<int>> out;
        std::vector<char> done(adj.size(), 0);
        for (int v = 0; v < g.n(); ++v) {
            if (!outside(v) || v == skip || done[static_cast<size_t>(v)]) continue;
            std::vector<int> cls;
            for (int w = v; w < g.n(); ++w)
                if (outside(w) && w != skip && (w == v || !adj[static_cast<size_t>(v)][static_cast<size_t>(w)])) {
                    cls.push_back(w);
                    done[static_cast<size_t>(w)] = 1;
                }
            out.push_back(std::move(cls));
        }
        return out;
    }

    int outside_neighbors(int u) const {
        int c = 0;
        for (int z = 0; z < g.n(); ++z) c += outside(z) && adj[static_cast<size_t>(u)][static_cast<size_t>(z)];
        return c;
    }

    bool has_s_neighbor(int u) const {
        for (int z = 0; z < g.n(); ++z)
            if (alive[static_cast<size_t>(z)] && in_s[static_cast<size_t>(z)] && adj[static_cast<size_t>(u)][static_cast<size_t>(z)]) return true;
        return false;
    }

    void link(int u, int z, char on) { adj[static_cast<size_t>(u)][static_cast<size_t>(z)] = adj[static_cast<size_t>(z)][static_cast<size_t>(u)] = on; }
};

const std::vector<int>& smallest_class(const std::vector<std::vector<int>>& cls) {
    return cls[0].size() <= cls[1].size() ? cls[0] : cls[1];
}

bool two_large(const std::vector<std::vector<int>>& cls) {
    if (cls.size() != 2) return false;
    size_t a = std::min(cls[0].size(), cls[1].size()), b = std::max(cls[0].size(), cls[1].size());
    return a >= 2 && b >= 3;
}

}  // namespace

bool CoClusterKernel::within_stated_bound() const {
    return kind == CoClusterCase::VertexCover || h.n() <= stated_bound();
}

int CoClusterKernel::stated_bound() const {
    return kind == CoClusterCase::TwoLargeClasses ? 2 * k + 2 : 2 * k;
}

CoClusterKernel compress_cocluster(const Graph& g, const std::vector<int>& s) {
    if (!is_cocluster_after(g, s)) throw std::invalid_argument("S is not a co-cluster modulator");
    CoState st(g);
    for (int v : s) st.in_s[static_cast<size_t>(v)] = 1;
    CoClusterKernel k;
    k.k = static_cast<int>(s.size());
    const int n = g.n();
    auto cls = st.classes();

    if (cls.size() >= 3) {
        k.kind = CoClusterCase::ManyClasses;
        for (bool changed = true; changed;) {
            changed = false;
            for (int u = 0; u < n && !changed; ++u) {
                if (!st.in_s[static_cast<size_t>(u)] || st.outside_neighbors(u) < 2) continue;
                for (int z = 0; z < n; ++z)
                    if (st.outside(z)) st.link(u, z, 1);
                st.in_s[static_cast<size_t>(u)] = 0;
                k.rules.push_back("R10 u=" + std::to_string(u + 1));
                changed = true;
            }
            for (int u = 0; u < n && !changed; ++u) {
                if (!st.outside(u) || st.has_s_neighbor(u) || st.classes(u).size() < 3) continue;
                st.alive[static_cast<size_t>(u)] = 0;
                k.rules.push_back("R11 u=" + std::to_string(u + 1));
                changed = true;
            }
        }
    } else if (two_large(cls)) {
        k.kind = CoClusterCase::TwoLargeClasses;
        for (bool changed = true; changed && two_large(cls);) {
            changed = false;
            const auto& small = smallest_class(cls);
            for (int u = 0; u < n && !changed; ++u) {
                if (!st.alive[static_cast<size_t>(u)] || !st.in_s[static_cast<size_t>(u)] || st.outside_neighbors(u) < 2) continue;
                std::vector<int> nb;
                for (int z = 0; z < n; ++z)
                    if (st.outside(z) && st.adj[static_cast<size_t>(u)][static_cast<size_t>(z)]) nb.push_back(z);
                if (nb == small) continue;
                for (int z : nb) st.link(u, z, 0);
                for (int z : small) st.link(u, z, 1);
                k.rules.push_back("R2a u=" + std::to_string(u + 1));
                changed = true;
            }
            bool big_enough = cls[0].size() >= 3 && cls[1].size() >= 3;
            for (int u = 0; u < n && !changed && big_enough; ++u) {
                if (!st.outside(u) || st.has_s_neighbor(u)) continue;
                st.alive[static_cast<size_t>(u)] = 0;
                k.rules.push_back("R2b u=" + std::to_string(u + 1));
                changed = true;
            }
            cls = st.classes();
        }
    } else {
        k.kind = CoClusterCase::VertexCover;
        std::vector<int> cover(s.begin(), s.end());
        if (cls.size() == 2) {
            const auto& small = smallest_class(cls);
            cover.insert(cover.end(), small.begin(), small.end());
        }
        std::sort(cover.begin(), cover.end());
        k.vc = compress_vc(g, cover);
        k.h = k.vc->h;
        k.h_to_g = k.vc->h_to_g;
        k.s_after = k.vc->cover;
        return k;
    }

    for (int v = 0; v < n; ++v) {
        if (!st.alive[static_cast<size_t>(v)]) continue;
        k.h_to_g.push_back(v);
        if (st.in_s[static_cast<size_t>(v)]) k.s_after.push_back(v);
    }
    std::vector<Edge> es;
    for (size_t i = 0; i < k.h_to_g.size(); ++i)
        for (size_t j = i + 1; j < k.h_to_g.size(); ++j)
            if (st.adj[static_cast<size_t>(k.h_to_g[i])][static_cast<size_t>(k.h_to_g[j])])
                es.emplace_back(static_cast<int>(i), static_cast<int>(j));
    k.h = Graph::from_edges(static_cast<int>(k.h_to_g.size()), es);
    return k;
}

void lift_cocluster(const Graph& g, const CoClusterKernel& kern, const Multicut& kernel_cut,
                    int ell, const MulticutSink& sink) {
    if (kern.kind == CoClusterCase::VertexCover) {
        lift_vc(g, *kern.vc, kernel_cut, ell, sink);
        return;
    }
    bool ok = true;
    emit_cut(g, to_g_edges(kern.h_to_g, kernel_cut.cut_edges), ell, sink, &ok);
}

void enumerate_via_kernel(const Graph& g, const Modulator& mod, int ell, KernelEngine engine,
                          const MulticutSink& sink, KernelStats* stats) {
    KernelStats local;
    KernelStats& st = stats ? *stats : local;
    std::optional<VcKernel> vc;
    std::optional<CoClusterKernel> cc;
    const Graph* h = nullptr;
    switch (mod.kind) {
        case ModulatorKind::VertexCover:
            vc = compress_vc(g, mod.vertices);
            h = &vc->h;
            break;
        case ModulatorKind::CoCluster:
            cc = compress_cocluster(g, mod.vertices);
            h = &cc->h;
            break;
        case ModulatorKind::Cluster:
            throw std::invalid_argument("cluster modulators use enumerate_cluster");
    }
    st.kernel_vertices = h->n();
    bool stopped = false;
    MulticutSink counted = [&](const Multicut& mc) {
        ++st.emitted;
        if (!sink(mc)) stopped = true;
        return !stopped;
    };
    MulticutSink per_kernel_cut = [&](const Multicut& kc) {
        ++st.kernel_solutions;
        if (vc)
            lift_vc(g, *vc, kc, ell, counted);
        else
            lift_cocluster(g, *cc, kc, ell, counted);
        return !stopped;
    };
    if (h->n() == 0)
        per_kernel_cut(Multicut{});
    else if (engine == KernelEngine::Oracle)
        enumerate_all_multicuts(*h, 1, per_kernel_cut);
    else
        enumerate_branching(*h, 1, per_kernel_cut);
}

}  // namespace mmc
