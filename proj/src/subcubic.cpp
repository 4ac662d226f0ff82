#include "mmc/subcubic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmc {

namespace {

void require_subcubic(const Graph& g) {
    if (g.max_degree() > 3) throw std::invalid_argument("graph is not subcubic");
}

void require_connected(const Graph& g) {
    int c = 0;
    g.components(&c);
    if (c > 1) throw std::invalid_argument("graph is not connected");
}

std::optional<Multicut> enough(const Graph& g, const std::vector<Edge>& m, int ell) {
    Multicut mc = max_parts_of_cut(g, m);
    if (mc.p < ell) return std::nullopt;
    return mc;
}

}  // namespace

std::optional<Multicut> multicut_from_degree_one(const Graph& g, int ell) {
    require_subcubic(g);
    require_connected(g);
    int v1 = 0;
    for (int v = 0; v < g.n(); ++v) v1 += g.degree(v) == 1;
    if (v1 < 3 * ell) return std::nullopt;
    std::vector<char> used(static_cast<size_t>(g.n()), 0);
    std::vector<Edge> m;
    for (int v = 0; v < g.n(); ++v) {
        if (g.degree(v) != 1) continue;
        int w = g.neighbors(v)[0];
        if (used[static_cast<size_t>(v)] || used[static_cast<size_t>(w)]) continue;
        used[static_cast<size_t>(v)] = used[static_cast<size_t>(w)] = 1;
        m.push_back(make_edge(v, w));
    }
    return enough(g, m, ell);
}

std::optional<Multicut> multicut_from_subdivided_edges(const Graph& g, int ell) {
    require_subcubic(g);
    require_connected(g);
    const int n = g.n();
    int v2 = 0;
    for (int v = 0; v < n; ++v) v2 += g.degree(v) == 2;
    if (n < 21 * ell || 10 * v2 < 9 * n) return std::nullopt;
    std::vector<char> marked(static_cast<size_t>(n), 0);
    std::vector<Edge> m;
    for (auto [u, v] : g.edges()) {
        if (g.degree(u) != 2 || g.degree(v) != 2) continue;
        int up = g.neighbors(u)[0] == v ? g.neighbors(u)[1] : g.neighbors(u)[0];
        int vp = g.neighbors(v)[0] == u ? g.neighbors(v)[1] : g.neighbors(v)[0];
        if (up == vp) continue;
        if (marked[static_cast<size_t>(up)] || marked[static_cast<size_t>(u)] ||
            marked[static_cast<size_t>(v)] || marked[static_cast<size_t>(vp)])
            continue;
        m.push_back(make_edge(up, u));
        m.push_back(make_edge(v, vp));
        marked[static_cast<size_t>(up)] = marked[static_cast<size_t>(u)] = 1;
        marked[static_cast<size_t>(v)] = marked[static_cast<size_t>(vp)] = 1;
    }
    return enough(g, m, ell);
}

CyclePacking find_disjoint_cycles(const Graph& g) {
    require_subcubic(g);
    if (g.n() > 0 && g.min_degree() < 2) throw std::invalid_argument("minimum degree below 2");
    const int n = g.n();
    std::vector<char> alive(static_cast<size_t>(n), 1);
    std::vector<int> deg(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) deg[static_cast<size_t>(v)] = g.degree(v);
    int remaining = n;

    auto remove = [&](int v, std::vector<int>& queue) {
        alive[static_cast<size_t>(v)] = 0;
        --remaining;
        for (int w : g.neighbors(v))
            if (alive[static_cast<size_t>(w)] && --deg[static_cast<size_t>(w)] <= 1) queue.push_back(w);
    };
    auto strip = [&](std::vector<int>& queue) {
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            if (alive[static_cast<size_t>(v)] && deg[static_cast<size_t>(v)] <= 1) remove(v, queue);
        }
    };

    std::vector<int> dist(static_cast<size_t>(n), -1), branch(static_cast<size_t>(n), -1),
        par(static_cast<size_t>(n), -1), seen;
    // shortest cycle through s of length <= limit, as a vertex list
    auto cycle_through = [&](int s, int limit) {
        std::vector<int> best;
        int best_len = limit + 1, bx = -1, by = -1;
        int radius = (limit + 1) / 2;
        std::vector<int> frontier{s};
        dist[static_cast<size_t>(s)] = 0;
        seen.push_back(s);
        for (size_t head = 0; head < frontier.size(); ++head) {
            int x = frontier[head];
            for (int y : g.neighbors(x)) {
                if (!alive[static_cast<size_t>(y)] || y == par[static_cast<size_t>(x)]) continue;
                if (dist[static_cast<size_t>(y)] < 0) {
                    if (dist[static_cast<size_t>(x)] >= radius) continue;
                    dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
                    par[static_cast<size_t>(y)] = x;
                    branch[static_cast<size_t>(y)] = x == s ? y : branch[static_cast<size_t>(x)];
                    seen.push_back(y);
                    frontier.push_back(y);
                } else if (y != s && x != s && branch[static_cast<size_t>(y)] != branch[static_cast<size_t>(x)]) {
                    int len = dist[static_cast<size_t>(x)] + dist[static_cast<size_t>(y)] + 1;
                    if (len < best_len) {
                        best_len = len;
                        bx = x;
                        by = y;
                    }
                } else if (y == s && dist[static_cast<size_t>(x)] >= 2) {
                    int len = dist[static_cast<size_t>(x)] + 1;
                    if (len < best_len) {
                        best_len = len;
                        bx = x;
                        by = s;
                    }
                }
            }
        }
        if (bx >= 0) {
            for (int x = bx; x != -1; x = par[static_cast<size_t>(x)]) best.push_back(x);
            for (int y = by; y != -1 && y != s; y = par[static_cast<size_t>(y)]) best.push_back(y);
        }
        for (int x : seen) {
            dist[static_cast<size_t>(x)] = -1;
            branch[static_cast<size_t>(x)] = -1;
            par[static_cast<size_t>(x)] = -1;
        }
        seen.clear();
        return best;
    };

    CyclePacking out;
    for (int len = 3; remaining > 0 && len <= n; ++len) {
        bool again = true;
        while (again && remaining > 0) {
            again = false;
            for (int v = 0; v < n; ++v) {
                if (!alive[static_cast<size_t>(v)]) continue;
                auto cyc = cycle_through(v, len);
                if (cyc.empty()) continue;
                std::vector<int> queue;
                for (int x : cyc) remove(x, queue);
                strip(queue);
                std::sort(cyc.begin(), cyc.end());
                out.cycles.push_back(std::move(cyc));
                again = true;
            }
        }
    }
    return out;
}

std::vector<int> closed_square_neighborhood(const Graph& g, const std::vector<int>& s) {
    std::vector<char> in(static_cast<size_t>(g.n()), 0);
    std::vector<int> layer(s.begin(), s.end());
    for (int v : s) in[static_cast<size_t>(v)] = 1;
    for (int round = 0; round < 2; ++round) {
        std::vector<int> next;
        for (int v : layer)
            for (int w : g.neighbors(v))
                if (!in[static_cast<size_t>(w)]) {
                    in[static_cast<size_t>(w)] = 1;
                    next.push_back(w);
                }
        layer.insert(layer.end(), next.begin(), next.end());
    }
    std::vector<int> out;
    for (int v = 0; v < g.n(); ++v)
        if (in[static_cast<size_t>(v)]) out.push_back(v);
    return out;
}

std::optional<Multicut> multicut_from_cycles(const Graph& g, const CyclePacking& packing, int ell) {
    require_subcubic(g);
    const int n = g.n();
    std::vector<std::vector<int>> sets = packing.cycles;
    std::vector<char> in(static_cast<size_t>(n), 0);
    for (auto& c : sets) {
        for (int v : c) in[static_cast<size_t>(v)] = 1;
        // only neighbours of the growing set can reach two hits
        for (size_t h = 0; h < c.size(); ++h)
            for (int v : g.neighbors(c[h])) {
                if (in[static_cast<size_t>(v)]) continue;
                int hits = 0;
                for (int w : g.neighbors(v)) hits += in[static_cast<size_t>(w)];
                if (hits >= 2) {
                    in[static_cast<size_t>(v)] = 1;
                    c.push_back(v);
                }
            }
        for (int v : c) in[static_cast<size_t>(v)] = 0;
        std::sort(c.begin(), c.end());
    }
    std::stable_sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.front() < b.front();
    });
    const size_t half = (sets.size() + 1) / 2;
    std::vector<char> marked(static_cast<size_t>(n), 0);
    std::vector<Edge> m;
    for (size_t i = 0; i < half; ++i) {
        const auto& c = sets[i];
        bool clean = std::none_of(c.begin(), c.end(), [&](int v) { return marked[static_cast<size_t>(v)]; });
        if (!clean) continue;
        std::vector<char> in(static_cast<size_t>(n), 0);
        for (int v : c) in[static_cast<size_t>(v)] = 1;
        for (int v : c)
            for (int w : g.neighbors(v))
                if (!in[static_cast<size_t>(w)]) m.push_back(make_edge(v, w));
        for (int v : closed_square_neighborhood(g, c)) marked[static_cast<size_t>(v)] = 1;
    }
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return enough(g, m, ell);
}

double simonovits_bound(const Graph& g) {
    int v3 = 0;
    for (int v = 0; v < g.n(); ++v) v3 += g.degree(v) >= 3;
    if (v3 < 2) return 0;
    return v3 / (4.0 * std::log2(static_cast<double>(v3)));
}

std::vector<int> strip_pendant_trees(const Graph& g) {
    const int n = g.n();
    std::vector<int> deg(static_cast<size_t>(n));
    std::vector<char> alive(static_cast<size_t>(n), 1);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v) {
        deg[static_cast<size_t>(v)] = g.degree(v);
        if (deg[static_cast<size_t>(v)] <= 1) queue.push_back(v);
    }
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        if (!alive[static_cast<size_t>(v)]) continue;
        alive[static_cast<size_t>(v)] = 0;
        for (int w : g.neighbors(v))
            if (alive[static_cast<size_t>(w)] && --deg[static_cast<size_t>(w)] <= 1) queue.push_back(w);
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (alive[static_cast<size_t>(v)]) out.push_back(v);
    return out;
}

KernelResult kernelize_subcubic(const Graph& g, int ell) {
    require_subcubic(g);
    KernelResult res;
    res.ell = ell;
    int ncomp = 0;
    auto comp = g.components(&ncomp);
    const int ell_c = ell - (ncomp - 1);
    auto finish = [&](const std::vector<Edge>& m, const std::string& how) {
        res.solved = true;
        res.witness = max_parts_of_cut(g, m);
        res.method = how;
        if (res.witness.p < ell) throw std::logic_error("kernel construction fell short");
        return res;
    };
    if (ell_c <= 1) return finish({}, "trivial");
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> vs;
        for (int v = 0; v < g.n(); ++v)
            if (comp[static_cast<size_t>(v)] == c) vs.push_back(v);
        Graph h = g.induced(vs);
        auto lift = [&](const Multicut& mc, const std::vector<int>& ids) {
            std::vector<Edge> m;
            for (auto [a, b] : mc.cut_edges) m.push_back(make_edge(ids[static_cast<size_t>(a)], ids[static_cast<size_t>(b)]));
            return m;
        };
        if (auto mc = multicut_from_degree_one(h, ell_c)) return finish(lift(*mc, vs), "deg1");
        if (auto mc = multicut_from_subdivided_edges(h, ell_c)) return finish(lift(*mc, vs), "deg2");
        auto core = strip_pendant_trees(h);
        if (core.empty()) continue;
        Graph hp = h.induced(core);
        std::vector<int> ids;
        for (int x : core) ids.push_back(vs[static_cast<size_t>(x)]);
        if (auto mc = multicut_from_subdivided_edges(hp, ell_c)) return finish(lift(*mc, ids), "deg2-stripped");
        auto packing = find_disjoint_cycles(hp);
        if (auto mc = multicut_from_cycles(hp, packing, ell_c)) return finish(lift(*mc, ids), "cycles");
    }
    double lg = ell > 1 ? std::log2(static_cast<double>(ell)) : 0.0;
    res.bound = 1e6 * ell * lg * lg;
    if (ell > 1 && g.n() >= res.bound) throw std::logic_error("unsolved instance above the kernel bound");
    res.kernel = g;
    std::ostringstream cert;
    cert << "KERNEL " << g.n() << '<' << static_cast<long long>(res.bound);
    res.certificate = cert.str();
    return res;
}

}  // namespace mmc
