#include "mmc/enum_cluster.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace mmc {

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(static_cast<size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[static_cast<size_t>(x)] == x ? x : p[static_cast<size_t>(x)] = find(p[static_cast<size_t>(x)]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
        return true;
    }
};

size_t at(int v) { return static_cast<size_t>(v); }

std::vector<int> crossings(const Graph& g, const Labeling& lab) {
    std::vector<int> c(at(g.n()), 0);
    for (auto [a, b] : g.edges())
        if (lab[at(a)] >= 0 && lab[at(b)] >= 0 && lab[at(a)] != lab[at(b)]) {
            ++c[at(a)];
            ++c[at(b)];
        }
    return c;
}

int label_count(const Labeling& lab) {
    int q = 0;
    for (int l : lab) q = std::max(q, l + 1);
    return q;
}

// Label-L vertices can still be joined through unplaced vertices.
bool connectable(const Graph& g, const Labeling& lab, int label) {
    int start = -1, total = 0;
    for (int v = 0; v < g.n(); ++v)
        if (lab[at(v)] == label) {
            if (start < 0) start = v;
            ++total;
        }
    if (start < 0) return true;
    std::vector<char> seen(at(g.n()), 0);
    std::vector<int> stack{start};
    seen[at(start)] = 1;
    int reached = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (lab[at(x)] == label) ++reached;
        for (int y : g.neighbors(x))
            if (!seen[at(y)] && (lab[at(y)] == label || lab[at(y)] < 0)) {
                seen[at(y)] = 1;
                stack.push_back(y);
            }
    }
    return reached == total;
}

struct Placer {
    const Graph& g;
    Labeling& lab;
    std::vector<int>& cross;

    bool place(int x, int l) {
        lab[at(x)] = l;
        bool ok = true;
        for (int y : g.neighbors(x))
            if (lab[at(y)] >= 0 && lab[at(y)] != l) {
                ++cross[at(x)];
                if (++cross[at(y)] > 1) ok = false;
            }
        return ok && cross[at(x)] <= 1;
    }
    void unplace(int x) {
        int l = lab[at(x)];
        for (int y : g.neighbors(x))
            if (lab[at(y)] >= 0 && lab[at(y)] != l) {
                --cross[at(x)];
                --cross[at(y)];
            }
        lab[at(x)] = -1;
    }
};

int potential(const Block& b) { return b.vertices.size() <= 2 ? static_cast<int>(b.vertices.size()) : 1; }

}  // namespace

std::vector<const Block*> ClusterInstance::blocks(BlockRole role) const {
    std::vector<const Block*> out;
    for (const auto& b : journal)
        if (b.role == role) out.push_back(&b);
    return out;
}

ClusterInstance reduce_cluster_instance(const Graph& g, const std::vector<int>& u_in) {
    if (!is_cluster_after(g, u_in)) throw std::invalid_argument("U is not a cluster modulator");
    ClusterInstance inst;
    inst.g = g;
    inst.u = u_in;
    std::sort(inst.u.begin(), inst.u.end());
    inst.u.erase(std::unique(inst.u.begin(), inst.u.end()), inst.u.end());
    const int n = g.n();
    const int nu = static_cast<int>(inst.u.size());
    std::vector<int> uidx(at(n), -1);
    for (int i = 0; i < nu; ++i) uidx[at(inst.u[at(i)])] = i;
    auto in_u = [&](int v) { return uidx[at(v)] >= 0; };

    std::vector<int> cluster_of(at(n), -1);
    std::vector<std::vector<int>> cl;
    for (int v = 0; v < n; ++v) {
        if (in_u(v) || cluster_of[at(v)] >= 0) continue;
        std::vector<int> c{v};
        cluster_of[at(v)] = static_cast<int>(cl.size());
        for (size_t h = 0; h < c.size(); ++h)
            for (int w : g.neighbors(c[h]))
                if (!in_u(w) && cluster_of[at(w)] < 0) {
                    cluster_of[at(w)] = static_cast<int>(cl.size());
                    c.push_back(w);
                }
        std::sort(c.begin(), c.end());
        cl.push_back(std::move(c));
    }

    // Monochromatic groups: closures of the parts of U, merged by Rules 1, 2 and 7.
    Dsu dsu(nu);
    std::vector<int> owner;
    auto closure = [&](const std::vector<int>& seed) {
        std::vector<char> in(at(n), 0);
        std::vector<int> cnt(at(n), 0), queue;
        auto add = [&](int v) {
            if (!in[at(v)]) {
                in[at(v)] = 1;
                queue.push_back(v);
            }
        };
        for (int v : seed) add(v);
        for (size_t h = 0; h < queue.size(); ++h) {
            int x = queue[h];
            if (!in_u(x) && cl[at(cluster_of[at(x)])].size() >= 3)
                for (int y : cl[at(cluster_of[at(x)])]) add(y);
            std::unordered_map<int, int> per_cluster;
            for (int y : g.neighbors(x)) {
                if (!in[at(y)] && ++cnt[at(y)] >= 2) add(y);
                if (!in_u(y) && ++per_cluster[cluster_of[at(y)]] >= 2)
                    for (int z : cl[at(cluster_of[at(y)])]) add(z);
            }
        }
        return queue;
    };
    std::vector<std::vector<int>> groups;
    for (bool merged = true; merged;) {
        merged = false;
        std::map<int, std::vector<int>> by_root;
        for (int i = 0; i < nu; ++i) by_root[dsu.find(i)].push_back(inst.u[at(i)]);
        groups.clear();
        for (auto& [r, vs] : by_root) groups.push_back(vs);
        owner.assign(at(n), -1);
        for (size_t gi = 0; gi < groups.size() && !merged; ++gi)
            for (int v : closure(groups[gi])) {
                int o = owner[at(v)];
                if (o < 0) {
                    owner[at(v)] = static_cast<int>(gi);
                } else if (o != static_cast<int>(gi)) {
                    dsu.unite(uidx[at(groups[at(o)][0])], uidx[at(groups[gi][0])]);
                    inst.log.push_back("R1 merge via " + std::to_string(v + 1));
                    merged = true;
                    break;
                }
            }
        if (merged) continue;
        for (int a = 0; a < nu && !merged; ++a)
            for (int b = a + 1; b < nu && !merged; ++b) {
                if (dsu.find(a) == dsu.find(b)) continue;
                const auto& na = g.neighbors(inst.u[at(a)]);
                const auto& nb = g.neighbors(inst.u[at(b)]);
                std::vector<int> common;
                std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
                if (common.size() >= 3) {
                    dsu.unite(a, b);
                    inst.log.push_back("R2 merge " + std::to_string(inst.u[at(a)] + 1) + " " + std::to_string(inst.u[at(b)] + 1));
                    merged = true;
                }
            }
        if (merged) continue;
        std::vector<std::vector<int>> shared(at(nu), std::vector<int>(at(nu), 0));
        for (const auto& c : cl) {
            if (c.size() < 3) continue;
            std::vector<int> nus;
            for (int v : c)
                for (int w : g.neighbors(v))
                    if (in_u(w)) nus.push_back(uidx[at(w)]);
            std::sort(nus.begin(), nus.end());
            nus.erase(std::unique(nus.begin(), nus.end()), nus.end());
            for (size_t i = 0; i < nus.size(); ++i)
                for (size_t j = i + 1; j < nus.size(); ++j) ++shared[at(nus[i])][at(nus[j])];
        }
        for (int a = 0; a < nu && !merged; ++a)
            for (int b = a + 1; b < nu && !merged; ++b)
                if (shared[at(a)][at(b)] >= 3 && dsu.unite(a, b)) {
                    inst.log.push_back("R7 merge " + std::to_string(inst.u[at(a)] + 1) + " " + std::to_string(inst.u[at(b)] + 1));
                    merged = true;
                }
    }
    inst.mono = groups;
    inst.group_of = owner;
    auto ugroup = [&](int w) { return owner[at(w)]; };

    // Classification of the clusters of G - U.
    std::vector<char> kept(at(n), 1);
    std::map<std::pair<size_t, std::vector<int>>, int> seen_key;
    std::map<std::pair<size_t, std::vector<int>>, int> first_of_key;
    std::vector<int> pendant_first(at(n), -1);
    auto boundary_of = [&](const std::vector<int>& vs) {
        std::vector<char> in(at(n), 0);
        for (int v : vs) in[at(v)] = 1;
        std::vector<int> out;
        for (int v : vs)
            for (int w : g.neighbors(v))
                if (!in[at(w)]) out.push_back(w);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    auto add_block = [&](BlockRole role, const std::string& rule, std::vector<int> vs, int anchor) {
        Block b;
        b.role = role;
        b.rule = rule;
        std::sort(vs.begin(), vs.end());
        b.vertices = vs;
        b.boundary = boundary_of(vs);
        b.anchor = anchor;
        for (int v : vs) kept[at(v)] = 0;
        inst.journal.push_back(std::move(b));
        return &inst.journal.back();
    };
    auto trim_rule4 = [&](const std::vector<int>& c) {
        std::vector<int> stay(c), gone;
        for (int v : c) {
            if (stay.size() <= 3) break;
            bool has_u = std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(), in_u);
            if (has_u) continue;
            gone.push_back(v);
            stay.erase(std::find(stay.begin(), stay.end(), v));
        }
        if (!gone.empty()) add_block(BlockRole::Forced, "R4", gone, stay.front());
    };

    for (size_t ci = 0; ci < cl.size(); ++ci) {
        const auto& c = cl[ci];
        ClusterRecord rec;
        rec.vertices = c;
        rec.edge_cluster = c.size() == 2;
        std::vector<int> nc = boundary_of(c);
        std::unordered_map<int, int> hits;
        bool matching = true, ambiguous = false, simple = rec.edge_cluster;
        size_t out_edges = 0;
        for (int v : c) {
            int outs = 0, grp = -2;
            for (int w : g.neighbors(v)) {
                if (!in_u(w)) continue;
                ++outs;
                if (++hits[w] > 1) matching = false;
                if (grp == -2) grp = ugroup(w);
                else if (grp != ugroup(w)) ambiguous = true, simple = false;
            }
            out_edges += static_cast<size_t>(outs);
            if (outs > 1) matching = false;
        }
        int fixed_group = owner[at(c[0])];
        bool fixed = fixed_group >= 0 && std::all_of(c.begin(), c.end(), [&](int v) { return owner[at(v)] == fixed_group; });
        rec.type = matching ? ClusterType::Matching
                 : fixed    ? ClusterType::Fixed
                 : ambiguous ? ClusterType::Ambiguous
                 : simple   ? ClusterType::Simple
                            : ClusterType::Other;
        inst.clusters.push_back(rec);

        if (nc.empty()) {
            trim_rule4(c);
            continue;
        }
        if (matching && rec.edge_cluster && out_edges == 1) {
            int w = nc[0];
            int inner = g.adjacent(c[0], w) ? c[0] : c[1];
            std::string rule = "P";
            if (pendant_first[at(w)] >= 0) {
                rule = "R8";
                inst.clusters[at(pendant_first[at(w)])].blue = true;
            } else {
                pendant_first[at(w)] = static_cast<int>(ci);
            }
            Block* b = add_block(BlockRole::Pendant, rule, c, -1);
            b->attach = w;
            b->inner = inner;
            b->outer = inner == c[0] ? c[1] : c[0];
            continue;
        }
        if (matching) {
            auto key = std::make_pair(c.size(), nc);
            int seen = seen_key[key]++;
            int limit = (c.size() == 2 && nc.size() == 2) ? 2 : 1;
            if (seen == 0) first_of_key[key] = static_cast<int>(ci);
            if (seen >= limit) {
                if (limit == 1) inst.clusters[at(first_of_key[key])].blue = true;
                add_block(BlockRole::Erased, limit == 1 ? "R8" : "R9", c, -1);
                continue;
            }
            int grp = ugroup(nc[0]);
            if (std::all_of(nc.begin(), nc.end(), [&](int w) { return ugroup(w) == grp; })) {
                add_block(BlockRole::HeldOut, "S3", c, -1);
                continue;
            }
            trim_rule4(c);
            continue;
        }
        if (fixed) {
            std::vector<int> gone;
            for (int v : c) {
                bool inside = true;
                for (int w : g.neighbors(v))
                    if (in_u(w) && ugroup(w) != fixed_group) inside = false;
                if (inside) gone.push_back(v);
            }
            if (!gone.empty()) add_block(BlockRole::Forced, "R5", gone, groups[at(fixed_group)][0]);
            continue;
        }
        if (rec.edge_cluster && simple) {
            add_block(BlockRole::Erased, "R6", c, -1);
            continue;
        }
        trim_rule4(c);
    }

    for (int v = 0; v < n; ++v)
        if (kept[at(v)]) inst.h_vertices.push_back(v);
    for (const auto& b : inst.journal) {
        std::vector<int> att;
        for (int w : b.boundary)
            if (kept[at(w)]) att.push_back(w);
        for (size_t i = 0; i < att.size(); ++i)
            for (size_t j = i + 1; j < att.size(); ++j) inst.virtual_edges.push_back(make_edge(att[i], att[j]));
    }
    std::sort(inst.virtual_edges.begin(), inst.virtual_edges.end());
    inst.virtual_edges.erase(std::unique(inst.virtual_edges.begin(), inst.virtual_edges.end()), inst.virtual_edges.end());

    // Structure bounds of the reduced instance.
    const long long pairs = static_cast<long long>(nu) * (nu - 1) / 2;
    long long amb = 0, spanning = 0;
    for (int v : inst.h_vertices) {
        if (in_u(v)) continue;
        int grp = -2;
        for (int w : g.neighbors(v))
            if (in_u(w)) {
                if (grp == -2) grp = ugroup(w);
                else if (grp != ugroup(w)) {
                    ++amb;
                    break;
                }
            }
    }
    for (const auto& rec : inst.clusters) {
        size_t stay = 0;
        for (int v : rec.vertices) stay += kept[at(v)];
        if (static_cast<int>(stay) > nu + 3) throw std::logic_error("reduced cluster exceeds |U|+3 vertices");
        if (rec.type != ClusterType::Matching || rec.vertices.size() < 3 || stay == 0) continue;
        auto nc = boundary_of(rec.vertices);
        if (std::any_of(nc.begin(), nc.end(), [&](int w) { return ugroup(w) != ugroup(nc[0]); })) ++spanning;
    }
    if (amb > 2 * pairs) throw std::logic_error("too many ambiguous vertices after reduction");
    if (spanning > 3 * pairs) throw std::logic_error("too many spanning matching clusters after reduction");
    return inst;
}

void enumerate_core(const ClusterInstance& inst, const LabelingSink& sink) {
    const Graph& g = inst.g;
    const auto& hv = inst.h_vertices;
    std::vector<char> in_h(at(g.n()), 0);
    for (int v : hv) in_h[at(v)] = 1;
    std::vector<std::vector<int>> plus(at(g.n()));
    for (int v : hv)
        for (int w : g.neighbors(v))
            if (in_h[at(w)]) plus[at(v)].push_back(w);
    for (auto [a, b] : inst.virtual_edges) {
        plus[at(a)].push_back(b);
        plus[at(b)].push_back(a);
    }
    Labeling lab(at(g.n()), -1);
    std::vector<int> cross(at(g.n()), 0);
    std::vector<int> glabel(inst.mono.size(), -1);
    Placer pl{g, lab, cross};

    auto connected = [&](int used) {
        std::vector<char> seen(at(g.n()), 0);
        for (int l = 0; l < used; ++l) {
            int start = -1, total = 0;
            for (int v : hv)
                if (lab[at(v)] == l) {
                    if (start < 0) start = v;
                    ++total;
                }
            std::vector<int> stack{start};
            seen[at(start)] = 1;
            int reached = 0;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                ++reached;
                for (int y : plus[at(x)])
                    if (!seen[at(y)] && lab[at(y)] == l) {
                        seen[at(y)] = 1;
                        stack.push_back(y);
                    }
            }
            if (reached != total) return false;
        }
        return true;
    };

    std::function<bool(size_t, int)> rec = [&](size_t i, int used) -> bool {
        if (i == hv.size()) return !connected(used) || sink(lab);
        int v = hv[i];
        int grp = inst.group_of[at(v)];
        int lo = 0, hi = used;
        if (grp >= 0 && glabel[at(grp)] >= 0) lo = hi = glabel[at(grp)];
        for (int l = lo; l <= hi; ++l) {
            bool ok = pl.place(v, l);
            bool set_group = grp >= 0 && glabel[at(grp)] < 0;
            if (set_group) glabel[at(grp)] = l;
            bool go = !ok || rec(i + 1, std::max(used, l + 1));
            if (set_group) glabel[at(grp)] = -1;
            pl.unplace(v);
            if (!go) return false;
        }
        return true;
    };
    rec(0, 0);
}

void extend_with_matching_clusters(const ClusterInstance& inst, const Labeling& core,
                                   const LabelingSink& sink) {
    const Graph& g = inst.g;
    auto held = inst.blocks(BlockRole::HeldOut);
    auto cross = crossings(g, core);
    const int q = label_count(core);
    std::vector<const Block*> eligible;
    SetPackingInstance sp;
    sp.ground = g.n();
    for (const Block* b : held)
        if (std::none_of(b->boundary.begin(), b->boundary.end(), [&](int w) { return cross[at(w)] > 0; })) {
            eligible.push_back(b);
            sp.family.push_back(b->boundary);
        }
    enumerate_set_packings(sp, 0, [&](const std::vector<int>& pack) {
        Labeling lab = core;
        std::vector<char> cut(held.size(), 0);
        for (int idx : pack)
            for (size_t j = 0; j < held.size(); ++j)
                if (held[j] == eligible[at(idx)]) cut[j] = 1;
        int next = q;
        for (size_t j = 0; j < held.size(); ++j) {
            int l = cut[j] ? next++ : core[at(held[j]->boundary[0])];
            for (int v : held[j]->vertices) lab[at(v)] = l;
        }
        for (size_t j = 0; j < held.size(); ++j)
            if (cut[j] && !connectable(g, lab, core[at(held[j]->boundary[0])])) return true;
        return sink(lab);
    });
}

void extend_with_pendant_clusters(const ClusterInstance& inst, const Labeling& partial, int ell,
                                  const LabelingSink& sink) {
    const Graph& g = inst.g;
    auto pend = inst.blocks(BlockRole::Pendant);
    int erased_potential = 0;
    for (const Block* b : inst.blocks(BlockRole::Erased)) erased_potential += potential(*b);
    Labeling lab = partial;
    auto cross = crossings(g, lab);
    int q = label_count(lab);

    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (q + static_cast<int>(pend.size() - i) + erased_potential < ell) return true;
        if (i == pend.size()) return sink(lab);
        const Block& p = *pend[i];
        const int w = p.attach, u = p.inner, v = p.outer, l = lab[at(w)];
        lab[at(u)] = lab[at(v)] = l;
        if (!rec(i + 1)) return false;
        lab[at(v)] = q++;
        ++cross[at(u)];
        ++cross[at(v)];
        bool go = rec(i + 1);
        --cross[at(u)];
        --cross[at(v)];
        --q;
        if (go && cross[at(w)] == 0) {
            lab[at(u)] = lab[at(v)] = q++;
            ++cross[at(u)];
            ++cross[at(w)];
            go = rec(i + 1);
            --cross[at(u)];
            --cross[at(w)];
            --q;
        }
        lab[at(u)] = lab[at(v)] = -1;
        return go;
    };
    rec(0);
}

void lift_cluster(const ClusterInstance& inst, const Labeling& partial, int ell,
                  const MulticutSink& sink, ClusterStats* stats) {
    const Graph& g = inst.g;
    Labeling lab = partial;
    for (const Block* b : inst.blocks(BlockRole::Forced)) {
        int l = lab[at(b->anchor)];
        if (l < 0) throw std::logic_error("forced block anchored at an unplaced vertex");
        for (int v : b->vertices) lab[at(v)] = l;
    }
    auto cross = crossings(g, lab);
    for (int v = 0; v < g.n(); ++v)
        if (lab[at(v)] >= 0 && cross[at(v)] > 1) return;
    int q = label_count(lab);
    auto erased = inst.blocks(BlockRole::Erased);
    std::vector<int> suffix(erased.size() + 1, 0);
    for (size_t i = erased.size(); i-- > 0;) suffix[i] = suffix[i + 1] + potential(*erased[i]);
    Placer pl{g, lab, cross};

    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (q + suffix[i] < ell) return true;
        if (i == erased.size()) {
            if (validate_multicut(g, lab, ell)) {
                if (stats) ++stats->dead_leaves;
                return true;
            }
            return sink(canonicalize(g, lab));
        }
        const Block& b = *erased[i];
        std::vector<int> cand;
        for (int w : b.boundary) cand.push_back(lab[at(w)]);
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        const int base = q;
        const size_t k = b.vertices.size();

        auto finish = [&]() -> bool {
            for (int l : cand) {
                bool touches = false, used = false;
                for (int x : b.vertices) {
                    if (lab[at(x)] != l) continue;
                    used = true;
                    for (int y : g.neighbors(x))
                        if (lab[at(y)] == l && !std::binary_search(b.vertices.begin(), b.vertices.end(), y)) touches = true;
                }
                if (used && !touches) return true;
            }
            bool full_join = cand.size() == 1 &&
                std::all_of(b.vertices.begin(), b.vertices.end(), [&](int x) { return lab[at(x)] == cand[0]; });
            if (!full_join)
                for (int l : cand)
                    if (!connectable(g, lab, l)) return true;
            return rec(i + 1);
        };

        std::function<bool(size_t)> assign = [&](size_t j) -> bool {
            if (j == k) return finish();
            std::vector<int> opts;
            if (k >= 3 && j > 0) {
                opts.push_back(lab[at(b.vertices[0])]);
            } else {
                opts = cand;
                for (int l = base; l <= q; ++l) opts.push_back(l);
            }
            for (int l : opts) {
                bool fresh = l == q;
                if (fresh) ++q;
                bool ok = pl.place(b.vertices[j], l);
                bool go = !ok || assign(j + 1);
                pl.unplace(b.vertices[j]);
                if (fresh) --q;
                if (!go) return false;
            }
            return true;
        };
        return assign(0);
    };
    rec(0);
}

void enumerate_cluster(const Graph& g, const std::vector<int>& u, int ell, const MulticutSink& sink,
                       ClusterStats* stats) {
    const auto t0 = std::chrono::steady_clock::now();
    ClusterInstance inst = reduce_cluster_instance(g, u);
    if (ell > g.n()) return;
    ClusterStats local;
    ClusterStats& st = stats ? *stats : local;
    bool stopped = false;
    MulticutSink out = [&](const Multicut& mc) {
        ++st.emitted;
        st.emit_seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        if (!sink(mc)) stopped = true;
        return !stopped;
    };
    enumerate_core(inst, [&](const Labeling& core) {
        ++st.core_solutions;
        extend_with_matching_clusters(inst, core, [&](const Labeling& a) {
            extend_with_pendant_clusters(inst, a, ell, [&](const Labeling& b) {
                lift_cluster(inst, b, ell, out, &st);
                return !stopped;
            });
            return !stopped;
        });
        return !stopped;
    });
}

}  // namespace mmc
