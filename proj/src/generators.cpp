#include "mmc/generators.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mmc/branching.hpp"

namespace mmc {

namespace {

using json = nlohmann::json;

json edges_json(const std::vector<Edge>& es) {
    json out = json::array();
    for (auto [u, v] : es) out.push_back({u, v});
    return out;
}

std::vector<int> part_sizes(const Multicut& mc) {
    std::vector<int> size(static_cast<size_t>(mc.p), 0);
    for (int l : mc.part_of) ++size[static_cast<size_t>(l)];
    return size;
}

// Whether `vs` is exactly one part of mc.
bool is_part(const Multicut& mc, const std::vector<int>& size, const std::vector<int>& vs) {
    if (vs.empty()) return false;
    int l = mc.part_of[static_cast<size_t>(vs[0])];
    for (int v : vs)
        if (mc.part_of[static_cast<size_t>(v)] != l) return false;
    return size[static_cast<size_t>(l)] == static_cast<int>(vs.size());
}

bool independent(const Graph& g, const std::vector<int>& xs) {
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j)
            if (xs[i] == xs[j] || g.adjacent(xs[i], xs[j])) return false;
    return true;
}

// Calls f on every k-subset of 0..n-1 in lexicographic order.
template <class F>
void for_each_subset(int n, int k, F&& f) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

}  // namespace

Graph indivisible_pendant() {
    return Graph::from_edges(5, {{0, 1}, {0, 3}, {2, 3}, {1, 2}, {4, 2}, {4, 3}, {4, 0}});
}

IsReduction reduce_is_to_mmc(const Graph& g, int k, IsVariant variant) {
    const int n = g.n();
    for (int v = 0; v < n; ++v)
        if (g.degree(v) != 3) throw std::invalid_argument("source graph is not cubic");
    if (k < 0 || k > n) throw std::invalid_argument("k must lie in [0, n]");

    IsReduction red;
    red.source = g;
    red.k = k;
    red.variant = variant;
    red.edge_order = g.edges();
    const int m = static_cast<int>(red.edge_order.size());
    const int unit = variant == IsVariant::Subcubic ? 1 : 5;
    const int per_edge = 4 + 2 * unit;

    std::vector<Edge> es;
    for (int u = 0; u < n; ++u) {
        red.triangles.push_back({3 * u, 3 * u + 1, 3 * u + 2});
        es.push_back({3 * u, 3 * u + 1});
        es.push_back({3 * u, 3 * u + 2});
        es.push_back({3 * u + 1, 3 * u + 2});
    }
    Graph pend = indivisible_pendant();
    auto add_unit = [&](int base, int attach_to) {
        std::vector<int> vs;
        for (int j = 0; j < unit; ++j) vs.push_back(base + j);
        if (unit == 1) {
            es.push_back({attach_to, base});
        } else {
            for (auto [a, b] : pend.edges()) es.push_back({base + a, base + b});
            es.push_back({attach_to, base + 1});
        }
        return vs;
    };

    std::vector<int> used(static_cast<size_t>(n), 0);
    for (int i = 0; i < m; ++i) {
        auto [u, v] = red.edge_order[static_cast<size_t>(i)];
        int base = 3 * n + per_edge * i;
        int a = base, b = base + 1, nn = base + 2, pp = base + 3;
        red.g1.push_back(a);
        red.g2.push_back(b);
        red.ring_n.push_back(nn);
        red.ring_p.push_back(pp);
        es.push_back({red.triangles[static_cast<size_t>(u)][static_cast<size_t>(used[static_cast<size_t>(u)]++)], a});
        es.push_back({red.triangles[static_cast<size_t>(v)][static_cast<size_t>(used[static_cast<size_t>(v)]++)], a});
        es.push_back({a, b});
        es.push_back({b, nn});
        es.push_back({nn, pp});
        red.f_units.push_back(add_unit(base + 4, pp));
        red.fp_units.push_back(add_unit(base + 4 + unit, b));
    }
    for (int i = 0; i < m; ++i)
        es.push_back({red.ring_n[static_cast<size_t>(i)], red.ring_p[static_cast<size_t>((i + 1) % m)]});

    red.h = Graph::from_edges(3 * n + per_edge * m, es);
    red.ell = 2 * m + k + 1;
    if (red.h.m() != static_cast<int>(es.size())) throw std::logic_error("gadget wiring repeated an edge");
    for (int v = 0; v < red.h.n(); ++v) {
        if (red.h.degree(v) > 3) throw std::logic_error("reduction exceeded degree 3");
        if (variant == IsVariant::Cubic && red.h.degree(v) != 3)
            throw std::logic_error("cubic variant is not 3-regular");
    }
    return red;
}

Multicut IsReduction::forward(const std::vector<int>& independent_set) const {
    std::vector<int> xs = independent_set;
    std::sort(xs.begin(), xs.end());
    for (int x : xs)
        if (x < 0 || x >= source.n()) throw std::invalid_argument("vertex out of range");
    if (!independent(source, xs)) throw std::invalid_argument("not an independent set");
    std::vector<int> label(static_cast<size_t>(h.n()), 0);
    int next = 1;
    for (size_t i = 0; i < f_units.size(); ++i) {
        for (int v : f_units[i]) label[static_cast<size_t>(v)] = next;
        ++next;
        for (int v : fp_units[i]) label[static_cast<size_t>(v)] = next;
        ++next;
    }
    for (int x : xs) {
        for (int v : triangles[static_cast<size_t>(x)]) label[static_cast<size_t>(v)] = next;
        ++next;
    }
    int target = std::min(ell, 2 * static_cast<int>(f_units.size()) + static_cast<int>(xs.size()) + 1);
    if (auto bad = validate_multicut(h, label, target))
        throw std::logic_error("forward map produced an invalid multicut: " + to_string(bad->kind));
    return canonicalize(h, label);
}

std::vector<int> IsReduction::backward(const Multicut& mc) const {
    auto size = part_sizes(mc);
    std::vector<int> out;
    for (int u = 0; u < source.n(); ++u) {
        const auto& t = triangles[static_cast<size_t>(u)];
        if (is_part(mc, size, {t[0], t[1], t[2]})) out.push_back(u);
    }
    return out;
}

std::string IsReduction::bookkeeping_json() const {
    json j;
    j["reduction"] = "is2mmc";
    j["variant"] = variant == IsVariant::Subcubic ? "subcubic" : "cubic";
    j["k"] = k;
    j["ell"] = ell;
    json tri = json::array();
    for (auto& t : triangles) tri.push_back({t[0], t[1], t[2]});
    j["B"] = tri;
    j["edge_order"] = edges_json(edge_order);
    j["g1"] = g1;
    j["g2"] = g2;
    j["n"] = ring_n;
    j["p"] = ring_p;
    j["f"] = f_units;
    j["f_prime"] = fp_units;
    return j.dump();
}

std::vector<int> CompositionCertificate::bits_of(int a, int j) const {
    std::vector<int> out;
    for (int i = 0; i < tau; ++i)
        out.push_back(bits[static_cast<size_t>(j - 1)][static_cast<size_t>(i)][(a >> i) & 1 ? 0 : 1]);
    return out;
}

std::pair<int, std::vector<int>> CompositionCertificate::backward(const std::vector<int>& packing) const {
    int a = -1;
    std::vector<int> sets;
    for (int idx : packing) {
        const auto& o = origin[static_cast<size_t>(idx)];
        if (o[1] < 0) {
            if (a >= 0) throw std::invalid_argument("packing uses two selectors");
            a = o[0];
        }
    }
    if (a < 0) throw std::invalid_argument("packing has no selector");
    for (int idx : packing) {
        const auto& o = origin[static_cast<size_t>(idx)];
        if (o[1] < 0) continue;
        if (o[0] != a) throw std::invalid_argument("packing mixes instances");
        sets.push_back(o[1]);
    }
    std::sort(sets.begin(), sets.end());
    return {a < t ? a : 0, sets};
}

std::vector<int> CompositionCertificate::forward(int a, const std::vector<int>& packing) const {
    if (static_cast<int>(packing.size()) < r) throw std::invalid_argument("source packing too small");
    std::vector<int> out{selector[static_cast<size_t>(a)]};
    for (int j = 1; j <= r; ++j) {
        int i = packing[static_cast<size_t>(j - 1)];
        auto it = std::find(origin.begin(), origin.end(), std::array<int, 3>{a, i, j});
        if (it == origin.end()) throw std::invalid_argument("no such packing set");
        out.push_back(static_cast<int>(it - origin.begin()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string CompositionCertificate::bookkeeping_json() const {
    json j;
    j["reduction"] = "xcompose";
    j["t"] = t;
    j["tau"] = tau;
    j["r"] = r;
    j["Y"] = y;
    j["S"] = s;
    json b = json::array();
    for (auto& slot : bits) {
        json row = json::array();
        for (auto& pr : slot) row.push_back({pr[0], pr[1]});
        b.push_back(row);
    }
    j["bits"] = b;
    j["T"] = selector;
    json o = json::array();
    for (auto& x : origin) o.push_back({x[0], x[1], x[2]});
    j["origin"] = o;
    return j.dump();
}

Composition cross_compose_set_packing(const std::vector<SetPackingInstance>& inputs) {
    if (inputs.empty()) throw std::invalid_argument("no instances to compose");
    const int y = inputs[0].ground, r = inputs[0].k;
    for (auto& in : inputs)
        if (in.ground != y || in.k != r) throw std::invalid_argument("heterogeneous instances");
    const int t = static_cast<int>(inputs.size());
    int tau = 1;
    while ((1 << tau) < t) ++tau;
    const int total = 1 << tau;

    Composition out;
    auto& c = out.cert;
    c.t = t;
    c.tau = tau;
    c.r = r;
    c.y = y;
    int next = y;
    for (int j = 0; j <= r; ++j) c.s.push_back(next++);
    c.bits.assign(static_cast<size_t>(r), {});
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < tau; ++i) {
            c.bits[static_cast<size_t>(j)].push_back({next, next + 1});
            next += 2;
        }

    auto& fam = out.instance.family;
    for (int a = 0; a < total; ++a) {
        std::vector<int> sel{c.s[0]};
        for (int j = 1; j <= r; ++j) {
            auto b = c.bits_of(total - 1 - a, j);
            sel.insert(sel.end(), b.begin(), b.end());
        }
        std::sort(sel.begin(), sel.end());
        if (static_cast<int>(sel.size()) != 1 + r * tau) throw std::logic_error("selector size");
        c.selector.push_back(static_cast<int>(fam.size()));
        c.origin.push_back({a, -1, -1});
        fam.push_back(sel);
    }
    for (int a = 0; a < total; ++a) {
        const auto& src = inputs[static_cast<size_t>(a < t ? a : 0)];
        for (size_t i = 0; i < src.family.size(); ++i)
            for (int j = 1; j <= r; ++j) {
                std::vector<int> set = src.family[i];
                auto b = c.bits_of(a, j);
                set.insert(set.end(), b.begin(), b.end());
                set.push_back(c.s[static_cast<size_t>(j)]);
                std::sort(set.begin(), set.end());
                if (set.size() != src.family[i].size() + static_cast<size_t>(tau) + 1)
                    throw std::logic_error("packing set size");
                c.origin.push_back({a, static_cast<int>(i), j});
                fam.push_back(set);
            }
    }
    out.instance.ground = next;
    out.instance.k = r + 1;
    if (next != y + (r + 1) + 2 * r * tau) throw std::logic_error("composed ground set size");
    return out;
}

SpReduction reduce_set_packing_to_mmc(const SetPackingInstance& inst) {
    if (inst.ground < 3) throw std::invalid_argument("ground set needs at least 3 elements");
    SpReduction red;
    red.source = inst;
    std::vector<Edge> es;
    for (int a = 0; a < inst.ground; ++a)
        for (int b = a + 1; b < inst.ground; ++b) es.push_back({a, b});
    int next = inst.ground;
    for (const auto& set : inst.family) {
        int size = std::max(static_cast<int>(set.size()), 3);
        std::vector<int> clique;
        for (int i = 0; i < size; ++i) clique.push_back(next++);
        for (int i = 0; i < size; ++i)
            for (int j = i + 1; j < size; ++j) es.push_back({clique[static_cast<size_t>(i)], clique[static_cast<size_t>(j)]});
        std::vector<int> matched;
        for (size_t i = 0; i < set.size(); ++i) {
            es.push_back({set[i], clique[i]});
            matched.push_back(clique[i]);
        }
        red.cliques.push_back(clique);
        red.matched.push_back(matched);
    }
    red.g = Graph::from_edges(next, es);
    red.ell = inst.k + 1;
    return red;
}

Multicut SpReduction::forward(const std::vector<int>& packing) const {
    std::vector<Edge> cut;
    for (int i : packing) {
        const auto& set = source.family[static_cast<size_t>(i)];
        for (size_t x = 0; x < set.size(); ++x) cut.push_back(make_edge(set[x], matched[static_cast<size_t>(i)][x]));
    }
    std::sort(cut.begin(), cut.end());
    Multicut mc = max_parts_of_cut(g, cut);
    if (mc.p < std::min(ell, static_cast<int>(packing.size()) + 1))
        throw std::logic_error("forward map lost parts");
    return mc;
}

std::vector<int> SpReduction::backward(const Multicut& mc) const {
    auto size = part_sizes(mc);
    std::vector<int> out;
    for (size_t i = 0; i < cliques.size(); ++i)
        if (is_part(mc, size, cliques[i])) out.push_back(static_cast<int>(i));
    return out;
}

std::string SpReduction::bookkeeping_json() const {
    json j;
    j["reduction"] = "sp2mmc";
    j["ell"] = ell;
    j["X"] = source.ground;
    j["cliques"] = cliques;
    j["matched"] = matched;
    return j.dump();
}

std::string VerifyReport::summary() const {
    std::ostringstream os;
    os << (ok() ? "PASS" : "FAIL") << " source=" << (source_yes ? "yes" : "no")
       << " target=" << (target_yes ? "yes" : "no") << " round_trips=" << round_trips;
    for (auto& f : failures) os << "\n  " << f;
    return os.str();
}

VerifyReport verify_reduction(const IsReduction& red) {
    VerifyReport rep;
    rep.source_yes = max_independent_set(red.source) >= red.k;
    rep.target_yes = solve_decision(red.h, red.ell).has_value();
    for_each_subset(red.source.n(), red.k, [&](const std::vector<int>& xs) {
        if (!independent(red.source, xs)) return;
        Multicut mc = red.forward(xs);
        if (auto bad = validate_canonical(red.h, mc)) rep.failures.push_back("forward invalid: " + to_string(bad->kind));
        else if (mc.p < red.ell) rep.failures.push_back("forward has too few parts");
        auto back = red.backward(mc);
        if (back != xs) rep.failures.push_back("backward(forward) differs");
        ++rep.round_trips;
    });
    if (rep.source_yes != rep.target_yes) rep.failures.push_back("yes/no disagreement");
    return rep;
}

VerifyReport verify_reduction(const std::vector<SetPackingInstance>& inputs, const Composition& comp) {
    VerifyReport rep;
    std::vector<int> solvable;
    for (size_t a = 0; a < inputs.size(); ++a)
        if (set_packing_solvable(inputs[a])) solvable.push_back(static_cast<int>(a));
    rep.source_yes = !solvable.empty();
    auto target = all_set_packings(comp.instance, comp.instance.k);
    rep.target_yes = !target.empty();
    const auto& c = comp.cert;
    for (auto& packing : target) {
        auto [a, sets] = c.backward(packing);
        SetPackingInstance src = inputs[static_cast<size_t>(a)];
        if (static_cast<int>(sets.size()) < src.k) rep.failures.push_back("backward packing too small");
        for (size_t x = 0; x < sets.size(); ++x)
            for (size_t y = x + 1; y < sets.size(); ++y) {
                const auto& p = src.family[static_cast<size_t>(sets[x])];
                const auto& q = src.family[static_cast<size_t>(sets[y])];
                std::vector<int> both;
                std::set_intersection(p.begin(), p.end(), q.begin(), q.end(), std::back_inserter(both));
                if (!both.empty()) rep.failures.push_back("backward packing overlaps");
            }
        ++rep.round_trips;
    }
    for (int a : solvable) {
        const auto& src = inputs[static_cast<size_t>(a)];
        enumerate_set_packings(src, src.k, [&](const std::vector<int>& packing) {
            if (static_cast<int>(packing.size()) != src.k) return true;
            auto fwd = c.forward(a, packing);
            if (std::find(target.begin(), target.end(), fwd) == target.end())
                rep.failures.push_back("forward is not a composed packing");
            auto [b, sets] = c.backward(fwd);
            if (b != a || sets.size() != packing.size()) rep.failures.push_back("backward(forward) differs");
            ++rep.round_trips;
            return true;
        });
    }
    if (rep.source_yes != rep.target_yes) rep.failures.push_back("yes/no disagreement");
    return rep;
}

VerifyReport verify_reduction(const SpReduction& red) {
    VerifyReport rep;
    rep.source_yes = set_packing_solvable(red.source);
    rep.target_yes = max_parts(red.g, red.g.n()) >= red.ell;
    enumerate_set_packings(red.source, red.source.k, [&](const std::vector<int>& packing) {
        if (static_cast<int>(packing.size()) != red.source.k) return true;
        Multicut mc = red.forward(packing);
        if (auto bad = validate_canonical(red.g, mc)) rep.failures.push_back("forward invalid: " + to_string(bad->kind));
        else if (mc.p < red.ell) rep.failures.push_back("forward has too few parts");
        auto back = red.backward(mc);
        std::vector<int> want = packing;
        std::sort(want.begin(), want.end());
        for (int i : want)
            if (!std::binary_search(back.begin(), back.end(), i)) rep.failures.push_back("backward(forward) lost a set");
        ++rep.round_trips;
        return true;
    });
    if (rep.source_yes != rep.target_yes) rep.failures.push_back("yes/no disagreement");
    return rep;
}

}  // namespace mmc
