#include "mmc/treewidth.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace mmc {

int TreeDecomposition::width() const {
    int w = 0;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
    return w - 1;
}

int NiceTreeDecomposition::width() const {
    int w = 0;
    for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()));
    return w - 1;
}

TreeDecomposition NiceTreeDecomposition::as_td() const {
    TreeDecomposition td;
    for (const auto& nd : nodes) td.bags.push_back(nd.bag);
    for (size_t i = 0; i < nodes.size(); ++i)
        for (int c : nodes[i].children) td.tree.emplace_back(static_cast<int>(i), c);
    td.root = root;
    return td;
}

void validate_td(const Graph& g, const TreeDecomposition& td) {
    const int nb = static_cast<int>(td.bags.size());
    if (nb == 0) throw TdError("decomposition has no bags");
    if (static_cast<int>(td.tree.size()) != nb - 1)
        throw TdError("tree has " + std::to_string(td.tree.size()) + " edges, expected " +
                      std::to_string(nb - 1));
    std::vector<std::vector<int>> adj(static_cast<size_t>(nb));
    for (auto [a, b] : td.tree) {
        if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) throw TdError("bad tree edge");
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    {
        std::vector<char> seen(static_cast<size_t>(nb), 0);
        std::vector<int> st{0};
        seen[0] = 1;
        int cnt = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : adj[static_cast<size_t>(x)])
                if (!seen[static_cast<size_t>(y)]) {
                    seen[static_cast<size_t>(y)] = 1;
                    ++cnt;
                    st.push_back(y);
                }
        }
        if (cnt != nb) throw TdError("decomposition tree is disconnected");
    }
    std::vector<std::vector<int>> holds(static_cast<size_t>(g.n()));
    for (int b = 0; b < nb; ++b)
        for (int v : td.bags[static_cast<size_t>(b)]) {
            if (v < 0 || v >= g.n()) throw TdError("bag " + std::to_string(b + 1) + " has invalid vertex");
            holds[static_cast<size_t>(v)].push_back(b);
        }
    for (auto [u, v] : g.edges()) {
        const auto& hu = holds[static_cast<size_t>(u)];
        const auto& hv = holds[static_cast<size_t>(v)];
        bool ok = false;
        for (int b : hu)
            if (std::binary_search(hv.begin(), hv.end(), b)) ok = true;
        if (!ok)
            throw TdError("edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) +
                          " is not covered by any bag");
    }
    // stamps: in[b] == v+1 marks bags holding v, seen[b] == v+1 marks visited ones
    std::vector<int> in(static_cast<size_t>(nb), 0), seen(static_cast<size_t>(nb), 0);
    for (int v = 0; v < g.n(); ++v) {
        const auto& hv = holds[static_cast<size_t>(v)];
        if (hv.empty()) throw TdError("vertex " + std::to_string(v + 1) + " is in no bag");
        for (int b : hv) in[static_cast<size_t>(b)] = v + 1;
        std::vector<int> st{hv[0]};
        seen[static_cast<size_t>(hv[0])] = v + 1;
        size_t cnt = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : adj[static_cast<size_t>(x)])
                if (in[static_cast<size_t>(y)] == v + 1 && seen[static_cast<size_t>(y)] != v + 1) {
                    seen[static_cast<size_t>(y)] = v + 1;
                    ++cnt;
                    st.push_back(y);
                }
        }
        if (cnt != hv.size())
            throw TdError("bags containing vertex " + std::to_string(v + 1) + " are disconnected");
    }
}

TreeDecomposition parse_td(std::string_view text, const Graph& g) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    long nbags = -1, declared = -1, nverts = -1;
    TreeDecomposition td;
    std::vector<char> bag_seen;
    auto fail = [&](const std::string& m) { throw TdError("line " + std::to_string(line) + ": " + m); };
    auto num = [&](const std::string& t) {
        size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(t, &pos);
        } catch (const std::exception&) {
            fail("expected integer, got '" + t + "'");
        }
        if (pos != t.size()) fail("expected integer, got '" + t + "'");
        return v;
    };
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty() || tok[0] == "c" || tok[0][0] == '#') continue;
        if (tok[0] == "s") {
            if (tok.size() != 5 || tok[1] != "td") fail("expected 's td N w n'");
            nbags = num(tok[2]);
            declared = num(tok[3]);
            nverts = num(tok[4]);
            if (nverts != g.n()) fail("header vertex count does not match graph");
            if (nbags < 1) fail("decomposition needs at least one bag");
            td.bags.assign(static_cast<size_t>(nbags), {});
            bag_seen.assign(static_cast<size_t>(nbags), 0);
            continue;
        }
        if (nbags < 0) fail("missing 's td' header");
        if (tok[0] == "b") {
            if (tok.size() < 2) fail("bag line without id");
            long id = num(tok[1]);
            if (id < 1 || id > nbags) fail("bag id out of range");
            if (bag_seen[static_cast<size_t>(id - 1)]) fail("duplicate bag id");
            bag_seen[static_cast<size_t>(id - 1)] = 1;
            auto& bag = td.bags[static_cast<size_t>(id - 1)];
            for (size_t i = 2; i < tok.size(); ++i) {
                long v = num(tok[i]);
                if (v < 1 || v > nverts) fail("vertex out of range");
                bag.push_back(static_cast<int>(v - 1));
            }
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            continue;
        }
        if (tok.size() != 2) fail("expected tree edge 'a b'");
        long a = num(tok[0]), b = num(tok[1]);
        if (a < 1 || b < 1 || a > nbags || b > nbags) fail("tree edge references unknown bag");
        td.tree.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
    if (nbags < 0) throw TdError("missing 's td' header");
    for (long i = 0; i < nbags; ++i)
        if (!bag_seen[static_cast<size_t>(i)]) throw TdError("bag " + std::to_string(i + 1) + " missing");
    if (td.width() + 1 != declared)
        throw TdError("declared bag size " + std::to_string(declared) + " but largest bag has " +
                      std::to_string(td.width() + 1));
    validate_td(g, td);
    return td;
}

std::string write_td(const TreeDecomposition& td, int n) {
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
    for (size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (int v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.tree) out << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

TreeDecomposition heuristic_decomposition(const Graph& g) {
    const int n = g.n();
    TreeDecomposition td;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<int>> adj(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) adj[static_cast<size_t>(v)].insert(g.neighbors(v).begin(), g.neighbors(v).end());
    auto fill = [&](int v) {
        long f = 0;
        const auto& a = adj[static_cast<size_t>(v)];
        for (auto i = a.begin(); i != a.end(); ++i)
            for (auto j = std::next(i); j != a.end(); ++j)
                if (!adj[static_cast<size_t>(*i)].count(*j)) ++f;
        return f;
    };
    std::vector<long> cur(static_cast<size_t>(n));
    std::set<std::pair<long, int>> pq;
    for (int v = 0; v < n; ++v) {
        cur[static_cast<size_t>(v)] = fill(v);
        pq.insert({cur[static_cast<size_t>(v)], v});
    }
    std::vector<int> order, pos(static_cast<size_t>(n), -1);
    std::vector<std::vector<int>> bag_of(static_cast<size_t>(n));
    while (!pq.empty()) {
        int v = pq.begin()->second;
        pq.erase(pq.begin());
        pos[static_cast<size_t>(v)] = static_cast<int>(order.size());
        order.push_back(v);
        std::vector<int> nb(adj[static_cast<size_t>(v)].begin(), adj[static_cast<size_t>(v)].end());
        std::vector<int> bag = nb;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        bag_of[static_cast<size_t>(v)] = bag;
        for (size_t i = 0; i < nb.size(); ++i) {
            adj[static_cast<size_t>(nb[i])].erase(v);
            for (size_t j = i + 1; j < nb.size(); ++j) {
                adj[static_cast<size_t>(nb[i])].insert(nb[j]);
                adj[static_cast<size_t>(nb[j])].insert(nb[i]);
            }
        }
        adj[static_cast<size_t>(v)].clear();
        std::set<int> touched(nb.begin(), nb.end());
        for (int x : nb)
            for (int y : adj[static_cast<size_t>(x)]) touched.insert(y);
        for (int x : touched) {
            pq.erase({cur[static_cast<size_t>(x)], x});
            cur[static_cast<size_t>(x)] = fill(x);
            pq.insert({cur[static_cast<size_t>(x)], x});
        }
    }
    // bag i belongs to order[i]; parent is the earliest-eliminated later neighbor
    td.bags.resize(static_cast<size_t>(n));
    int prev_root = -1;
    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<size_t>(i)];
        td.bags[static_cast<size_t>(i)] = bag_of[static_cast<size_t>(v)];
        int parent = -1;
        for (int w : bag_of[static_cast<size_t>(v)])
            if (w != v && (parent < 0 || pos[static_cast<size_t>(w)] < parent)) parent = pos[static_cast<size_t>(w)];
        if (parent >= 0) {
            td.tree.emplace_back(i, parent);
        } else {
            if (prev_root >= 0) td.tree.emplace_back(prev_root, i);
            prev_root = i;
        }
    }
    td.root = prev_root;
    return td;
}

NiceTreeDecomposition nicify(const TreeDecomposition& td) {
    NiceTreeDecomposition out;
    const int nb = static_cast<int>(td.bags.size());
    std::vector<std::vector<int>> adj(static_cast<size_t>(nb));
    for (auto [a, b] : td.tree) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    auto add = [&](NiceType t, int v, std::vector<int> bag, std::vector<int> kids) {
        out.nodes.push_back({t, v, std::move(bag), std::move(kids)});
        return static_cast<int>(out.nodes.size()) - 1;
    };
    // morph node `id` (bag `from`) into bag `to`: forgets then introduces, ascending
    auto morph = [&](int id, std::vector<int> from, const std::vector<int>& to) {
        std::vector<int> drop, gain;
        std::set_difference(from.begin(), from.end(), to.begin(), to.end(), std::back_inserter(drop));
        std::set_difference(to.begin(), to.end(), from.begin(), from.end(), std::back_inserter(gain));
        for (int v : drop) {
            from.erase(std::find(from.begin(), from.end(), v));
            id = add(NiceType::Forget, v, from, {id});
        }
        for (int v : gain) {
            from.insert(std::upper_bound(from.begin(), from.end(), v), v);
            id = add(NiceType::Introduce, v, from, {id});
        }
        return id;
    };
    // iterative post-order from the root
    std::vector<int> parent(static_cast<size_t>(nb), -2), post;
    std::vector<std::pair<int, size_t>> st{{td.root, 0}};
    parent[static_cast<size_t>(td.root)] = -1;
    while (!st.empty()) {
        auto& [x, i] = st.back();
        if (i < adj[static_cast<size_t>(x)].size()) {
            int y = adj[static_cast<size_t>(x)][i++];
            if (y == parent[static_cast<size_t>(x)]) continue;
            parent[static_cast<size_t>(y)] = x;
            st.push_back({y, 0});
        } else {
            post.push_back(x);
            st.pop_back();
        }
    }
    std::vector<int> made(static_cast<size_t>(nb), -1);
    for (int t : post) {
        const auto& bag = td.bags[static_cast<size_t>(t)];
        std::vector<int> kids;
        for (int c : adj[static_cast<size_t>(t)])
            if (c != parent[static_cast<size_t>(t)]) kids.push_back(made[static_cast<size_t>(c)]);
        int id;
        if (kids.empty()) {
            id = morph(add(NiceType::Leaf, -1, {}, {}), {}, bag);
        } else {
            // right-nested joins keep the node order a post-order of the result
            id = kids.back();
            for (size_t i = kids.size() - 1; i-- > 0;) id = add(NiceType::Join, -1, bag, {kids[i], id});
        }
        // reshape towards the parent bag right away so ids stay in post-order
        int up = parent[static_cast<size_t>(t)];
        made[static_cast<size_t>(t)] = morph(id, bag, up >= 0 ? td.bags[static_cast<size_t>(up)] : std::vector<int>{});
    }
    out.root = made[static_cast<size_t>(td.root)];
    return out;
}

void validate_nice(const Graph& g, const NiceTreeDecomposition& ntd) {
    if (ntd.nodes.empty() || ntd.root != static_cast<int>(ntd.nodes.size()) - 1)
        throw TdError("nice decomposition must end with its root");
    if (!ntd.nodes[static_cast<size_t>(ntd.root)].bag.empty()) throw TdError("root bag is not empty");
    for (size_t i = 0; i < ntd.nodes.size(); ++i) {
        const auto& nd = ntd.nodes[i];
        for (int c : nd.children)
            if (c < 0 || c >= static_cast<int>(i)) throw TdError("child stored after parent");
        auto child_bag = [&](size_t k) { return ntd.nodes[static_cast<size_t>(nd.children[k])].bag; };
        switch (nd.type) {
            case NiceType::Leaf:
                if (!nd.children.empty() || !nd.bag.empty()) throw TdError("leaf must be empty");
                break;
            case NiceType::Introduce: {
                if (nd.children.size() != 1) throw TdError("introduce needs one child");
                auto b = child_bag(0);
                if (std::binary_search(b.begin(), b.end(), nd.vertex)) throw TdError("introduced twice");
                b.insert(std::upper_bound(b.begin(), b.end(), nd.vertex), nd.vertex);
                if (b != nd.bag) throw TdError("introduce bag mismatch");
                break;
            }
            case NiceType::Forget: {
                if (nd.children.size() != 1) throw TdError("forget needs one child");
                auto b = child_bag(0);
                auto it = std::find(b.begin(), b.end(), nd.vertex);
                if (it == b.end()) throw TdError("forgotten vertex absent");
                b.erase(it);
                if (b != nd.bag) throw TdError("forget bag mismatch");
                break;
            }
            case NiceType::Join:
                if (nd.children.size() != 2 || child_bag(0) != nd.bag || child_bag(1) != nd.bag)
                    throw TdError("join children must share the bag");
                break;
        }
    }
    validate_td(g, ntd.as_td());
}

DpKey make_key(const std::vector<int>& rg, const std::vector<int>& ext) {
    if (rg.size() > static_cast<size_t>(kMaxBag)) throw std::length_error("bag too large for DP key");
    DpKey k = 0;
    for (size_t i = 0; i < rg.size(); ++i) {
        k |= static_cast<DpKey>(rg[i]) << (4 * i);
        k |= static_cast<DpKey>(ext[i] & 1) << (48 + i);
    }
    return k;
}

void decode_key(DpKey k, int size, std::vector<int>& rg, std::vector<int>& ext) {
    rg.resize(static_cast<size_t>(size));
    ext.resize(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) {
        rg[static_cast<size_t>(i)] = static_cast<int>((k >> (4 * i)) & 15);
        ext[static_cast<size_t>(i)] = static_cast<int>((k >> (48 + i)) & 1);
    }
}

std::vector<int> representatives(DpKey k, int size) {
    std::vector<int> rg, ext;
    decode_key(k, size, rg, ext);
    std::vector<int> first(static_cast<size_t>(size) + 1, -1), rep(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) {
        int p = rg[static_cast<size_t>(i)];
        if (first[static_cast<size_t>(p)] < 0) first[static_cast<size_t>(p)] = i;
        rep[static_cast<size_t>(i)] = first[static_cast<size_t>(p)];
    }
    return rep;
}

namespace {

constexpr DpKey kRgMask = (DpKey{1} << 48) - 1;

void normalize(std::vector<int>& labels) {
    int map[32];
    std::fill(std::begin(map), std::end(map), -1);
    int next = 0;
    for (int& x : labels) {
        if (map[x] < 0) map[x] = next++;
        x = map[x];
    }
}

void check_key(DpKey k, int size) {
    auto rep = representatives(k, size);
    for (int i = 0; i < size; ++i) {
        int r = rep[static_cast<size_t>(i)];
        if (r > i || rep[static_cast<size_t>(r)] != r) throw std::logic_error("DP key violates P(v) <= v");
    }
    std::vector<int> rg, ext;
    decode_key(k, size, rg, ext);
    int top = -1;
    for (int x : rg) {
        if (x > top + 1) throw std::logic_error("DP key is not restricted growth");
        top = std::max(top, x);
    }
}

void seal(DpTable& t) {
    const int s = static_cast<int>(t.bag.size());
    double bound = std::pow(static_cast<double>(std::max(s, 1)), s) * std::pow(2.0, s);
    if (static_cast<double>(t.c.size()) > bound) throw std::logic_error("DP table exceeds size bound");
    for (const auto& kv : t.c) check_key(kv.first, s);
}

void relax(DpTable& t, DpKey k, int val) {
    auto [it, fresh] = t.c.emplace(k, val);
    if (!fresh && it->second < val) it->second = val;
}

int count_parts(const std::vector<int>& rg) {
    int top = -1;
    for (int x : rg) top = std::max(top, x);
    return top + 1;
}

}  // namespace

DpTable leaf_table() {
    DpTable t;
    t.c[0] = 0;
    return t;
}

DpTable transfer_introduce(const Graph& g, const DpTable& child, int v) {
    DpTable t;
    t.bag = child.bag;
    auto at = std::upper_bound(t.bag.begin(), t.bag.end(), v);
    const int q = static_cast<int>(at - t.bag.begin());
    t.bag.insert(at, v);
    const int s = static_cast<int>(t.bag.size());
    if (s > kMaxBag) throw std::length_error("bag too large for DP");
    std::vector<char> nb(static_cast<size_t>(s), 0);
    for (int i = 0; i < s; ++i) nb[static_cast<size_t>(i)] = i != q && g.adjacent(v, t.bag[static_cast<size_t>(i)]);
    std::vector<int> rg0, ext0, rg(static_cast<size_t>(s)), ext(static_cast<size_t>(s));
    for (const auto& [k, val] : child.c) {
        decode_key(k, s - 1, rg0, ext0);
        const int parts = count_parts(rg0);
        for (int j = 0; j <= parts; ++j) {
            bool ok = true;
            int ev = 0;
            for (int i = 0, o = 0; i < s; ++i) {
                if (i == q) continue;
                rg[static_cast<size_t>(i)] = rg0[static_cast<size_t>(o)];
                ext[static_cast<size_t>(i)] = ext0[static_cast<size_t>(o)];
                if (nb[static_cast<size_t>(i)] && rg0[static_cast<size_t>(o)] != j) {
                    ++ev;
                    if (++ext[static_cast<size_t>(i)] > 1) ok = false;
                }
                ++o;
            }
            if (!ok || ev > 1) continue;
            rg[static_cast<size_t>(q)] = j;
            ext[static_cast<size_t>(q)] = ev;
            std::vector<int> lab = rg;
            normalize(lab);
            relax(t, make_key(lab, ext), val + (j == parts ? 1 : 0));
        }
    }
    seal(t);
    return t;
}

DpTable transfer_forget(const DpTable& child, int v) {
    DpTable t;
    auto it = std::find(child.bag.begin(), child.bag.end(), v);
    if (it == child.bag.end()) throw std::logic_error("forgotten vertex not in bag");
    const int q = static_cast<int>(it - child.bag.begin());
    t.bag = child.bag;
    t.bag.erase(t.bag.begin() + q);
    const int s = static_cast<int>(child.bag.size());
    std::vector<int> rg, ext;
    for (const auto& [k, val] : child.c) {
        decode_key(k, s, rg, ext);
        rg.erase(rg.begin() + q);
        ext.erase(ext.begin() + q);
        normalize(rg);
        relax(t, make_key(rg, ext), val);
    }
    seal(t);
    return t;
}

DpTable transfer_join(const Graph& g, const DpTable& left, const DpTable& right) {
    if (left.bag != right.bag) throw std::logic_error("join children differ");
    DpTable t;
    t.bag = left.bag;
    const int s = static_cast<int>(t.bag.size());
    std::unordered_map<DpKey, std::vector<std::pair<DpKey, int>>> by_rg;
    for (const auto& [k, val] : right.c) by_rg[k & kRgMask].push_back({k, val});
    std::vector<std::vector<char>> adj(static_cast<size_t>(s), std::vector<char>(static_cast<size_t>(s), 0));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            adj[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                i != j && g.adjacent(t.bag[static_cast<size_t>(i)], t.bag[static_cast<size_t>(j)]);
    std::vector<int> rg, e1, e2, ext(static_cast<size_t>(s)), cb(static_cast<size_t>(s));
    for (const auto& [k1, c1] : left.c) {
        auto hit = by_rg.find(k1 & kRgMask);
        if (hit == by_rg.end()) continue;
        decode_key(k1, s, rg, e1);
        const int x = count_parts(rg);
        for (int i = 0; i < s; ++i) {
            cb[static_cast<size_t>(i)] = 0;
            for (int j = 0; j < s; ++j)
                cb[static_cast<size_t>(i)] += adj[static_cast<size_t>(i)][static_cast<size_t>(j)] &&
                                              rg[static_cast<size_t>(i)] != rg[static_cast<size_t>(j)];
        }
        for (const auto& [k2, c2] : hit->second) {
            decode_key(k2, s, rg, e2);
            bool ok = true;
            for (int i = 0; i < s && ok; ++i) {
                int e = e1[static_cast<size_t>(i)] + e2[static_cast<size_t>(i)] - cb[static_cast<size_t>(i)];
                if (e < 0 || e > 1) ok = false;
                ext[static_cast<size_t>(i)] = e;
            }
            if (!ok) continue;
            relax(t, make_key(rg, ext), c1 + c2 - x);
        }
    }
    seal(t);
    return t;
}

namespace {

std::vector<DpTable> run_dp(const Graph& g, const NiceTreeDecomposition& ntd, bool keep_all) {
    validate_nice(g, ntd);
    std::vector<DpTable> tab(ntd.nodes.size());
    std::vector<int> pending(ntd.nodes.size(), 0);
    for (const auto& nd : ntd.nodes)
        for (int c : nd.children) ++pending[static_cast<size_t>(c)];
    for (size_t i = 0; i < ntd.nodes.size(); ++i) {
        const auto& nd = ntd.nodes[i];
        switch (nd.type) {
            case NiceType::Leaf: tab[i] = leaf_table(); break;
            case NiceType::Introduce:
                tab[i] = transfer_introduce(g, tab[static_cast<size_t>(nd.children[0])], nd.vertex);
                break;
            case NiceType::Forget:
                tab[i] = transfer_forget(tab[static_cast<size_t>(nd.children[0])], nd.vertex);
                break;
            case NiceType::Join:
                tab[i] = transfer_join(g, tab[static_cast<size_t>(nd.children[0])],
                                       tab[static_cast<size_t>(nd.children[1])]);
                break;
        }
        if (!keep_all)
            for (int c : nd.children) tab[static_cast<size_t>(c)] = DpTable{};
    }
    return tab;
}

}  // namespace

int max_parts_tw(const Graph& g, const NiceTreeDecomposition& ntd) {
    auto tab = run_dp(g, ntd, false);
    return std::max(0, tab[static_cast<size_t>(ntd.root)].value(0));
}

Multicut max_multicut_tw(const Graph& g, const NiceTreeDecomposition& ntd) {
    auto tab = run_dp(g, ntd, true);
    std::vector<int> label(static_cast<size_t>(g.n()), -1);
    int fresh = 0;
    // top-down: (node, chosen key, value, global labels of the bag positions)
    struct Item {
        int node;
        DpKey key;
        int val;
        std::vector<int> lab;
    };
    std::vector<Item> st{{ntd.root, 0, tab[static_cast<size_t>(ntd.root)].value(0), {}}};
    std::vector<int> rg, ext, rg2, ext2;
    while (!st.empty()) {
        Item it = std::move(st.back());
        st.pop_back();
        const auto& nd = ntd.nodes[static_cast<size_t>(it.node)];
        const int s = static_cast<int>(nd.bag.size());
        if (nd.type == NiceType::Leaf) continue;
        const auto& ch = tab[static_cast<size_t>(nd.children[0])];
        if (nd.type == NiceType::Forget) {
            const int q = static_cast<int>(std::find(ch.bag.begin(), ch.bag.end(), nd.vertex) - ch.bag.begin());
            bool done = false;
            for (const auto& [k, val] : ch.c) {
                if (val != it.val) continue;
                decode_key(k, s + 1, rg, ext);
                std::vector<int> r = rg, e = ext;
                r.erase(r.begin() + q);
                e.erase(e.begin() + q);
                normalize(r);
                if (make_key(r, e) != it.key) continue;
                std::vector<int> lab(static_cast<size_t>(s) + 1);
                int mate = -1;
                for (int i = 0, o = 0; i <= s; ++i) {
                    if (i == q) continue;
                    lab[static_cast<size_t>(i)] = it.lab[static_cast<size_t>(o)];
                    if (rg[static_cast<size_t>(i)] == rg[static_cast<size_t>(q)]) mate = i;
                    ++o;
                }
                lab[static_cast<size_t>(q)] = mate >= 0 ? lab[static_cast<size_t>(mate)] : fresh++;
                label[static_cast<size_t>(nd.vertex)] = lab[static_cast<size_t>(q)];
                st.push_back({nd.children[0], k, val, lab});
                done = true;
                break;
            }
            if (!done) throw std::logic_error("traceback failed at forget");
        } else if (nd.type == NiceType::Introduce) {
            const int q = static_cast<int>(std::find(nd.bag.begin(), nd.bag.end(), nd.vertex) - nd.bag.begin());
            bool done = false;
            for (const auto& [k, val] : ch.c) {
                DpTable one;
                one.bag = ch.bag;
                one.c[k] = val;
                DpTable out = transfer_introduce(g, one, nd.vertex);
                if (out.value(it.key) != it.val) continue;
                std::vector<int> lab = it.lab;
                lab.erase(lab.begin() + q);
                st.push_back({nd.children[0], k, val, lab});
                done = true;
                break;
            }
            if (!done) throw std::logic_error("traceback failed at introduce");
        } else {
            const auto& rt = tab[static_cast<size_t>(nd.children[1])];
            bool done = false;
            for (const auto& [k1, c1] : ch.c) {
                if ((k1 & kRgMask) != (it.key & kRgMask)) continue;
                for (const auto& [k2, c2] : rt.c) {
                    if ((k2 & kRgMask) != (it.key & kRgMask)) continue;
                    DpTable a, b;
                    a.bag = b.bag = nd.bag;
                    a.c[k1] = c1;
                    b.c[k2] = c2;
                    if (transfer_join(g, a, b).value(it.key) != it.val) continue;
                    st.push_back({nd.children[0], k1, c1, it.lab});
                    st.push_back({nd.children[1], k2, c2, it.lab});
                    done = true;
                    break;
                }
                if (done) break;
            }
            if (!done) throw std::logic_error("traceback failed at join");
        }
    }
    return canonicalize(g, label);
}

}  // namespace mmc
