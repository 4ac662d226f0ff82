#include "mmc/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <sstream>

namespace mmc {

int oracle_limit() {
    if (const char* env = std::getenv("MULTICUT_ORACLE_LIMIT")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<int>(v);
    }
    return 12;
}

namespace {

void guard(const Graph& g, int limit) {
    int lim = limit > 0 ? limit : oracle_limit();
    if (g.n() > lim)
        throw SizeGuardError("oracle size guard: n=" + std::to_string(g.n()) + " exceeds " +
                             std::to_string(lim));
}

// Restricted-growth assignment with incremental crossing counts.
struct RgSearch {
    const Graph& g;
    int n;
    std::vector<int> part, cross;
    int used = 0;

    explicit RgSearch(const Graph& gr)
        : g(gr), n(gr.n()), part(static_cast<size_t>(gr.n()), -1),
          cross(static_cast<size_t>(gr.n()), 0) {}

    // Returns false if placing v in c breaks the crossing budget; state is then unchanged.
    bool place(int v, int c) {
        std::vector<int> touched;
        bool ok = true;
        for (int u : g.neighbors(v)) {
            if (u >= v) break;
            if (part[static_cast<size_t>(u)] == c) continue;
            touched.push_back(u);
            if (++cross[static_cast<size_t>(u)] > 1) ok = false;
            if (++cross[static_cast<size_t>(v)] > 1) ok = false;
        }
        if (!ok) {
            for (int u : touched) --cross[static_cast<size_t>(u)];
            cross[static_cast<size_t>(v)] = 0;
            return false;
        }
        part[static_cast<size_t>(v)] = c;
        if (c == used) ++used;
        return true;
    }

    void unplace(int v) {
        int c = part[static_cast<size_t>(v)];
        for (int u : g.neighbors(v)) {
            if (u >= v) break;
            if (part[static_cast<size_t>(u)] != c) --cross[static_cast<size_t>(u)];
        }
        cross[static_cast<size_t>(v)] = 0;
        part[static_cast<size_t>(v)] = -1;
        if (c == used - 1 &&
            std::find(part.begin(), part.end(), c) == part.end())
            --used;
    }

    bool parts_connected() const {
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::vector<char> part_seen(static_cast<size_t>(used), 0);
        std::vector<int> stack;
        for (int s = 0; s < n; ++s) {
            if (seen[static_cast<size_t>(s)]) continue;
            int c = part[static_cast<size_t>(s)];
            if (part_seen[static_cast<size_t>(c)]) return false;
            part_seen[static_cast<size_t>(c)] = 1;
            seen[static_cast<size_t>(s)] = 1;
            stack.push_back(s);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : g.neighbors(v))
                    if (!seen[static_cast<size_t>(w)] && part[static_cast<size_t>(w)] == c) {
                        seen[static_cast<size_t>(w)] = 1;
                        stack.push_back(w);
                    }
            }
        }
        return true;
    }
};

bool enum_rec(RgSearch& s, int v, int ell, const MulticutSink& sink) {
    if (v == s.n) {
        if (s.used < ell || !s.parts_connected()) return true;
        Multicut mc;
        mc.part_of = s.part;
        mc.p = s.used;
        for (auto [a, b] : s.g.edges())
            if (s.part[static_cast<size_t>(a)] != s.part[static_cast<size_t>(b)])
                mc.cut_edges.emplace_back(a, b);
        return sink(mc);
    }
    for (int c = 0; c <= s.used; ++c) {
        int used_after = c == s.used ? s.used + 1 : s.used;
        if (used_after + (s.n - v - 1) < ell) continue;
        if (!s.place(v, c)) continue;
        bool go = enum_rec(s, v + 1, ell, sink);
        s.unplace(v);
        if (!go) return false;
    }
    return true;
}

void max_rec(RgSearch& s, int v, int& best) {
    if (s.used + (s.n - v) <= best) return;
    if (v == s.n) {
        best = s.used;
        return;
    }
    for (int c = s.used; c >= 0; --c) {
        if (!s.place(v, c)) continue;
        max_rec(s, v + 1, best);
        s.unplace(v);
    }
}

}  // namespace

void enumerate_all_multicuts(const Graph& g, int ell, const MulticutSink& sink, int limit) {
    guard(g, limit);
    if (g.n() == 0) {
        if (ell <= 0) sink(Multicut{});
        return;
    }
    RgSearch s(g);
    enum_rec(s, 0, ell, sink);
}

std::vector<Multicut> all_multicuts(const Graph& g, int ell, int limit) {
    std::vector<Multicut> out;
    enumerate_all_multicuts(g, ell, [&](const Multicut& mc) {
        out.push_back(mc);
        return true;
    }, limit);
    return out;
}

int max_parts(const Graph& g, int limit) {
    guard(g, limit);
    RgSearch s(g);
    int best = 0;
    max_rec(s, 0, best);
    return best;
}

namespace {

using Mask = std::uint64_t;

int mis_rec(const std::vector<Mask>& nb, Mask cand, Mask& chosen, Mask cur, int size, int& best) {
    if (cand == 0) {
        if (size > best) {
            best = size;
            chosen = cur;
        }
        return best;
    }
    if (size + __builtin_popcountll(cand) <= best) return best;
    int pick = -1, pick_deg = -1;
    for (Mask c = cand; c; c &= c - 1) {
        int v = __builtin_ctzll(c);
        int d = __builtin_popcountll(nb[static_cast<size_t>(v)] & cand);
        if (d > pick_deg) {
            pick_deg = d;
            pick = v;
        }
    }
    Mask bit = Mask{1} << pick;
    if (pick_deg == 0) {
        // every candidate is free
        return mis_rec(nb, 0, chosen, cur | cand, size + __builtin_popcountll(cand), best);
    }
    mis_rec(nb, cand & ~bit & ~nb[static_cast<size_t>(pick)], chosen, cur | bit, size + 1, best);
    mis_rec(nb, cand & ~bit, chosen, cur, size, best);
    return best;
}

}  // namespace

std::vector<int> maximum_independent_set(const Graph& g, int limit) {
    if (g.n() > limit || g.n() > 64)
        throw SizeGuardError("independent set guard: n=" + std::to_string(g.n()));
    std::vector<Mask> nb(static_cast<size_t>(g.n()), 0);
    for (int v = 0; v < g.n(); ++v)
        for (int w : g.neighbors(v)) nb[static_cast<size_t>(v)] |= Mask{1} << w;
    Mask all = g.n() == 64 ? ~Mask{0} : (Mask{1} << g.n()) - 1;
    Mask chosen = 0;
    int best = -1;
    mis_rec(nb, all, chosen, 0, 0, best);
    std::vector<int> out;
    for (int v = 0; v < g.n(); ++v)
        if (chosen >> v & 1) out.push_back(v);
    return out;
}

int max_independent_set(const Graph& g, int limit) {
    return static_cast<int>(maximum_independent_set(g, limit).size());
}

SetPackingInstance parse_set_packing(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    SetPackingInstance inst;
    int fam = -1;
    while (std::getline(in, raw)) {
        ++line;
        auto first = raw.find_first_not_of(" \t\r");
        if (first != std::string::npos && raw[first] == '#') continue;
        std::istringstream ls(raw);
        std::vector<long> nums;
        std::string tok;
        while (ls >> tok) {
            try {
                size_t pos = 0;
                nums.push_back(std::stol(tok, &pos));
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw std::runtime_error("line " + std::to_string(line) + ": bad integer '" + tok + "'");
            }
        }
        if (fam < 0) {
            if (nums.empty()) continue;
            if (nums.size() != 3 || nums[0] < 0 || nums[1] < 0 || nums[2] < 0)
                throw std::runtime_error("line " + std::to_string(line) + ": expected '|X| |F| k'");
            inst.ground = static_cast<int>(nums[0]);
            fam = static_cast<int>(nums[1]);
            inst.k = static_cast<int>(nums[2]);
            continue;
        }
        if (static_cast<int>(inst.family.size()) == fam) {
            if (!nums.empty())
                throw std::runtime_error("line " + std::to_string(line) + ": more sets than declared");
            continue;
        }
        std::vector<int> set;
        for (long x : nums) {
            if (x < 0 || x >= inst.ground)
                throw std::runtime_error("line " + std::to_string(line) + ": element out of range");
            set.push_back(static_cast<int>(x));
        }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        inst.family.push_back(set);
    }
    if (fam < 0) throw std::runtime_error("missing set packing header");
    while (static_cast<int>(inst.family.size()) < fam) inst.family.emplace_back();
    return inst;
}

std::string write_set_packing(const SetPackingInstance& inst) {
    std::ostringstream out;
    out << inst.ground << ' ' << inst.family.size() << ' ' << inst.k << '\n';
    for (const auto& s : inst.family) {
        for (size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
        out << '\n';
    }
    return out.str();
}

namespace {

struct PackSearch {
    const SetPackingInstance& inst;
    std::vector<int> taken;
    std::vector<int> pick;

    bool fits(int i) const {
        for (int x : inst.family[static_cast<size_t>(i)])
            if (taken[static_cast<size_t>(x)]) return false;
        return true;
    }
    void mark(int i, int d) {
        for (int x : inst.family[static_cast<size_t>(i)]) taken[static_cast<size_t>(x)] += d;
    }

    // Emits every packing of exactly `size` sets; returns false when the sink stops.
    bool rec(int from, int size, long& found,
             const std::function<bool(const std::vector<int>&)>& sink) {
        if (static_cast<int>(pick.size()) == size) {
            ++found;
            for (size_t a = 0; a < pick.size(); ++a)
                for (size_t b = a + 1; b < pick.size(); ++b)
                    for (int x : inst.family[static_cast<size_t>(pick[a])])
                        if (std::binary_search(inst.family[static_cast<size_t>(pick[b])].begin(),
                                               inst.family[static_cast<size_t>(pick[b])].end(), x))
                            throw std::logic_error("packing members intersect");
            return sink(pick);
        }
        int fsz = static_cast<int>(inst.family.size());
        for (int i = from; i < fsz; ++i) {
            if (fsz - i < size - static_cast<int>(pick.size())) break;
            if (!fits(i)) continue;
            mark(i, 1);
            pick.push_back(i);
            bool go = rec(i + 1, size, found, sink);
            pick.pop_back();
            mark(i, -1);
            if (!go) return false;
        }
        return true;
    }
};

}  // namespace

void enumerate_set_packings(const SetPackingInstance& inst, int min_size,
                            const std::function<bool(const std::vector<int>&)>& sink) {
    PackSearch s{inst, std::vector<int>(static_cast<size_t>(inst.ground), 0), {}};
    int fsz = static_cast<int>(inst.family.size());
    for (int size = std::max(0, min_size); size <= fsz; ++size) {
        long found = 0;
        if (!s.rec(0, size, found, sink)) return;
        if (found == 0) return;
    }
}

std::vector<std::vector<int>> all_set_packings(const SetPackingInstance& inst, int min_size) {
    std::vector<std::vector<int>> out;
    enumerate_set_packings(inst, min_size, [&](const std::vector<int>& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

std::vector<int> max_set_packing(const SetPackingInstance& inst) {
    std::vector<int> best;
    enumerate_set_packings(inst, 0, [&](const std::vector<int>& p) {
        if (p.size() > best.size()) best = p;
        return true;
    });
    return best;
}

bool set_packing_solvable(const SetPackingInstance& inst) {
    if (inst.k <= 0) return true;
    bool yes = false;
    enumerate_set_packings(inst, inst.k, [&](const std::vector<int>&) {
        yes = true;
        return false;
    });
    return yes;
}

}  // namespace mmc
