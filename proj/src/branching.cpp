#include "mmc/branching.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace mmc {

PartialState PartialState::initial(int n, int ell) {
    PartialState s;
    s.part.assign(static_cast<size_t>(n), kFree);
    s.ext.assign(static_cast<size_t>(n), 0);
    s.ell = ell;
    s.free_count = n;
    return s;
}

void PartialState::assign(int v, int p) {
    if (part[static_cast<size_t>(v)] != kFree) throw std::logic_error("vertex already assigned");
    if (p < 0 || p > used) throw std::logic_error("part opened out of order");
    part[static_cast<size_t>(v)] = p;
    --free_count;
    if (p == used) ++used;
}

std::string RuleTrace::json_lines() const {
    std::ostringstream out;
    for (const auto& st : steps) {
        nlohmann::json j;
        j["rule"] = st.rule;
        j["vertices"] = st.vertices;
        out << j.dump() << '\n';
    }
    return out.str();
}

namespace {

struct Move {
    int v, p;
};

// Assigned neighbors of a free vertex, grouped by part.
struct PartCounts {
    int parts[4] = {0, 0, 0, 0};
    int counts[4] = {0, 0, 0, 0};
    int distinct = 0;
    int assigned = 0;  // assigned neighbors in total (may exceed 4 parts; distinct saturates)

    void add(int p) {
        ++assigned;
        for (int i = 0; i < distinct; ++i)
            if (parts[i] == p) {
                ++counts[i];
                return;
            }
        if (distinct < 4) {
            parts[distinct] = p;
            counts[distinct] = 1;
        }
        ++distinct;
    }
};

PartCounts part_counts(const Graph& g, const PartialState& s, int v) {
    PartCounts pc;
    for (int w : g.neighbors(v))
        if (!s.is_free(w)) pc.add(s.part[static_cast<size_t>(w)]);
    return pc;
}

int free_degree(const Graph& g, const PartialState& s, int v) {
    int d = 0;
    for (int w : g.neighbors(v)) d += s.is_free(w);
    return d;
}

int ext_of(const PartialState& s, int v) { return s.ext[static_cast<size_t>(v)]; }
int part_of(const PartialState& s, int v) { return s.part[static_cast<size_t>(v)]; }

}  // namespace

std::optional<std::string> apply_stopping_rules(const Graph& g, const PartialState& s,
                                                const EngineOptions&) {
    if (s.used + s.free_count < s.ell) return std::string("CAP");
    int best = 5;
    for (int v = 0; v < g.n() && best > 1; ++v) {
        if (s.is_free(v)) {
            PartCounts pc = part_counts(g, s, v);
            int big = 0;
            for (int i = 0; i < std::min(pc.distinct, 4); ++i) big += pc.counts[i] >= 2;
            if (big >= 2) best = std::min(best, 1);
            if (pc.distinct + ext_of(s, v) >= 3) best = std::min(best, 2);
        } else {
            int pv = part_of(s, v);
            int outside = 0;
            for (int u : g.neighbors(v)) {
                if (s.is_free(u) || part_of(s, u) == pv) continue;
                ++outside;
                if (best > 3 && u > v)
                    for (int w : g.neighbors(v))
                        if (s.is_free(w) && g.adjacent(u, w)) {
                            best = 3;
                            break;
                        }
            }
            if (outside + ext_of(s, v) >= 2) best = std::min(best, 4);
        }
    }
    if (best <= 4) return "S" + std::to_string(best);
    return std::nullopt;
}

namespace {

std::optional<std::pair<std::string, std::vector<Move>>> find_reduction(const Graph& g,
                                                                        const PartialState& s,
                                                                        const EngineOptions& opt) {
    const int n = g.n();
    // R1
    for (int v = 0; v < n; ++v) {
        if (s.is_free(v)) continue;
        const auto& nb = g.neighbors(v);
        for (size_t a = 0; a < nb.size(); ++a) {
            if (!s.is_free(nb[a])) continue;
            for (size_t b = a + 1; b < nb.size(); ++b)
                if (s.is_free(nb[b]) && g.adjacent(nb[a], nb[b]))
                    return std::make_pair(std::string("R1"),
                                          std::vector<Move>{{nb[a], part_of(s, v)}, {nb[b], part_of(s, v)}});
        }
    }
    // R2
    for (int v = 0; v < n; ++v) {
        if (!s.is_free(v)) continue;
        PartCounts pc = part_counts(g, s, v);
        int found = -1, hits = 0;
        for (int i = 0; i < std::min(pc.distinct, 4); ++i)
            if (pc.counts[i] >= 2) {
                found = pc.parts[i];
                ++hits;
            }
        if (hits == 1) return std::make_pair(std::string("R2"), std::vector<Move>{{v, found}});
    }
    // R3
    for (int u = 0; u < n; ++u) {
        if (s.is_free(u)) {
            if (ext_of(s, u) == 0) continue;
            for (int w : g.neighbors(u))
                if (!s.is_free(w))
                    return std::make_pair(std::string("R3"), std::vector<Move>{{u, part_of(s, w)}});
            continue;
        }
        bool crossing = ext_of(s, u) > 0;
        for (int w : g.neighbors(u))
            if (!s.is_free(w) && part_of(s, w) != part_of(s, u)) crossing = true;
        if (!crossing) continue;
        std::vector<Move> mv;
        for (int w : g.neighbors(u))
            if (s.is_free(w)) mv.push_back({w, part_of(s, u)});
        if (!mv.empty()) return std::make_pair(std::string("R3"), mv);
    }
    if (!opt.decision_rules) return std::nullopt;

    auto same_nbhd = [&](int a, int b) { return g.neighbors(a) == g.neighbors(b); };
    // R4, R5: degree-2 free twins
    for (int u = 0; u < n; ++u) {
        if (!s.is_free(u) || g.degree(u) != 2 || ext_of(s, u)) continue;
        int x = g.neighbors(u)[0], y = g.neighbors(u)[1];
        bool xa = !s.is_free(x), ya = !s.is_free(y);
        if (!xa && !ya) continue;
        if (xa && ya && part_of(s, x) == part_of(s, y)) continue;
        int twin = -1;
        for (int v : g.neighbors(x))
            if (v != u && s.is_free(v) && g.degree(v) == 2 && !ext_of(s, v) && same_nbhd(u, v)) {
                twin = v;
                break;
            }
        if (twin < 0) continue;
        if (xa && ya)
            return std::make_pair(std::string("R4"),
                                  std::vector<Move>{{u, part_of(s, x)}, {twin, part_of(s, y)}});
    }
    for (int u = 0; u < n; ++u) {
        if (!s.is_free(u) || g.degree(u) != 2 || ext_of(s, u)) continue;
        int x = g.neighbors(u)[0], y = g.neighbors(u)[1];
        bool xa = !s.is_free(x), ya = !s.is_free(y);
        if (xa == ya) continue;
        int a = xa ? x : y;
        for (int v : g.neighbors(a))
            if (v != u && s.is_free(v) && g.degree(v) == 2 && !ext_of(s, v) && same_nbhd(u, v))
                return std::make_pair(std::string("R5"), std::vector<Move>{{u, part_of(s, a)}});
    }
    // R6
    for (int v = 0; v < n; ++v) {
        if (!s.is_free(v) || g.degree(v) != 2 || ext_of(s, v)) continue;
        int x = g.neighbors(v)[0], y = g.neighbors(v)[1];
        if (s.is_free(x) || s.is_free(y) || part_of(s, x) == part_of(s, y)) continue;
        if (ext_of(s, x) || ext_of(s, y)) continue;
        auto closed = [&](int a) {
            for (int w : g.neighbors(a))
                if (w != v && (s.is_free(w) || part_of(s, w) != part_of(s, a))) return false;
            return true;
        };
        if (closed(x) && closed(y))
            return std::make_pair(std::string("R6"), std::vector<Move>{{v, part_of(s, x)}});
    }
    // R7: only once every part is open, so no part can be starved.
    if (s.used == s.ell) {
        auto clean2 = [&](int a) { return s.is_free(a) && g.degree(a) == 2 && !ext_of(s, a); };
        auto other = [&](int a, int not_this) {
            return g.neighbors(a)[0] == not_this ? g.neighbors(a)[1] : g.neighbors(a)[0];
        };
        for (int u = 0; u < n; ++u) {
            if (!clean2(u)) continue;
            int v = g.neighbors(u)[0], w = g.neighbors(u)[1];
            if (!clean2(v) || !clean2(w)) continue;
            int a = other(v, u), b = other(w, u);
            if (s.is_free(a) || s.is_free(b)) continue;
            return std::make_pair(std::string("R7"),
                                  std::vector<Move>{{u, part_of(s, a)}, {v, part_of(s, a)},
                                                    {w, part_of(s, b)}});
        }
    }
    return std::nullopt;
}

}  // namespace

bool apply_reduction_rules(const Graph& g, PartialState& s, RuleTrace* trace,
                           const EngineOptions& opt) {
    for (;;) {
        if (auto dead = apply_stopping_rules(g, s, opt)) {
            if (trace) trace->steps.push_back({*dead, {}});
            return false;
        }
        auto red = find_reduction(g, s, opt);
        if (!red) return true;
        TraceStep st{red->first, {}};
        for (auto [v, p] : red->second) {
            if (!s.is_free(v)) continue;
            s.assign(v, p);
            st.vertices.push_back(v);
            st.vertices.push_back(p);
        }
        if (trace) trace->steps.push_back(std::move(st));
    }
}

void RuleTrace::replay(PartialState& s) const {
    for (const auto& st : steps)
        for (size_t i = 0; i + 1 < st.vertices.size(); i += 2) {
            int v = st.vertices[i], p = st.vertices[i + 1];
            if (!s.is_free(v)) throw std::logic_error("trace assigns a vertex twice");
            s.part[static_cast<size_t>(v)] = p;
            --s.free_count;
            s.used = std::max(s.used, p + 1);
        }
}

std::optional<std::pair<std::string, int>> find_configuration(const Graph& g, const PartialState& s) {
    const int n = g.n();
    std::vector<int> fdeg(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) fdeg[static_cast<size_t>(v)] = free_degree(g, s, v);
    // part of an assigned neighbor that has another free neighbor, or -1
    auto hook = [&](int v, int skip_part) {
        for (int a : g.neighbors(v))
            if (!s.is_free(a) && fdeg[static_cast<size_t>(a)] >= 2 && part_of(s, a) != skip_part)
                return part_of(s, a);
        return -1;
    };
    auto free_nbrs = [&](int v) {
        std::vector<int> out;
        for (int w : g.neighbors(v))
            if (s.is_free(w)) out.push_back(w);
        return out;
    };
    auto b1 = [&](int v) { return hook(v, -2) >= 0 && fdeg[static_cast<size_t>(v)] >= 2; };
    auto b2 = [&](int v) {
        int i = hook(v, -2);
        if (i < 0 || fdeg[static_cast<size_t>(v)] < 1) return false;
        PartCounts pc = part_counts(g, s, v);
        return pc.distinct >= 2;
    };
    auto b3 = [&](int v) {
        return fdeg[static_cast<size_t>(v)] >= 1 && part_counts(g, s, v).distinct >= 2;
    };
    // pairs of free neighbors hooked into parts; mode 0: distinct parts, 1: same part
    auto hooked_pair = [&](int v, int mode, int min_free) {
        auto fn = free_nbrs(v);
        if (static_cast<int>(fn.size()) < min_free) return false;
        for (size_t a = 0; a < fn.size(); ++a) {
            int pa = hook(fn[a], -2);
            if (pa < 0) continue;
            for (size_t b = a + 1; b < fn.size(); ++b) {
                int pb = hook(fn[b], mode == 0 ? pa : -2);
                if (pb < 0) continue;
                if (mode == 0 && pb != pa) return true;
                if (mode == 1 && pb == pa) return true;
            }
        }
        return false;
    };
    auto b4 = [&](int v) { return hooked_pair(v, 0, 3); };
    auto b4p = [&](int v) { return hooked_pair(v, 1, 3); };
    auto b5 = [&](int v) {
        PartCounts pc = part_counts(g, s, v);
        if (pc.distinct < 1) return false;
        for (int k = 0; k < std::min(pc.distinct, 4); ++k) {
            int j = pc.parts[k];
            int hits = 0;
            for (int w : free_nbrs(v)) hits += hook(w, j) >= 0;
            if (hits >= 2) return true;
        }
        return false;
    };
    auto b6 = [&](int v) {
        auto fn = free_nbrs(v);
        if (fn.size() < 4) return false;
        std::map<int, int> per;
        for (int w : fn) {
            int p = hook(w, -2);
            if (p >= 0) ++per[p];
        }
        int pairs = 0;
        for (auto& [p, c] : per) pairs += c >= 2;
        return pairs >= 2;
    };
    auto b7 = [&](int v) {
        int i = hook(v, -2);
        return i >= 0 && hook(v, i) >= 0;
    };
    auto b8 = [&](int v) {
        if (hook(v, -2) < 0) return false;
        for (int w : free_nbrs(v))
            if (part_counts(g, s, w).distinct >= 1) return true;
        return false;
    };

    struct Named {
        const char* id;
        std::function<bool(int)> test;
    };
    const Named rules[] = {{"B1", b1}, {"B2", b2}, {"B3", b3}, {"B4", b4}, {"B4'", b4p},
                           {"B5", b5}, {"B6", b6}, {"B7", b7}, {"B8", b8}};
    for (const auto& r : rules)
        for (int v = 0; v < n; ++v)
            if (s.is_free(v) && r.test(v)) return std::make_pair(std::string(r.id), v);
    return std::nullopt;
}

PartialState completion(const Graph& g, const PartialState& s) {
    const int n = g.n();
    PartialState out = s;
    std::vector<int> target(static_cast<size_t>(n), kFree);
    std::vector<char> aprime(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        if (!s.is_free(v) && free_degree(g, s, v) >= 2) aprime[static_cast<size_t>(v)] = 1;
    // F_i'
    std::vector<int> fprime(static_cast<size_t>(n), kFree);
    for (int v = 0; v < n; ++v) {
        if (!s.is_free(v)) continue;
        for (int a : g.neighbors(v))
            if (aprime[static_cast<size_t>(a)]) {
                int p = part_of(s, a);
                if (fprime[static_cast<size_t>(v)] == kFree || p < fprime[static_cast<size_t>(v)])
                    fprime[static_cast<size_t>(v)] = p;
            }
        target[static_cast<size_t>(v)] = fprime[static_cast<size_t>(v)];
    }
    // F_i''
    for (int v = 0; v < n; ++v) {
        if (!s.is_free(v) || target[static_cast<size_t>(v)] != kFree) continue;
        std::map<int, int> per;
        for (int w : g.neighbors(v))
            if (s.is_free(w) && fprime[static_cast<size_t>(w)] != kFree) ++per[fprime[static_cast<size_t>(w)]];
        for (auto& [p, c] : per)
            if (c >= 2) {
                target[static_cast<size_t>(v)] = p;
                break;
            }
    }
    bool star = false;
    for (int v = 0; v < n; ++v)
        if (s.is_free(v) && target[static_cast<size_t>(v)] == kFree) star = true;
    int last = s.used < s.ell ? s.used : s.ell - 1;
    if (star && s.used < s.ell) {
        // F* opens the last part before anything else is placed there
        for (int v = 0; v < n; ++v)
            if (s.is_free(v) && target[static_cast<size_t>(v)] == kFree) {
                out.assign(v, last);
                break;
            }
    }
    for (int v = 0; v < n; ++v) {
        if (!out.is_free(v)) continue;
        int t = target[static_cast<size_t>(v)];
        out.assign(v, t == kFree ? last : t);
    }
    return out;
}

namespace {

bool leaf_valid(const Graph& g, const PartialState& s, bool enumerate) {
    if (enumerate ? s.used < s.ell : s.used != s.ell) return false;
    for (int v = 0; v < g.n(); ++v) {
        int c = ext_of(s, v);
        for (int w : g.neighbors(v)) c += part_of(s, w) != part_of(s, v);
        if (c > 1) return false;
    }
    return true;
}

std::vector<PartialState> branch_on(const Graph& g, const PartialState& s, int v1,
                                    const EngineOptions& opt) {
    std::vector<PartialState> kids;
    int top = (opt.enumerate || s.used < s.ell) ? s.used : s.used - 1;
    for (int p = 0; p <= top; ++p) {
        PartialState c = s;
        c.assign(v1, p);
        if (apply_reduction_rules(g, c, nullptr, opt)) kids.push_back(std::move(c));
    }
    return kids;
}

int fallback_pivot(const Graph& g, const PartialState& s) {
    int first_free = -1;
    for (int v = 0; v < g.n(); ++v) {
        if (!s.is_free(v)) continue;
        if (first_free < 0) first_free = v;
        for (int w : g.neighbors(v))
            if (!s.is_free(w)) return v;
    }
    return first_free;
}

}  // namespace

std::vector<PartialState> select_branch(const Graph& g, const PartialState& s, std::string* rule,
                                        const EngineOptions& opt) {
    if (s.free_count == 0) return {};
    if (opt.decision_rules && !opt.enumerate) {
        if (auto cfg = find_configuration(g, s)) {
            if (rule) *rule = cfg->first;
            return branch_on(g, s, cfg->second, opt);
        }
        PartialState done = completion(g, s);
        if (leaf_valid(g, done, false)) {
            if (rule) *rule = "COMPLETE";
            return {done};
        }
    }
    if (rule) *rule = "BX";
    return branch_on(g, s, fallback_pivot(g, s), opt);
}

namespace {

struct Search {
    const Graph& g;
    EngineOptions opt;
    BranchStats* stats;
    RuleTrace* trace;
    const MulticutSink* sink = nullptr;
    std::optional<PartialState> found;

    // Returns false to abort the whole search.
    bool dfs(const PartialState& s) {
        if (stats) ++stats->nodes;
        if (s.free_count == 0) {
            if (stats) ++stats->leaves;
            if (!leaf_valid(g, s, opt.enumerate)) return true;
            if (opt.enumerate) {
                Multicut mc = canonicalize(g, s.part);
                if (mc.p != s.used) return true;  // some part is disconnected
                return (*sink)(mc);
            }
            found = s;
            return false;
        }
        std::string rule;
        auto kids = select_branch(g, s, &rule, opt);
        for (const auto& k : kids)
            if (!dfs(k)) return false;
        return true;
    }
};

std::optional<PartialState> run_search(const Graph& g, PartialState root, const EngineOptions& opt,
                                       BranchStats* stats, RuleTrace* trace,
                                       const MulticutSink* sink) {
    if (g.n() == 0) return std::nullopt;
    RuleTrace local;
    root.assign(0, 0);
    local.steps.push_back({"SEED", {0, 0}});
    if (!apply_reduction_rules(g, root, &local, opt)) {
        if (stats) ++stats->nodes;
        if (trace) *trace = local;
        return std::nullopt;
    }
    Search se{g, opt, stats, trace, sink, std::nullopt};
    se.dfs(root);
    if (trace) {
        *trace = local;
        if (se.found) {
            // the path below the root is summarized as the assignments it made
            TraceStep st{"PATH", {}};
            for (int v = 0; v < g.n(); ++v)
                if (root.is_free(v)) {
                    st.vertices.push_back(v);
                    st.vertices.push_back(se.found->part[static_cast<size_t>(v)]);
                }
            trace->steps.push_back(std::move(st));
        }
    }
    return se.found;
}

}  // namespace

std::optional<Multicut> solve_decision(const Graph& g, int ell, BranchStats* stats, RuleTrace* trace) {
    const int n = g.n();
    if (ell <= 0) return canonicalize(g, std::vector<int>(static_cast<size_t>(n), 0));
    if (ell > n) return std::nullopt;
    if (ell == 1) return canonicalize(g, std::vector<int>(static_cast<size_t>(n), 0));

    int ncomp = 0;
    auto comp = g.components(&ncomp);
    std::vector<int> csize(static_cast<size_t>(ncomp), 0);
    for (int c : comp) ++csize[static_cast<size_t>(c)];
    int trivial = 0, nontrivial = 0;
    for (int sz : csize) {
        if (sz <= 2) trivial += sz;
        else ++nontrivial;
    }
    // pendant groups in components with at least three vertices
    std::vector<int> rep_of(static_cast<size_t>(n), -1);  // w -> smallest pendant neighbor
    std::vector<char> removed(static_cast<size_t>(n), 0);
    int groups = 0;
    for (int v = 0; v < n; ++v) {
        if (csize[static_cast<size_t>(comp[static_cast<size_t>(v)])] <= 2) {
            removed[static_cast<size_t>(v)] = 1;
            continue;
        }
        if (g.degree(v) != 1) continue;
        int w = g.neighbors(v)[0];
        if (rep_of[static_cast<size_t>(w)] < 0) {
            rep_of[static_cast<size_t>(w)] = v;
            removed[static_cast<size_t>(v)] = 1;
            ++groups;
        }
    }
    std::vector<int> label(comp.begin(), comp.end());
    int next = ncomp;
    for (int v = 0; v < n; ++v) {
        if (csize[static_cast<size_t>(comp[static_cast<size_t>(v)])] <= 2) label[static_cast<size_t>(v)] = next++;
        else if (removed[static_cast<size_t>(v)]) label[static_cast<size_t>(v)] = next++;
    }
    if (ell <= trivial + groups + nontrivial) {
        if (stats) ++stats->nodes;
        if (trace) trace->steps.push_back({"PENDANT", {}});
        return canonicalize(g, label);
    }
    std::vector<int> keep;
    std::vector<int> idx(static_cast<size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        if (!removed[static_cast<size_t>(v)]) {
            idx[static_cast<size_t>(v)] = static_cast<int>(keep.size());
            keep.push_back(v);
        }
    Graph h = g.induced(keep);
    int ell2 = ell - trivial - groups;
    PartialState root = PartialState::initial(h.n(), ell2);
    for (int w = 0; w < n; ++w)
        if (rep_of[static_cast<size_t>(w)] >= 0) root.ext[static_cast<size_t>(idx[static_cast<size_t>(w)])] = 1;
    EngineOptions opt;
    auto res = run_search(h, root, opt, stats, trace, nullptr);
    if (!res) return std::nullopt;
    for (size_t i = 0; i < keep.size(); ++i) label[static_cast<size_t>(keep[i])] = next + res->part[i];
    Multicut mc = canonicalize(g, label);
    if (validate_multicut(g, mc.part_of, ell)) throw std::logic_error("solver produced an invalid witness");
    return mc;
}

MaxResult solve_max(const Graph& g, BranchStats* stats) {
    for (int ell = g.n(); ell >= 1; --ell)
        if (auto mc = solve_decision(g, ell, stats)) return {mc->p, *mc};
    return {0, Multicut{}};
}

void enumerate_branching(const Graph& g, int ell, const MulticutSink& sink, BranchStats* stats) {
    if (g.n() == 0) {
        if (ell <= 0) sink(Multicut{});
        return;
    }
    EngineOptions opt;
    opt.decision_rules = false;
    opt.enumerate = true;
    PartialState root = PartialState::initial(g.n(), std::max(ell, 1));
    run_search(g, root, opt, stats, nullptr, &sink);
}

}  // namespace mmc
