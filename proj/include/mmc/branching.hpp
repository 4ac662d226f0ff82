#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmc/graph.hpp"
#include "mmc/multicut.hpp"
#include "mmc/oracle.hpp"

namespace mmc {

constexpr int kFree = -1;

// Working object of the search. Parts are opened in restricted-growth order,
// so parts 0..used-1 are non-empty.
struct PartialState {
    std::vector<int> part;  // kFree or 0..ell-1
    std::vector<int> ext;   // crossings already realized towards removed vertices (0 or 1)
    int ell = 1;
    int used = 0;
    int free_count = 0;

    static PartialState initial(int n, int ell);
    void assign(int v, int p);
    bool is_free(int v) const { return part[static_cast<size_t>(v)] == kFree; }
};

struct TraceStep {
    std::string rule;
    std::vector<int> vertices;
};

struct RuleTrace {
    std::vector<TraceStep> steps;
    std::string json_lines() const;
    // Replays assignments recorded in the trace onto `s`.
    void replay(PartialState& s) const;
};

struct BranchStats {
    long long nodes = 0;
    long long leaves = 0;
};

struct EngineOptions {
    bool decision_rules = true;  // R4-R7 and the configuration scan; off for enumeration
    bool enumerate = false;      // parts may exceed ell
};

// nullopt = alive, otherwise the rule id that fired ("S1".."S4", "CAP").
std::optional<std::string> apply_stopping_rules(const Graph& g, const PartialState& s,
                                                const EngineOptions& opt = {});

// Runs the reduction rules to a fixed point, checking stopping rules after every
// application. Returns false if the state died.
bool apply_reduction_rules(const Graph& g, PartialState& s, RuleTrace* trace = nullptr,
                           const EngineOptions& opt = {});

// Children of an alive, reduced state; each child is already reduced and alive.
// The chosen rule is written to `rule` when non-null.
std::vector<PartialState> select_branch(const Graph& g, const PartialState& s,
                                        std::string* rule = nullptr,
                                        const EngineOptions& opt = {});

// First applicable configuration ("B1".."B8", "B4'") and its pivot vertex.
std::optional<std::pair<std::string, int>> find_configuration(const Graph& g, const PartialState& s);

// Completion of a state no configuration applies to.
PartialState completion(const Graph& g, const PartialState& s);

std::optional<Multicut> solve_decision(const Graph& g, int ell, BranchStats* stats = nullptr,
                                       RuleTrace* trace = nullptr);

struct MaxResult {
    int p = 0;
    Multicut witness;
};
MaxResult solve_max(const Graph& g, BranchStats* stats = nullptr);

// All canonical multicuts with at least ell parts, via the sound subset of the rules.
void enumerate_branching(const Graph& g, int ell, const MulticutSink& sink,
                         BranchStats* stats = nullptr);

}  // namespace mmc
