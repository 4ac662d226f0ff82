#pragma once

#include <array>
#include <string>
#include <vector>

#include "mmc/graph.hpp"
#include "mmc/multicut.hpp"
#include "mmc/oracle.hpp"

namespace mmc {

enum class IsVariant { Subcubic, Cubic };

// Independent Set on a cubic graph to Matching Multicut.
struct IsReduction {
    Graph source;
    int k = 0;
    IsVariant variant = IsVariant::Subcubic;
    Graph h;
    int ell = 0;

    std::vector<std::array<int, 3>> triangles;  // B_u
    std::vector<Edge> edge_order;               // e_1..e_m, lexicographic
    std::vector<int> g1, g2, ring_n, ring_p;    // per edge
    // Pendant units: a single vertex (subcubic) or the five-vertex gadget (cubic).
    std::vector<std::vector<int>> f_units, fp_units;

    // {f_1, f_1', ..., B_x for x in the set, R}; throws if the set is not independent.
    Multicut forward(const std::vector<int>& independent_set) const;
    // {u : B_u is a part}.
    std::vector<int> backward(const Multicut& mc) const;
    std::string bookkeeping_json() const;
};

IsReduction reduce_is_to_mmc(const Graph& g, int k, IsVariant variant = IsVariant::Subcubic);

// The five-vertex indivisible pendant; vertex 1 (index 1 here) is the attachment point.
Graph indivisible_pendant();

struct CompositionCertificate {
    int t = 0;    // inputs before padding
    int tau = 0;  // bits per slot
    int r = 0;
    int y = 0;    // |Y|
    std::vector<int> s;                                 // s_0..s_r, element ids
    std::vector<std::vector<std::array<int, 2>>> bits;  // bits[j-1][i-1] = {b_ij, not b_ij}
    std::vector<int> selector;                          // family index of T_a
    // Packing sets: family index -> (a, i, j); selectors have i = j = -1.
    std::vector<std::array<int, 3>> origin;

    // Bits of a in slot j (1-based), least significant bit first.
    std::vector<int> bits_of(int a, int j) const;
    // Composed packing (family indices) to (a, source packing).
    std::pair<int, std::vector<int>> backward(const std::vector<int>& packing) const;
    // Source packing of instance a to a composed packing of size r+1.
    std::vector<int> forward(int a, const std::vector<int>& packing) const;
    std::string bookkeeping_json() const;
};

struct Composition {
    SetPackingInstance instance;
    CompositionCertificate cert;
};

Composition cross_compose_set_packing(const std::vector<SetPackingInstance>& inputs);

struct SpReduction {
    SetPackingInstance source;
    Graph g;
    int ell = 0;
    std::vector<std::vector<int>> cliques;  // per family set
    // Clique vertex matched to element x of set i, aligned with source.family[i].
    std::vector<std::vector<int>> matched;

    Multicut forward(const std::vector<int>& packing) const;
    // Indices of family sets whose clique is exactly a part; at most k of them.
    std::vector<int> backward(const Multicut& mc) const;
    std::string bookkeeping_json() const;
};

SpReduction reduce_set_packing_to_mmc(const SetPackingInstance& inst);

struct VerifyReport {
    bool source_yes = false;
    bool target_yes = false;
    long long round_trips = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty() && source_yes == target_yes; }
    std::string summary() const;
};

// Oracle on both sides plus forward/backward round trips on every source solution.
// The MMC side uses the branching engine so larger H stay in reach.
VerifyReport verify_reduction(const IsReduction& red);
VerifyReport verify_reduction(const std::vector<SetPackingInstance>& inputs, const Composition& comp);
VerifyReport verify_reduction(const SpReduction& red);

}  // namespace mmc
