#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mmc/graph.hpp"
#include "mmc/multicut.hpp"
#include "mmc/oracle.hpp"

namespace mmc {

// Part label per vertex of G; -1 while the vertex is not placed.
using Labeling = std::vector<int>;
using LabelingSink = std::function<bool(const Labeling&)>;

enum class ClusterType { Matching, Fixed, Ambiguous, Simple, Other };

struct ClusterRecord {
    std::vector<int> vertices;
    bool edge_cluster = false;
    ClusterType type = ClusterType::Other;
    bool blue = false;
};

enum class BlockRole {
    Forced,   // always shares the part of `anchor`
    HeldOut,  // matching cluster with a monochromatic neighbourhood
    Pendant,  // edge cluster {inner, outer} hanging from `attach`
    Erased,   // re-inserted by the lifting step
};

struct Block {
    BlockRole role = BlockRole::Erased;
    std::string rule;
    std::vector<int> vertices;  // sorted
    std::vector<int> boundary;  // N(vertices), sorted
    int anchor = -1;
    int attach = -1;
    int inner = -1;
    int outer = -1;
};

struct ClusterInstance {
    Graph g;
    std::vector<int> u;                    // modulator, sorted
    std::vector<std::vector<int>> mono;    // U_1..U_r
    std::vector<int> group_of;             // closure group per vertex of G, -1 if none
    std::vector<ClusterRecord> clusters;   // components of G - U
    std::vector<int> h_vertices;           // V(H), sorted
    std::vector<Edge> virtual_edges;       // G ids, joins attachments of removed regions
    std::vector<Block> journal;            // removals in order
    std::vector<std::string> log;

    std::vector<const Block*> blocks(BlockRole role) const;
};

ClusterInstance reduce_cluster_instance(const Graph& g, const std::vector<int>& u);

// Step 2: partitions of H respecting the monochromatic groups whose parts stay
// connected once removed regions are allowed as connectors.
void enumerate_core(const ClusterInstance& inst, const LabelingSink& sink);

// Step 3: held-out matching clusters, cut off along a set packing of their neighbourhoods.
void extend_with_matching_clusters(const ClusterInstance& inst, const Labeling& core,
                                   const LabelingSink& sink);

// Step 4: pendant edge clusters; prunes branches that cannot reach `ell` parts.
void extend_with_pendant_clusters(const ClusterInstance& inst, const Labeling& partial, int ell,
                                  const LabelingSink& sink);

struct ClusterStats {
    long long core_solutions = 0;
    long long dead_leaves = 0;
    long long emitted = 0;
    std::vector<double> emit_seconds;  // time of each emission since the start
};

// Step 5: forced and erased blocks; emits validated canonical multicuts of G.
void lift_cluster(const ClusterInstance& inst, const Labeling& partial, int ell,
                  const MulticutSink& sink, ClusterStats* stats = nullptr);

void enumerate_cluster(const Graph& g, const std::vector<int>& u, int ell, const MulticutSink& sink,
                       ClusterStats* stats = nullptr);

}  // namespace mmc
