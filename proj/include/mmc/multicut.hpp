#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmc/graph.hpp"

namespace mmc {

// Canonical partition: parts connected, numbered by smallest vertex.
struct Multicut {
    std::vector<int> part_of;
    int p = 0;
    std::vector<Edge> cut_edges;  // sorted, u<v

    std::vector<std::vector<int>> parts() const;
    bool operator==(const Multicut& o) const { return part_of == o.part_of; }
    bool operator<(const Multicut& o) const { return part_of < o.part_of; }
};

enum class ViolationKind { VertexTwoCrossing, DisconnectedPart, EmptyPart, TooFewParts };

struct ViolationReport {
    ViolationKind kind;
    std::vector<int> witness;
};

std::string to_string(ViolationKind k);

// nullopt means ok. Part labels are read as 0..max label.
std::optional<ViolationReport> validate_multicut(const Graph& g, const std::vector<int>& part_of,
                                                 int ell);

// Checks every Multicut invariant, connectivity and cut_edges included.
std::optional<ViolationReport> validate_canonical(const Graph& g, const Multicut& mc);

Multicut canonicalize(const Graph& g, const std::vector<int>& part_of);

// Parts are the components of G-M. Throws if M is not a matching of G.
Multicut max_parts_of_cut(const Graph& g, const std::vector<Edge>& matching);

enum class ModulatorKind { VertexCover, Cluster, CoCluster };

struct Modulator {
    ModulatorKind kind;
    std::vector<int> vertices;  // sorted
};

Modulator approx_vertex_cover(const Graph& g);
Modulator approx_cluster_modulator(const Graph& g);
Modulator approx_cocluster_modulator(const Graph& g);

// Class recognition of G - removed.
bool is_edgeless_after(const Graph& g, const std::vector<int>& removed);
bool is_cluster_after(const Graph& g, const std::vector<int>& removed);
bool is_cocluster_after(const Graph& g, const std::vector<int>& removed);
bool is_valid_modulator(const Graph& g, const Modulator& mod);

}  // namespace mmc
