#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmc/graph.hpp"
#include "mmc/multicut.hpp"
#include "mmc/oracle.hpp"

namespace mmc {

// Pendant edges xy of G with y of degree one outside the cover.
struct PendantGroup {
    int x = -1;
    std::vector<Edge> edges;  // ascending
    Edge rep;                 // the retained edge, also an edge of H
};

struct VcKernel {
    Graph h;
    std::vector<int> h_to_g;  // H vertex i is G vertex h_to_g[i]
    std::vector<int> cover;   // X, sorted, isolated vertices dropped
    std::vector<int> marked;  // Z, sorted
    std::vector<PendantGroup> groups;
};

// Isolated vertices of G are left out of H and come back as singleton parts.
VcKernel compress_vc(const Graph& g, const std::vector<int>& cover);

// Streams the equivalence class of `kernel_cut` (a multicut of H) in G.
// Only multicuts with at least `ell` parts are emitted.
void lift_vc(const Graph& g, const VcKernel& kern, const Multicut& kernel_cut, int ell,
             const MulticutSink& sink);

enum class CoClusterCase { ManyClasses, TwoLargeClasses, VertexCover };

struct CoClusterKernel {
    CoClusterCase kind = CoClusterCase::VertexCover;
    int k = 0;  // size of the input modulator
    Graph h;
    std::vector<int> h_to_g;
    std::vector<int> s_after;        // modulator left in H (G ids)
    std::vector<std::string> rules;  // applied rules in order, e.g. "R10 u=3"
    std::optional<VcKernel> vc;      // set for the vertex-cover case

    // |V(H)| <= 2k for many classes, <= 2k+2 for two large classes.
    bool within_stated_bound() const;
    int stated_bound() const;
};

CoClusterKernel compress_cocluster(const Graph& g, const std::vector<int>& s);

// Multicuts of H and G share edge sets; the lift recomputes parts in G.
void lift_cocluster(const Graph& g, const CoClusterKernel& kern, const Multicut& kernel_cut,
                    int ell, const MulticutSink& sink);

enum class KernelEngine { Oracle, Branching };

struct KernelStats {
    int kernel_vertices = 0;
    long long kernel_solutions = 0;
    long long emitted = 0;
};

// All matching multicuts of G with at least `ell` parts, each once.
void enumerate_via_kernel(const Graph& g, const Modulator& mod, int ell, KernelEngine engine,
                          const MulticutSink& sink, KernelStats* stats = nullptr);

}  // namespace mmc
