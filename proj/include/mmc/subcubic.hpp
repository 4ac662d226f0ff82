#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmc/graph.hpp"
#include "mmc/multicut.hpp"

namespace mmc {

struct CyclePacking {
    std::vector<std::vector<int>> cycles;  // sorted vertex sets
};

// Each lemma returns nullopt when its hypothesis fails; precondition
// violations throw std::invalid_argument.
std::optional<Multicut> multicut_from_degree_one(const Graph& g, int ell);
std::optional<Multicut> multicut_from_subdivided_edges(const Graph& g, int ell);
CyclePacking find_disjoint_cycles(const Graph& g);
std::optional<Multicut> multicut_from_cycles(const Graph& g, const CyclePacking& packing, int ell);

// |V>=3| / (4 log2 |V>=3|), or 0 below 2 such vertices.
double simonovits_bound(const Graph& g);
std::vector<int> closed_square_neighborhood(const Graph& g, const std::vector<int>& s);
// Repeatedly deletes vertices of degree <= 1; returns the surviving vertices.
std::vector<int> strip_pendant_trees(const Graph& g);

struct KernelResult {
    bool solved = false;
    Multicut witness;
    Graph kernel;
    int ell = 0;
    double bound = 0;
    std::string certificate;  // "KERNEL n<bound" when unsolved
    std::string method;       // deg1, deg2, deg2-stripped, cycles, trivial
};

KernelResult kernelize_subcubic(const Graph& g, int ell);

}  // namespace mmc
