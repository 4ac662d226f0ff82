#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mmc/graph.hpp"
#include "mmc/multicut.hpp"

namespace mmc {

class TdError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  // sorted vertex lists
    std::vector<Edge> tree;              // edges between bag indices
    int root = 0;

    int width() const;
};

// Throws TdError naming the uncovered edge or the vertex whose bags are disconnected.
void validate_td(const Graph& g, const TreeDecomposition& td);
TreeDecomposition parse_td(std::string_view text, const Graph& g);
std::string write_td(const TreeDecomposition& td, int n);

TreeDecomposition heuristic_decomposition(const Graph& g);

enum class NiceType { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NiceType type;
    int vertex = -1;
    std::vector<int> bag;
    std::vector<int> children;

    bool operator==(const NiceNode& o) const {
        return type == o.type && vertex == o.vertex && bag == o.bag && children == o.children;
    }
};

// Nodes are stored children first; root is the last node.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int width() const;
    TreeDecomposition as_td() const;
    bool operator==(const NiceTreeDecomposition& o) const {
        return nodes == o.nodes && root == o.root;
    }
};

NiceTreeDecomposition nicify(const TreeDecomposition& td);
void validate_nice(const Graph& g, const NiceTreeDecomposition& ntd);

// Key packs the restricted-growth string of the sorted bag (4 bits per position)
// and the Ext bits (bit 48+i for position i). Absent keys are -infinity.
constexpr int kMaxBag = 12;
constexpr int kNegInf = -1000000000;
using DpKey = std::uint64_t;

struct DpTable {
    std::vector<int> bag;
    std::unordered_map<DpKey, int> c;

    int value(DpKey k) const {
        auto it = c.find(k);
        return it == c.end() ? kNegInf : it->second;
    }
};

DpKey make_key(const std::vector<int>& rg, const std::vector<int>& ext);
void decode_key(DpKey k, int size, std::vector<int>& rg, std::vector<int>& ext);
// Representative form: rep[i] = position of the smallest bag member sharing i's part.
std::vector<int> representatives(DpKey k, int size);

DpTable leaf_table();
DpTable transfer_introduce(const Graph& g, const DpTable& child, int v);
DpTable transfer_forget(const DpTable& child, int v);
DpTable transfer_join(const Graph& g, const DpTable& left, const DpTable& right);

int max_parts_tw(const Graph& g, const NiceTreeDecomposition& ntd);
// Witness with the maximum number of parts.
Multicut max_multicut_tw(const Graph& g, const NiceTreeDecomposition& ntd);

}  // namespace mmc
