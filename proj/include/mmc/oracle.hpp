#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mmc/graph.hpp"
#include "mmc/multicut.hpp"

namespace mmc {

// Callback streams: return false to stop early.
using MulticutSink = std::function<bool(const Multicut&)>;

class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 12 unless MULTICUT_ORACLE_LIMIT is set.
int oracle_limit();

// limit <= 0 means oracle_limit().
void enumerate_all_multicuts(const Graph& g, int ell, const MulticutSink& sink, int limit = 0);
std::vector<Multicut> all_multicuts(const Graph& g, int ell, int limit = 0);
int max_parts(const Graph& g, int limit = 0);

// Guard defaults to 20.
int max_independent_set(const Graph& g, int limit = 20);
std::vector<int> maximum_independent_set(const Graph& g, int limit = 20);

struct SetPackingInstance {
    int ground = 0;
    std::vector<std::vector<int>> family;  // each sorted
    int k = 0;
};

SetPackingInstance parse_set_packing(std::string_view text);
std::string write_set_packing(const SetPackingInstance& inst);

// Packings by family index, ordered by size then lexicographically.
void enumerate_set_packings(const SetPackingInstance& inst, int min_size,
                            const std::function<bool(const std::vector<int>&)>& sink);
std::vector<std::vector<int>> all_set_packings(const SetPackingInstance& inst, int min_size);
std::vector<int> max_set_packing(const SetPackingInstance& inst);
bool set_packing_solvable(const SetPackingInstance& inst);

}  // namespace mmc
