#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mmc/subcubic.hpp"
#include "test_util.hpp"

using namespace mmc;

namespace {

Graph caterpillar(int spine) {
    std::vector<Edge> es;
    for (int i = 0; i + 1 < spine; ++i) es.push_back({i, i + 1});
    for (int i = 0; i < spine; ++i) es.push_back({i, spine + i});
    return Graph::from_edges(2 * spine, es);
}

Graph ladder(int rungs) {
    std::vector<Edge> es;
    for (int i = 0; i < rungs; ++i) {
        es.push_back({2 * i, 2 * i + 1});
        if (i + 1 < rungs) {
            es.push_back({2 * i, 2 * i + 2});
            es.push_back({2 * i + 1, 2 * i + 3});
        }
    }
    return Graph::from_edges(2 * rungs, es);
}

void expect_witness(const Graph& g, const std::optional<Multicut>& mc, int ell) {
    ASSERT_TRUE(mc);
    EXPECT_FALSE(validate_canonical(g, *mc));
    EXPECT_GE(mc->p, ell);
}

bool packing_valid(const Graph& g, const CyclePacking& pk) {
    std::vector<int> used(static_cast<size_t>(g.n()), 0);
    for (auto& c : pk.cycles) {
        for (int v : c)
            if (used[static_cast<size_t>(v)]++) return false;
        Graph h = g.induced(c);
        int comps = 0;
        h.components(&comps);
        if (comps != 1 || h.min_degree() < 2) return false;
    }
    return true;
}

}  // namespace

TEST(DegreeOne, Examples) {
    expect_witness(star_graph(3), multicut_from_degree_one(star_graph(3), 1), 1);
    EXPECT_THROW(multicut_from_degree_one(star_graph(6), 1), std::invalid_argument);
    Graph cat = caterpillar(9);
    expect_witness(cat, multicut_from_degree_one(cat, 3), 3);
    EXPECT_FALSE(multicut_from_degree_one(cat, 4));
}

TEST(SubdividedEdges, Examples) {
    expect_witness(path_graph(84), multicut_from_subdivided_edges(path_graph(84), 4), 4);
    expect_witness(cycle_graph(21), multicut_from_subdivided_edges(cycle_graph(21), 1), 1);
    std::mt19937 rng(1);
    Graph cubic = tu::random_cubic_graph(30, rng);
    EXPECT_FALSE(multicut_from_subdivided_edges(cubic, 1));
}

TEST(SubdividedEdges, NeverFailsUnderHypothesis) {
    for (int ell = 1; ell <= 5; ++ell)
        for (int n = 21 * ell; n <= 21 * ell + 40; n += 7) {
            expect_witness(path_graph(n), multicut_from_subdivided_edges(path_graph(n), ell), ell);
            expect_witness(cycle_graph(n), multicut_from_subdivided_edges(cycle_graph(n), ell), ell);
        }
}

TEST(Cycles, Examples) {
    EXPECT_EQ(find_disjoint_cycles(cycle_graph(6)).cycles.size(), 1u);
    Graph two = Graph::from_edges(8, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 7}});
    // the joining path vertices have degree 2, so min degree holds
    auto pk = find_disjoint_cycles(two);
    EXPECT_EQ(pk.cycles.size(), 2u);
    EXPECT_TRUE(packing_valid(two, pk));
}

TEST(Cycles, RandomCubicMeetsBound) {
    std::mt19937 rng(64);
    for (int it = 0; it < 20; ++it) {
        Graph g = tu::random_cubic_graph(64, rng);
        auto pk = find_disjoint_cycles(g);
        EXPECT_TRUE(packing_valid(g, pk));
        EXPECT_GE(static_cast<double>(pk.cycles.size()), std::floor(64.0 / (4 * 6)));
        EXPECT_GE(static_cast<double>(pk.cycles.size()), simonovits_bound(g));
    }
    EXPECT_THROW(find_disjoint_cycles(path_graph(4)), std::invalid_argument);
}

TEST(CycleMulticut, Examples) {
    auto pk = find_disjoint_cycles(cycle_graph(5));
    expect_witness(cycle_graph(5), multicut_from_cycles(cycle_graph(5), pk, 1), 1);
    Graph lad = ladder(16);
    auto lp = find_disjoint_cycles(lad);
    expect_witness(lad, multicut_from_cycles(lad, lp, 2), 2);
    Graph ring = Graph::from_edges(9, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {6, 7}, {7, 8}, {6, 8},
                                       {2, 3}, {5, 6}, {8, 0}});
    CyclePacking three{{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}}};
    EXPECT_FALSE(multicut_from_cycles(ring, three, 3));
}

TEST(Kernelize, Examples) {
    KernelResult a = kernelize_subcubic(complete_graph(4), 1);
    EXPECT_TRUE(a.solved);
    EXPECT_EQ(a.witness.p, 1);
    KernelResult b = kernelize_subcubic(complete_graph(4), 2);
    EXPECT_FALSE(b.solved);
    EXPECT_EQ(b.kernel, complete_graph(4));
    EXPECT_EQ(b.certificate.rfind("KERNEL 4<", 0), 0u);
    KernelResult c = kernelize_subcubic(path_graph(100), 4);
    ASSERT_TRUE(c.solved);
    EXPECT_FALSE(validate_canonical(path_graph(100), c.witness));
    EXPECT_GE(c.witness.p, 4);
    EXPECT_THROW(kernelize_subcubic(star_graph(4), 2), std::invalid_argument);
}

TEST(Kernelize, WitnessesValidOnRandomSubcubicGraphs) {
    std::mt19937 rng(71);
    for (int it = 0; it < 200; ++it) {
        // cubic graph with a few random edges removed and pendant paths attached
        Graph g = tu::random_cubic_graph(20 + 2 * (it % 20), rng);
        auto es = g.edges();
        std::shuffle(es.begin(), es.end(), rng);
        es.resize(es.size() - static_cast<size_t>(it % 7));
        int n = g.n();
        for (int j = 0; j < it % 5; ++j) es.push_back({es[static_cast<size_t>(j)].first, n++});
        Graph h = Graph::from_edges(n, es);
        if (h.max_degree() > 3) continue;
        for (int ell = 1; ell <= 5; ++ell) {
            KernelResult r = kernelize_subcubic(h, ell);
            if (!r.solved) continue;
            EXPECT_FALSE(validate_canonical(h, r.witness));
            EXPECT_GE(r.witness.p, ell);
        }
    }
}

TEST(Neighbourhood, SquareBoundOnSubcubicGraphs) {
    std::mt19937 rng(73);
    for (int it = 0; it < 50; ++it) {
        Graph g = tu::random_cubic_graph(40, rng);
        std::vector<int> s;
        for (int v = 0; v < g.n(); ++v)
            if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) s.push_back(v);
        EXPECT_LE(closed_square_neighborhood(g, s).size(), 10 * s.size());
    }
}

TEST(Strip, PendantTreesRemoved) {
    Graph g = Graph::from_edges(7, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 6}});
    EXPECT_EQ(strip_pendant_trees(g), (std::vector<int>{0, 1, 2}));
}
