#include <gtest/gtest.h>

#include <random>

#include "mmc/enum_cluster.hpp"
#include "test_util.hpp"

using namespace mmc;

namespace {

std::vector<Multicut> via_cluster(const Graph& g, const std::vector<int>& u, int ell,
                                  ClusterStats* st = nullptr) {
    return tu::collect([&](const MulticutSink& s) { enumerate_cluster(g, u, ell, s, st); });
}

int count_role(const ClusterInstance& inst, BlockRole r) { return static_cast<int>(inst.blocks(r).size()); }

// Random cluster graph plus a modulator wired to it at random.
Graph random_cluster_instance(int nu, std::mt19937& rng, std::vector<int>* u) {
    std::uniform_int_distribution<int> csize(1, 4), ccount(1, 4);
    std::bernoulli_distribution coin(0.35);
    std::vector<Edge> es;
    int n = nu;
    for (int c = ccount(rng); c > 0; --c) {
        int s = csize(rng);
        for (int a = 0; a < s; ++a)
            for (int b = a + 1; b < s; ++b) es.push_back({n + a, n + b});
        n += s;
    }
    for (int x = 0; x < nu; ++x)
        for (int v = 0; v < n; ++v)
            if (v != x && coin(rng)) es.push_back(make_edge(x, v));
    u->clear();
    for (int x = 0; x < nu; ++x) u->push_back(x);
    return Graph::from_edges(n, es);
}

}  // namespace

TEST(ClusterReduce, RejectsBadModulator) {
    EXPECT_THROW(reduce_cluster_instance(path_graph(3), {}), std::invalid_argument);
    EXPECT_THROW(via_cluster(path_graph(3), {}, 1), std::invalid_argument);
}

TEST(ClusterReduce, IsolatedCliqueTrimmedToThree) {
    ClusterInstance inst = reduce_cluster_instance(complete_graph(6), {});
    ASSERT_EQ(count_role(inst, BlockRole::Forced), 1);
    EXPECT_EQ(inst.blocks(BlockRole::Forced)[0]->rule, "R4");
    EXPECT_EQ(inst.h_vertices.size(), 3u);
}

TEST(ClusterReduce, CommonNeighboursMergeModulatorVertices) {
    // 0 and 1 share the three singleton clusters 2, 3, 4
    Graph g = Graph::from_edges(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    ClusterInstance inst = reduce_cluster_instance(g, {0, 1});
    ASSERT_EQ(inst.mono.size(), 1u);
    EXPECT_EQ(inst.mono[0], (std::vector<int>{0, 1}));
    ASSERT_FALSE(inst.log.empty());
}

TEST(ClusterReduce, SecondPendantEdgeClusterIsMarked) {
    // two pendant edges 1-2 and 3-4 hang from modulator vertex 0
    Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {0, 3}, {3, 4}});
    ClusterInstance inst = reduce_cluster_instance(g, {0});
    auto pend = inst.blocks(BlockRole::Pendant);
    ASSERT_EQ(pend.size(), 2u);
    EXPECT_EQ(pend[0]->rule, "P");
    EXPECT_EQ(pend[1]->rule, "R8");
    EXPECT_EQ(pend[0]->attach, 0);
    EXPECT_EQ(pend[0]->inner, 1);
    EXPECT_EQ(pend[0]->outer, 2);
    EXPECT_TRUE(inst.clusters[0].blue);
}

TEST(ClusterReduce, MonochromaticMatchingClusterHeldOut) {
    // triangle 1,2,3 hanging from modulator vertex 0 by a single edge
    Graph g = Graph::from_edges(4, {{1, 2}, {2, 3}, {1, 3}, {0, 1}});
    ClusterInstance inst = reduce_cluster_instance(g, {0});
    auto held = inst.blocks(BlockRole::HeldOut);
    ASSERT_EQ(held.size(), 1u);
    EXPECT_EQ(held[0]->vertices, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(inst.clusters[0].type, ClusterType::Matching);
}

TEST(ClusterEnumerate, Examples) {
    EXPECT_EQ(via_cluster(complete_graph(6), {}, 1).size(), 1u);
    EXPECT_TRUE(via_cluster(complete_graph(6), {}, 2).empty());
    Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {0, 3}, {3, 4}});
    for (int ell = 1; ell <= 4; ++ell) EXPECT_EQ(via_cluster(g, {0}, ell), tu::oracle_set(g, ell));
}

TEST(ClusterEnumerate, MatchesOracleOnRandomInstances) {
    std::mt19937 rng(211);
    int nonempty = 0;
    for (int it = 0; it < 600; ++it) {
        std::vector<int> u;
        Graph g = random_cluster_instance(1 + it % 3, rng, &u);
        if (g.n() > 11) continue;
        for (int ell = 1; ell <= 4; ++ell) {
            auto got = via_cluster(g, u, ell);
            EXPECT_FALSE(tu::has_duplicates(got));
            ASSERT_EQ(got, tu::oracle_set(g, ell)) << "it=" << it << " ell=" << ell;
            nonempty += !got.empty();
        }
    }
    EXPECT_GT(nonempty, 100);
}

TEST(ClusterEnumerate, ApproximateModulatorOnRandomGraphs) {
    std::mt19937 rng(223);
    for (int it = 0; it < 300; ++it) {
        Graph g = tu::random_graph(3 + it % 7, 0.3, rng);
        Modulator mod = approx_cluster_modulator(g);
        for (int ell = 1; ell <= 3; ++ell) ASSERT_EQ(via_cluster(g, mod.vertices, ell), tu::oracle_set(g, ell));
    }
}

TEST(ClusterEnumerate, StatsCountEmissions) {
    std::mt19937 rng(227);
    for (int it = 0; it < 50; ++it) {
        std::vector<int> u;
        Graph g = random_cluster_instance(2, rng, &u);
        ClusterStats st;
        auto got = via_cluster(g, u, 1, &st);
        EXPECT_EQ(st.emitted, static_cast<long long>(got.size()));
        ASSERT_EQ(st.emit_seconds.size(), got.size());
        EXPECT_TRUE(std::is_sorted(st.emit_seconds.begin(), st.emit_seconds.end()));
    }
}

TEST(ClusterEnumerate, EarlyStopHonoured) {
    int calls = 0;
    enumerate_cluster(path_graph(8), approx_cluster_modulator(path_graph(8)).vertices, 1,
                      [&](const Multicut&) { return ++calls < 3; });
    EXPECT_EQ(calls, 3);
}
