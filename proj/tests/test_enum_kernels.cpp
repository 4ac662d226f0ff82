#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mmc/enum_kernels.hpp"
#include "test_util.hpp"

using namespace mmc;

namespace {

// Kernel-side multicut for a cut given in G ids.
Multicut kernel_cut(const VcKernel& k, const std::vector<Edge>& g_edges) {
    std::vector<int> h_of(64, -1);
    for (size_t i = 0; i < k.h_to_g.size(); ++i) h_of[static_cast<size_t>(k.h_to_g[i])] = static_cast<int>(i);
    std::vector<Edge> es;
    for (auto [u, v] : g_edges) es.push_back(make_edge(h_of[static_cast<size_t>(u)], h_of[static_cast<size_t>(v)]));
    std::sort(es.begin(), es.end());
    return max_parts_of_cut(k.h, es);
}

std::vector<Multicut> lifted(const Graph& g, const VcKernel& k, const Multicut& kc, int ell) {
    return tu::collect([&](const MulticutSink& s) { lift_vc(g, k, kc, ell, s); });
}

std::vector<Multicut> via_kernel(const Graph& g, const Modulator& mod, int ell, KernelEngine e) {
    return tu::collect([&](const MulticutSink& s) { enumerate_via_kernel(g, mod, ell, e, s); });
}

}  // namespace

TEST(CompressVc, Examples) {
    VcKernel a = compress_vc(path_graph(2), {0});
    EXPECT_EQ(a.h, path_graph(2));
    VcKernel b = compress_vc(complete_bipartite(2, 5), {0, 1});
    EXPECT_EQ(b.marked, (std::vector<int>{2, 3, 4}));
    EXPECT_EQ(b.h.n(), 5);
    VcKernel c = compress_vc(star_graph(5), {0});
    EXPECT_EQ(c.h, path_graph(2));
    ASSERT_EQ(c.groups.size(), 1u);
    EXPECT_EQ(c.groups[0].edges.size(), 5u);
    EXPECT_THROW(compress_vc(path_graph(3), {0}), std::invalid_argument);
}

TEST(CompressVc, SizeBoundOnRandomInstances) {
    std::mt19937 rng(101);
    for (int it = 0; it < 300; ++it) {
        Graph g = tu::random_graph(6 + it % 30, 0.1 + 0.05 * (it % 6), rng);
        Modulator x = approx_vertex_cover(g);
        VcKernel k = compress_vc(g, x.vertices);
        size_t c = k.cover.size();
        EXPECT_LE(static_cast<size_t>(k.h.n()), 2 * c + 3 * c * (c - (c > 0)) / 2);
        for (auto& grp : k.groups) EXPECT_TRUE(std::binary_search(k.marked.begin(), k.marked.end(),
                                                                  grp.rep.first == grp.x ? grp.rep.second : grp.rep.first));
    }
}

TEST(LiftVc, ClassSizes) {
    Graph s4 = star_graph(4);
    VcKernel k = compress_vc(s4, {0});
    EXPECT_EQ(lifted(s4, k, kernel_cut(k, {}), 1).size(), 1u);
    auto four = lifted(s4, k, kernel_cut(k, {{0, 1}}), 1);
    EXPECT_EQ(four.size(), 4u);
    for (auto& mc : four) EXPECT_FALSE(validate_canonical(s4, mc));

    Graph g = Graph::from_edges(7, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {1, 6}});
    VcKernel k2 = compress_vc(g, {0, 1});
    auto six = lifted(g, k2, kernel_cut(k2, {{0, 2}, {1, 4}}), 1);
    EXPECT_EQ(six.size(), 6u);
    EXPECT_FALSE(tu::has_duplicates(six));
}

TEST(CompressCoCluster, CaseDispatch) {
    Graph tri_u = Graph::from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {3, 0}, {3, 1}});
    CoClusterKernel a = compress_cocluster(tri_u, {3});
    EXPECT_EQ(a.kind, CoClusterCase::ManyClasses);
    ASSERT_FALSE(a.rules.empty());
    EXPECT_EQ(a.rules[0], "R10 u=4");
    EXPECT_TRUE(a.s_after.empty());

    EXPECT_EQ(compress_cocluster(complete_bipartite(2, 3), {}).kind, CoClusterCase::TwoLargeClasses);
    CoClusterKernel c = compress_cocluster(Graph(4), {});
    EXPECT_EQ(c.kind, CoClusterCase::VertexCover);
    ASSERT_TRUE(c.vc.has_value());
    EXPECT_THROW(compress_cocluster(path_graph(4), {}), std::invalid_argument);
}

TEST(CompressCoCluster, TriangleExceedsTwoK) {
    // K3 with S empty: three classes, no rule applies, H keeps 3 vertices while 2k = 0
    CoClusterKernel k = compress_cocluster(complete_graph(3), {});
    EXPECT_EQ(k.kind, CoClusterCase::ManyClasses);
    EXPECT_EQ(k.h.n(), 3);
    EXPECT_EQ(k.stated_bound(), 0);
    EXPECT_FALSE(k.within_stated_bound());
}

TEST(EnumerateViaKernel, Examples) {
    Graph p3 = path_graph(3);
    EXPECT_EQ(via_kernel(p3, {ModulatorKind::VertexCover, {1}}, 2, KernelEngine::Oracle).size(), 2u);
    EXPECT_TRUE(via_kernel(complete_graph(4), approx_vertex_cover(complete_graph(4)), 2, KernelEngine::Branching).empty());
    Graph g = Graph::from_edges(6, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {5, 0}});
    Modulator s{ModulatorKind::CoCluster, {5}};
    for (int ell = 1; ell <= 3; ++ell)
        for (auto e : {KernelEngine::Oracle, KernelEngine::Branching})
            EXPECT_EQ(via_kernel(g, s, ell, e), tu::oracle_set(g, ell));
    EXPECT_THROW(via_kernel(p3, approx_cluster_modulator(p3), 1, KernelEngine::Oracle), std::invalid_argument);
}

TEST(EnumerateViaKernel, MatchesOracleOnRandomGraphs) {
    std::mt19937 rng(103);
    for (int it = 0; it < 300; ++it) {
        int n = 2 + it % 8;
        Graph g = tu::random_graph(n, 0.2 + 0.15 * (it % 4), rng);
        for (const Modulator& mod : {approx_vertex_cover(g), approx_cocluster_modulator(g)})
            for (int ell = 1; ell <= 3; ++ell) {
                auto got = via_kernel(g, mod, ell, it % 2 ? KernelEngine::Oracle : KernelEngine::Branching);
                EXPECT_FALSE(tu::has_duplicates(got));
                ASSERT_EQ(got, tu::oracle_set(g, ell)) << "n=" << n << " ell=" << ell;
            }
    }
}

TEST(EnumerateViaKernel, LiftedClassesPartitionTheSolutions) {
    std::mt19937 rng(107);
    for (int it = 0; it < 100; ++it) {
        Graph g = tu::random_graph(8, 0.3, rng);
        VcKernel k = compress_vc(g, approx_vertex_cover(g).vertices);
        std::vector<Multicut> all;
        for (auto& kc : all_multicuts(k.h, 1, k.h.n())) {
            auto cls = lifted(g, k, kc, 1);
            all.insert(all.end(), cls.begin(), cls.end());
        }
        std::sort(all.begin(), all.end());
        EXPECT_FALSE(tu::has_duplicates(all));
        EXPECT_EQ(all, tu::oracle_set(g, 1));
    }
}

TEST(CompressCoCluster, KernelCutSetsMatchOriginal) {
    std::mt19937 rng(109);
    int checked = 0;
    for (int it = 0; it < 400 && checked < 60; ++it) {
        // complete multipartite core plus a small modulator
        int parts = 2 + it % 3;
        std::vector<int> cls;
        for (int i = 0; i < 6; ++i) cls.push_back(std::uniform_int_distribution<int>(0, parts - 1)(rng));
        std::vector<Edge> es;
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                if (cls[static_cast<size_t>(a)] != cls[static_cast<size_t>(b)]) es.push_back({a, b});
        for (int u = 6; u < 8; ++u)
            for (int v = 0; v < u; ++v)
                if (std::bernoulli_distribution(0.4)(rng)) es.push_back({v, u});
        Graph g = Graph::from_edges(8, es);
        if (!is_cocluster_after(g, {6, 7})) continue;
        CoClusterKernel k = compress_cocluster(g, {6, 7});
        if (k.kind == CoClusterCase::VertexCover || k.rules.empty()) continue;
        std::set<std::vector<Edge>> from_h, from_g;
        for (auto& mc : all_multicuts(k.h, 1, k.h.n())) {
            std::vector<Edge> es2;
            for (auto [a, b] : mc.cut_edges)
                es2.push_back(make_edge(k.h_to_g[static_cast<size_t>(a)], k.h_to_g[static_cast<size_t>(b)]));
            std::sort(es2.begin(), es2.end());
            from_h.insert(es2);
        }
        for (auto& mc : all_multicuts(g, 1)) from_g.insert(mc.cut_edges);
        EXPECT_EQ(from_h, from_g);
        ++checked;
    }
    EXPECT_GT(checked, 10);
}

TEST(CompressCoCluster, TwoLargeClassesExceedTwoKPlusTwo) {
    // K_{2,b} with S empty: no rule fires, H is the whole graph
    for (int b = 3; b <= 6; ++b) {
        CoClusterKernel k = compress_cocluster(complete_bipartite(2, b), {});
        EXPECT_EQ(k.kind, CoClusterCase::TwoLargeClasses);
        EXPECT_EQ(k.h.n(), 2 + b);
        EXPECT_EQ(k.stated_bound(), 2);
        EXPECT_FALSE(k.within_stated_bound());
    }
}
