#include <gtest/gtest.h>

#include <random>

#include "mmc/graph.hpp"
#include "mmc/io.hpp"
#include "mmc/multicut.hpp"
#include "test_util.hpp"

using namespace mmc;

TEST(Parse, TriangleFromPace) {
    Graph g = parse_graph("p tw 3 3\n1 2\n2 3\n1 3\n", GraphFormat::PaceGr);
    EXPECT_EQ(g.n(), 3);
    EXPECT_EQ(g.m(), 3);
    EXPECT_EQ(g, complete_graph(3));
}

TEST(Parse, EdgelessHeader) {
    Graph g = parse_graph("p tw 2 0\n", GraphFormat::PaceGr);
    EXPECT_EQ(g.n(), 2);
    EXPECT_EQ(g.m(), 0);
}

TEST(Parse, SelfLoopRejected) {
    EXPECT_THROW(parse_graph("p tw 2 1\n2 2\n", GraphFormat::PaceGr), ParseError);
}

TEST(Parse, HeaderCountMismatch) {
    EXPECT_THROW(parse_graph("p tw 3 2\n1 2\n", GraphFormat::PaceGr), ParseError);
}

TEST(Parse, DimacsAndComments) {
    Graph g = parse_graph("c hi\np edge 3 2\ne 1 2\ne 2 3\n", GraphFormat::Dimacs);
    EXPECT_EQ(g, path_graph(3));
    Graph h = parse_graph("# list\n1 2\n2 3\n2 3\n", GraphFormat::EdgeList);
    EXPECT_EQ(h, path_graph(3));
}

TEST(Parse, ErrorCarriesLine) {
    try {
        parse_graph("p tw 3 1\n1 9\n", GraphFormat::PaceGr);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
    }
}

TEST(Parse, RoundTripPace) {
    Graph g = cube_graph();
    EXPECT_EQ(parse_graph(write_pace(g), GraphFormat::PaceGr), g);
}

TEST(GraphInvariants, AdjacencySortedAndSymmetric) {
    std::mt19937 rng(7);
    for (int it = 0; it < 50; ++it) {
        Graph g = tu::random_graph(12, 0.3, rng);
        int deg = 0;
        for (int v = 0; v < g.n(); ++v) {
            const auto& nb = g.neighbors(v);
            EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
            EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
            for (int w : nb) EXPECT_TRUE(g.adjacent(w, v));
            deg += g.degree(v);
        }
        EXPECT_EQ(deg, 2 * g.m());
    }
}

TEST(Validate, TriangleSplitHasTwoCrossings) {
    auto r = validate_multicut(complete_graph(3), {0, 1, 1}, 2);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->kind, ViolationKind::VertexTwoCrossing);
    EXPECT_EQ(r->witness, std::vector<int>{0});
}

TEST(Validate, C4OppositePairs) {
    EXPECT_FALSE(validate_multicut(cycle_graph(4), {0, 0, 1, 1}, 2));
}

TEST(Validate, P4ThreeParts) {
    EXPECT_FALSE(validate_multicut(path_graph(4), {0, 1, 1, 2}, 3));
}

TEST(Validate, TooFewAndEmptyParts) {
    EXPECT_EQ(validate_multicut(path_graph(2), {0, 0}, 2)->kind, ViolationKind::TooFewParts);
    EXPECT_EQ(validate_multicut(path_graph(2), {0, 2}, 1)->kind, ViolationKind::EmptyPart);
}

TEST(Canonicalize, Examples) {
    EXPECT_EQ(canonicalize(complete_graph(3), {0, 0, 0}).p, 1);
    Graph star = star_graph(3);  // center 0
    Multicut s = canonicalize(star, {0, 0, 0, 1});
    EXPECT_EQ(s.p, 2);
    Graph two = Graph::from_edges(4, {{0, 1}, {2, 3}});
    Multicut t = canonicalize(two, {0, 0, 0, 0});
    EXPECT_EQ(t.p, 2);
    EXPECT_EQ(t.part_of, (std::vector<int>{0, 0, 1, 1}));
    EXPECT_TRUE(t.cut_edges.empty());
}

TEST(Canonicalize, IdempotentAndRefining) {
    std::mt19937 rng(11);
    for (int it = 0; it < 300; ++it) {
        Graph g = tu::random_graph(8, 0.35, rng);
        std::uniform_int_distribution<int> lab(0, 3);
        std::vector<int> pi(8);
        for (auto& x : pi) x = lab(rng);
        // compact labels
        std::vector<int> map(4, -1);
        int next = 0;
        for (auto& x : pi) {
            if (map[static_cast<size_t>(x)] < 0) map[static_cast<size_t>(x)] = next++;
            x = map[static_cast<size_t>(x)];
        }
        if (validate_multicut(g, pi, 1)) continue;
        Multicut c = canonicalize(g, pi);
        EXPECT_GE(c.p, next);
        EXPECT_FALSE(validate_multicut(g, c.part_of, 1));
        EXPECT_FALSE(validate_canonical(g, c));
        EXPECT_EQ(canonicalize(g, c.part_of), c);
    }
}

TEST(MaxPartsOfCut, Examples) {
    Multicut a = max_parts_of_cut(path_graph(4), {{1, 2}});
    EXPECT_EQ(a.p, 2);
    EXPECT_EQ(a.part_of, (std::vector<int>{0, 0, 1, 1}));
    Multicut b = max_parts_of_cut(cycle_graph(4), {{0, 1}});
    EXPECT_EQ(b.p, 1);
    EXPECT_TRUE(b.cut_edges.empty());
    EXPECT_EQ(max_parts_of_cut(cycle_graph(6), {{0, 1}, {2, 3}, {4, 5}}).p, 3);
    EXPECT_THROW(max_parts_of_cut(path_graph(3), {{0, 1}, {1, 2}}), std::invalid_argument);
}

TEST(MaxPartsOfCut, EveryMatchingGivesValidMulticut) {
    std::mt19937 rng(3);
    for (int it = 0; it < 40; ++it) {
        Graph g = tu::random_graph(10, 0.3, rng);
        auto es = g.edges();
        if (es.size() > 16) continue;
        for (unsigned mask = 0; mask < (1u << es.size()); ++mask) {
            std::vector<Edge> m;
            std::vector<int> used(10, 0);
            bool ok = true;
            for (size_t i = 0; i < es.size() && ok; ++i)
                if (mask >> i & 1) {
                    ok = !used[static_cast<size_t>(es[i].first)] && !used[static_cast<size_t>(es[i].second)];
                    used[static_cast<size_t>(es[i].first)] = used[static_cast<size_t>(es[i].second)] = 1;
                    m.push_back(es[i]);
                }
            if (!ok) continue;
            EXPECT_FALSE(validate_canonical(g, max_parts_of_cut(g, m)));
        }
    }
}

TEST(Modulators, VertexCoverExamples) {
    EXPECT_TRUE(approx_vertex_cover(Graph(4)).vertices.empty());
    EXPECT_EQ(approx_vertex_cover(path_graph(2)).vertices, (std::vector<int>{0, 1}));
    EXPECT_EQ(approx_vertex_cover(path_graph(3)).vertices, (std::vector<int>{0, 1}));
}

TEST(Modulators, ClusterExamples) {
    Graph tri2 = disjoint_union(complete_graph(3), complete_graph(3));
    EXPECT_TRUE(approx_cluster_modulator(tri2).vertices.empty());
    EXPECT_EQ(approx_cluster_modulator(path_graph(3)).vertices, (std::vector<int>{0, 1, 2}));
    Modulator m = approx_cluster_modulator(path_graph(5));
    EXPECT_EQ(m.vertices.size(), 3u);
    EXPECT_TRUE(is_cluster_after(path_graph(5), m.vertices));
}

TEST(Modulators, CoClusterExamples) {
    EXPECT_TRUE(approx_cocluster_modulator(complete_bipartite(2, 2)).vertices.empty());
    Graph co_p3 = Graph::from_edges(3, {{0, 1}});
    EXPECT_EQ(approx_cocluster_modulator(co_p3).vertices, (std::vector<int>{0, 1, 2}));
    Modulator m = approx_cocluster_modulator(cycle_graph(5));
    EXPECT_EQ(m.vertices.size(), 3u);
    EXPECT_TRUE(is_cocluster_after(cycle_graph(5), m.vertices));
}

TEST(Modulators, AlwaysValid) {
    std::mt19937 rng(5);
    for (int it = 0; it < 200; ++it) {
        int n = 5 + it % 40;
        Graph g = tu::random_graph(n, 0.2 + 0.1 * (it % 5), rng);
        EXPECT_TRUE(is_valid_modulator(g, approx_vertex_cover(g)));
        EXPECT_TRUE(is_valid_modulator(g, approx_cluster_modulator(g)));
        EXPECT_TRUE(is_valid_modulator(g, approx_cocluster_modulator(g)));
    }
}

TEST(Output, TextAndJson) {
    Multicut mc = max_parts_of_cut(path_graph(4), {{1, 2}});
    EXPECT_EQ(multicut_text(mc), "part 1: 1 2\npart 2: 3 4\n");
    EXPECT_EQ(multicut_json(mc), "{\"cut_edges\":[[2,3]],\"parts\":[[1,2],[3,4]]}");
}
