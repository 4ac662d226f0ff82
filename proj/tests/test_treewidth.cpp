#include <gtest/gtest.h>

#include <random>

#include "mmc/treewidth.hpp"
#include "test_util.hpp"

using namespace mmc;

namespace {

int tw_parts(const Graph& g) { return max_parts_tw(g, nicify(heuristic_decomposition(g))); }

DpTable table(std::vector<int> bag, std::vector<std::pair<DpKey, int>> entries) {
    DpTable t;
    t.bag = std::move(bag);
    for (auto [k, v] : entries) t.c[k] = v;
    return t;
}

}  // namespace

TEST(ParseTd, Triangle) {
    auto td = parse_td("s td 1 3 3\nb 1 1 2 3\n", complete_graph(3));
    EXPECT_EQ(td.width(), 2);
}

TEST(ParseTd, MissingEdgeCoverage) {
    try {
        parse_td("s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n", path_graph(3));
        FAIL();
    } catch (const TdError& e) {
        EXPECT_NE(std::string(e.what()).find("edge 2-3"), std::string::npos);
    }
}

TEST(ParseTd, PathDecompositionOfP4) {
    auto td = parse_td("s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n", path_graph(4));
    EXPECT_EQ(td.width(), 1);
    EXPECT_EQ(parse_td(write_td(td, 4), path_graph(4)).bags, td.bags);
}

TEST(ParseTd, DisconnectedOccurrenceRejected) {
    EXPECT_THROW(parse_td("s td 3 2 3\nb 1 1 2\nb 2 2 3\nb 3 1\n1 2\n2 3\n", path_graph(3)), TdError);
}

TEST(Heuristic, Widths) {
    std::mt19937 rng(3);
    std::vector<Edge> es;
    for (int v = 1; v < 20; ++v) es.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v});
    Graph tree = Graph::from_edges(20, es);
    EXPECT_EQ(heuristic_decomposition(tree).width(), 1);
    EXPECT_EQ(heuristic_decomposition(complete_graph(4)).width(), 3);
    EXPECT_EQ(heuristic_decomposition(cycle_graph(6)).width(), 2);
}

TEST(Heuristic, AlwaysValid) {
    std::mt19937 rng(5);
    for (int it = 0; it < 100; ++it) {
        Graph g = tu::random_graph(4 + it % 12, 0.3, rng);
        auto td = heuristic_decomposition(g);
        EXPECT_NO_THROW(validate_td(g, td));
        auto ntd = nicify(td);
        EXPECT_NO_THROW(validate_nice(g, ntd));
        EXPECT_EQ(ntd.width(), td.width());
    }
}

TEST(Nicify, SingleBag) {
    TreeDecomposition td{{{0, 1}}, {}, 0};
    auto ntd = nicify(td);
    ASSERT_EQ(ntd.nodes.size(), 5u);
    EXPECT_EQ(ntd.nodes[0].type, NiceType::Leaf);
    EXPECT_EQ(ntd.nodes[1].type, NiceType::Introduce);
    EXPECT_EQ(ntd.nodes[2].type, NiceType::Introduce);
    EXPECT_EQ(ntd.nodes[2].bag, (std::vector<int>{0, 1}));
    EXPECT_EQ(ntd.nodes[3].type, NiceType::Forget);
    EXPECT_EQ(ntd.nodes[4].type, NiceType::Forget);
    EXPECT_TRUE(ntd.nodes[4].bag.empty());
    EXPECT_EQ(ntd.root, 4);
}

TEST(Nicify, Idempotent) {
    std::mt19937 rng(7);
    for (int it = 0; it < 30; ++it) {
        Graph g = tu::random_graph(9, 0.3, rng);
        auto ntd = nicify(heuristic_decomposition(g));
        auto again = nicify(ntd.as_td());
        EXPECT_EQ(again, ntd);
    }
}

TEST(Nicify, TwoBagPathOfP3) {
    TreeDecomposition td{{{0, 1}, {1, 2}}, {{0, 1}}, 0};
    auto ntd = nicify(td);
    EXPECT_NO_THROW(validate_nice(path_graph(3), ntd));
    int introduces = 0, forgets = 0, joins = 0;
    for (auto& nd : ntd.nodes) {
        introduces += nd.type == NiceType::Introduce;
        forgets += nd.type == NiceType::Forget;
        joins += nd.type == NiceType::Join;
    }
    EXPECT_EQ(introduces, 3);
    EXPECT_EQ(forgets, 3);
    EXPECT_EQ(joins, 0);
}

TEST(Dp, LeafTable) { EXPECT_EQ(leaf_table().value(0), 0); }

TEST(Dp, IntroduceIsolatedVertex) {
    DpTable t = transfer_introduce(Graph(1), leaf_table(), 0);
    EXPECT_EQ(t.c.size(), 1u);
    EXPECT_EQ(t.value(make_key({0}, {0})), 1);
}

TEST(Dp, IntroduceBetweenTwoParts) {
    // path a-v-b with a=0, v=1, b=2
    Graph g = path_graph(3);
    DpTable t = transfer_introduce(g, transfer_introduce(g, leaf_table(), 0), 2);
    EXPECT_EQ(t.value(make_key({0, 1}, {0, 0})), 2);
    DpTable u = transfer_introduce(g, t, 1);
    for (int e = 0; e < 8; ++e)
        EXPECT_EQ(u.value(make_key({0, 1, 2}, {e & 1, e >> 1 & 1, e >> 2 & 1})), kNegInf);
    EXPECT_EQ(u.value(make_key({0, 0, 1}, {0, 1, 1})), 2);
    EXPECT_EQ(u.value(make_key({0, 1, 1}, {1, 1, 0})), 2);
    EXPECT_EQ(u.value(make_key({0, 0, 0}, {0, 0, 0})), 1);
}

TEST(Dp, JoinEmptyBags) {
    DpTable j = transfer_join(Graph(0), table({}, {{0, 3}}), table({}, {{0, 4}}));
    EXPECT_EQ(j.value(0), 7);
}

TEST(Dp, JoinSingletonNoCrossing) {
    Graph g(1);
    DpKey e0 = make_key({0}, {0}), e1 = make_key({0}, {1});
    DpTable j = transfer_join(g, table({0}, {{e0, 2}, {e1, 5}}), table({0}, {{e0, 3}, {e1, 1}}));
    EXPECT_EQ(j.value(e0), 2 + 3 - 1);
    EXPECT_EQ(j.value(e1), std::max(5 + 3, 2 + 1) - 1);
}

TEST(Dp, ForgetOnlyVertex) {
    DpKey e0 = make_key({0}, {0}), e1 = make_key({0}, {1});
    DpTable f = transfer_forget(table({0}, {{e0, 2}, {e1, 3}}), 0);
    EXPECT_TRUE(f.bag.empty());
    EXPECT_EQ(f.value(0), 3);
    EXPECT_TRUE(transfer_forget(table({0}, {}), 0).c.empty());
}

TEST(Dp, ForgetHandsOverRepresentative) {
    DpTable f = transfer_forget(table({0, 1}, {{make_key({0, 0}, {0, 0}), 1}, {make_key({0, 1}, {0, 1}), 2}}), 0);
    EXPECT_EQ(f.bag, (std::vector<int>{1}));
    EXPECT_EQ(f.value(make_key({0}, {0})), 1);
    EXPECT_EQ(f.value(make_key({0}, {1})), 2);
}

TEST(Dp, KeysStayCanonical) {
    std::mt19937 rng(9);
    for (int it = 0; it < 40; ++it) {
        Graph g = tu::random_graph(8, 0.35, rng);
        auto ntd = nicify(heuristic_decomposition(g));
        // seal() asserts P(v) <= v, idempotence and the table-size bound
        EXPECT_NO_THROW(max_parts_tw(g, ntd));
    }
}

TEST(TreewidthSolver, Examples) {
    TreeDecomposition path{{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, 0};
    EXPECT_EQ(max_parts_tw(path_graph(6), nicify(path)), 4);
    EXPECT_EQ(tw_parts(complete_graph(4)), 1);
    EXPECT_EQ(tw_parts(path_graph(3)), 2);
}

TEST(TreewidthSolver, AgreesWithOracle) {
    std::mt19937 rng(13);
    for (int it = 0; it < 400; ++it) {
        int n = 1 + it % 9;
        Graph g = tu::random_graph(n, 0.15 + 0.1 * (it % 6), rng);
        auto ntd = nicify(heuristic_decomposition(g));
        int want = max_parts(g);
        EXPECT_EQ(max_parts_tw(g, ntd), want);
        Multicut w = max_multicut_tw(g, ntd);
        EXPECT_EQ(w.p, want);
        EXPECT_FALSE(validate_canonical(g, w));
    }
}
