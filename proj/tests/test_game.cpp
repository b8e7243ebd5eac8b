#include <gtest/gtest.h>

#include <thread>

#include "pcog/game.hpp"
#include "pcog/reductions.hpp"
#include "support/random_instances.hpp"

using namespace pcog;
namespace fx = pcog::fixtures;
using fx::Rng;

namespace {

GameInstance example(const char* id) { return paper_example(id).instance; }

bool has(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST(Coalition, BitmaskBasics) {
    auto s = Coalition::all(3);
    EXPECT_EQ(s.mask, 7u);
    EXPECT_EQ(s.size(), 3u);
    EXPECT_TRUE(Coalition{}.empty());
    EXPECT_TRUE(Coalition::singleton(2).contains(2));
    EXPECT_FALSE(Coalition::singleton(2).contains(1));
    Ownership own{{"x", "y", "z"}, {}};
    EXPECT_EQ(make_coalition(own, {"z", "x"}).mask, 5u);
    EXPECT_EQ(Coalition{5}.members(own), (std::vector<AgentId>{"x", "z"}));
    EXPECT_THROW(make_coalition(own, {"w"}), InputError);
}

TEST(Game, ExampleValues) {
    // vertex cover example: agent 2 owns v2-v3 and v3-v4, covered by v3
    Game g1(example("1g1"));
    EXPECT_EQ(g1.grand_value(), 2);
    EXPECT_EQ(g1.value(Coalition::singleton(1)), 1);
    EXPECT_EQ(g1.value(Coalition{}), 0);

    Game g3(example("3"));
    EXPECT_EQ(g3.value(make_coalition(g3.instance().ownership, {"1"})), 3);
    EXPECT_EQ(g3.value(make_coalition(g3.instance().ownership, {"2"})), 2);
    EXPECT_EQ(g3.grand_value(), 4);
    EXPECT_EQ(g3.value(Coalition{}), 0);  // the supply vertex alone

    Game g4(example("4g2"));
    EXPECT_EQ(g4.grand_value(), 1);
    EXPECT_EQ(g4.value(Coalition{3}), 1);
    EXPECT_EQ(g4.value(Coalition::singleton(0)), 0);
}

TEST(Game, CoalitionOutsideAgentsIsRejected) {
    Game g(example("1g2"));
    EXPECT_THROW(g.value(Coalition{8}), InputError);
}

TEST(Game, MemoizesValues) {
    Game g(example("2g2"));
    EXPECT_EQ(g.memo_size(), 0u);
    const auto v = g.value(Coalition{5});
    EXPECT_EQ(g.memo_size(), 1u);
    EXPECT_EQ(g.value(Coalition{5}), v);
    EXPECT_EQ(g.memo_size(), 1u);
}

TEST(Game, ConcurrentValueQueriesAgree) {
    Rng rng(3);
    const auto inst = fx::random_instance(rng, Goal::MinDominatingSet, 6, 12);
    Game shared(inst);
    const auto full = Coalition::all(shared.num_agents()).mask;
    std::vector<Rational> serial;
    {
        Game fresh(inst);
        for (std::uint32_t m = 0; m <= full; ++m) serial.push_back(fresh.value(Coalition{m}));
    }
    std::vector<std::vector<Rational>> seen(4);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            for (std::uint32_t m = 0; m <= full; ++m) {
                const std::uint32_t q = (m * 7u + static_cast<std::uint32_t>(t)) % (full + 1);
                seen[t].push_back(shared.value(Coalition{q}));
            }
        });
    for (auto& th : pool) th.join();
    for (int t = 0; t < 4; ++t)
        for (std::uint32_t m = 0; m <= full; ++m)
            EXPECT_EQ(seen[t][m], serial[(m * 7u + static_cast<std::uint32_t>(t)) % (full + 1)]);
    EXPECT_EQ(shared.memo_size(), full + 1);
}

TEST(Game, CoalitionGraphs) {
    Game vc(example("1g1"));
    const auto g = vc.coalition_graph(Coalition{2});  // agent 2
    EXPECT_EQ(g.vertices(), (std::vector<VertexId>{"v2", "v3", "v4"}));
    EXPECT_EQ(g.num_edges(), 2u);

    Game st(example("3"));
    const auto h = st.coalition_graph(Coalition{2});  // agent 2 owns w1
    EXPECT_EQ(h.vertices(), (std::vector<VertexId>{"s", "w1"}));
}

TEST(Validate, ReportsEachProblem) {
    auto inst = example("1g1");
    EXPECT_TRUE(validate(inst).empty());

    auto dup = inst;
    dup.ownership.agents.push_back("1");
    EXPECT_TRUE(has(validate(dup), "duplicate agent"));

    auto unknown = inst;
    unknown.ownership.assignment["v1-v4"] = "1";
    EXPECT_TRUE(has(validate(unknown), "unknown edge"));

    auto stranger = inst;
    stranger.ownership.assignment["v1-v2"] = "9";
    EXPECT_TRUE(has(validate(stranger), "unknown agent"));

    auto unowned = inst;
    unowned.ownership.assignment.erase("v1-v2");
    EXPECT_TRUE(has(validate(unowned), "edge unowned"));

    auto none = inst;
    none.ownership.agents.clear();
    EXPECT_TRUE(has(validate(none), "no agents"));

    auto supply = inst;
    supply.supply = "v1";
    EXPECT_TRUE(has(validate(supply), "supply given for a goal without one"));

    EXPECT_THROW(Game{dup}, InputError);
}

TEST(Validate, SpanningTreeRules) {
    auto inst = example("3");
    EXPECT_TRUE(validate(inst).empty());

    auto missing = inst;
    missing.supply.reset();
    EXPECT_TRUE(has(validate(missing), "supply missing"));

    auto owned = inst;
    owned.ownership.assignment["s"] = "1";
    EXPECT_TRUE(has(validate(owned), "supply owned"));

    auto elsewhere = inst;
    elsewhere.supply = "zz";
    EXPECT_TRUE(has(validate(elsewhere), "supply not a vertex"));

    auto sparse = inst;
    auto es = inst.graph.edges();
    es.pop_back();
    sparse.graph = Graph(inst.graph.vertices(), es);
    EXPECT_TRUE(has(validate(sparse), "graph not complete"));

    auto unweighted = inst;
    es = inst.graph.edges();
    es[0].weight.reset();
    unweighted.graph = Graph(inst.graph.vertices(), es);
    EXPECT_TRUE(has(validate(unweighted), "edge weight missing"));
}

TEST(Game, TooManyAgents) {
    GameInstance inst;
    inst.goal = Goal::MinDominatingSet;
    auto vs = fx::vertex_names(25);
    inst.graph = Graph(vs, {});
    for (const auto& v : vs) {
        inst.ownership.agents.push_back("a" + v);
        inst.ownership.assignment.emplace(v, "a" + v);
    }
    EXPECT_THROW(Game{inst}, SizeError);
}

TEST(Game, CmaxCountsLargestShare) {
    EXPECT_EQ(c_max(example("1g1")), 2u);
    EXPECT_EQ(c_max(example("4g2")), 1u);
}

TEST(Game, EmptyAgentHasZeroMarginalContribution) {
    auto inst = example("2g1");
    inst.ownership.agents.push_back("idle");
    Game g(inst);
    const auto idle = Coalition::singleton(3);
    EXPECT_EQ(g.value(idle), 0);
    for (std::uint32_t m = 0; m < 8; ++m) EXPECT_EQ(g.value(Coalition{m | idle.mask}), g.value(Coalition{m}));
}

TEST(Decompose, SplitsDisjointBlocks) {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        for (Goal goal : {Goal::MinVertexCover, Goal::MinDominatingSet, Goal::MaxMatching}) {
            const auto inst = fx::random_disconnected_instance(rng, goal);
            const auto parts = decompose(inst);
            ASSERT_GE(parts.size(), 1u);
            std::size_t agents = 0, vertices = 0, edges = 0;
            Rational sum = 0;
            for (const auto& p : parts) {
                EXPECT_TRUE(validate(p).empty());
                agents += p.num_agents();
                vertices += p.graph.num_vertices();
                edges += p.graph.num_edges();
                sum += grand_value(p);
            }
            EXPECT_EQ(agents, inst.num_agents());
            EXPECT_EQ(vertices, inst.graph.num_vertices());
            EXPECT_EQ(edges, inst.graph.num_edges());
            EXPECT_EQ(sum, grand_value(inst));
        }
    }
}

TEST(Decompose, SharedAgentKeepsComponentsTogether) {
    GameInstance inst;
    inst.goal = Goal::MinDominatingSet;
    inst.graph = Graph({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
    inst.ownership.agents = {"x", "y"};
    inst.ownership.assignment = {{"a", "x"}, {"b", "y"}, {"c", "x"}, {"d", "x"}};
    EXPECT_EQ(decompose(inst).size(), 1u);
    inst.ownership.assignment = {{"a", "x"}, {"b", "x"}, {"c", "y"}, {"d", "y"}};
    const auto parts = decompose(inst);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].ownership.agents, (std::vector<AgentId>{"x"}));
    EXPECT_EQ(parts[1].ownership.agents, (std::vector<AgentId>{"y"}));
}

TEST(Decompose, UnownedIsolatedVerticesJoinFirstGroup) {
    GameInstance inst;
    inst.goal = Goal::MinVertexCover;
    inst.graph = Graph({"a", "b", "c", "d", "e"}, {{"b", "c"}, {"d", "e"}});
    inst.ownership.agents = {"x", "y"};
    inst.ownership.assignment = {{"b-c", "x"}, {"d-e", "y"}};
    const auto parts = decompose(inst);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].graph.vertices(), (std::vector<VertexId>{"a", "b", "c"}));
    EXPECT_TRUE(validate(parts[0]).empty());
}

TEST(Decompose, SpanningTreeIsUnsupported) {
    EXPECT_THROW(decompose(example("3")), UnsupportedError);
}
