#include <gtest/gtest.h>

#include "pcog/core.hpp"
#include "pcog/reductions.hpp"
#include "support/core_lp.hpp"
#include "support/lp_oracle.hpp"
#include "support/random_instances.hpp"

using namespace pcog;
namespace fx = pcog::fixtures;
using fx::alloc;
using fx::Rng;

namespace {

GameInstance example(const char* id) { return paper_example(id).instance; }

const Goal kGoals[] = {Goal::MinVertexCover, Goal::MinDominatingSet, Goal::MinSpanningTree, Goal::MaxMatching};

}  // namespace

TEST(Allocation, RejectsMalformed) {
    EXPECT_THROW(Allocation({"1", "2"}, {Rational(1)}), InputError);
    EXPECT_THROW(Allocation({"1", "1"}, {Rational(1), Rational(1)}), InputError);
    EXPECT_THROW(Allocation({"1"}, {Rational(-1)}), InputError);
    EXPECT_THROW(alloc({1}).at("2"), InputError);
    EXPECT_EQ(alloc({1, Rational(1, 2)}).total(), Rational(3, 2));
}

TEST(Verify, AllocationMustCoverExactlyTheAgents) {
    Game g(example("1g1"));
    EXPECT_THROW(verify_core(g, alloc({1, 1})), InputError);
    EXPECT_THROW(verify_core(g, Allocation({"1", "2", "9"}, {1, 1, 0})), InputError);
    // order of entries does not matter
    EXPECT_EQ(verify_core(g, Allocation({"3", "1", "2"}, {0, 1, 1})).verdict, CoreVerdict::CoreStable);
}

TEST(Verify, VertexCoverExample) {
    Game g1(example("1g1"));
    EXPECT_EQ(verify_core(g1, alloc({1, 1, 0})).verdict, CoreVerdict::CoreStable);
    const auto rep = verify_core(g1, alloc({2, 0, 0}));
    ASSERT_EQ(rep.verdict, CoreVerdict::Blocked);
    EXPECT_GT(rep.blocking->allocated, rep.blocking->value);
    EXPECT_EQ(verify_core(g1, alloc({1, 1, 1})).verdict, CoreVerdict::NotPreImputation);
}

TEST(Verify, UniqueCoreAllocations) {
    // every coordinate pinned: min == max over the core polytope
    for (const auto& [id, expect] : std::vector<std::pair<const char*, std::vector<Rational>>>{
             {"1g1", {1, 1, 0}}, {"2g1", {1, 0, 1}}}) {
        Game g(example(id));
        const auto ranges = fx::core_ranges(g);
        ASSERT_TRUE(ranges) << id;
        for (std::size_t k = 0; k < expect.size(); ++k) {
            EXPECT_EQ((*ranges)[k].first, expect[k]) << id;
            EXPECT_EQ((*ranges)[k].second, expect[k]) << id;
        }
        // vertex enumeration finds exactly one point
        const auto vertices = fx::enumerate_vertices(fx::explicit_core_lp(g));
        ASSERT_EQ(vertices.size(), 1u) << id;
        EXPECT_EQ(vertices[0], expect) << id;
    }
}

TEST(Verify, SpanningTreeExample) {
    Game g(example("3"));
    for (const auto& a : {alloc({2, 2}), alloc({Rational(5, 2), Rational(3, 2)}), alloc({3, 1})})
        EXPECT_EQ(verify_core(g, a).verdict, CoreVerdict::CoreStable);
    const auto rep = verify_core(g, alloc({Rational(7, 2), Rational(1, 2)}));
    ASSERT_EQ(rep.verdict, CoreVerdict::Blocked);
    EXPECT_EQ(rep.blocking->coalition.members(g.instance().ownership), (std::vector<AgentId>{"1"}));
    EXPECT_EQ(rep.blocking->value, 3);
    EXPECT_TRUE(is_spanning_tree(g.coalition_graph(rep.blocking->coalition), rep.blocking->witness.witness_edges));
}

TEST(Verify, MatchingExample) {
    Game g(example("4g1"));
    EXPECT_EQ(verify_core(g, alloc({Rational(1, 2), Rational(1, 2), 1})).verdict, CoreVerdict::CoreStable);
    const auto rep = verify_core(g, alloc({0, 0, 2}));
    ASSERT_EQ(rep.verdict, CoreVerdict::Blocked);
    EXPECT_LT(rep.blocking->allocated, rep.blocking->value);
}

TEST(Verify, BlockingIsStrict) {
    // 4g1 has agents 1 and 2 on the edge v1-w1; allocating exactly 1 to them
    // is tight, not blocked
    Game g(example("4g1"));
    EXPECT_EQ(verify_core(g, alloc({1, 0, 1})).verdict, CoreVerdict::CoreStable);
}

TEST(Verify, MatchesBruteForceOnRandomAllocations) {
    Rng rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        const Goal goal = kGoals[trial % 4];
        const auto inst = fx::random_instance(rng, goal, 4, 7);
        Game g(inst);
        const auto n = g.num_agents();
        // random split of the grand value into parts of 1/2 granularity
        const Rational grand = g.grand_value();
        std::vector<Rational> alpha(n, Rational(0));
        Rational left = grand;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const Rational take = Rational(fx::uniform(rng, 0, 4), 2);
            alpha[k] = take < left ? take : left;
            left -= alpha[k];
        }
        alpha[n - 1] = left;
        const Allocation a(g.agents(), alpha);
        EXPECT_EQ(verify_core(g, a).verdict == CoreVerdict::CoreStable, fx::brute_core_stable(inst, a));
    }
}

TEST(Existence, Examples) {
    for (const char* id : {"1g1", "2g1", "3", "4g1"}) {
        Game g(example(id));
        const auto full = core_existence_full_lp(g);
        const auto cut = core_existence_cutting_plane(g);
        EXPECT_EQ(full.verdict, ExistenceVerdict::CoreNonempty) << id;
        EXPECT_EQ(cut.verdict, ExistenceVerdict::CoreNonempty) << id;
        EXPECT_EQ(verify_core(g, *full.allocation).verdict, CoreVerdict::CoreStable) << id;
        EXPECT_EQ(verify_core(g, *cut.allocation).verdict, CoreVerdict::CoreStable) << id;
        EXPECT_EQ(full.oracle_calls, 0u);
        EXPECT_GE(cut.oracle_calls, 1u);
    }
    for (const char* id : {"1g2", "2g2", "4g2"}) {
        Game g(example(id));
        for (const auto& rep : {core_existence_full_lp(g), core_existence_cutting_plane(g)}) {
            ASSERT_EQ(rep.verdict, ExistenceVerdict::CoreEmpty) << id;
            EXPECT_TRUE(check_emptiness_certificate(g, *rep.certificate)) << id;
        }
    }
}

TEST(Existence, SingleAgentIsAlwaysNonempty) {
    GameInstance inst;
    inst.goal = Goal::MinDominatingSet;
    inst.graph = Graph({"a", "b"}, {});
    inst.ownership = {{"1"}, {{"a", "1"}, {"b", "1"}}};
    const auto rep = core_existence_cutting_plane(inst);
    EXPECT_EQ(rep.verdict, ExistenceVerdict::CoreNonempty);
    EXPECT_EQ(rep.oracle_calls, 1u);
    EXPECT_EQ(rep.allocation->values, (std::vector<Rational>{2}));
}

TEST(Existence, MethodsAgreeWithVertexEnumeration) {
    Rng rng(32);
    for (int trial = 0; trial < 160; ++trial) {
        const Goal goal = kGoals[trial % 4];
        const auto inst = fx::random_instance(rng, goal, 4, 8);
        Game g(inst);
        const auto full = core_existence_full_lp(g);
        const auto cut = core_existence_cutting_plane(g);
        const bool oracle = fx::oracle_feasible(fx::explicit_core_lp(g));
        EXPECT_EQ(full.verdict == ExistenceVerdict::CoreNonempty, oracle) << goal_name(goal);
        EXPECT_EQ(cut.verdict, full.verdict);
        for (const auto* rep : {&full, &cut}) {
            if (rep->verdict == ExistenceVerdict::CoreNonempty) {
                EXPECT_TRUE(fx::brute_core_stable(inst, *rep->allocation));
            } else {
                EXPECT_TRUE(check_emptiness_certificate(g, *rep->certificate));
            }
        }
        EXPECT_LE(cut.lp_rows, full.lp_rows);
    }
}

TEST(Certificate, TamperingIsDetected) {
    Game g(example("1g2"));
    const auto cert = *core_existence_full_lp(g).certificate;
    ASSERT_TRUE(check_emptiness_certificate(g, cert));

    auto wrong_value = cert;
    wrong_value.coalitions[0].value += 1;
    EXPECT_FALSE(check_emptiness_certificate(g, wrong_value));

    auto wrong_grand = cert;
    wrong_grand.grand_value += 1;
    EXPECT_FALSE(check_emptiness_certificate(g, wrong_grand));

    auto negative = cert;
    negative.coalitions[0].multiplier = -negative.coalitions[0].multiplier;
    EXPECT_FALSE(check_emptiness_certificate(g, negative));

    auto dropped = cert;
    dropped.coalitions.pop_back();
    EXPECT_FALSE(check_emptiness_certificate(g, dropped));

    auto short_nn = cert;
    short_nn.nonnegativity.pop_back();
    EXPECT_FALSE(check_emptiness_certificate(g, short_nn));

    auto outsider = cert;
    outsider.coalitions[0].coalition.mask |= 8;
    EXPECT_FALSE(check_emptiness_certificate(g, outsider));

    // a certificate for one game does not transfer to a game with a core
    EXPECT_FALSE(check_emptiness_certificate(example("1g1"), cert));
}

TEST(IrAllocation, IsPreImputationAndIndividuallyRational) {
    Rng rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        const Goal goal = kGoals[trial % 4];
        Game g(fx::random_instance(rng, goal, 6, 9));
        const auto a = ir_allocation(g);
        EXPECT_TRUE(is_pre_imputation(g, a));
        for (std::size_t i = 0; i < g.num_agents(); ++i) {
            const auto single = g.value(Coalition::singleton(i));
            if (is_minimization(goal))
                EXPECT_LE(a.values[i], single);
            else
                EXPECT_GE(a.values[i], single);
        }
    }
}

TEST(IrAllocation, ExampleValues) {
    EXPECT_EQ(ir_allocation(example("4g1")).values,
              (std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(4, 3)}));
    // c({1}) = 3, c({2}) = 2, c(N) = 4
    EXPECT_EQ(ir_allocation(example("3")).values, (std::vector<Rational>{Rational(12, 5), Rational(8, 5)}));
}

TEST(Lift, SumsThroughTheMap) {
    const Allocation src({"a", "b", "c"}, {1, 2, 3});
    const auto out = lift_allocation(src, {{"a", "x"}, {"b", "y"}, {"c", "x"}}, {"x", "y"}, Rational(1, 2));
    EXPECT_EQ(out.values, (std::vector<Rational>{2, 1}));
    EXPECT_THROW(lift_allocation(src, {{"a", "x"}, {"b", "y"}}, {"x", "y"}, 1), InputError);
    EXPECT_THROW(lift_allocation(src, {{"a", "x"}, {"b", "x"}, {"c", "x"}}, {"x", "y"}, 1), InputError);
    EXPECT_THROW(lift_allocation(src, {{"a", "x"}, {"b", "y"}, {"c", "z"}}, {"x", "y"}, 1), InputError);
    EXPECT_THROW(lift_allocation(src, {{"a", "x"}, {"b", "y"}, {"c", "x"}}, {"x", "y"}, -1), InputError);
}

TEST(Bird, ExampleAndRandomStability) {
    const auto inst = example("3");
    EXPECT_EQ(bird_allocation(inst).values, (std::vector<Rational>{3, 1}));
    const auto pay = bird_vertex_payments(inst);
    Rational total = pay.total();
    EXPECT_EQ(total, 4);
    EXPECT_THROW(bird_vertex_payments(example("1g1")), InputError);

    Rng rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        auto st = fx::random_st_instance(rng, fx::uniform(rng, 1, 6), 4);
        if (trial % 5 == 0) st.ownership.agents.push_back("idle");
        Game g(st);
        const auto a = bird_allocation(g);
        EXPECT_EQ(a.agents, g.agents());
        EXPECT_EQ(verify_core(g, a).verdict, CoreVerdict::CoreStable);
        EXPECT_TRUE(fx::brute_core_stable(st, a));
    }
}
