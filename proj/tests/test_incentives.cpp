#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pbplan;
using fx::q;

namespace {

std::vector<std::string> labels(const TaskGraph& g, const std::vector<NodeIndex>& vs) {
    std::vector<std::string> out;
    for (NodeIndex v : vs) {
        out.push_back(g.label(v));
    }
    return out;
}

BiasSet alice_bob_range() { return BiasSet::range(fx::kAlice, fx::kBob); }

} // namespace

TEST(MinmaxPath, AliceBob) {
    const TaskGraph g = fx::alice_bob();
    const MinmaxResult m = minmax_path(g, fx::kAlice);
    EXPECT_EQ(labels(g, m.path), (std::vector<std::string>{"s", "v_B", "v_BB", "t"}));
    EXPECT_EQ(m.alpha, q("19/2") - fx::kEps);
    EXPECT_EQ(m.alpha, oracle::minmax_alpha(g, fx::kAlice));
    EXPECT_EQ(m.edges.size(), 3u);
}

TEST(MinmaxPath, UncertaintyFamilyMainPath) {
    for (const char* a_text : {"1/4", "1/8"}) {
        const Rational a = q(a_text);
        const TaskGraph g = gen_pou_family(a);
        const MinmaxResult m = minmax_path(g, a);
        EXPECT_EQ(m.alpha, Rational(10) * a + Rational(5));
        EXPECT_EQ(m.path.size(), g.node_count() - 1); // every node but w
        EXPECT_EQ(std::find(m.path.begin(), m.path.end(), g.node_by_label("w")), m.path.end());
    }
}

TEST(MinmaxPath, SinglePath) {
    const TaskGraph p = fx::path_graph({4, 1, 2});
    const MinmaxResult m = minmax_path(p, q("1/2"));
    EXPECT_EQ(m.path.size(), 4u);
    EXPECT_EQ(m.alpha, Rational(4) + q("1/2") * Rational(3));
}

TEST(SuccessorTree, AliceBob) {
    const TaskGraph g = fx::alice_bob();
    const SuccessorTree t = cheapest_successor_tree(g);
    EXPECT_EQ(g.label(*t.successor[g.source()]), "v_B");
    EXPECT_EQ(g.label(*t.successor[g.node_by_label("v_A")]), "v_AA");
    EXPECT_EQ(g.label(*t.successor[g.node_by_label("v_B")]), "v_BB");
    EXPECT_FALSE(t.successor[g.target()].has_value());
    const DistanceTable d = cheapest_costs(g);
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (v != g.target()) {
            const auto& e = g.edge(*t.edge[v]);
            EXPECT_EQ(e.cost + d[e.head], d[v]);
            EXPECT_EQ(t.path_from(v).back(), g.target());
        }
    }
}

TEST(SuccessorTree, TieGoesToSmallerId) {
    GraphBuilder gb;
    gb.add_node("s");
    gb.add_node("a");
    gb.add_node("b");
    gb.add_node("t");
    gb.add_edge("s", "b", 1);
    gb.add_edge("s", "a", 1);
    gb.add_edge("a", "t", 1);
    gb.add_edge("b", "t", 1);
    const TaskGraph g = gb.build("s", "t");
    for (int run = 0; run < 3; ++run) {
        EXPECT_EQ(g.label(*cheapest_successor_tree(g).successor[g.source()]), "a");
    }
}

TEST(UncertainApprox, AliceBob) {
    const TaskGraph g = fx::alice_bob();
    const BiasSet b = alice_bob_range();
    const ApproxResult r = uncertain_approx(g, b);
    EXPECT_EQ(r.reward, q("512/13"));
    EXPECT_EQ(r.lower, q("256/13"));
    CostConfiguration expected;
    for (auto [u, v] : {std::pair{"s", "v_A"}, {"v_A", "v_AB"}, {"v_B", "v_AB"}}) {
        expected.set(g.edge_between(u, v), q("512/13") + Rational(1));
    }
    EXPECT_EQ(r.config, expected);
    EXPECT_TRUE(is_motivating_uncertain(apply_configuration(g, r.config), b, r.reward).motivating);
}

TEST(UncertainApprox, UncertaintyFamily) {
    const Rational a = q("1/4");
    const TaskGraph g = gen_pou_family(a);
    const BiasSet b = BiasSet::points({a, q("1/2")});
    const ApproxResult r = uncertain_approx(g, b);
    EXPECT_EQ(r.reward, Rational(2) * (Rational(10) * a + Rational(5)) / a);
    EXPECT_TRUE(is_motivating_uncertain(apply_configuration(g, r.config), b, r.reward).motivating);
}

TEST(UncertainApprox, SinglePath) {
    const TaskGraph p = fx::path_graph({4, 1, 2});
    const BiasSet b = BiasSet::range(q("1/2"), q("3/4"));
    const ApproxResult r = uncertain_approx(p, b);
    EXPECT_TRUE(r.config.empty());
    EXPECT_EQ(r.reward, Rational(2) * (Rational(4) + q("3/2")) / q("1/2"));
}

TEST(UncertainApprox, SurchargeOnExitEdge) {
    // Minmax path s-a-t; the cheapest route from s leaves it through s-b.
    GraphBuilder gb;
    gb.add_edge("s", "a", 3);
    gb.add_edge("a", "t", 3);
    gb.add_edge("s", "b", 0);
    gb.add_edge("b", "c", 5);
    gb.add_edge("c", "t", 0);
    gb.add_edge("b", "t", 20);
    const TaskGraph g = gb.build("s", "t");
    const BiasSet b = BiasSet::single(q("1/10"));
    const ApproxResult r = uncertain_approx(g, b);
    EXPECT_EQ(labels(g, r.minmax.path), (std::vector<std::string>{"s", "a", "t"}));
    // Segment s-b-c-t: heaviest original edge is 5.
    EXPECT_EQ(r.config.get(g.edge_between("s", "b")), Rational(5));
    EXPECT_EQ(r.config.get(g.edge_between("b", "c")), Rational(0));
    EXPECT_EQ(r.config.get(g.edge_between("b", "t")), r.reward + Rational(1));
    EXPECT_TRUE(is_motivating_uncertain(apply_configuration(g, r.config), b, r.reward).motivating);
}

TEST(VariableApprox, AliceBob) {
    const TaskGraph g = fx::alice_bob();
    const BiasSet b = alice_bob_range();
    EXPECT_EQ(b.tau(), q("14/13"));
    const ApproxResult r = variable_approx(g, b);
    EXPECT_EQ(r.reward, q("6912/169"));
    EXPECT_TRUE(is_motivating_variable(apply_configuration(g, r.config), b, r.reward).motivating);
}

TEST(VariableApprox, SingletonMatchesUncertain) {
    const TaskGraph g = fx::alice_bob();
    const BiasSet b = BiasSet::single(fx::kBob);
    const ApproxResult u = uncertain_approx(g, b);
    const ApproxResult v = variable_approx(g, b);
    EXPECT_EQ(u.reward, v.reward);
    EXPECT_EQ(u.config, v.config);
}

TEST(VariableApprox, SinglePath) {
    const TaskGraph p = fx::path_graph({4, 1, 2});
    const BiasSet b = BiasSet::range(q("1/2"), q("3/4"));
    EXPECT_EQ(variable_approx(p, b).reward, (Rational(1) + q("3/2")) * (Rational(4) + q("3/2")) / q("1/2"));
}

TEST(DecideCns, ProcrastinationFamily) {
    const TaskGraph g = gen_pov_family(q("1/4"));
    const BiasSet b = BiasSet::points({q("1/4"), Rational(1)});
    const CnsTable ok = decide_cns(g, b, Rational(16));
    EXPECT_TRUE(ok.feasible);
    EXPECT_EQ(*ok.delta[g.node_by_label("w")], Rational(4));
    EXPECT_EQ(ok.witness().size(), g.node_count());
    const CnsTable bad = decide_cns(g, b, Rational(16) - q("1/1000"));
    EXPECT_FALSE(bad.feasible);
    EXPECT_FALSE(bad.delta[g.node_by_label("w")].has_value());
    // The main path alone (22 unit edges) needs 1 + 21/4 <= r/4.
    const TaskGraph path = fx::path_graph(std::vector<Rational>(22, Rational(1)));
    EXPECT_FALSE(decide_cns(path, b, Rational(25) - q("1/1000")).feasible);
    EXPECT_TRUE(decide_cns(path, b, Rational(25)).feasible);
}

TEST(DecideCns, SingleEdgeAndPrecondition) {
    const TaskGraph g = fx::single_edge(Rational(5));
    const BiasSet b = BiasSet::points({q("1/2"), Rational(1)});
    EXPECT_TRUE(decide_cns(g, b, Rational(10)).feasible);
    EXPECT_FALSE(decide_cns(g, b, Rational(10) - q("1/1000")).feasible);
    EXPECT_THROW(decide_cns(g, BiasSet::single(q("1/2")), Rational(10)), std::invalid_argument);
}

TEST(CnsConfiguration, Examples) {
    const TaskGraph pov = gen_pov_family(q("1/4"));
    const BiasSet b4 = BiasSet::points({q("1/4"), Rational(1)});
    const CnsTable t = decide_cns(pov, b4, Rational(16));
    const CostConfiguration cc = cns_configuration(pov, t, Rational(16));
    EXPECT_TRUE(cc.empty());
    EXPECT_TRUE(is_motivating_variable(apply_configuration(pov, cc), b4, Rational(16)).motivating);

    GraphBuilder gb;
    gb.add_edge("s", "a", 1);
    gb.add_edge("a", "t", 100);
    gb.add_edge("s", "t", 1);
    const TaskGraph g = gb.build("s", "t");
    const BiasSet b = BiasSet::points({q("1/2"), Rational(1)});
    const CnsTable tb = decide_cns(g, b, Rational(4));
    ASSERT_TRUE(tb.feasible);
    EXPECT_FALSE(tb.delta[g.node_by_label("a")].has_value());
    const CostConfiguration branch = cns_configuration(g, tb, Rational(4));
    EXPECT_EQ(branch.extras().size(), 1u);
    EXPECT_EQ(branch.get(g.edge_between("s", "a")), Rational(5));
    EXPECT_TRUE(is_motivating_variable(apply_configuration(g, branch), b, Rational(4)).motivating);

    const TaskGraph one = fx::single_edge(Rational(5));
    EXPECT_TRUE(cns_configuration(one, decide_cns(one, b, Rational(10)), Rational(10)).empty());
    EXPECT_THROW(cns_configuration(one, decide_cns(one, b, Rational(9)), Rational(9)), std::invalid_argument);
}

TEST(CnsThreshold, Examples) {
    const Rational tol(1, 1LL << 40);
    const TaskGraph g4 = gen_pov_family(q("1/4"));
    const Threshold t4 = cns_threshold(g4, BiasSet::points({q("1/4"), Rational(1)}), tol);
    EXPECT_TRUE(t4.exact);
    EXPECT_EQ(t4.hi, Rational(16));
    const TaskGraph g8 = gen_pov_family(q("1/8"));
    const Threshold t8 = cns_threshold(g8, BiasSet::points({q("1/8"), Rational(1)}), tol);
    EXPECT_TRUE(t8.exact);
    EXPECT_EQ(t8.hi, Rational(64));
    const Threshold t1 = cns_threshold(fx::single_edge(Rational(5)), BiasSet::points({q("1/2"), Rational(1)}), tol);
    EXPECT_TRUE(t1.exact);
    EXPECT_EQ(t1.hi, Rational(10));
    EXPECT_THROW(cns_threshold(g4, BiasSet::single(q("1/4")), tol), std::invalid_argument);
}

TEST(Sweep, UncertaintyFamilyBelowLowerBound) {
    const Rational a = q("1/4");
    const TaskGraph g = gen_pou_family(a);
    const std::vector<EdgeIndex> edges{g.edge_between("v_0", "v_1"), g.edge_between("v_1", "w")};
    const BiasSet b = BiasSet::points({a, q("1/2")});
    const Rational r = Rational(9) + Rational(11) / (Rational(2) * a) - q("1/1000");
    EXPECT_FALSE(sweep_configurations(g, edges, q("1/8"), Rational(2) / a, b, r, VerifierMode::Uncertain));
    // Slightly above the bound the grid already contains a working point.
    const auto found = sweep_configurations(g, edges, q("1/8"), Rational(2) / a, b, Rational(32), VerifierMode::Uncertain);
    ASSERT_TRUE(found.has_value());
    EXPECT_TRUE(is_motivating_uncertain(apply_configuration(g, *found), b, Rational(32)).motivating);
}

TEST(Sweep, UncertaintyFamilyPerBiasConfigurations) {
    const Rational a = q("1/4");
    const TaskGraph g = gen_pou_family(a);
    const std::vector<EdgeIndex> edges{g.edge_between("v_0", "v_1"), g.edge_between("v_1", "w")};
    const Rational r = Rational(10) + Rational(5) / a;
    // The (0, 1/(2a)) point serves bias 1/2 alone at 10 + 5/a ...
    const auto half = sweep_configurations(g, edges, q("1/8"), Rational(2) / a, BiasSet::single(q("1/2")), r,
                                           VerifierMode::Uncertain);
    ASSERT_TRUE(half.has_value());
    CostConfiguration fee_point;
    fee_point.set(edges[1], Rational(1) / (Rational(2) * a));
    EXPECT_TRUE(is_motivating_fixed(apply_configuration(g, fee_point), q("1/2"), r).motivating);
    // ... but no grid point serves both biases at that reward.
    EXPECT_FALSE(sweep_configurations(g, edges, q("1/8"), Rational(2) / a, BiasSet::points({a, q("1/2")}), r,
                                      VerifierMode::Uncertain));
    EXPECT_FALSE(is_motivating_fixed(apply_configuration(g, fee_point), a, r).motivating);
}

TEST(Sweep, EmptyEdgeListMatchesVerifier) {
    const TaskGraph g = fx::alice_bob();
    const BiasSet b = alice_bob_biases(fx::kEps);
    const Rational need = required_reward_uncertain(g, b);
    EXPECT_TRUE(sweep_configurations(g, {}, q("1/2"), Rational(1), b, need, VerifierMode::Uncertain));
    EXPECT_FALSE(sweep_configurations(g, {}, q("1/2"), Rational(1), b, need - q("1/1000"), VerifierMode::Uncertain));
}

TEST(Sweep, BudgetAndArguments) {
    const TaskGraph g = fx::alice_bob();
    const BiasSet b = alice_bob_biases(fx::kEps);
    EXPECT_THROW(sweep_configurations(g, {0, 1, 2}, q("1/1000"), Rational(100), b, Rational(1), VerifierMode::Uncertain,
                                      SweepOptions{1000}),
                 std::length_error);
    EXPECT_THROW(sweep_configurations(g, {0, 1, 2, 3}, q("1"), Rational(1), b, Rational(1), VerifierMode::Uncertain),
                 std::invalid_argument);
    EXPECT_THROW(sweep_configurations(g, {0}, Rational(0), Rational(1), b, Rational(1), VerifierMode::Uncertain),
                 std::invalid_argument);
}
