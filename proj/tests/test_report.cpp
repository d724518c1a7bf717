#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace pbplan;
using fx::q;

namespace {

Rational value_of(const ExperimentReport& rep, const std::string& quantity) {
    const ReportRow* row = rep.find(quantity);
    if (row == nullptr) {
        throw std::runtime_error("missing row " + quantity);
    }
    return row->value;
}

void expect_ratio_operands(const ExperimentReport& rep) {
    for (const char* name : {"ratio_lower", "ratio_upper"}) {
        const ReportRow* row = rep.find(name);
        ASSERT_NE(row, nullptr) << name;
        ASSERT_TRUE(row->operand_num && row->operand_den) << name;
        EXPECT_EQ(*row->operand_num / *row->operand_den, row->value) << name;
    }
}

} // namespace

TEST(PriceReport, AliceBobIntervalIsSound) {
    const TaskGraph g = fx::alice_bob();
    const BiasSet b = alice_bob_biases(fx::kEps);
    const ExperimentReport rep = run_price_report(g, b, VerifierMode::Uncertain);
    expect_ratio_operands(rep);
    const Rational lo = value_of(rep, "ratio_lower");
    const Rational hi = value_of(rep, "ratio_upper");
    EXPECT_GE(lo, Rational(1));
    EXPECT_LE(lo, hi);
    EXPECT_LE(hi, Rational(2) * b.tau());
    EXPECT_LE(value_of(rep, "reward_lower"), value_of(rep, "reward_upper"));
    EXPECT_LE(value_of(rep, "sup_fixed_lower"), value_of(rep, "sup_fixed_upper"));
    // The Bob-only requirement is 216/7, so the worst single bias sits at or above it.
    EXPECT_GE(value_of(rep, "sup_fixed_upper"), q("216/7"));
    EXPECT_EQ(value_of(rep, "tau"), q("14/13"));
}

TEST(PriceReport, AliceBobWithKnownConfiguration) {
    const TaskGraph g = fx::alice_bob();
    CostConfiguration cc;
    cc.set(g.edge_between("s", "v_A"), Rational(5) * fx::kEps);
    cc.set(g.edge_between("v_B", "v_AB"), q("1/2") + Rational(16) * fx::kEps);
    PriceOptions opts;
    opts.candidates = {cc};
    const ExperimentReport rep = run_price_report(g, alice_bob_biases(fx::kEps), VerifierMode::Uncertain, opts);
    EXPECT_LE(value_of(rep, "candidate_upper"), q("256/13"));
    EXPECT_LE(value_of(rep, "reward_upper"), q("256/13"));
}

TEST(PriceReport, VariabilityFamilyExact) {
    const Rational a = q("1/4");
    const TaskGraph g = gen_pov_family(a);
    const BiasSet b = BiasSet::points({a, Rational(1)});
    const ExperimentReport rep = run_price_report(g, b, VerifierMode::Variable);
    EXPECT_EQ(value_of(rep, "cns_threshold_lo"), Rational(16));
    EXPECT_EQ(value_of(rep, "cns_threshold_hi"), Rational(16));
    EXPECT_EQ(value_of(rep, "reward_lower"), Rational(16));
    EXPECT_EQ(value_of(rep, "reward_upper"), Rational(16));
    EXPECT_EQ(value_of(rep, "sup_fixed_upper"), Rational(10));
    EXPECT_EQ(value_of(rep, "ratio_lower"), q("8/5"));
    EXPECT_EQ(value_of(rep, "ratio_upper"), q("8/5"));
    expect_ratio_operands(rep);
    EXPECT_LE(value_of(rep, "algorithm_reward"), (Rational(1) + b.tau()) * value_of(rep, "alpha_over_b"));
}

TEST(PriceReport, SingletonRatioIsOne) {
    const ExperimentReport rep =
        run_price_report(fx::alice_bob(), BiasSet::single(fx::kBob), VerifierMode::Uncertain);
    EXPECT_EQ(value_of(rep, "ratio_lower"), Rational(1));
    EXPECT_EQ(value_of(rep, "ratio_upper"), Rational(1));
    expect_ratio_operands(rep);
    EXPECT_EQ(value_of(rep, "tau"), Rational(1));
}

TEST(PriceReport, UncertaintyFamilyRatio) {
    for (const char* a_text : {"1/4", "1/8", "1/16"}) {
        const Rational a = q(a_text);
        const TaskGraph g = gen_pou_family(a);
        CostConfiguration b_tilde;
        b_tilde.set(g.edge_between("v_1", "w"), Rational(1) / (Rational(2) * a));
        PriceOptions opts;
        opts.candidates = {b_tilde};
        opts.known_lower = Rational(9) + Rational(11) / (Rational(2) * a);
        const ExperimentReport rep = run_price_report(g, BiasSet::points({a, q("1/2")}), VerifierMode::Uncertain, opts);
        const Rational expected = *opts.known_lower / (Rational(10) + Rational(5) / a);
        EXPECT_EQ(value_of(rep, "ratio_lower"), expected) << a_text;
        EXPECT_EQ(value_of(rep, "sup_fixed_upper"), Rational(10) + Rational(5) / a) << a_text;
        expect_ratio_operands(rep);
    }
}

TEST(PriceReport, CsvIsDeterministic) {
    const TaskGraph g = fx::alice_bob();
    const BiasSet b = alice_bob_biases(fx::kEps);
    std::ostringstream first;
    std::ostringstream second;
    write_report_csv(first, run_price_report(g, b, VerifierMode::Uncertain));
    write_report_csv(second, run_price_report(g, b, VerifierMode::Uncertain));
    EXPECT_EQ(first.str(), second.str());
    EXPECT_EQ(first.str().substr(0, first.str().find('\n')), kReportHeader);
    std::istringstream lines(first.str());
    std::string line;
    while (std::getline(lines, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7) << line;
    }
}

TEST(PriceReport, CsvQuotesInstanceNames) {
    ExperimentReport rep;
    rep.rows.push_back({"a,b", "uncertain", "tau", std::nullopt, Rational(1), std::nullopt, std::nullopt});
    std::ostringstream out;
    write_report_csv(out, rep, false);
    EXPECT_EQ(out.str(), "\"a,b\",uncertain,tau,,1,1,,\n");
}

TEST(PriceReport, RejectsForeignCandidates) {
    CostConfiguration cc;
    cc.set(99, Rational(1));
    PriceOptions opts;
    opts.candidates = {cc};
    EXPECT_THROW(run_price_report(fx::alice_bob(), alice_bob_biases(fx::kEps), VerifierMode::Uncertain, opts),
                 GraphError);
}
