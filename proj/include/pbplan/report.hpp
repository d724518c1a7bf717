#ifndef PBPLAN_REPORT_HPP
#define PBPLAN_REPORT_HPP

#include "pbplan/agent.hpp"
#include "pbplan/bias_set.hpp"
#include "pbplan/incentives.hpp"
#include "pbplan/rational.hpp"
#include "pbplan/task_graph.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace pbplan {

/// One CSV line. `beta` is set for per-bias rows; operands are set for ratio
/// rows and satisfy value == operand_num / operand_den exactly.
struct ReportRow {
    std::string instance;
    std::string mode;
    std::string quantity;
    std::optional<Rational> beta;
    Rational value;
    std::optional<Rational> operand_num;
    std::optional<Rational> operand_den;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;

    const ReportRow* find(const std::string& quantity) const {
        for (const auto& r : rows) {
            if (r.quantity == quantity) {
                return &r;
            }
        }
        return nullptr;
    }
};

struct PriceOptions {
    std::string instance = "instance";
    /// Configurations tried as witnesses for upper bounds, next to the
    /// zero configuration and the approximation algorithm's output.
    std::vector<CostConfiguration> candidates;
    /// Externally established lower bound on the reward needed against all
    /// of B (e.g. from a family's analysis). Folded into reward_lower.
    std::optional<Rational> known_lower;
    Rational tol = Rational(1, 1LL << 40);
};

inline const char* mode_name(VerifierMode mode) { return mode == VerifierMode::Uncertain ? "uncertain" : "variable"; }

/// Certified bounds on the price of uncertainty (or variability):
///   reward_lower <= r(G,B) <= reward_upper
///   sup_fixed_lower <= sup_{beta in B} r(G,{beta}) <= sup_fixed_upper
///   ratio in [max(1, reward_lower/sup_fixed_upper), reward_upper/sup_fixed_lower]
/// With a singleton B both quantities coincide and the ratio is exactly 1.
inline ExperimentReport run_price_report(const TaskGraph& g, const BiasSet& biases, VerifierMode mode,
                                         const PriceOptions& opts = {}) {
    ExperimentReport rep;
    const std::string mname = mode_name(mode);
    auto add = [&](const std::string& quantity, const Rational& value, std::optional<Rational> beta = std::nullopt,
                   std::optional<Rational> num = std::nullopt, std::optional<Rational> den = std::nullopt) {
        rep.rows.push_back({opts.instance, mname, quantity, std::move(beta), value, std::move(num), std::move(den)});
    };
    for (const auto& cc : opts.candidates) {
        cc.check_against(g);
    }
    const DistanceTable dt = cheapest_costs(g);
    std::vector<TaskGraph> configured;
    configured.reserve(opts.candidates.size() + 1);
    configured.push_back(g);
    for (const auto& cc : opts.candidates) {
        configured.push_back(apply_configuration(g, cc));
    }

    add("tau", biases.tau());

    // Per-bias bounds on r(G,{beta}) at the critical biases and endpoints.
    std::set<Rational> probes;
    for (const auto& x : critical_bias_subset(g, dt, biases)) {
        probes.insert(x);
    }
    for (const auto& x : biases.endpoints()) {
        probes.insert(x);
    }
    const bool finite = std::all_of(biases.intervals().begin(), biases.intervals().end(),
                                    [](const BiasSet::Interval& iv) { return iv.lo == iv.hi; });
    std::optional<Rational> sup_lower;
    std::optional<Rational> sup_upper_finite;
    for (const auto& beta : probes) {
        const Rational lower = minmax_path(g, dt, beta).alpha / beta;
        Rational upper = Rational(2) * lower; // keep-on-path configuration with B = {beta}
        for (const auto& h : configured) {
            upper = pbplan::min(upper, required_reward_fixed(h, beta));
        }
        add("fixed_lower", lower, beta);
        add("fixed_upper", upper, beta);
        sup_lower = sup_lower ? pbplan::max(*sup_lower, lower) : lower;
        if (biases.contains(beta)) {
            sup_upper_finite = sup_upper_finite ? pbplan::max(*sup_upper_finite, upper) : upper;
        }
    }

    const ApproxResult approx = mode == VerifierMode::Uncertain ? uncertain_approx(g, biases) : variable_approx(g, biases);
    add("alpha_over_b", approx.lower, biases.min());
    add("algorithm_reward", approx.reward);

    Rational reward_lower = pbplan::max(approx.lower, *sup_lower);
    Rational reward_upper = approx.reward;
    for (const auto& h : configured) {
        const Rational need = mode == VerifierMode::Uncertain ? required_reward_uncertain(h, biases)
                                                              : required_reward_variable(h, biases);
        reward_upper = pbplan::min(reward_upper, need);
    }
    add("candidate_upper", reward_upper);
    if (opts.known_lower) {
        add("known_lower", *opts.known_lower);
        reward_lower = pbplan::max(reward_lower, *opts.known_lower);
    }
    if (mode == VerifierMode::Variable && biases.contains(Rational(1))) {
        const Threshold th = cns_threshold(g, biases, opts.tol);
        add("cns_threshold_lo", th.lo);
        add("cns_threshold_hi", th.hi);
        if (th.exact) {
            reward_lower = th.hi;
            reward_upper = th.hi;
        } else {
            reward_lower = pbplan::max(reward_lower, th.lo);
            reward_upper = pbplan::min(reward_upper, th.hi);
        }
    }
    add("reward_lower", reward_lower);
    add("reward_upper", reward_upper);

    // Finite B: max over its members of the per-bias uppers. Otherwise one
    // configuration must serve all of B at once (checked on B').
    Rational sup_upper = reward_upper;
    if (finite) {
        sup_upper = pbplan::min(sup_upper, *sup_upper_finite);
    } else {
        for (const auto& h : configured) {
            sup_upper = pbplan::min(sup_upper, required_reward_uncertain(h, biases));
        }
    }
    add("sup_fixed_lower", *sup_lower);
    add("sup_fixed_upper", sup_upper);

    if (biases.is_singleton()) {
        add("ratio_lower", Rational(1), std::nullopt, Rational(1), Rational(1));
        add("ratio_upper", Rational(1), std::nullopt, Rational(1), Rational(1));
        return rep;
    }
    if (sup_upper.sign() > 0 && reward_lower / sup_upper > Rational(1)) {
        add("ratio_lower", reward_lower / sup_upper, std::nullopt, reward_lower, sup_upper);
    } else {
        add("ratio_lower", Rational(1), std::nullopt, Rational(1), Rational(1));
    }
    if (sup_lower->sign() > 0) {
        const Rational hi = pbplan::max(Rational(1), reward_upper / *sup_lower);
        if (hi == Rational(1)) {
            add("ratio_upper", hi, std::nullopt, Rational(1), Rational(1));
        } else {
            add("ratio_upper", hi, std::nullopt, reward_upper, *sup_lower);
        }
    }
    return rep;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

} // namespace detail

inline constexpr const char* kReportHeader = "instance,mode,quantity,beta,value,value_decimal,operand_num,operand_den";

inline void write_report_csv(std::ostream& out, const ExperimentReport& rep, bool header = true) {
    if (header) {
        out << kReportHeader << '\n';
    }
    auto opt = [](const std::optional<Rational>& x) { return x ? x->str() : std::string(); };
    for (const auto& r : rep.rows) {
        out << detail::csv_field(r.instance) << ',' << r.mode << ',' << r.quantity << ',' << opt(r.beta) << ','
            << r.value.str() << ',' << r.value.decimal() << ',' << opt(r.operand_num) << ',' << opt(r.operand_den)
            << '\n';
    }
}

} // namespace pbplan

#endif
