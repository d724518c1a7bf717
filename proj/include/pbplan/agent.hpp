#ifndef PBPLAN_AGENT_HPP
#define PBPLAN_AGENT_HPP

#include "pbplan/bias_set.hpp"
#include "pbplan/rational.hpp"
#include "pbplan/task_graph.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace pbplan {

/// d(v): cost of a cheapest path from v to t.
class DistanceTable {
public:
    explicit DistanceTable(std::vector<Rational> d) : d_(std::move(d)) {}
    const Rational& operator[](NodeIndex v) const { return d_[v]; }
    const Rational& at(NodeIndex v) const { return d_.at(v); }
    std::size_t size() const { return d_.size(); }
    const std::vector<Rational>& values() const { return d_; }

private:
    std::vector<Rational> d_;
};

/// Minimizing out-edges per node at one bias, ties kept.
using PreferenceProfile = std::vector<std::vector<EdgeIndex>>;

struct Witness {
    NodeIndex node = 0;
    Rational beta;
    Rational perceived; // d_beta(node)
    Rational bound;     // beta * r
};

struct Verdict {
    bool motivating = true;
    std::vector<Witness> witnesses;
    std::optional<Rational> required_reward;
};

inline void require_bias(const Rational& beta) {
    if (beta.sign() <= 0 || beta > Rational(1)) {
        throw std::invalid_argument("present bias " + beta.str() + " outside (0,1]");
    }
}

/// Backward dynamic program in reverse topological order. Requires a
/// normalized graph (every node reaches t).
inline DistanceTable cheapest_costs(const TaskGraph& g) {
    std::vector<std::optional<Rational>> d(g.node_count());
    d[g.target()] = Rational(0);
    const auto& order = g.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        NodeIndex v = *it;
        if (v == g.target()) {
            continue;
        }
        for (EdgeIndex e : g.out_edges(v)) {
            const auto& ed = g.edge(e);
            if (!d[ed.head]) {
                continue;
            }
            Rational via = ed.cost + *d[ed.head];
            if (!d[v] || via < *d[v]) {
                d[v] = std::move(via);
            }
        }
    }
    std::vector<Rational> out;
    out.reserve(d.size());
    for (NodeIndex v = 0; v < d.size(); ++v) {
        if (!d[v]) {
            throw GraphError("node '" + g.label(v) + "' cannot reach the target; normalize first");
        }
        out.push_back(std::move(*d[v]));
    }
    return DistanceTable(std::move(out));
}

/// c(e) + beta * d(head(e)).
inline Rational perceived_edge_cost(const TaskGraph& g, const DistanceTable& dt, const Rational& beta, EdgeIndex e) {
    const auto& ed = g.edge(e);
    return ed.cost + beta * dt[ed.head];
}

/// d_beta(v): minimum perceived cost over the out-edges of v (v != t).
inline Rational min_perceived_cost(const TaskGraph& g, const DistanceTable& dt, const Rational& beta, NodeIndex v) {
    const auto& out = g.out_edges(v);
    Rational best = perceived_edge_cost(g, dt, beta, out.front());
    for (std::size_t i = 1; i < out.size(); ++i) {
        Rational c = perceived_edge_cost(g, dt, beta, out[i]);
        if (c < best) {
            best = std::move(c);
        }
    }
    return best;
}

inline PreferenceProfile preference_profile(const TaskGraph& g, const DistanceTable& dt, const Rational& beta) {
    require_bias(beta);
    PreferenceProfile profile(g.node_count());
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (v == g.target()) {
            continue;
        }
        std::optional<Rational> best;
        for (EdgeIndex e : g.out_edges(v)) {
            Rational c = perceived_edge_cost(g, dt, beta, e);
            if (!best || c < *best) {
                best = std::move(c);
                profile[v].assign(1, e);
            } else if (c == *best) {
                profile[v].push_back(e);
            }
        }
    }
    return profile;
}

namespace detail {

inline std::vector<NodeIndex> closure_from_source(const TaskGraph& g, const std::vector<std::vector<EdgeIndex>>& allowed) {
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeIndex> stack{g.source()};
    seen[g.source()] = true;
    while (!stack.empty()) {
        NodeIndex v = stack.back();
        stack.pop_back();
        for (EdgeIndex e : allowed[v]) {
            NodeIndex w = g.edge(e).head;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (seen[v]) {
            out.push_back(v);
        }
    }
    return out;
}

} // namespace detail

/// Nodes a fixed-bias agent may occupy under some tie-breaking. Path choice
/// does not depend on the reward, so neither does this set.
inline std::vector<NodeIndex> reachable_nodes_fixed(const TaskGraph& g, const DistanceTable& dt, const Rational& beta) {
    return detail::closure_from_source(g, preference_profile(g, dt, beta));
}

inline std::vector<NodeIndex> reachable_nodes_fixed(const TaskGraph& g, const Rational& beta) {
    return reachable_nodes_fixed(g, cheapest_costs(g), beta);
}

/// Minimal r for which g is motivating at fixed beta:
/// max over reachable v != t of d_beta(v) / beta.
inline Rational required_reward_fixed(const TaskGraph& g, const DistanceTable& dt, const Rational& beta) {
    Rational worst(0);
    for (NodeIndex v : reachable_nodes_fixed(g, dt, beta)) {
        if (v == g.target()) {
            continue;
        }
        Rational need = min_perceived_cost(g, dt, beta, v) / beta;
        if (need > worst) {
            worst = std::move(need);
        }
    }
    return worst;
}

inline Rational required_reward_fixed(const TaskGraph& g, const Rational& beta) {
    return required_reward_fixed(g, cheapest_costs(g), beta);
}

inline Verdict is_motivating_fixed(const TaskGraph& g, const DistanceTable& dt, const Rational& beta, const Rational& r) {
    Verdict verdict;
    const Rational bound = beta * r;
    Rational worst(0);
    for (NodeIndex v : reachable_nodes_fixed(g, dt, beta)) {
        if (v == g.target()) {
            continue;
        }
        Rational perceived = min_perceived_cost(g, dt, beta, v);
        Rational need = perceived / beta;
        if (need > worst) {
            worst = need;
        }
        if (perceived > bound) {
            verdict.motivating = false;
            verdict.witnesses.push_back({v, beta, std::move(perceived), bound});
        }
    }
    verdict.required_reward = std::move(worst);
    return verdict;
}

inline Verdict is_motivating_fixed(const TaskGraph& g, const Rational& beta, const Rational& r) {
    return is_motivating_fixed(g, cheapest_costs(g), beta, r);
}

/// The closed interval of beta in [0,1] for which e is a cheapest-looking
/// out-edge of its tail: the piece of [0,1] where its line c + beta*d(head)
/// lies on the lower envelope of its siblings' lines.
inline BiasInterval preference_interval(const TaskGraph& g, const DistanceTable& dt, EdgeIndex e) {
    const auto& me = g.edge(e);
    const Rational& my_slope = dt[me.head];
    BiasInterval iv = BiasInterval::unit();
    for (EdgeIndex f : g.out_edges(me.tail)) {
        if (f == e) {
            continue;
        }
        const auto& other = g.edge(f);
        const Rational& slope = dt[other.head];
        // me.cost + beta*my_slope <= other.cost + beta*slope
        if (my_slope == slope) {
            if (me.cost > other.cost) {
                return BiasInterval::none();
            }
        } else if (my_slope > slope) {
            Rational cross = (other.cost - me.cost) / (my_slope - slope);
            if (cross < iv.hi) {
                iv.hi = std::move(cross);
            }
        } else {
            Rational cross = (me.cost - other.cost) / (slope - my_slope);
            if (cross > iv.lo) {
                iv.lo = std::move(cross);
            }
        }
        if (iv.lo > iv.hi) {
            return BiasInterval::none();
        }
    }
    return iv;
}

inline std::vector<BiasInterval> preference_intervals(const TaskGraph& g, const DistanceTable& dt) {
    std::vector<BiasInterval> out;
    out.reserve(g.edge_count());
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        out.push_back(preference_interval(g, dt, e));
    }
    return out;
}

/// Finite subset of B whose verification certifies all of B: the minima of
/// B_e ∩ B over edges with non-empty intersection. Sorted ascending.
inline std::vector<Rational> critical_bias_subset(const TaskGraph& g, const DistanceTable& dt, const BiasSet& biases) {
    std::set<Rational> out;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        if (auto m = biases.min_within(preference_interval(g, dt, e))) {
            out.insert(std::move(*m));
        }
    }
    return {out.begin(), out.end()};
}

inline std::vector<Rational> critical_bias_subset(const TaskGraph& g, const BiasSet& biases) {
    return critical_bias_subset(g, cheapest_costs(g), biases);
}

namespace detail {

inline void sort_witnesses(std::vector<Witness>& ws) {
    std::stable_sort(ws.begin(), ws.end(), [](const Witness& a, const Witness& b) {
        if (a.node != b.node) {
            return a.node < b.node;
        }
        return a.beta < b.beta;
    });
}

} // namespace detail

/// Motivating for every fixed beta in B iff motivating for every beta in the
/// critical subset. The required reward is exact.
inline Verdict is_motivating_uncertain(const TaskGraph& g, const BiasSet& biases, const Rational& r) {
    const DistanceTable dt = cheapest_costs(g);
    Verdict verdict;
    Rational worst(0);
    for (const Rational& beta : critical_bias_subset(g, dt, biases)) {
        Verdict one = is_motivating_fixed(g, dt, beta, r);
        if (*one.required_reward > worst) {
            worst = *one.required_reward;
        }
        if (!one.motivating) {
            verdict.motivating = false;
            for (auto& w : one.witnesses) {
                verdict.witnesses.push_back(std::move(w));
            }
        }
    }
    detail::sort_witnesses(verdict.witnesses);
    verdict.required_reward = std::move(worst);
    return verdict;
}

inline Rational required_reward_uncertain(const TaskGraph& g, const BiasSet& biases) {
    const DistanceTable dt = cheapest_costs(g);
    Rational worst(0);
    for (const Rational& beta : critical_bias_subset(g, dt, biases)) {
        worst = pbplan::max(worst, required_reward_fixed(g, dt, beta));
    }
    return worst;
}

struct VariableReach {
    std::vector<EdgeIndex> edges; // E'
    std::vector<NodeIndex> nodes; // V'
};

/// E' = edges preferred at their tail for some beta in B; V' = nodes reachable
/// from s through E'.
inline VariableReach variable_reach(const TaskGraph& g, const DistanceTable& dt, const BiasSet& biases) {
    VariableReach reach;
    std::vector<std::vector<EdgeIndex>> allowed(g.node_count());
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        if (biases.intersects(preference_interval(g, dt, e))) {
            reach.edges.push_back(e);
            allowed[g.edge(e).tail].push_back(e);
        }
    }
    reach.nodes = detail::closure_from_source(g, allowed);
    return reach;
}

inline VariableReach variable_reach(const TaskGraph& g, const BiasSet& biases) {
    return variable_reach(g, cheapest_costs(g), biases);
}

/// Motivating for every per-node bias assignment from B: every node of V'
/// must be motivating at the smallest bias b = min B.
inline Verdict is_motivating_variable(const TaskGraph& g, const BiasSet& biases, const Rational& r) {
    const DistanceTable dt = cheapest_costs(g);
    const Rational& b = biases.min();
    const Rational bound = b * r;
    Verdict verdict;
    Rational worst(0);
    for (NodeIndex v : variable_reach(g, dt, biases).nodes) {
        if (v == g.target()) {
            continue;
        }
        Rational perceived = min_perceived_cost(g, dt, b, v);
        Rational need = perceived / b;
        if (need > worst) {
            worst = need;
        }
        if (perceived > bound) {
            verdict.motivating = false;
            verdict.witnesses.push_back({v, b, std::move(perceived), bound});
        }
    }
    verdict.required_reward = std::move(worst);
    return verdict;
}

inline Rational required_reward_variable(const TaskGraph& g, const BiasSet& biases) {
    return *is_motivating_variable(g, biases, Rational(0)).required_reward;
}

} // namespace pbplan

#endif
