#ifndef PBPLAN_INCENTIVES_HPP
#define PBPLAN_INCENTIVES_HPP

#include "pbplan/agent.hpp"
#include "pbplan/bias_set.hpp"
#include "pbplan/rational.hpp"
#include "pbplan/task_graph.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbplan {

struct MinmaxResult {
    std::vector<NodeIndex> path;
    std::vector<EdgeIndex> edges;
    Rational alpha; // max perceived edge cost on the path at bias b
};

/// Bottleneck-optimal s-t path under edge weights c(e) + b*d(head(e)).
/// Ties go to the smallest successor index, then the smallest edge index.
inline MinmaxResult minmax_path(const TaskGraph& g, const DistanceTable& dt, const Rational& b) {
    require_bias(b);
    std::vector<std::optional<Rational>> best(g.node_count());
    std::vector<EdgeIndex> choice(g.node_count(), 0);
    best[g.target()] = Rational(0);
    const auto& order = g.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        NodeIndex v = *it;
        if (v == g.target()) {
            continue;
        }
        for (EdgeIndex e : g.out_edges(v)) {
            NodeIndex w = g.edge(e).head;
            if (!best[w]) {
                continue;
            }
            Rational through = pbplan::max(perceived_edge_cost(g, dt, b, e), *best[w]);
            const bool better = !best[v] || through < *best[v] ||
                                (through == *best[v] && w < g.edge(choice[v]).head);
            if (better) {
                best[v] = std::move(through);
                choice[v] = e;
            }
        }
    }
    MinmaxResult result;
    result.alpha = *best[g.source()];
    NodeIndex v = g.source();
    result.path.push_back(v);
    while (v != g.target()) {
        result.edges.push_back(choice[v]);
        v = g.edge(choice[v]).head;
        result.path.push_back(v);
    }
    return result;
}

inline MinmaxResult minmax_path(const TaskGraph& g, const Rational& b) { return minmax_path(g, cheapest_costs(g), b); }

/// One cheapest-path successor per node (ς) and the edges realizing it (T).
struct SuccessorTree {
    std::vector<std::optional<NodeIndex>> successor;
    std::vector<std::optional<EdgeIndex>> edge;

    /// v, ς(v), ς(ς(v)), ..., t
    std::vector<NodeIndex> path_from(NodeIndex v) const {
        std::vector<NodeIndex> out{v};
        while (successor[v]) {
            v = *successor[v];
            out.push_back(v);
        }
        return out;
    }
};

inline SuccessorTree cheapest_successor_tree(const TaskGraph& g, const DistanceTable& dt) {
    SuccessorTree tree;
    tree.successor.resize(g.node_count());
    tree.edge.resize(g.node_count());
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (v == g.target()) {
            continue;
        }
        for (EdgeIndex e : g.out_edges(v)) {
            const auto& ed = g.edge(e);
            if (ed.cost + dt[ed.head] != dt[v]) {
                continue;
            }
            if (!tree.successor[v] || ed.head < *tree.successor[v]) {
                tree.successor[v] = ed.head;
                tree.edge[v] = e;
            }
        }
    }
    return tree;
}

inline SuccessorTree cheapest_successor_tree(const TaskGraph& g) { return cheapest_successor_tree(g, cheapest_costs(g)); }

struct ApproxResult {
    CostConfiguration config;
    Rational reward; // certified reward for the returned configuration
    Rational lower;  // alpha / b, a lower bound on any motivating reward
    MinmaxResult minmax;
};

namespace detail {

/// Shared body of the two approximation algorithms. `factor` scales the
/// reward (2 or 1+tau) and `surcharge_scale` multiplies the exit-edge
/// surcharges (1 or tau).
inline ApproxResult keep_on_path_and_tree(const TaskGraph& g, const BiasSet& biases, const Rational& factor,
                                          const Rational& surcharge_scale) {
    const DistanceTable dt = cheapest_costs(g);
    const Rational& b = biases.min();
    ApproxResult out;
    out.minmax = minmax_path(g, dt, b);
    out.lower = out.minmax.alpha / b;
    out.reward = factor * out.lower;

    const SuccessorTree tree = cheapest_successor_tree(g, dt);
    std::vector<bool> on_path_node(g.node_count(), false);
    for (NodeIndex v : out.minmax.path) {
        on_path_node[v] = true;
    }
    std::vector<bool> kept(g.edge_count(), false);
    for (EdgeIndex e : out.minmax.edges) {
        kept[e] = true;
    }
    for (const auto& e : tree.edge) {
        if (e) {
            kept[*e] = true;
        }
    }
    const Rational blocking = out.reward + Rational(1);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        if (!kept[e]) {
            out.config.set(e, blocking);
        }
    }
    // Exit edges of P along T: charge the most expensive original edge of
    // the ς-segment up to its first return to P (first edge included).
    for (NodeIndex v : out.minmax.path) {
        if (v == g.target() || on_path_node[*tree.successor[v]]) {
            continue;
        }
        Rational heaviest(0);
        NodeIndex u = v;
        do {
            heaviest = pbplan::max(heaviest, g.edge(*tree.edge[u]).cost);
            u = *tree.successor[u];
        } while (!on_path_node[u]);
        out.config.set(*tree.edge[v], surcharge_scale * heaviest);
    }
    return out;
}

} // namespace detail

/// 2-approximation for an uncertain but fixed bias in B.
inline ApproxResult uncertain_approx(const TaskGraph& g, const BiasSet& biases) {
    return detail::keep_on_path_and_tree(g, biases, Rational(2), Rational(1));
}

/// (1+tau)-approximation for a bias that may vary within B from node to node.
inline ApproxResult variable_approx(const TaskGraph& g, const BiasSet& biases) {
    const Rational tau = biases.tau();
    return detail::keep_on_path_and_tree(g, biases, Rational(1) + tau, tau);
}

/// δ per node (nullopt = infinity) from the critical-node-set recursion.
struct CnsTable {
    std::vector<std::optional<Rational>> delta;
    bool feasible = false;

    /// W = {v : δ(v) < ∞}, ascending.
    std::vector<NodeIndex> witness() const {
        std::vector<NodeIndex> w;
        for (NodeIndex v = 0; v < delta.size(); ++v) {
            if (delta[v]) {
                w.push_back(v);
            }
        }
        return w;
    }
};

inline void require_occasionally_unbiased(const BiasSet& biases) {
    if (!biases.contains(Rational(1))) {
        throw std::invalid_argument("critical node sets require 1 in the bias set, got " + biases.str());
    }
}

/// In reverse topological order, keep the successors w with
/// c(v,w) + b*δ(w) <= b*r and set δ(v) to the cheapest kept continuation.
inline CnsTable decide_cns(const TaskGraph& g, const BiasSet& biases, const Rational& r) {
    require_occasionally_unbiased(biases);
    const Rational& b = biases.min();
    const Rational bound = b * r;
    CnsTable table;
    table.delta.resize(g.node_count());
    table.delta[g.target()] = Rational(0);
    const auto& order = g.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        NodeIndex v = *it;
        if (v == g.target()) {
            continue;
        }
        std::optional<Rational>& dv = table.delta[v];
        for (EdgeIndex e : g.out_edges(v)) {
            const auto& ed = g.edge(e);
            const auto& dw = table.delta[ed.head];
            if (!dw || ed.cost + b * *dw > bound) {
                continue;
            }
            Rational via = ed.cost + *dw;
            if (!dv || via < *dv) {
                dv = std::move(via);
            }
        }
    }
    table.feasible = table.delta[g.source()].has_value();
    return table;
}

/// Extra cost r+1 on every edge leaving the witness set W.
inline CostConfiguration cns_configuration(const TaskGraph& g, const CnsTable& table, const Rational& r) {
    if (!table.feasible || table.delta.size() != g.node_count() || !table.delta[g.source()]) {
        throw std::invalid_argument("critical node set is infeasible or does not contain the source");
    }
    CostConfiguration cc;
    const Rational blocking = r + Rational(1);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        if (table.delta[ed.tail] && !table.delta[ed.head]) {
            cc.set(e, blocking);
        }
    }
    return cc;
}

struct Threshold {
    Rational lo;        // infeasible (or equal to hi when exact)
    Rational hi;        // feasible
    bool exact = false; // hi is the minimal feasible reward
};

/// Minimal reward admitting a critical node set, by bisection on the monotone
/// feasibility of decide_cns followed by snapping to a candidate breakpoint
/// (c(v,w) + b*δ(w))/b.
inline Threshold cns_threshold(const TaskGraph& g, const BiasSet& biases, const Rational& tol) {
    require_occasionally_unbiased(biases);
    if (tol.sign() <= 0) {
        throw std::invalid_argument("tolerance must be positive");
    }
    const Rational& b = biases.min();
    if (decide_cns(g, biases, Rational(0)).feasible) {
        return {Rational(0), Rational(0), true};
    }
    Rational total(0);
    for (const auto& e : g.edges()) {
        total += e.cost;
    }
    Rational lo(0);
    Rational hi = total / b + Rational(1);
    while (hi - lo > tol) {
        Rational mid = (lo + hi) / Rational(2);
        if (decide_cns(g, biases, mid).feasible) {
            hi = std::move(mid);
        } else {
            lo = std::move(mid);
        }
    }
    const CnsTable at_hi = decide_cns(g, biases, hi);
    std::optional<Rational> snapped;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        const auto& dw = at_hi.delta[ed.head];
        if (!dw) {
            continue;
        }
        Rational candidate = (ed.cost + b * *dw) / b;
        if (candidate <= lo || candidate > hi || (snapped && candidate >= *snapped)) {
            continue;
        }
        if (decide_cns(g, biases, candidate).feasible) {
            snapped = std::move(candidate);
        }
    }
    if (snapped) {
        return {*snapped, *snapped, true};
    }
    return {lo, hi, false};
}

enum class VerifierMode { Uncertain, Variable };

inline Verdict verify(const TaskGraph& g, const BiasSet& biases, const Rational& r, VerifierMode mode) {
    return mode == VerifierMode::Uncertain ? is_motivating_uncertain(g, biases, r)
                                           : is_motivating_variable(g, biases, r);
}

struct SweepOptions {
    std::uint64_t budget = 5'000'000; // grid points
};

/// Exhaustive grid search over configurations supported on `edges`, each
/// extra in {0, grid, 2*grid, ...} up to cap. Returns a passing configuration
/// or nullopt. Not a proof of non-existence off the grid or off `edges`.
inline std::optional<CostConfiguration> sweep_configurations(const TaskGraph& g, const std::vector<EdgeIndex>& edges,
                                                             const Rational& grid, const Rational& cap,
                                                             const BiasSet& biases, const Rational& r,
                                                             VerifierMode mode, SweepOptions options = {}) {
    if (edges.size() > 3) {
        throw std::invalid_argument("sweep supports at most 3 edges");
    }
    if (grid.sign() <= 0 || cap.sign() < 0) {
        throw std::invalid_argument("sweep grid must be positive and cap non-negative");
    }
    for (EdgeIndex e : edges) {
        if (e >= g.edge_count()) {
            throw GraphError("sweep references unknown edge " + std::to_string(e));
        }
    }
    const mpz_class steps_z = mpz_class(cap.mpq() / grid.mpq()) + 1; // floor(cap/grid) + 1
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (steps_z > mpz_class(std::to_string(options.budget)) ||
            total * steps_z.get_ui() > options.budget) {
            throw std::length_error("sweep exceeds the enumeration budget of " + std::to_string(options.budget));
        }
        total *= steps_z.get_ui();
    }
    const std::uint64_t steps = steps_z.get_ui();
    std::vector<std::uint64_t> idx(edges.size(), 0);
    while (true) {
        CostConfiguration cc;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            cc.set(edges[i], grid * Rational(static_cast<std::int64_t>(idx[i])));
        }
        if (verify(apply_configuration(g, cc), biases, r, mode).motivating) {
            return cc;
        }
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == steps) {
            idx[i++] = 0;
        }
        if (i == idx.size()) {
            return std::nullopt;
        }
    }
}

} // namespace pbplan

#endif
