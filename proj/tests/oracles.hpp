// Brute-force reference implementations used only by tests. They share no
// code with the library beyond the graph container and Rational.
#ifndef PBPLAN_TESTS_ORACLES_HPP
#define PBPLAN_TESTS_ORACLES_HPP

#include "pbplan/bias_set.hpp"
#include "pbplan/rational.hpp"
#include "pbplan/task_graph.hpp"

#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using pbplan::BiasSet;
using pbplan::CostConfiguration;
using pbplan::EdgeIndex;
using pbplan::NodeIndex;
using pbplan::Rational;
using pbplan::TaskGraph;

/// Every v-t path as an edge sequence, by depth-first enumeration.
inline std::vector<std::vector<EdgeIndex>> all_paths(const TaskGraph& g, NodeIndex from) {
    std::vector<std::vector<EdgeIndex>> out;
    std::vector<EdgeIndex> cur;
    std::function<void(NodeIndex)> dfs = [&](NodeIndex v) {
        if (v == g.target()) {
            out.push_back(cur);
            return;
        }
        for (EdgeIndex e : g.out_edges(v)) {
            cur.push_back(e);
            dfs(g.edge(e).head);
            cur.pop_back();
        }
    };
    dfs(from);
    return out;
}

inline Rational path_cost(const TaskGraph& g, const std::vector<EdgeIndex>& p) {
    Rational c(0);
    for (EdgeIndex e : p) {
        c += g.edge(e).cost;
    }
    return c;
}

/// Cheapest cost to t from every node, by enumerating all paths.
inline std::vector<Rational> distances(const TaskGraph& g) {
    std::vector<Rational> d(g.node_count());
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        std::optional<Rational> best;
        for (const auto& p : all_paths(g, v)) {
            Rational c = path_cost(g, p);
            if (!best || c < *best) {
                best = c;
            }
        }
        d[v] = best.value_or(Rational(0));
    }
    return d;
}

inline Rational perceived(const TaskGraph& g, const std::vector<Rational>& d, const Rational& beta, EdgeIndex e) {
    return g.edge(e).cost + beta * d[g.edge(e).head];
}

/// Smallest maximum perceived edge cost over all s-t paths.
inline Rational minmax_alpha(const TaskGraph& g, const Rational& b) {
    const auto d = distances(g);
    std::optional<Rational> best;
    for (const auto& p : all_paths(g, g.source())) {
        Rational worst(0);
        for (EdgeIndex e : p) {
            worst = pbplan::max(worst, perceived(g, d, b, e));
        }
        if (!best || worst < *best) {
            best = worst;
        }
    }
    return *best;
}

/// Walks every tie-breaking of a fixed-bias agent; true iff no reachable
/// node has minimum perceived cost above beta*r.
inline bool motivating_fixed(const TaskGraph& g, const Rational& beta, const Rational& r) {
    const auto d = distances(g);
    std::set<NodeIndex> seen;
    std::function<bool(NodeIndex)> walk = [&](NodeIndex v) {
        if (v == g.target() || !seen.insert(v).second) {
            return true;
        }
        std::optional<Rational> best;
        for (EdgeIndex e : g.out_edges(v)) {
            Rational c = perceived(g, d, beta, e);
            if (!best || c < *best) {
                best = c;
            }
        }
        if (*best > beta * r) {
            return false;
        }
        for (EdgeIndex e : g.out_edges(v)) {
            if (perceived(g, d, beta, e) == *best && !walk(g.edge(e).head)) {
                return false;
            }
        }
        return true;
    };
    return walk(g.source());
}

/// Max over walk-reachable nodes of d_beta(v)/beta.
inline Rational required_fixed(const TaskGraph& g, const Rational& beta) {
    const auto d = distances(g);
    std::set<NodeIndex> seen;
    Rational worst(0);
    std::function<void(NodeIndex)> walk = [&](NodeIndex v) {
        if (v == g.target() || !seen.insert(v).second) {
            return;
        }
        std::optional<Rational> best;
        for (EdgeIndex e : g.out_edges(v)) {
            Rational c = perceived(g, d, beta, e);
            if (!best || c < *best) {
                best = c;
            }
        }
        worst = pbplan::max(worst, *best / beta);
        for (EdgeIndex e : g.out_edges(v)) {
            if (perceived(g, d, beta, e) == *best) {
                walk(g.edge(e).head);
            }
        }
    };
    walk(g.source());
    return worst;
}

/// Biases at which the choice at v can change: B's endpoints, pairwise line
/// crossings of the out-edges of v inside B, and midpoints between
/// consecutive ones within an interval of B.
inline std::vector<Rational> probe_biases(const TaskGraph& g, const std::vector<Rational>& d, NodeIndex v,
                                          const BiasSet& biases) {
    std::set<Rational> pts;
    for (const auto& iv : biases.intervals()) {
        pts.insert(iv.lo);
        pts.insert(iv.hi);
    }
    const auto& out = g.out_edges(v);
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            const auto& a = g.edge(out[i]);
            const auto& b = g.edge(out[j]);
            const Rational slope = d[a.head] - d[b.head];
            if (slope.sign() == 0) {
                continue;
            }
            const Rational x = (b.cost - a.cost) / slope;
            if (biases.contains(x)) {
                pts.insert(x);
            }
        }
    }
    std::vector<Rational> sorted(pts.begin(), pts.end());
    std::vector<Rational> out_pts = sorted;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        Rational mid = (sorted[i] + sorted[i + 1]) / Rational(2);
        if (biases.contains(mid)) {
            out_pts.push_back(mid);
        }
    }
    return out_pts;
}

/// Variable bias: at each node the agent may use any beta in B. Explores
/// all nodes reachable when every probe bias and every tie is allowed and
/// checks the motivation rule at every probe bias.
inline bool motivating_variable(const TaskGraph& g, const BiasSet& biases, const Rational& r) {
    const auto d = distances(g);
    std::set<NodeIndex> seen;
    std::function<bool(NodeIndex)> walk = [&](NodeIndex v) {
        if (v == g.target() || !seen.insert(v).second) {
            return true;
        }
        for (const auto& beta : probe_biases(g, d, v, biases)) {
            std::optional<Rational> best;
            for (EdgeIndex e : g.out_edges(v)) {
                Rational c = perceived(g, d, beta, e);
                if (!best || c < *best) {
                    best = c;
                }
            }
            if (*best > beta * r) {
                return false;
            }
            for (EdgeIndex e : g.out_edges(v)) {
                if (perceived(g, d, beta, e) == *best && !walk(g.edge(e).head)) {
                    return false;
                }
            }
        }
        return true;
    };
    return walk(g.source());
}

/// Exhaustive grid search: every edge in `edges` gets an extra from
/// {0, grid, ..., cap}; true iff one assignment passes `check`.
inline bool grid_exists(const TaskGraph& g, const std::vector<EdgeIndex>& edges, const Rational& grid,
                        const Rational& cap, const std::function<bool(const TaskGraph&)>& check) {
    std::vector<Rational> values;
    for (Rational x(0); x <= cap; x += grid) {
        values.push_back(x);
    }
    std::vector<std::size_t> idx(edges.size(), 0);
    while (true) {
        CostConfiguration cc;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            cc.set(edges[i], values[idx[i]]);
        }
        if (check(pbplan::apply_configuration(g, cc))) {
            return true;
        }
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == values.size()) {
            idx[i++] = 0;
        }
        if (i == idx.size()) {
            return false;
        }
    }
}

/// Makespan minimum by recursion over job placements.
inline std::int64_t best_makespan(std::size_t machines, const std::vector<std::vector<int>>& jobs) {
    const std::size_t dims = jobs.front().size();
    std::vector<std::int64_t> load(machines * dims, 0);
    std::int64_t best = -1;
    std::function<void(std::size_t)> place = [&](std::size_t k) {
        if (k == jobs.size()) {
            std::int64_t span = 0;
            for (auto x : load) {
                span = std::max(span, x);
            }
            if (best < 0 || span < best) {
                best = span;
            }
            return;
        }
        for (std::size_t i = 0; i < machines; ++i) {
            for (std::size_t j = 0; j < dims; ++j) {
                load[i * dims + j] += jobs[k][j];
            }
            place(k + 1);
            for (std::size_t j = 0; j < dims; ++j) {
                load[i * dims + j] -= jobs[k][j];
            }
        }
    };
    place(0);
    return best;
}

} // namespace oracle

#endif
