#ifndef PBPLAN_REDUCTION_HPP
#define PBPLAN_REDUCTION_HPP

#include "pbplan/agent.hpp"
#include "pbplan/bias_set.hpp"
#include "pbplan/rational.hpp"
#include "pbplan/task_graph.hpp"
#include "pbplan/vector_scheduling.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

// Task graph encoding of a 0-1 vector scheduling instance with l jobs on m
// machines in d dimensions. Column H(i,j) has l levels; level k is a path of
// l^4 edges of cost 1/l^2 from v(i,j,k) to w(i,j,k). Path P(i,k) runs from
// connector u_k through level k of every column H(i,j) with q_k[j] = 1 to
// u_{k+1}. Shortcuts:
//   type 1: v(i,j,k) -0-> y(i,j,k) -1-> next level start
//   type 2: every other level node -l-> next level start
//   type 3: every u_k != t and every inner connector -l-> t
// The next level start above level l-1 is t. All indices are 0-based here;
// node labels use the same numbers.

namespace pbplan {

enum class ReductionNodeRole { Connector, ConnectorInner, LevelNode, ShortcutMid, Target };
enum class ReductionEdgeRole { LevelPath, Shortcut1Initial, Shortcut1Final, Shortcut2, Shortcut3, Connector };

struct ReductionNodeTag {
    ReductionNodeRole role = ReductionNodeRole::Connector;
    int machine = -1;
    int dim = -1;
    int level = -1; // job index k for level nodes, connector index for u_k
    int pos = -1;   // position on the level path, 0 = v, l^4 = w
};

struct ReductionEdgeTag {
    ReductionEdgeRole role = ReductionEdgeRole::LevelPath;
    int machine = -1;
    int dim = -1;
    int level = -1;
    // Membership in connector path P(path_machine, path_job); -1 if none.
    int path_machine = -1;
    int path_job = -1;
    bool path_initial = false;

    bool is_shortcut() const {
        return role == ReductionEdgeRole::Shortcut1Initial || role == ReductionEdgeRole::Shortcut1Final ||
               role == ReductionEdgeRole::Shortcut2 || role == ReductionEdgeRole::Shortcut3;
    }
};

struct ReductionMeta {
    VSInstance instance;
    std::int64_t ell = 0;
    std::vector<ReductionNodeTag> nodes; // parallel to the normalized graph's nodes
    std::vector<ReductionEdgeTag> edges; // parallel to the normalized graph's edges
};

struct Reduction {
    TaskGraph graph;
    BiasSet biases; // {1/l^2, 1/2}
    ReductionMeta meta;
};

/// With `normalize` false the raw construction is returned, including
/// column levels no connector path can reach.
inline Reduction gen_vs_reduction(const VSInstance& inst, bool normalize = true) {
    const std::size_t ell = inst.job_count();
    if (ell < 2) {
        throw std::invalid_argument("the reduction needs at least 2 jobs");
    }
    const std::size_t m = inst.machines();
    const std::size_t dims = inst.dims();
    const std::size_t steps = ell * ell * ell * ell;
    const Rational small(1, static_cast<std::int64_t>(ell * ell));
    const Rational ell_r(static_cast<std::int64_t>(ell));

    GraphBuilder gb;
    std::vector<ReductionNodeTag> ntags;
    std::vector<ReductionEdgeTag> etags;
    auto add_node = [&](std::string label, ReductionNodeTag tag) {
        ntags.push_back(tag);
        return gb.add_node(std::move(label));
    };
    auto add_edge = [&](NodeIndex a, NodeIndex b, const Rational& c, ReductionEdgeTag tag) {
        etags.push_back(tag);
        gb.add_edge(a, b, c);
    };
    auto ijk = [](std::size_t i, std::size_t j, std::size_t k) {
        return std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
    };
    const int ell_i = static_cast<int>(ell);

    std::vector<NodeIndex> connector(ell + 1);
    for (std::size_t k = 0; k < ell; ++k) {
        connector[k] = add_node("u_" + std::to_string(k), {ReductionNodeRole::Connector, -1, -1, static_cast<int>(k), -1});
    }

    // level[(i*dims + j)*ell + k][p]
    std::vector<std::vector<NodeIndex>> level(m * dims * ell);
    std::vector<NodeIndex> mid(m * dims * ell);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < dims; ++j) {
            for (std::size_t k = 0; k < ell; ++k) {
                auto& path = level[(i * dims + j) * ell + k];
                path.reserve(steps + 1);
                const ReductionNodeTag base{ReductionNodeRole::LevelNode, static_cast<int>(i), static_cast<int>(j),
                                            static_cast<int>(k), 0};
                for (std::size_t p = 0; p <= steps; ++p) {
                    auto tag = base;
                    tag.pos = static_cast<int>(p);
                    std::string label = p == 0       ? "v_" + ijk(i, j, k)
                                      : p == steps   ? "w_" + ijk(i, j, k)
                                                     : "x_" + ijk(i, j, k) + "_" + std::to_string(p);
                    path.push_back(add_node(std::move(label), tag));
                }
                auto tag = base;
                tag.role = ReductionNodeRole::ShortcutMid;
                tag.pos = -1;
                mid[(i * dims + j) * ell + k] = add_node("y_" + ijk(i, j, k), tag);
            }
        }
    }
    // Inner connectors, one after every non-final crossed column.
    std::vector<NodeIndex> inner(m * dims * ell, 0);
    std::vector<bool> has_inner(m * dims * ell, false);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < ell; ++k) {
            std::vector<std::size_t> crossed;
            for (std::size_t j = 0; j < dims; ++j) {
                if (inst.job(k)[j] == 1) {
                    crossed.push_back(j);
                }
            }
            for (std::size_t a = 0; a + 1 < crossed.size(); ++a) {
                const std::size_t slot = (i * dims + crossed[a]) * ell + k;
                inner[slot] = add_node("u_" + ijk(i, crossed[a], k),
                                       {ReductionNodeRole::ConnectorInner, static_cast<int>(i),
                                        static_cast<int>(crossed[a]), static_cast<int>(k), -1});
                has_inner[slot] = true;
            }
        }
    }
    const NodeIndex t = add_node("t", {ReductionNodeRole::Target, -1, -1, ell_i, -1});
    connector[ell] = t;

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < dims; ++j) {
            for (std::size_t k = 0; k < ell; ++k) {
                const auto& path = level[(i * dims + j) * ell + k];
                const NodeIndex next = k + 1 < ell ? level[(i * dims + j) * ell + k + 1].front() : t;
                const bool crossed = inst.job(k)[j] == 1;
                ReductionEdgeTag tag{ReductionEdgeRole::LevelPath, static_cast<int>(i), static_cast<int>(j),
                                     static_cast<int>(k)};
                if (crossed) {
                    tag.path_machine = static_cast<int>(i);
                    tag.path_job = static_cast<int>(k);
                }
                for (std::size_t p = 0; p < steps; ++p) {
                    add_edge(path[p], path[p + 1], small, tag);
                }
                ReductionEdgeTag sc{ReductionEdgeRole::Shortcut1Initial, static_cast<int>(i), static_cast<int>(j),
                                    static_cast<int>(k)};
                const NodeIndex y = mid[(i * dims + j) * ell + k];
                add_edge(path[0], y, Rational(0), sc);
                sc.role = ReductionEdgeRole::Shortcut1Final;
                add_edge(y, next, Rational(1), sc);
                sc.role = ReductionEdgeRole::Shortcut2;
                for (std::size_t p = 1; p <= steps; ++p) {
                    add_edge(path[p], next, ell_r, sc);
                }
            }
        }
    }

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < ell; ++k) {
            ReductionEdgeTag tag{ReductionEdgeRole::Connector, -1, -1, static_cast<int>(k), static_cast<int>(i),
                                 static_cast<int>(k), true};
            NodeIndex from = connector[k];
            for (std::size_t j = 0; j < dims; ++j) {
                if (inst.job(k)[j] != 1) {
                    continue;
                }
                const std::size_t slot = (i * dims + j) * ell + k;
                tag.machine = static_cast<int>(i);
                tag.dim = static_cast<int>(j);
                add_edge(from, level[slot].front(), small, tag);
                tag.path_initial = false;
                if (has_inner[slot]) {
                    add_edge(level[slot].back(), inner[slot], small, tag);
                    from = inner[slot];
                } else {
                    add_edge(level[slot].back(), connector[k + 1], small, tag);
                }
            }
        }
    }

    const ReductionEdgeTag third{ReductionEdgeRole::Shortcut3};
    for (std::size_t k = 0; k < ell; ++k) {
        add_edge(connector[k], t, ell_r, third);
    }
    for (std::size_t slot = 0; slot < inner.size(); ++slot) {
        if (has_inner[slot]) {
            add_edge(inner[slot], t, ell_r, third);
        }
    }

    TaskGraph graph = gb.build(connector[0], t);
    ReductionMeta meta{inst, static_cast<std::int64_t>(ell), std::move(ntags), std::move(etags)};
    if (normalize) {
        auto [reduced, map] = normalize_with_map(graph);
        ReductionMeta kept{inst, meta.ell, std::vector<ReductionNodeTag>(reduced.node_count()),
                           std::vector<ReductionEdgeTag>(reduced.edge_count())};
        for (NodeIndex v = 0; v < map.node.size(); ++v) {
            if (map.node[v]) {
                kept.nodes[*map.node[v]] = meta.nodes[v];
            }
        }
        for (EdgeIndex e = 0; e < map.edge.size(); ++e) {
            if (map.edge[e]) {
                kept.edges[*map.edge[e]] = meta.edges[e];
            }
        }
        graph = std::move(reduced);
        meta = std::move(kept);
    }
    BiasSet biases = BiasSet::points({Rational(1, static_cast<std::int64_t>(ell * ell)), Rational(1, 2)});
    return {std::move(graph), std::move(biases), std::move(meta)};
}

namespace detail {

inline void check_meta(const TaskGraph& g, const ReductionMeta& meta) {
    if (meta.nodes.size() != g.node_count() || meta.edges.size() != g.edge_count()) {
        throw std::invalid_argument("reduction metadata does not match the graph");
    }
}

} // namespace detail

/// From a schedule with makespan kappa: extra l on the type-1 shortcut entry
/// at v(i,j,k) for q_k on machine i with q_k[j] = 1, and kappa*l + l + 2 on
/// the first edge of every P(i',k) whose machine i' does not run q_k.
/// Returns the configuration and the reward kappa*l + l + 1.
inline std::pair<CostConfiguration, Rational> schedule_configuration(const TaskGraph& g, const ReductionMeta& meta,
                                                                     const Schedule& sched) {
    detail::check_meta(g, meta);
    const std::int64_t kappa = makespan_of(meta.instance, sched.assignment);
    const Rational ell(meta.ell);
    const Rational foreign = Rational(kappa) * ell + ell + Rational(2);
    CostConfiguration cc;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const auto& tag = meta.edges[e];
        if (tag.role == ReductionEdgeRole::Shortcut1Initial) {
            const auto k = static_cast<std::size_t>(tag.level);
            if (sched.assignment[k] == static_cast<std::size_t>(tag.machine) &&
                meta.instance.job(k)[static_cast<std::size_t>(tag.dim)] == 1) {
                cc.set(e, ell);
            }
        } else if (tag.role == ReductionEdgeRole::Connector && tag.path_initial) {
            const auto k = static_cast<std::size_t>(tag.path_job);
            if (sched.assignment[k] != static_cast<std::size_t>(tag.path_machine)) {
                cc.set(e, foreign);
            }
        }
    }
    return {std::move(cc), Rational(kappa) * ell + ell + Rational(1)};
}

struct ExtractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Walks the configured graph as an agent with constant bias 1/l^2 (ties to
/// the smallest head, then the smallest edge) and reads the schedule off the
/// connector paths it traverses.
inline Schedule extract_schedule(const TaskGraph& g, const ReductionMeta& meta, const CostConfiguration& cc,
                                 const Rational& r) {
    detail::check_meta(g, meta);
    const TaskGraph walked = apply_configuration(g, cc);
    const DistanceTable dt = cheapest_costs(walked);
    const Rational beta(1, meta.ell * meta.ell);
    const Rational bound = beta * r;
    std::vector<std::optional<std::size_t>> assignment(meta.instance.job_count());
    NodeIndex v = walked.source();
    while (v != walked.target()) {
        std::optional<EdgeIndex> pick;
        Rational best;
        for (EdgeIndex e : walked.out_edges(v)) {
            Rational c = perceived_edge_cost(walked, dt, beta, e);
            if (!pick || c < best || (c == best && walked.edge(e).head < walked.edge(*pick).head)) {
                best = std::move(c);
                pick = e;
            }
        }
        if (best > bound) {
            throw ExtractionError("agent quits at '" + walked.label(v) + "': perceived cost " + best.str() +
                                  " exceeds perceived reward " + bound.str());
        }
        const auto& tag = meta.edges[*pick];
        if (tag.is_shortcut()) {
            throw ExtractionError("agent takes a shortcut at '" + walked.label(v) + "' -> '" +
                                  walked.label(walked.edge(*pick).head) + "'");
        }
        if (tag.role == ReductionEdgeRole::Connector && tag.path_initial) {
            assignment[static_cast<std::size_t>(tag.path_job)] = static_cast<std::size_t>(tag.path_machine);
        }
        v = walked.edge(*pick).head;
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < assignment.size(); ++k) {
        if (!assignment[k]) {
            throw ExtractionError("walk never enters a connector path for job " + std::to_string(k));
        }
        out.push_back(*assignment[k]);
    }
    return make_schedule(meta.instance, std::move(out));
}

} // namespace pbplan

#endif
