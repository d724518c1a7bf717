#ifndef PBPLAN_TASK_GRAPH_HPP
#define PBPLAN_TASK_GRAPH_HPP

#include "pbplan/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pbplan {

/// Position of a node in TaskGraph::nodes(). Positions follow stable id order.
using NodeIndex = std::size_t;
/// Position of an edge in TaskGraph::edges() (file order).
using EdgeIndex = std::size_t;

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Node {
    std::size_t id = 0;
    std::string label;
};

struct Edge {
    NodeIndex tail = 0;
    NodeIndex head = 0;
    Rational cost;
};

/// Directed acyclic task graph with terminals s and t and non-negative exact
/// edge costs. Parallel edges are allowed; edges are identified by index.
/// Immutable once constructed.
class TaskGraph {
public:
    TaskGraph() = default;

    /// Validates and freezes a graph. Node ids must be strictly increasing.
    TaskGraph(std::vector<Node> nodes, std::vector<Edge> edges, NodeIndex source, NodeIndex target)
        : nodes_(std::move(nodes)), edges_(std::move(edges)), source_(source), target_(target) {
        validate();
        out_.assign(nodes_.size(), {});
        in_.assign(nodes_.size(), {});
        for (EdgeIndex e = 0; e < edges_.size(); ++e) {
            out_[edges_[e].tail].push_back(e);
            in_[edges_[e].head].push_back(e);
        }
        compute_topological_order();
        for (NodeIndex v = 0; v < nodes_.size(); ++v) {
            by_label_.emplace(nodes_[v].label, v);
        }
    }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Node& node(NodeIndex v) const { return nodes_.at(v); }
    const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
    NodeIndex source() const { return source_; }
    NodeIndex target() const { return target_; }
    const std::vector<EdgeIndex>& out_edges(NodeIndex v) const { return out_.at(v); }
    const std::vector<EdgeIndex>& in_edges(NodeIndex v) const { return in_.at(v); }

    /// Sources first; ties resolved by smallest node index.
    const std::vector<NodeIndex>& topological_order() const { return topo_; }

    const std::string& label(NodeIndex v) const { return nodes_.at(v).label; }

    std::optional<NodeIndex> find_node(const std::string& label) const {
        auto it = by_label_.find(label);
        if (it == by_label_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    NodeIndex node_by_label(const std::string& label) const {
        auto v = find_node(label);
        if (!v) {
            throw GraphError("unknown node '" + label + "'");
        }
        return *v;
    }

    /// Edge lookup by endpoints; only meaningful when the pair is unique.
    EdgeIndex edge_between(NodeIndex tail, NodeIndex head) const {
        std::optional<EdgeIndex> found;
        for (EdgeIndex e : out_.at(tail)) {
            if (edges_[e].head == head) {
                if (found) {
                    throw GraphError("parallel edges between '" + label(tail) + "' and '" + label(head) + "'");
                }
                found = e;
            }
        }
        if (!found) {
            throw GraphError("no edge from '" + label(tail) + "' to '" + label(head) + "'");
        }
        return *found;
    }

    EdgeIndex edge_between(const std::string& tail, const std::string& head) const {
        return edge_between(node_by_label(tail), node_by_label(head));
    }

    friend bool operator==(const TaskGraph& a, const TaskGraph& b) {
        if (a.source_ != b.source_ || a.target_ != b.target_ || a.nodes_.size() != b.nodes_.size() ||
            a.edges_.size() != b.edges_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
            if (a.nodes_[i].id != b.nodes_[i].id || a.nodes_[i].label != b.nodes_[i].label) {
                return false;
            }
        }
        for (std::size_t i = 0; i < a.edges_.size(); ++i) {
            const auto& x = a.edges_[i];
            const auto& y = b.edges_[i];
            if (x.tail != y.tail || x.head != y.head || x.cost != y.cost) {
                return false;
            }
        }
        return true;
    }

private:
    void validate() const {
        if (nodes_.empty()) {
            throw GraphError("graph has no nodes");
        }
        if (source_ >= nodes_.size() || target_ >= nodes_.size()) {
            throw GraphError("source or target missing");
        }
        if (source_ == target_) {
            throw GraphError("source and target must differ");
        }
        if (edges_.empty()) {
            throw GraphError("graph has no edges");
        }
        for (std::size_t i = 1; i < nodes_.size(); ++i) {
            if (nodes_[i].id <= nodes_[i - 1].id) {
                throw GraphError("node ids must be strictly increasing");
            }
        }
        std::unordered_map<std::string, int> seen;
        for (const auto& n : nodes_) {
            if (++seen[n.label] > 1) {
                throw GraphError("duplicate node label '" + n.label + "'");
            }
        }
        for (const auto& e : edges_) {
            if (e.tail >= nodes_.size() || e.head >= nodes_.size()) {
                throw GraphError("edge endpoint out of range");
            }
            if (e.cost.sign() < 0) {
                throw GraphError("negative cost " + e.cost.str() + " on edge '" + nodes_[e.tail].label + "' -> '" +
                                 nodes_[e.head].label + "'");
            }
        }
    }

    void compute_topological_order() {
        std::vector<std::size_t> indeg(nodes_.size(), 0);
        for (const auto& e : edges_) {
            ++indeg[e.head];
        }
        std::priority_queue<NodeIndex, std::vector<NodeIndex>, std::greater<>> ready;
        for (NodeIndex v = 0; v < nodes_.size(); ++v) {
            if (indeg[v] == 0) {
                ready.push(v);
            }
        }
        topo_.reserve(nodes_.size());
        while (!ready.empty()) {
            NodeIndex v = ready.top();
            ready.pop();
            topo_.push_back(v);
            for (EdgeIndex e : out_[v]) {
                if (--indeg[edges_[e].head] == 0) {
                    ready.push(edges_[e].head);
                }
            }
        }
        if (topo_.size() != nodes_.size()) {
            throw GraphError("cycle detected");
        }
    }

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    NodeIndex source_ = 0;
    NodeIndex target_ = 0;
    std::vector<std::vector<EdgeIndex>> out_;
    std::vector<std::vector<EdgeIndex>> in_;
    std::vector<NodeIndex> topo_;
    std::unordered_map<std::string, NodeIndex> by_label_;
};

/// Incremental construction by label; ids are assigned in insertion order.
class GraphBuilder {
public:
    NodeIndex add_node(std::string label) {
        if (index_.count(label)) {
            throw GraphError("duplicate node label '" + label + "'");
        }
        NodeIndex v = nodes_.size();
        index_.emplace(label, v);
        nodes_.push_back({v, std::move(label)});
        return v;
    }

    NodeIndex node(const std::string& label) {
        auto it = index_.find(label);
        return it == index_.end() ? add_node(label) : it->second;
    }

    EdgeIndex add_edge(NodeIndex tail, NodeIndex head, Rational cost) {
        edges_.push_back({tail, head, std::move(cost)});
        return edges_.size() - 1;
    }

    EdgeIndex add_edge(const std::string& tail, const std::string& head, Rational cost) {
        NodeIndex a = node(tail);
        NodeIndex b = node(head);
        return add_edge(a, b, std::move(cost));
    }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    TaskGraph build(NodeIndex source, NodeIndex target) const { return TaskGraph(nodes_, edges_, source, target); }
    TaskGraph build(const std::string& source, const std::string& target) const {
        auto s = index_.find(source);
        auto t = index_.find(target);
        if (s == index_.end() || t == index_.end()) {
            throw GraphError("source or target missing");
        }
        return build(s->second, t->second);
    }

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, NodeIndex> index_;
};

/// Index maps from a graph to its normalized subgraph (nullopt = removed).
struct NormalizationMap {
    std::vector<std::optional<NodeIndex>> node;
    std::vector<std::optional<EdgeIndex>> edge;
};

inline std::vector<bool> forward_reachable(const TaskGraph& g, NodeIndex from) {
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeIndex> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        NodeIndex v = stack.back();
        stack.pop_back();
        for (EdgeIndex e : g.out_edges(v)) {
            NodeIndex w = g.edge(e).head;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

inline std::vector<bool> backward_reachable(const TaskGraph& g, NodeIndex to) {
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeIndex> stack{to};
    seen[to] = true;
    while (!stack.empty()) {
        NodeIndex v = stack.back();
        stack.pop_back();
        for (EdgeIndex e : g.in_edges(v)) {
            NodeIndex w = g.edge(e).tail;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

/// True iff every node lies on some s-t path.
inline bool is_normalized(const TaskGraph& g) {
    auto fwd = forward_reachable(g, g.source());
    auto bwd = backward_reachable(g, g.target());
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (!fwd[v] || !bwd[v]) {
            return false;
        }
    }
    return true;
}

/// Restricts g to the nodes on some s-t path, keeping ids, labels and the
/// relative order of surviving nodes and edges.
inline std::pair<TaskGraph, NormalizationMap> normalize_with_map(const TaskGraph& g) {
    auto fwd = forward_reachable(g, g.source());
    if (!fwd[g.target()]) {
        throw GraphError("no s-t path");
    }
    auto bwd = backward_reachable(g, g.target());
    NormalizationMap map;
    map.node.resize(g.node_count());
    map.edge.resize(g.edge_count());
    std::vector<Node> nodes;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (fwd[v] && bwd[v]) {
            map.node[v] = nodes.size();
            nodes.push_back(g.node(v));
        }
    }
    std::vector<Edge> edges;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        if (map.node[ed.tail] && map.node[ed.head]) {
            map.edge[e] = edges.size();
            edges.push_back({*map.node[ed.tail], *map.node[ed.head], ed.cost});
        }
    }
    TaskGraph out(std::move(nodes), std::move(edges), *map.node[g.source()], *map.node[g.target()]);
    return {std::move(out), std::move(map)};
}

inline TaskGraph normalize_graph(const TaskGraph& g) { return normalize_with_map(g).first; }

/// Sparse non-negative extra costs keyed by edge index (absent = 0).
class CostConfiguration {
public:
    CostConfiguration() = default;

    void set(EdgeIndex e, const Rational& extra) {
        if (extra.sign() < 0) {
            throw std::invalid_argument("negative extra cost " + extra.str() + " on edge " + std::to_string(e));
        }
        if (extra.sign() == 0) {
            extras_.erase(e);
        } else {
            extras_[e] = extra;
        }
    }

    Rational get(EdgeIndex e) const {
        auto it = extras_.find(e);
        return it == extras_.end() ? Rational(0) : it->second;
    }

    /// Non-zero entries in ascending edge order.
    const std::map<EdgeIndex, Rational>& extras() const { return extras_; }
    bool empty() const { return extras_.empty(); }

    void check_against(const TaskGraph& g) const {
        if (!extras_.empty() && extras_.rbegin()->first >= g.edge_count()) {
            throw GraphError("configuration references unknown edge " + std::to_string(extras_.rbegin()->first));
        }
    }

    friend bool operator==(const CostConfiguration& a, const CostConfiguration& b) { return a.extras_ == b.extras_; }

private:
    std::map<EdgeIndex, Rational> extras_;
};

/// The graph with every edge cost raised by its configured extra.
inline TaskGraph apply_configuration(const TaskGraph& g, const CostConfiguration& cc) {
    cc.check_against(g);
    if (cc.empty()) {
        return g;
    }
    std::vector<Edge> edges = g.edges();
    for (const auto& [e, extra] : cc.extras()) {
        edges[e].cost += extra;
    }
    return TaskGraph(g.nodes(), std::move(edges), g.source(), g.target());
}

} // namespace pbplan

#endif
