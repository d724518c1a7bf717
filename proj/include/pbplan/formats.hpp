#ifndef PBPLAN_FORMATS_HPP
#define PBPLAN_FORMATS_HPP

#include "pbplan/agent.hpp"
#include "pbplan/bias_set.hpp"
#include "pbplan/incentives.hpp"
#include "pbplan/rational.hpp"
#include "pbplan/reduction.hpp"
#include "pbplan/task_graph.hpp"
#include "pbplan/vector_scheduling.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// JSON documents. Key order is preserved on output so files diff cleanly.
//
//   graph:    {"nodes": [label...], "ids": [int...] (optional), "source": label,
//              "target": label, "edges": [{"tail", "head", "cost"}...]}
//   bias set: [[lo, hi]...]
//   config:   [{"edge": index, "extra": rational}...]
//
// Rationals are written as JSON integers when integral and as "p/q" strings
// otherwise; both forms (and integer strings) are accepted on input.

namespace pbplan {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Json rational_to_json(const Rational& x) {
    if (x.is_integer() && x.mpq().get_num().fits_slong_p()) {
        return Json(static_cast<std::int64_t>(x.mpq().get_num().get_si()));
    }
    return Json(x.str());
}

inline Rational rational_from_json(const Json& j, const std::string& what) {
    try {
        if (j.is_number_integer()) {
            return Rational(j.get<std::int64_t>());
        }
        if (j.is_string()) {
            return Rational::parse(j.get<std::string>());
        }
    } catch (const std::exception& e) {
        throw ParseError(what + ": " + e.what());
    }
    throw ParseError(what + ": expected an integer or a \"p/q\" string, got " + j.dump());
}

/// Exact string plus a 15-significant-digit decimal, for reports.
inline void put_rational(Json& obj, const std::string& key, const Rational& x) {
    obj[key] = x.str();
    obj[key + "_decimal"] = x.decimal();
}

namespace detail {

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) {
        throw ParseError(where + ": expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(where + ": missing field '" + key + "'");
    }
    return *it;
}

inline std::string string_field(const Json& obj, const char* key, const std::string& where) {
    const Json& v = field(obj, key, where);
    if (!v.is_string()) {
        throw ParseError(where + ": field '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

inline std::size_t index_field(const Json& obj, const char* key, const std::string& where) {
    const Json& v = field(obj, key, where);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ParseError(where + ": field '" + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

} // namespace detail

inline Json graph_to_json(const TaskGraph& g) {
    Json doc = Json::object();
    Json labels = Json::array();
    bool dense = true;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        labels.push_back(g.node(v).label);
        dense = dense && g.node(v).id == v;
    }
    doc["nodes"] = std::move(labels);
    if (!dense) {
        Json ids = Json::array();
        for (const auto& n : g.nodes()) {
            ids.push_back(n.id);
        }
        doc["ids"] = std::move(ids);
    }
    doc["source"] = g.label(g.source());
    doc["target"] = g.label(g.target());
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        Json ej = Json::object();
        ej["tail"] = g.label(e.tail);
        ej["head"] = g.label(e.head);
        ej["cost"] = rational_to_json(e.cost);
        edges.push_back(std::move(ej));
    }
    doc["edges"] = std::move(edges);
    return doc;
}

inline TaskGraph graph_from_json(const Json& doc) {
    const std::string where = "graph";
    const Json& nodes_j = detail::field(doc, "nodes", where);
    if (!nodes_j.is_array()) {
        throw ParseError("graph: 'nodes' must be a list of labels");
    }
    std::vector<Node> nodes;
    std::unordered_map<std::string, NodeIndex> index;
    for (const auto& n : nodes_j) {
        if (!n.is_string()) {
            throw ParseError("graph: node labels must be strings");
        }
        const auto label = n.get<std::string>();
        if (!index.emplace(label, nodes.size()).second) {
            throw ParseError("graph: duplicate node label '" + label + "'");
        }
        nodes.push_back({nodes.size(), label});
    }
    if (auto it = doc.find("ids"); it != doc.end()) {
        if (!it->is_array() || it->size() != nodes.size()) {
            throw ParseError("graph: 'ids' must list one id per node");
        }
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const Json& id = (*it)[i];
            if (!id.is_number_integer() || id.get<std::int64_t>() < 0) {
                throw ParseError("graph: ids must be non-negative integers");
            }
            nodes[i].id = id.get<std::size_t>();
        }
    }
    auto lookup = [&](const std::string& label, const std::string& role) {
        auto it = index.find(label);
        if (it == index.end()) {
            throw ParseError("graph: " + role + " '" + label + "' is not a declared node");
        }
        return it->second;
    };
    const NodeIndex s = lookup(detail::string_field(doc, "source", where), "source");
    const NodeIndex t = lookup(detail::string_field(doc, "target", where), "target");
    const Json& edges_j = detail::field(doc, "edges", where);
    if (!edges_j.is_array()) {
        throw ParseError("graph: 'edges' must be a list");
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < edges_j.size(); ++i) {
        const std::string ew = "graph edge " + std::to_string(i);
        const Json& ej = edges_j[i];
        Edge e;
        e.tail = lookup(detail::string_field(ej, "tail", ew), "tail");
        e.head = lookup(detail::string_field(ej, "head", ew), "head");
        e.cost = rational_from_json(detail::field(ej, "cost", ew), ew + " cost");
        if (e.cost.sign() < 0) {
            throw ParseError(ew + ": negative cost " + e.cost.str());
        }
        edges.push_back(std::move(e));
    }
    try {
        return TaskGraph(std::move(nodes), std::move(edges), s, t);
    } catch (const GraphError& e) {
        throw ParseError(std::string("graph: ") + e.what());
    }
}

inline Json bias_to_json(const BiasSet& b) {
    Json doc = Json::array();
    for (const auto& iv : b.intervals()) {
        doc.push_back(Json::array({rational_to_json(iv.lo), rational_to_json(iv.hi)}));
    }
    return doc;
}

inline BiasSet bias_from_json(const Json& doc) {
    if (!doc.is_array() || doc.empty()) {
        throw ParseError("bias set: expected a non-empty list of [lo, hi] pairs");
    }
    std::vector<BiasSet::Interval> ivs;
    for (const auto& p : doc) {
        if (!p.is_array() || p.size() != 2) {
            throw ParseError("bias set: every entry must be a [lo, hi] pair, got " + p.dump());
        }
        ivs.push_back({rational_from_json(p[0], "bias lo"), rational_from_json(p[1], "bias hi")});
    }
    try {
        return BiasSet(std::move(ivs));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bias set: ") + e.what());
    }
}

inline Json config_to_json(const CostConfiguration& cc) {
    Json doc = Json::array();
    for (const auto& [e, extra] : cc.extras()) {
        Json ej = Json::object();
        ej["edge"] = e;
        ej["extra"] = rational_to_json(extra);
        doc.push_back(std::move(ej));
    }
    return doc;
}

inline CostConfiguration config_from_json(const Json& doc) {
    if (!doc.is_array()) {
        throw ParseError("configuration: expected a list of {edge, extra}");
    }
    CostConfiguration cc;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string w = "configuration entry " + std::to_string(i);
        const std::size_t e = detail::index_field(doc[i], "edge", w);
        const Rational extra = rational_from_json(detail::field(doc[i], "extra", w), w + " extra");
        if (extra.sign() < 0) {
            throw ParseError(w + ": negative extra " + extra.str());
        }
        cc.set(e, cc.get(e) + extra);
    }
    return cc;
}

inline Json verdict_to_json(const TaskGraph& g, const Verdict& v) {
    Json doc = Json::object();
    doc["motivating"] = v.motivating;
    Json ws = Json::array();
    for (const auto& w : v.witnesses) {
        Json wj = Json::object();
        wj["node"] = g.label(w.node);
        put_rational(wj, "beta", w.beta);
        put_rational(wj, "perceived", w.perceived);
        put_rational(wj, "bound", w.bound);
        ws.push_back(std::move(wj));
    }
    doc["witnesses"] = std::move(ws);
    if (v.required_reward) {
        put_rational(doc, "required_reward", *v.required_reward);
    } else {
        doc["required_reward"] = nullptr;
    }
    return doc;
}

inline Json threshold_to_json(const Threshold& th) {
    Json doc = Json::object();
    doc["exact"] = th.exact;
    put_rational(doc, "lo", th.lo);
    put_rational(doc, "hi", th.hi);
    return doc;
}

inline Json vs_instance_to_json(const VSInstance& inst) {
    Json doc = Json::object();
    doc["machines"] = inst.machines();
    doc["jobs"] = inst.jobs();
    return doc;
}

inline VSInstance vs_instance_from_json(const Json& doc) {
    const std::size_t m = detail::index_field(doc, "machines", "vector scheduling instance");
    const Json& jobs_j = detail::field(doc, "jobs", "vector scheduling instance");
    try {
        return VSInstance(m, jobs_j.get<std::vector<std::vector<int>>>());
    } catch (const Json::exception& e) {
        throw ParseError(std::string("vector scheduling instance: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("vector scheduling instance: ") + e.what());
    }
}

inline Json schedule_to_json(const Schedule& s) {
    Json doc = Json::object();
    doc["assignment"] = s.assignment;
    doc["makespan"] = s.makespan;
    return doc;
}

inline Schedule schedule_from_json(const Json& doc, const VSInstance& inst) {
    const Json& a = detail::field(doc, "assignment", "schedule");
    try {
        return make_schedule(inst, a.get<std::vector<std::size_t>>());
    } catch (const Json::exception& e) {
        throw ParseError(std::string("schedule: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("schedule: ") + e.what());
    }
}

namespace detail {

inline const char* node_role_name(ReductionNodeRole r) {
    switch (r) {
    case ReductionNodeRole::Connector: return "connector";
    case ReductionNodeRole::ConnectorInner: return "connector_inner";
    case ReductionNodeRole::LevelNode: return "level";
    case ReductionNodeRole::ShortcutMid: return "shortcut_mid";
    case ReductionNodeRole::Target: return "target";
    }
    return "?";
}

inline const char* edge_role_name(ReductionEdgeRole r) {
    switch (r) {
    case ReductionEdgeRole::LevelPath: return "level_path";
    case ReductionEdgeRole::Shortcut1Initial: return "shortcut1_initial";
    case ReductionEdgeRole::Shortcut1Final: return "shortcut1_final";
    case ReductionEdgeRole::Shortcut2: return "shortcut2";
    case ReductionEdgeRole::Shortcut3: return "shortcut3";
    case ReductionEdgeRole::Connector: return "connector";
    }
    return "?";
}

template <class Role, std::size_t N>
Role role_from_name(const std::string& name, const Role (&roles)[N], const char* (*namer)(Role)) {
    for (Role r : roles) {
        if (name == namer(r)) {
            return r;
        }
    }
    throw ParseError("reduction metadata: unknown role '" + name + "'");
}

} // namespace detail

/// Compact row form: node [role, machine, dim, level, pos];
/// edge [role, machine, dim, level, path_machine, path_job, path_initial].
inline Json meta_to_json(const ReductionMeta& meta) {
    Json doc = Json::object();
    doc["ell"] = meta.ell;
    doc["instance"] = vs_instance_to_json(meta.instance);
    Json nodes = Json::array();
    for (const auto& n : meta.nodes) {
        nodes.push_back(Json::array({detail::node_role_name(n.role), n.machine, n.dim, n.level, n.pos}));
    }
    doc["nodes"] = std::move(nodes);
    Json edges = Json::array();
    for (const auto& e : meta.edges) {
        edges.push_back(Json::array({detail::edge_role_name(e.role), e.machine, e.dim, e.level, e.path_machine,
                                     e.path_job, e.path_initial}));
    }
    doc["edges"] = std::move(edges);
    return doc;
}

inline ReductionMeta meta_from_json(const Json& doc) {
    static constexpr ReductionNodeRole node_roles[] = {ReductionNodeRole::Connector, ReductionNodeRole::ConnectorInner,
                                                       ReductionNodeRole::LevelNode, ReductionNodeRole::ShortcutMid,
                                                       ReductionNodeRole::Target};
    static constexpr ReductionEdgeRole edge_roles[] = {
        ReductionEdgeRole::LevelPath, ReductionEdgeRole::Shortcut1Initial, ReductionEdgeRole::Shortcut1Final,
        ReductionEdgeRole::Shortcut2, ReductionEdgeRole::Shortcut3,        ReductionEdgeRole::Connector};
    try {
        ReductionMeta meta{vs_instance_from_json(detail::field(doc, "instance", "reduction metadata")),
                           detail::field(doc, "ell", "reduction metadata").get<std::int64_t>(),
                           {},
                           {}};
        for (const auto& row : detail::field(doc, "nodes", "reduction metadata")) {
            meta.nodes.push_back({detail::role_from_name(row.at(0).get<std::string>(), node_roles,
                                                         &detail::node_role_name),
                                  row.at(1).get<int>(), row.at(2).get<int>(), row.at(3).get<int>(),
                                  row.at(4).get<int>()});
        }
        for (const auto& row : detail::field(doc, "edges", "reduction metadata")) {
            meta.edges.push_back({detail::role_from_name(row.at(0).get<std::string>(), edge_roles,
                                                         &detail::edge_role_name),
                                  row.at(1).get<int>(), row.at(2).get<int>(), row.at(3).get<int>(),
                                  row.at(4).get<int>(), row.at(5).get<int>(), row.at(6).get<bool>()});
        }
        return meta;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("reduction metadata: ") + e.what());
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline TaskGraph parse_graph(const std::string& text) { return graph_from_json(parse_json_text(text)); }
inline std::string serialize_graph(const TaskGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

} // namespace pbplan

#endif
