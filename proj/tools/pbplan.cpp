// pbplan: command-line front end for the present-bias planning library.
//
// Exit status: 0 success / motivating / feasible, 1 not motivating /
// infeasible / nothing found, 2 usage or input error.

#include "pbplan/pbplan.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace pbplan;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational_flag(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write '" + path + "'");
    }
    out << text;
}

void emit_json(const std::string& path, const Json& doc) { emit(path, doc.dump(2) + "\n"); }

TaskGraph load_graph(const std::string& path) { return graph_from_json(read_json_file(path)); }
BiasSet load_bias(const std::string& path) { return bias_from_json(read_json_file(path)); }

CostConfiguration load_config(const std::string& path, const TaskGraph& g) {
    CostConfiguration cc = config_from_json(read_json_file(path));
    try {
        cc.check_against(g);
    } catch (const GraphError& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
    return cc;
}

VerifierMode parse_mode(const std::string& m) {
    if (m == "uncertain") {
        return VerifierMode::Uncertain;
    }
    if (m == "variable") {
        return VerifierMode::Variable;
    }
    throw UsageError("--mode must be 'uncertain' or 'variable', got '" + m + "'");
}

/// "3" (index) or "tail->head" (labels, must be unique).
EdgeIndex parse_edge_ref(const TaskGraph& g, const std::string& ref) {
    const auto arrow = ref.find("->");
    if (arrow != std::string::npos) {
        return g.edge_between(ref.substr(0, arrow), ref.substr(arrow + 2));
    }
    try {
        std::size_t used = 0;
        const unsigned long long e = std::stoull(ref, &used);
        if (used != ref.size() || e >= g.edge_count()) {
            throw std::out_of_range(ref);
        }
        return static_cast<EdgeIndex>(e);
    } catch (const std::logic_error&) {
        throw UsageError("unknown edge '" + ref + "'");
    }
}

Json path_labels(const TaskGraph& g, const std::vector<NodeIndex>& path) {
    Json out = Json::array();
    for (NodeIndex v : path) {
        out.push_back(g.label(v));
    }
    return out;
}

// Shared flag storage; every subcommand reads the subset it registers.
struct Flags {
    std::string graph, bias, config, reward, beta, mode, out, tol = "1/1099511627776";
    std::string bias_out, meta, meta_out, schedule, instance_id = "instance", lower;
    std::vector<std::string> candidates;
    std::vector<std::string> edges;
    std::string grid, cap, param, vs;
    std::uint64_t seed = 1;
    std::size_t n = 8;
    std::int64_t den = 4;
    std::uint64_t budget = 5'000'000;
};

int run_gen(const std::string& family, const Flags& f) {
    TaskGraph g;
    std::optional<BiasSet> biases;
    if (family == "alice-bob") {
        const Rational eps = parse_rational_flag(f.param.empty() ? "1/54" : f.param, "--eps");
        g = gen_alice_bob(eps);
        biases = alice_bob_biases(eps);
    } else if (family == "pou") {
        const Rational a = parse_rational_flag(f.param.empty() ? "1/4" : f.param, "--a");
        g = gen_pou_family(a);
        biases = BiasSet::points({a, Rational(1, 2)});
    } else if (family == "pov") {
        const Rational a = parse_rational_flag(f.param.empty() ? "1/4" : f.param, "--a");
        g = gen_pov_family(a);
        biases = BiasSet::points({a, Rational(1)});
    } else if (family == "random") {
        g = gen_random_dag(f.seed, f.n, f.den);
    } else {
        throw UsageError("unknown family '" + family + "' (alice-bob, pou, pov, random)");
    }
    emit_json(f.out, graph_to_json(g));
    if (!f.bias_out.empty()) {
        if (!biases) {
            throw UsageError("--bias-out: the random family has no associated bias set");
        }
        emit_json(f.bias_out, bias_to_json(*biases));
    }
    return kOk;
}

int run_verify(const Flags& f) {
    TaskGraph g = load_graph(f.graph);
    if (!f.config.empty()) {
        g = apply_configuration(g, load_config(f.config, g));
    }
    const Rational r = parse_rational_flag(f.reward, "--reward");
    Verdict v;
    if (f.mode == "fixed") {
        if (f.beta.empty()) {
            throw UsageError("--mode fixed needs --beta");
        }
        const Rational beta = parse_rational_flag(f.beta, "--beta");
        require_bias(beta);
        v = is_motivating_fixed(g, beta, r);
    } else {
        if (f.bias.empty()) {
            throw UsageError("--mode " + f.mode + " needs --bias");
        }
        v = verify(g, load_bias(f.bias), r, parse_mode(f.mode));
    }
    emit_json(f.out, verdict_to_json(g, v));
    return v.motivating ? kOk : kNegative;
}

int run_approx(const Flags& f) {
    const TaskGraph g = load_graph(f.graph);
    const BiasSet b = load_bias(f.bias);
    const VerifierMode mode = parse_mode(f.mode);
    const ApproxResult res = mode == VerifierMode::Uncertain ? uncertain_approx(g, b) : variable_approx(g, b);
    const Verdict check = verify(apply_configuration(g, res.config), b, res.reward, mode);
    Json doc = Json::object();
    doc["mode"] = mode_name(mode);
    put_rational(doc, "alpha", res.minmax.alpha);
    put_rational(doc, "lower", res.lower);
    put_rational(doc, "reward", res.reward);
    doc["minmax_path"] = path_labels(g, res.minmax.path);
    doc["verified"] = check.motivating;
    doc["config"] = config_to_json(res.config);
    emit_json(f.out, doc);
    return check.motivating ? kOk : kNegative;
}

int run_cns(const Flags& f) {
    const TaskGraph g = load_graph(f.graph);
    const BiasSet b = load_bias(f.bias);
    Json doc = Json::object();
    if (f.reward.empty()) {
        const Threshold th = cns_threshold(g, b, parse_rational_flag(f.tol, "--tol"));
        doc["threshold"] = threshold_to_json(th);
        emit_json(f.out, doc);
        return kOk;
    }
    const Rational r = parse_rational_flag(f.reward, "--reward");
    const CnsTable table = decide_cns(g, b, r);
    doc["feasible"] = table.feasible;
    put_rational(doc, "reward", r);
    Json w = Json::array();
    for (NodeIndex v : table.witness()) {
        w.push_back(g.label(v));
    }
    doc["witness"] = std::move(w);
    if (table.feasible) {
        const CostConfiguration cc = cns_configuration(g, table, r);
        doc["config"] = config_to_json(cc);
        doc["verified"] = is_motivating_variable(apply_configuration(g, cc), b, r).motivating;
    }
    emit_json(f.out, doc);
    return table.feasible ? kOk : kNegative;
}

int run_price(const Flags& f) {
    const TaskGraph g = load_graph(f.graph);
    const BiasSet b = load_bias(f.bias);
    PriceOptions opts;
    opts.instance = f.instance_id;
    opts.tol = parse_rational_flag(f.tol, "--tol");
    for (const auto& path : f.candidates) {
        opts.candidates.push_back(load_config(path, g));
    }
    if (!f.config.empty()) {
        opts.candidates.push_back(load_config(f.config, g));
    }
    if (!f.lower.empty()) {
        opts.known_lower = parse_rational_flag(f.lower, "--lower");
    }
    std::ostringstream csv;
    write_report_csv(csv, run_price_report(g, b, parse_mode(f.mode), opts));
    emit(f.out, csv.str());
    return kOk;
}

int run_reduce(const std::string& action, const Flags& f) {
    if (action == "build") {
        const Reduction red = gen_vs_reduction(vs_instance_from_json(read_json_file(f.vs)));
        emit_json(f.out, graph_to_json(red.graph));
        if (!f.meta_out.empty()) {
            emit_json(f.meta_out, meta_to_json(red.meta));
        }
        if (!f.bias_out.empty()) {
            emit_json(f.bias_out, bias_to_json(red.biases));
        }
        return kOk;
    }
    const TaskGraph g = load_graph(f.graph);
    const ReductionMeta meta = meta_from_json(read_json_file(f.meta));
    if (action == "configure") {
        const Schedule sched = f.schedule.empty() ? brute_force_schedule(meta.instance)
                                                  : schedule_from_json(read_json_file(f.schedule), meta.instance);
        const auto [cc, reward] = schedule_configuration(g, meta, sched);
        Json doc = Json::object();
        doc["schedule"] = schedule_to_json(sched);
        put_rational(doc, "reward", reward);
        doc["config"] = config_to_json(cc);
        emit_json(f.out, doc);
        return kOk;
    }
    if (action == "extract") {
        const CostConfiguration cc = f.config.empty() ? CostConfiguration{} : load_config(f.config, g);
        try {
            const Schedule s = extract_schedule(g, meta, cc, parse_rational_flag(f.reward, "--reward"));
            emit_json(f.out, schedule_to_json(s));
            return kOk;
        } catch (const ExtractionError& e) {
            std::cerr << "pbplan: extraction failed: " << e.what() << "\n";
            return kNegative;
        }
    }
    throw UsageError("unknown reduce-vs action '" + action + "' (build, configure, extract)");
}

int run_sweep(const Flags& f) {
    const TaskGraph g = load_graph(f.graph);
    const BiasSet b = load_bias(f.bias);
    std::vector<EdgeIndex> edges;
    for (const auto& ref : f.edges) {
        edges.push_back(parse_edge_ref(g, ref));
    }
    SweepOptions opts;
    opts.budget = f.budget;
    const auto found = sweep_configurations(g, edges, parse_rational_flag(f.grid, "--grid"),
                                            parse_rational_flag(f.cap, "--cap"), b,
                                            parse_rational_flag(f.reward, "--reward"), parse_mode(f.mode), opts);
    Json doc = Json::object();
    doc["found"] = found.has_value();
    doc["config"] = found ? config_to_json(*found) : Json(nullptr);
    emit_json(f.out, doc);
    return found ? kOk : kNegative;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Present-bias planning on task graphs"};
    app.require_subcommand(1);
    Flags f;

    auto* gen = app.add_subcommand("gen", "Generate an instance graph (JSON)");
    std::string family;
    gen->add_option("family", family, "alice-bob | pou | pov | random")->required();
    gen->add_option("--eps,--a", f.param, "Family parameter (rational)");
    gen->add_option("--seed", f.seed, "Random seed");
    gen->add_option("--n", f.n, "Random DAG node count");
    gen->add_option("--den", f.den, "Random cost denominator");
    gen->add_option("--out", f.out, "Graph output file (default stdout)");
    gen->add_option("--bias-out", f.bias_out, "Write the family's bias set here");

    auto* ver = app.add_subcommand("verify", "Check whether a graph is motivating");
    ver->add_option("--graph", f.graph)->required();
    ver->add_option("--bias", f.bias);
    ver->add_option("--config", f.config);
    ver->add_option("--reward", f.reward)->required();
    ver->add_option("--beta", f.beta);
    ver->add_option("--mode", f.mode, "fixed | uncertain | variable")->default_val("uncertain");
    ver->add_option("--out", f.out);

    auto* apx = app.add_subcommand("approx", "Approximate incentive configuration");
    apx->add_option("--graph", f.graph)->required();
    apx->add_option("--bias", f.bias)->required();
    apx->add_option("--mode", f.mode)->default_val("uncertain");
    apx->add_option("--out", f.out);

    auto* cns = app.add_subcommand("cns", "Critical node set decision / threshold (requires 1 in B)");
    cns->add_option("--graph", f.graph)->required();
    cns->add_option("--bias", f.bias)->required();
    cns->add_option("--reward", f.reward, "Decide at this reward; omit to search the threshold");
    cns->add_option("--tol", f.tol);
    cns->add_option("--out", f.out);

    auto* price = app.add_subcommand("price", "Price of uncertainty / variability bounds (CSV)");
    price->add_option("--graph", f.graph)->required();
    price->add_option("--bias", f.bias)->required();
    price->add_option("--mode", f.mode)->default_val("uncertain");
    price->add_option("--config", f.candidates, "Candidate configuration (repeatable)");
    price->add_option("--lower", f.lower, "Known lower bound on the reward for all of B");
    price->add_option("--instance", f.instance_id);
    price->add_option("--tol", f.tol);
    price->add_option("--out", f.out);

    auto* red = app.add_subcommand("reduce-vs", "Vector scheduling reduction");
    std::string action;
    red->add_option("action", action, "build | configure | extract")->required();
    red->add_option("--vs", f.vs, "Vector scheduling instance (build)");
    red->add_option("--graph", f.graph);
    red->add_option("--meta", f.meta);
    red->add_option("--meta-out", f.meta_out);
    red->add_option("--bias-out", f.bias_out);
    red->add_option("--schedule", f.schedule, "Schedule (configure; default: brute-force optimum)");
    red->add_option("--config", f.config);
    red->add_option("--reward", f.reward);
    red->add_option("--out", f.out);

    auto* sweep = app.add_subcommand("sweep", "Grid search over configurations on up to 3 edges");
    sweep->add_option("--graph", f.graph)->required();
    sweep->add_option("--bias", f.bias)->required();
    sweep->add_option("--edge", f.edges, "Edge index or tail->head (repeatable)");
    sweep->add_option("--grid", f.grid)->required();
    sweep->add_option("--cap", f.cap)->required();
    sweep->add_option("--reward", f.reward)->required();
    sweep->add_option("--mode", f.mode)->default_val("uncertain");
    sweep->add_option("--budget", f.budget);
    sweep->add_option("--out", f.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        if (*gen) {
            return run_gen(family, f);
        }
        if (*ver) {
            return run_verify(f);
        }
        if (*apx) {
            return run_approx(f);
        }
        if (*cns) {
            return run_cns(f);
        }
        if (*price) {
            return run_price(f);
        }
        if (*red) {
            auto need = [&](const std::string& v, const char* flag) {
                if (v.empty()) {
                    throw UsageError(std::string("reduce-vs ") + action + " needs " + flag);
                }
            };
            if (action == "build") {
                need(f.vs, "--vs");
            } else {
                need(f.graph, "--graph");
                need(f.meta, "--meta");
                if (action == "extract") {
                    need(f.reward, "--reward");
                }
            }
            return run_reduce(action, f);
        }
        if (*sweep) {
            return run_sweep(f);
        }
    } catch (const std::exception& e) {
        std::cerr << "pbplan: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
