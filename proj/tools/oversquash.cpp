#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oversquash/oversquash.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct GraphDeleter {
    void operator()(os_graph* g) const { os_graph_free(g); }
};
struct ReportDeleter {
    void operator()(os_report* r) const { os_report_free(r); }
};
struct StringDeleter {
    void operator()(char* s) const { os_string_free(s); }
};
using GraphPtr = std::unique_ptr<os_graph, GraphDeleter>;
using ReportPtr = std::unique_ptr<os_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Carries a failed C API status up to main, which turns it into an exit code.
struct StatusError {
    os_status status;
    std::string message;
};

void check(os_status s) {
    if (s != OS_OK) throw StatusError{s, os_last_error()};
}

struct Usage {
    std::string message;
};

struct Globals {
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
};

std::string take(char* raw) {
    StringPtr owned(raw);
    return owned ? std::string(owned.get()) : std::string();
}

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw Usage{"cannot open '" + g.out + "' for writing"};
    f << text;
}

void emit_report(const Globals& g, const os_report* report) {
    char* text = nullptr;
    check(os_report_render(report, g.format == "csv" ? OS_FORMAT_CSV : OS_FORMAT_JSON, &text));
    emit(g, take(text));
}

void dump_matrices(const os_report* report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    char* raw = nullptr;
    check(os_report_matrix_names(report, &raw));
    std::stringstream names(take(raw));
    std::string name;
    while (std::getline(names, name, ',')) {
        char* csv = nullptr;
        check(os_report_matrix_csv(report, name.c_str(), &csv));
        std::ofstream f(std::filesystem::path(dir) / (name + ".csv"), std::ios::binary);
        if (!f) throw Usage{"cannot write matrices into '" + dir + "'"};
        f << take(csv);
    }
}

GraphPtr load(const std::string& path) {
    os_graph* g = nullptr;
    check(os_graph_load(path.c_str(), &g));
    return GraphPtr(g);
}

// "all" (or empty) -> no pairs; otherwise "v:u,v:u,...".
std::vector<int> parse_pairs(const std::string& spec) {
    std::vector<int> out;
    if (spec.empty() || spec == "all") return out;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw Usage{"pair '" + item + "' is not of the form v:u"};
        try {
            std::size_t used_v = 0, used_u = 0;
            const std::string vs = item.substr(0, colon), us = item.substr(colon + 1);
            const int v = std::stoi(vs, &used_v), u = std::stoi(us, &used_u);
            if (used_v != vs.size() || used_u != us.size()) throw std::invalid_argument(item);
            out.push_back(v);
            out.push_back(u);
        } catch (const std::logic_error&) {
            throw Usage{"pair '" + item + "' is not of the form v:u"};
        }
    }
    return out;
}

int pair_count(const std::vector<int>& pairs) { return static_cast<int>(pairs.size() / 2); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Over-squashing analysis: sensitivity bounds, spectral connectivity, "
                 "rewiring and synthetic transfer tasks."};
    app.require_subcommand(1);
    // global flags may follow the subcommand
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--format", g.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", g.out, "Write the report here instead of stdout");

    // generate
    auto* gen = app.add_subcommand("generate", "Build a graph from a named family");
    std::string family = "ring";
    int size = 6, extra = 0;
    gen->add_option("--family", family,
                    "ring, crossed_ring, clique_path, path, cycle, complete, barbell, random")
        ->capture_default_str();
    gen->add_option("--size", size, "r for transfer families, n or clique size otherwise")
        ->capture_default_str();
    gen->add_option("--extra", extra, "Extra random edges (random family)")->capture_default_str();

    // metrics
    auto* met = app.add_subcommand("metrics", "Spectral connectivity metrics of a graph");
    std::string graph_path, matrices_dir;
    met->add_option("graph", graph_path, "Graph file (edge list or JSON)")->required();
    met->add_option("--matrices", matrices_dir, "Also write resistance/commute/access CSVs here");

    // sensitivity
    auto* sen = app.add_subcommand("sensitivity", "Exact Jacobian norms against the bounds");
    os_mpnn_config mc = os_mpnn_config_default();
    std::string shift = mc.shift, sigma = mc.sigma, pairs_spec;
    int walk_length = 0;
    sen->add_option("graph", graph_path, "Graph file")->required();
    sen->add_option("--depth", mc.depth)->capture_default_str();
    sen->add_option("--width", mc.width)->capture_default_str();
    sen->add_option("--cr", mc.c_r)->capture_default_str();
    sen->add_option("--ca", mc.c_a)->capture_default_str();
    sen->add_option("--sigma", sigma)->check(CLI::IsMember({"relu", "tanh", "identity"}))
        ->capture_default_str();
    sen->add_option("--shift", shift)
        ->check(CLI::IsMember({"adjacency", "random_walk", "symmetric"}))
        ->capture_default_str();
    sen->add_option("--scale", mc.weight_scale, "Weights uniform in [-scale, scale]")
        ->capture_default_str();
    sen->add_option("--pairs", pairs_spec, "all or v:u,v:u,...");
    sen->add_option("--walk-diffusion", walk_length,
                    "Instead report the walk-diffusion operators up to this length");
    sen->add_option("--matrices", matrices_dir, "With --walk-diffusion, write operator CSVs here");

    // obstruction
    auto* obs = app.add_subcommand("obstruction", "Jacobian obstruction envelopes per pair");
    os_obstruction_config oc = os_obstruction_config_default();
    std::string mode = oc.mode;
    obs->add_option("graph", graph_path, "Graph file")->required();
    obs->add_option("--rho", oc.rho)->capture_default_str();
    obs->add_option("--nu", oc.nu)->capture_default_str();
    obs->add_option("--mu", oc.mu)->capture_default_str();
    obs->add_option("--cr", oc.c_r)->capture_default_str();
    obs->add_option("--ca", oc.c_a)->capture_default_str();
    obs->add_option("--depth", oc.depth)->capture_default_str();
    obs->add_option("--mode", mode)->check(CLI::IsMember({"access", "commute"}))
        ->capture_default_str();
    obs->add_option("--pairs", pairs_spec, "all or v:u,v:u,...");

    // rewire
    auto* rew = app.add_subcommand("rewire", "Add edges to improve connectivity");
    os_rewire_config rc = os_rewire_config_default();
    std::string strategy = rc.strategy, objective, graph_out;
    std::optional<double> threshold;
    rew->add_option("graph", graph_path, "Graph file")->required();
    rew->add_option("--strategy", strategy)
        ->check(CLI::IsMember({"spatial_threshold", "spatial_diameter", "spectral_gap",
                               "resistance"}))
        ->capture_default_str();
    rew->add_option("--budget", rc.budget)->capture_default_str();
    rew->add_option("--objective", objective)
        ->check(CLI::IsMember({"max_gap", "min_total_resistance"}));
    rew->add_option("--threshold", threshold, "Spatial strategies stop at or below this value");
    rew->add_option("--graph-out", graph_out,
                    "Write the rewired graph here, in the input file's format");

    // transfer
    auto* tra = app.add_subcommand("transfer", "Train on a synthetic graph-transfer task");
    os_transfer_config tc = os_transfer_config_default();
    std::string task = tc.task, model = tc.model;
    tra->add_option("--task", task)->check(CLI::IsMember({"ring", "crossed_ring", "clique_path"}))
        ->capture_default_str();
    tra->add_option("--r", tc.r, "Source-target distance (>= 3)")->capture_default_str();
    tra->add_option("--model", model)->check(CLI::IsMember({"gcn", "sage", "gin"}))
        ->capture_default_str();
    tra->add_option("--hidden", tc.hidden)->capture_default_str();
    tra->add_option("--epochs", tc.epochs)->capture_default_str();
    tra->add_option("--lr", tc.lr)->capture_default_str();
    tra->add_option("--batch", tc.batch_size, "Mini-batch size, 0 for full batch")
        ->capture_default_str();
    tra->add_option("--train", tc.train)->capture_default_str();
    tra->add_option("--test", tc.test)->capture_default_str();
    tra->add_option("--p", tc.p, "Number of classes")->capture_default_str();

    // signal
    auto* sig = app.add_subcommand("signal", "Effective resistance against signal propagation");
    os_signal_config scfg = os_signal_config_default();
    sig->add_option("--graphs", scfg.graphs)->capture_default_str();
    sig->add_option("--min-nodes", scfg.min_nodes)->capture_default_str();
    sig->add_option("--max-nodes", scfg.max_nodes)->capture_default_str();
    sig->add_option("--depth", scfg.depth, "0 picks the rounded mean diameter")
        ->capture_default_str();
    sig->add_option("--width", scfg.width)->capture_default_str();
    sig->add_option("--samples", scfg.samples)->capture_default_str();
    sig->add_option("--models", scfg.models)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc_parse = app.exit(e);
        return rc_parse == 0 ? 0 : kExitValidation;
    }

    try {
        os_report* raw = nullptr;
        if (gen->parsed()) {
            os_graph* made = nullptr;
            check(os_graph_generate(family.c_str(), size, extra, g.seed, &made));
            GraphPtr graph(made);
            check(os_describe(graph.get(), &raw));
        } else if (met->parsed()) {
            auto graph = load(graph_path);
            check(os_metrics(graph.get(), matrices_dir.empty() ? 0 : 1, &raw));
        } else if (sen->parsed()) {
            auto graph = load(graph_path);
            if (walk_length > 0) {
                check(os_walk_diffusion(graph.get(), walk_length, &raw));
            } else {
                mc.shift = shift.c_str();
                mc.sigma = sigma.c_str();
                mc.seed = g.seed;
                const auto pairs = parse_pairs(pairs_spec);
                check(os_sensitivity(graph.get(), &mc, pairs.data(), pair_count(pairs), &raw));
            }
        } else if (obs->parsed()) {
            auto graph = load(graph_path);
            oc.mode = mode.c_str();
            const auto pairs = parse_pairs(pairs_spec);
            check(os_obstruction(graph.get(), &oc, pairs.data(), pair_count(pairs), &raw));
        } else if (rew->parsed()) {
            auto graph = load(graph_path);
            rc.strategy = strategy.c_str();
            rc.objective = objective.empty() ? nullptr : objective.c_str();
            rc.threshold = threshold ? *threshold : std::numeric_limits<double>::quiet_NaN();
            rc.seed = g.seed;
            os_graph* out_graph = nullptr;
            check(os_rewire(graph.get(), &rc, &out_graph, &raw));
            GraphPtr rewired(out_graph);
            if (!graph_out.empty()) {
                const bool as_json = graph_path.size() >= 5 &&
                                     graph_path.compare(graph_path.size() - 5, 5, ".json") == 0;
                char* text = nullptr;
                check(os_graph_serialize(rewired.get(), as_json ? OS_GRAPH_JSON : OS_GRAPH_EDGE_LIST,
                                         &text));
                std::ofstream f(graph_out, std::ios::binary);
                if (!f) throw Usage{"cannot open '" + graph_out + "' for writing"};
                f << take(text);
            }
        } else if (tra->parsed()) {
            tc.task = task.c_str();
            tc.model = model.c_str();
            tc.seed = g.seed;
            check(os_transfer(&tc, &raw));
        } else if (sig->parsed()) {
            scfg.seed = g.seed;
            check(os_signal(&scfg, &raw));
        }
        ReportPtr report(raw);
        if (!matrices_dir.empty()) dump_matrices(report.get(), matrices_dir);
        emit_report(g, report.get());
        return 0;
    } catch (const StatusError& e) {
        std::cerr << "error: " << os_status_name(e.status) << ": " << e.message << "\n";
        const bool numerical = os_status_is_numerical(e.status) || e.status == OS_INTERNAL;
        return numerical ? kExitNumerical : kExitValidation;
    } catch (const Usage& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitValidation;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
