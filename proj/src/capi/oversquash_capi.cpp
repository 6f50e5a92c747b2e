#include "oversquash/oversquash.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "oversquash/error.hpp"
#include "oversquash/graph.hpp"
#include "oversquash/graph_io.hpp"
#include "oversquash/obstruction.hpp"
#include "oversquash/random.hpp"
#include "oversquash/rewiring.hpp"
#include "oversquash/sensitivity.hpp"
#include "oversquash/signal.hpp"
#include "oversquash/spectral.hpp"
#include "oversquash/stats.hpp"
#include "oversquash/transfer.hpp"
#include "oversquash/walk_diffusion.hpp"
#include "report.hpp"

using namespace oversquash;
using capi::json;
using capi::number;

struct os_graph {
    Graph graph;
    std::optional<TransferTopology> topology;
};

struct os_report {
    capi::Report report;
};

namespace {

thread_local std::string last_error;

os_status to_status(ErrorCode code) {
    // ErrorCode and os_status list the codes in the same order, offset by OS_OK.
    return static_cast<os_status>(static_cast<int>(code) + 1);
}

// Runs `body`, translating exceptions into status codes and the thread's
// last-error message.
template <class F>
os_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return OS_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return OS_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return OS_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require_out(const void* out) {
    require(out != nullptr, ErrorCode::InvalidArgument, "null output pointer");
}

const Graph& graph_of(const os_graph* g) {
    require(g != nullptr, ErrorCode::InvalidArgument, "null graph handle");
    return g->graph;
}

std::vector<Edge> read_pairs(const int* pairs, int count, int n) {
    require(count >= 0 && (count == 0 || pairs != nullptr), ErrorCode::InvalidArgument,
            "pair list is null");
    std::vector<Edge> out;
    for (int i = 0; i < count; ++i) {
        const NodeId v = pairs[2 * i], u = pairs[2 * i + 1];
        require(v >= 0 && v < n && u >= 0 && u < n, ErrorCode::NodeOutOfRange,
                "pair node out of range");
        out.emplace_back(v, u);
    }
    return out;
}

json edges_json(const std::vector<Edge>& edges) {
    json out = json::array();
    for (auto [a, b] : edges) out.push_back({a, b});
    return out;
}

json snapshot_json(const ConnectivitySnapshot& s) {
    return {{"diameter", s.diameter},
            {"spectral_gap", number(s.spectral_gap)},
            {"cheeger_lower", number(s.cheeger_lower)},
            {"cheeger_upper", number(s.cheeger_upper)},
            {"total_resistance", number(s.total_resistance)},
            {"max_commute_time", number(s.max_commute_time)}};
}

json vector_json(const std::vector<double>& xs) {
    json out = json::array();
    for (double x : xs) out.push_back(number(x));
    return out;
}

os_report* make_report(capi::Report r) { return new os_report{std::move(r)}; }

}  // namespace

extern "C" {

const char* os_status_name(os_status status) {
    if (status == OS_OK) return "Ok";
    if (status == OS_INTERNAL) return "Internal";
    if (status < OS_OK || status > OS_INTERNAL) return "Unknown";
    return error_code_name(static_cast<ErrorCode>(static_cast<int>(status) - 1));
}

int os_status_is_numerical(os_status status) {
    if (status <= OS_OK || status >= OS_INTERNAL) return 0;
    return is_numerical(static_cast<ErrorCode>(static_cast<int>(status) - 1)) ? 1 : 0;
}

const char* os_last_error(void) { return last_error.c_str(); }

void os_string_free(char* s) { delete[] s; }

os_status os_graph_create(int num_nodes, const int* edges, int num_edges, os_graph** out) {
    return guarded([&] {
        require_out(out);
        require(num_edges >= 0 && (num_edges == 0 || edges != nullptr),
                ErrorCode::InvalidArgument, "edge list is null");
        std::vector<Edge> list;
        for (int i = 0; i < num_edges; ++i) list.emplace_back(edges[2 * i], edges[2 * i + 1]);
        *out = new os_graph{Graph(num_nodes, list), std::nullopt};
    });
}

os_status os_graph_parse(const char* text, os_graph** out) {
    return guarded([&] {
        require_out(out);
        require(text != nullptr, ErrorCode::InvalidArgument, "null text");
        *out = new os_graph{parse_graph(text), std::nullopt};
    });
}

os_status os_graph_load(const char* path, os_graph** out) {
    return guarded([&] {
        require_out(out);
        require(path != nullptr, ErrorCode::InvalidArgument, "null path");
        *out = new os_graph{load_graph(path), std::nullopt};
    });
}

os_status os_graph_generate(const char* family, int size, int extra, uint64_t seed,
                            os_graph** out) {
    return guarded([&] {
        require_out(out);
        require(family != nullptr, ErrorCode::InvalidArgument, "null family");
        const std::string f = family;
        if (f == "ring" || f == "crossed_ring" || f == "clique_path") {
            auto t = make_transfer(parse_transfer_kind(f), size);
            *out = new os_graph{std::move(t.graph), t.topology};
            return;
        }
        auto plain = [&]() -> Graph {
            if (f == "path") return path_graph(size);
            if (f == "cycle") return cycle_graph(size);
            if (f == "complete") return complete_graph(size);
            if (f == "barbell") return barbell_graph(size);
            if (f == "random") {
                require(size >= 1 && extra >= 0, ErrorCode::InvalidArgument,
                        "random graphs need size >= 1 and extra >= 0");
                Rng rng(seed);
                return random_connected_graph(size, extra, rng);
            }
            fail(ErrorCode::InvalidArgument, "unknown graph family '" + f + "'");
        };
        *out = new os_graph{plain(), std::nullopt};
    });
}

void os_graph_free(os_graph* graph) { delete graph; }

int os_graph_num_nodes(const os_graph* graph) { return graph ? graph->graph.num_nodes() : 0; }

int os_graph_num_edges(const os_graph* graph) { return graph ? graph->graph.num_edges() : 0; }

os_status os_graph_edges(const os_graph* graph, int* out, int capacity) {
    return guarded([&] {
        const Graph& g = graph_of(graph);
        require_out(out);
        require(capacity >= g.num_edges(), ErrorCode::InvalidArgument,
                "edge buffer too small");
        int i = 0;
        for (auto [a, b] : g.edges()) {
            out[i++] = a;
            out[i++] = b;
        }
    });
}

os_status os_graph_serialize(const os_graph* graph, os_graph_format format, char** out) {
    return guarded([&] {
        const Graph& g = graph_of(graph);
        require_out(out);
        require(format == OS_GRAPH_EDGE_LIST || format == OS_GRAPH_JSON,
                ErrorCode::InvalidArgument, "unknown graph format");
        *out = dup_string(serialize_graph(
            g, format == OS_GRAPH_JSON ? GraphFormat::Json : GraphFormat::EdgeList));
    });
}

os_status os_report_render(const os_report* report, os_format format, char** out) {
    return guarded([&] {
        require(report != nullptr, ErrorCode::InvalidArgument, "null report handle");
        require_out(out);
        require(format == OS_FORMAT_JSON || format == OS_FORMAT_CSV, ErrorCode::InvalidArgument,
                "unknown report format");
        *out = dup_string(format == OS_FORMAT_JSON ? report->report.render_json()
                                                   : report->report.render_csv());
    });
}

os_status os_report_matrix_csv(const os_report* report, const char* name, char** out) {
    return guarded([&] {
        require(report != nullptr && name != nullptr, ErrorCode::InvalidArgument,
                "null report or name");
        require_out(out);
        const auto it = report->report.matrices.find(name);
        require(it != report->report.matrices.end(), ErrorCode::InvalidArgument,
                std::string("report has no matrix '") + name + "'");
        *out = dup_string(capi::matrix_csv(it->second));
    });
}

os_status os_report_matrix_names(const os_report* report, char** out) {
    return guarded([&] {
        require(report != nullptr, ErrorCode::InvalidArgument, "null report handle");
        require_out(out);
        std::string names;
        for (const auto& [name, m] : report->report.matrices) {
            if (!names.empty()) names += ',';
            names += name;
        }
        *out = dup_string(names);
    });
}

void os_report_free(os_report* report) { delete report; }

os_status os_describe(const os_graph* graph, os_report** out) {
    return guarded([&] {
        const Graph& g = graph_of(graph);
        require_out(out);
        capi::Report r;
        r.doc["num_nodes"] = g.num_nodes();
        r.doc["num_edges"] = g.num_edges();
        r.doc["edges"] = edges_json(g.edges());
        if (graph->topology) {
            const auto& t = *graph->topology;
            r.doc["kind"] = transfer_kind_name(t.kind);
            r.doc["r"] = t.r;
            r.doc["source"] = t.source;
            r.doc["target"] = t.target;
        }
        r.columns = {"u", "v"};
        for (auto [a, b] : g.edges()) r.rows.push_back({{"u", a}, {"v", b}});
        *out = make_report(std::move(r));
    });
}

os_status os_metrics(const os_graph* graph, int matrices, os_report** out) {
    return guarded([&] {
        const Graph& g = graph_of(graph);
        require_out(out);
        const auto decomp = spectral_decomposition(g);
        const auto m = topology_metrics(g, decomp, g.num_nodes() <= kCheegerExactMaxNodes);
        capi::Report r;
        json row = {{"num_nodes", g.num_nodes()},
                    {"num_edges", g.num_edges()},
                    {"diameter", diameter(g)},
                    {"spectral_gap", number(m.spectral_gap)},
                    {"largest_eigenvalue", number(m.largest_eigenvalue)},
                    {"cheeger_lower", number(m.cheeger_lower)},
                    {"cheeger_upper", number(m.cheeger_upper)},
                    {"cheeger_exact", m.cheeger_exact ? number(*m.cheeger_exact) : json()},
                    {"total_resistance", number(m.total_resistance)},
                    {"max_commute_time", number(m.max_commute_time)}};
        r.doc = row;
        r.doc["eigenvalues"] = vector_json(
            std::vector<double>(decomp.eigenvalues.data(),
                                decomp.eigenvalues.data() + decomp.eigenvalues.size()));
        r.columns = {"num_nodes",      "num_edges",     "diameter",
                     "spectral_gap",   "largest_eigenvalue", "cheeger_lower",
                     "cheeger_upper",  "cheeger_exact", "total_resistance",
                     "max_commute_time"};
        r.rows.push_back(std::move(row));
        if (matrices) {
            r.matrices["resistance"] = m.resistance;
            r.matrices["commute"] = m.commute;
            r.matrices["access"] = m.access;
            r.doc["resistance"] = capi::matrix_json(m.resistance);
            r.doc["commute"] = capi::matrix_json(m.commute);
            r.doc["access"] = capi::matrix_json(m.access);
        }
        *out = make_report(std::move(r));
    });
}

os_mpnn_config os_mpnn_config_default(void) {
    const MpnnConfig d;
    return {d.width, d.depth, d.c_r, d.c_a, "symmetric", "relu", d.weight_scale, 0};
}

os_status os_sensitivity(const os_graph* graph, const os_mpnn_config* config, const int* pairs,
                         int num_pairs, os_report** out) {
    return guarded([&] {
        const Graph& g = graph_of(graph);
        require(config != nullptr, ErrorCode::InvalidArgument, "null config");
        require_out(out);
        MpnnConfig c;
        c.width = config->width;
        c.depth = config->depth;
        c.c_r = config->c_r;
        c.c_a = config->c_a;
        c.shift = parse_shift_kind(config->shift ? config->shift : "symmetric");
        c.sigma = parse_nonlinearity(config->sigma ? config->sigma : "relu");
        c.weight_scale = config->weight_scale;
        const MpnnModel model = MpnnModel::random(c, config->seed);
        const int n = g.num_nodes();

        std::vector<Edge> list = read_pairs(pairs, num_pairs, n);
        if (list.empty()) {
            for (NodeId v = 0; v < n; ++v)
                for (NodeId u = 0; u < n; ++u) list.emplace_back(v, u);
        }

        Rng rng(derive_seed(config->seed, 1));
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        const Matrix h0 = Matrix::NullaryExpr(n, c.width, [&] { return unif(rng); });
        const Matrix shift = shift_operator(g, c.shift);
        const Matrix S = message_passing_matrix(g, c.shift, c.c_r, c.c_a).S;
        const auto reg = regularity_constants(model);
        const bool distant_ok = c.shift == ShiftKind::Symmetric && c.c_a <= 1.0;

        capi::Report r;
        r.doc["config"] = {{"width", c.width},
                           {"depth", c.depth},
                           {"c_r", number(c.c_r)},
                           {"c_a", number(c.c_a)},
                           {"shift", shift_kind_name(c.shift)},
                           {"sigma", nonlinearity_name(c.sigma)},
                           {"weight_scale", number(c.weight_scale)},
                           {"seed", config->seed}};
        r.doc["w"] = number(model.w());
        r.doc["mu"] = number(model.mu());
        r.columns = {"v", "u", "distance", "k", "m", "jacobian_l1", "jacobian_induced_l1",
                     "jacobian_induced_linf", "near_kink", "bound_sensitivity", "bound_general",
                     "bound_distant"};
        json rows = json::array();
        for (auto [v, u] : list) {
            const int m = c.depth;
            const auto jac = jacobian_exact(model, shift, h0, v, u, 0, m);
            const int dist = bfs_distances(g, v)[u];
            json row = {{"v", v},
                        {"u", u},
                        {"distance", dist},
                        {"k", 0},
                        {"m", m},
                        {"jacobian_l1", number(jac.entrywise_l1())},
                        {"jacobian_induced_l1", number(jac.induced_l1())},
                        {"jacobian_induced_linf", number(jac.induced_linf())},
                        {"near_kink", jac.near_kink},
                        {"bound_sensitivity", number(bound_sensitivity(model, S, m, v, u))},
                        {"bound_general", number(bound_general(reg.c_up, reg.c_rs, reg.c_mp,
                                                               shift, m, v, u, c.width))},
                        {"bound_distant", json()}};
            // the distant-node bound is stated for d(v,u) = r with m = r + k, 0 <= k < r
            if (distant_ok && dist >= 1 && dist <= m && m - dist < dist) {
                row["bound_distant"] = number(bound_distant(model, g, v, u, dist, m - dist).value);
            }
            rows.push_back(row);
            r.rows.push_back(std::move(row));
        }
        r.doc["pairs"] = std::move(rows);
        *out = make_report(std::move(r));
    });
}

os_status os_walk_diffusion(const os_graph* graph, int max_length, os_report** out) {
    return guarded([&] {
        const Graph& g = graph_of(graph);
        require_out(out);
        const auto w = walk_operators(g, max_length);
        capi::Report r;
        r.doc["max_length"] = max_length;
        r.doc["gamma"] = capi::matrix_json(w.gamma);
        r.columns = {"node", "m", "gamma"};
        for (int m = 1; m <= max_length; ++m) {
            for (NodeId i = 0; i < g.num_nodes(); ++i) {
                r.rows.push_back({{"node", i}, {"m", m}, {"gamma", number(w.gamma(i, m - 1))}});
            }
            r.matrices["zeta_" + std::to_string(m)] = w.zeta[m - 1];
            r.matrices["correction_" + std::to_string(m)] = correction_tensor(w, m);
        }
        *out = make_report(std::move(r));
    });
}

os_obstruction_config os_obstruction_config_default(void) {
    const ObstructionConfig d;
    return {d.rho, d.nu, d.mu, d.c_r, d.c_a, d.depth, "commute"};
}

os_status os_obstruction(const os_graph* graph, const os_obstruction_config* config,
                         const int* pairs, int num_pairs, os_report** out) {
    return guarded([&] {
        const Graph& g = graph_of(graph);
        require(config != nullptr, ErrorCode::InvalidArgument, "null config");
        require_out(out);
        ObstructionConfig c;
        c.rho = config->rho;
        c.nu = config->nu;
        c.mu = config->mu;
        c.c_r = config->c_r;
        c.c_a = config->c_a;
        c.depth = config->depth;
        const std::string mode = config->mode ? config->mode : "commute";
        require(mode == "access" || mode == "commute", ErrorCode::InvalidArgument,
                "obstruction mode must be access or commute");
        const bool commute = mode == "commute";
        if (commute) check_commute_mode(c);
        else check_access_mode(c);

        const int n = g.num_nodes();
        std::vector<Edge> list = read_pairs(pairs, num_pairs, n);
        if (list.empty()) {
            for (NodeId v = 0; v < n; ++v)
                for (NodeId u = v + 1; u < n; ++u) list.emplace_back(v, u);
        }
        const auto decomp = spectral_decomposition(g);

        capi::Report r;
        r.doc["config"] = {{"rho", number(c.rho)}, {"nu", number(c.nu)},
                           {"mu", number(c.mu)},   {"c_r", number(c.c_r)},
                           {"c_a", number(c.c_a)}, {"depth", c.depth},
                           {"mode", mode}};
        r.columns = {"v", "u", "total", "total_upper", "lower", "upper", "leading",
                     "tail_exact", "tail_bound", "x_star", "eps_g"};
        json rows = json::array();
        for (auto [v, u] : list) {
            const auto rep = commute ? symmetric_obstruction(c, decomp, v, u)
                                     : jacobian_obstruction(c, decomp, v, u);
            json row = {{"v", v},
                        {"u", u},
                        {"total", number(rep.total)},
                        {"total_upper", commute ? number(rep.total_upper) : json()},
                        {"lower", number(rep.lower)},
                        {"upper", number(rep.upper)},
                        {"leading", number(rep.leading)},
                        {"tail_exact", commute ? json() : number(rep.tail_exact)},
                        {"tail_bound", commute ? json() : number(rep.tail_bound)},
                        {"x_star", number(rep.x_star)},
                        {"eps_g", commute ? number(rep.eps_g) : json()}};
            r.rows.push_back(row);
            row["per_layer"] = vector_json(rep.per_layer);
            if (commute) row["per_layer_upper"] = vector_json(rep.per_layer_upper);
            rows.push_back(std::move(row));
        }
        r.doc["pairs"] = std::move(rows);
        if (commute) {
            const auto b = cheeger_obstruction_bound(c, g, decomp);
            r.doc["cheeger_chain"] = {{"max_obstruction", number(b.max_obstruction)},
                                      {"resistance_form", number(b.resistance_form)},
                                      {"lambda_form", number(b.lambda_form)},
                                      {"cheeger_form", number(b.cheeger_form)},
                                      {"printed_form", number(b.printed_form)},
                                      {"h", number(b.h)},
                                      {"h_exact", b.h_exact}};
        }
        *out = make_report(std::move(r));
    });
}

os_rewire_config os_rewire_config_default(void) {
    return {"spectral_gap", 1, nullptr, std::numeric_limits<double>::quiet_NaN(), 0};
}

os_status os_rewire(const os_graph* graph, const os_rewire_config* config, os_graph** rewired,
                    os_report** out) {
    return guarded([&] {
        const Graph& g = graph_of(graph);
        require(config != nullptr, ErrorCode::InvalidArgument, "null config");
        require_out(rewired);
        require_out(out);
        const auto strategy =
            parse_rewiring_strategy(config->strategy ? config->strategy : "spectral_gap");
        require(config->budget >= 0, ErrorCode::InvalidArgument, "budget must be >= 0");
        std::optional<double> threshold;
        if (!std::isnan(config->threshold)) threshold = config->threshold;

        RewiringPlan plan;
        switch (strategy) {
            case RewiringStrategy::SpatialThreshold:
                plan = spatial_rewire(g, config->budget, SpatialMode::Resistance, threshold);
                break;
            case RewiringStrategy::SpatialDiameter:
                plan = spatial_rewire(g, config->budget, SpatialMode::Diameter, threshold);
                break;
            case RewiringStrategy::SpectralGapGreedy:
            case RewiringStrategy::ResistanceGreedy: {
                SpectralObjective objective = strategy == RewiringStrategy::SpectralGapGreedy
                                                  ? SpectralObjective::MaxGap
                                                  : SpectralObjective::MinTotalResistance;
                if (config->objective) objective = parse_spectral_objective(config->objective);
                plan = spectral_rewire(g, config->budget, objective, config->seed);
                break;
            }
        }
        auto result = rewire(g, plan);

        capi::Report r;
        r.doc["strategy"] = rewiring_strategy_name(plan.strategy);
        r.doc["budget"] = plan.budget;
        r.doc["threshold"] = plan.threshold ? number(*plan.threshold) : json();
        r.doc["before"] = snapshot_json(result.report.before);
        r.doc["after"] = snapshot_json(result.report.after);
        r.doc["added_edges"] = edges_json(result.report.added_edges);
        r.doc["delta_total_resistance"] = vector_json(result.report.delta_total_resistance);
        r.columns = {"step", "v", "u", "delta_total_resistance"};
        for (std::size_t i = 0; i < result.report.added_edges.size(); ++i) {
            const auto [a, b] = result.report.added_edges[i];
            r.rows.push_back({{"step", i + 1},
                              {"v", a},
                              {"u", b},
                              {"delta_total_resistance",
                               number(result.report.delta_total_resistance[i])}});
        }
        *rewired = new os_graph{std::move(result.graph), graph->topology};
        *out = make_report(std::move(r));
    });
}

os_transfer_config os_transfer_config_default(void) {
    const TrainConfig d;
    return {"ring", 6, "gcn", d.hidden, d.epochs, d.lr, d.batch_size, 500, 100, 5, 0};
}

os_status os_transfer(const os_transfer_config* config, os_report** out) {
    return guarded([&] {
        require(config != nullptr, ErrorCode::InvalidArgument, "null config");
        require_out(out);
        const auto kind = parse_transfer_kind(config->task ? config->task : "ring");
        const auto data = generate_transfer(kind, config->r, config->train, config->test,
                                            config->p, config->seed);
        TrainConfig c;
        c.model = parse_transfer_model(config->model ? config->model : "gcn");
        c.epochs = config->epochs;
        c.hidden = config->hidden;
        c.lr = config->lr;
        c.batch_size = config->batch_size;
        c.seed = config->seed;
        const auto o = train_transfer(data, c);
        if (o.diverged) fail(ErrorCode::DivergedLoss, "training loss became non-finite");

        capi::Report r;
        r.doc = {{"task", transfer_kind_name(o.task)},
                 {"r", o.r},
                 {"model", transfer_model_name(o.model)},
                 {"hidden", o.hidden},
                 {"epochs", c.epochs},
                 {"lr", number(c.lr)},
                 {"batch_size", c.batch_size},
                 {"train", config->train},
                 {"test", config->test},
                 {"p", config->p},
                 {"seed", o.seed},
                 {"test_accuracy", number(o.test_accuracy)},
                 {"epoch_loss", vector_json(o.epoch_loss)}};
        r.columns = {"epoch", "loss"};
        for (std::size_t i = 0; i < o.epoch_loss.size(); ++i) {
            r.rows.push_back({{"epoch", i + 1}, {"loss", number(o.epoch_loss[i])}});
        }
        *out = make_report(std::move(r));
    });
}

os_signal_config os_signal_config_default(void) { return {50, 5, 20, 0, 5, 10, 8, 0}; }

os_status os_signal(const os_signal_config* config, os_report** out) {
    return guarded([&] {
        require(config != nullptr, ErrorCode::InvalidArgument, "null config");
        require_out(out);
        const auto graphs =
            random_graph_suite(config->graphs, config->min_nodes, config->max_nodes, config->seed);
        int depth = config->depth;
        if (depth <= 0) {
            std::vector<double> diams;
            for (const auto& g : graphs) diams.push_back(diameter(g));
            depth = std::max(1, static_cast<int>(std::lround(mean(diams))));
        }
        MpnnConfig c;
        c.width = config->width;
        c.depth = depth;
        const auto e =
            resistance_signal_experiment(graphs, c, config->samples, config->seed, config->models);

        capi::Report r;
        r.doc["graphs"] = config->graphs;
        r.doc["min_nodes"] = config->min_nodes;
        r.doc["max_nodes"] = config->max_nodes;
        r.doc["depth"] = depth;
        r.doc["width"] = c.width;
        r.doc["samples"] = config->samples;
        r.doc["models"] = config->models;
        r.doc["seed"] = config->seed;
        r.doc["spearman"] = number(e.spearman);
        r.columns = {"graph", "num_nodes", "resistance_estimate", "resistance_exact",
                     "mean_h_odot", "zero_mass"};
        json rows = json::array();
        for (const auto& row : e.rows) {
            json j = {{"graph", row.graph},
                      {"num_nodes", row.num_nodes},
                      {"resistance_estimate", number(row.resistance_estimate)},
                      {"resistance_exact", number(row.resistance_exact)},
                      {"mean_h_odot", number(row.mean_h_odot)},
                      {"zero_mass", row.zero_mass}};
            rows.push_back(j);
            r.rows.push_back(std::move(j));
        }
        r.doc["rows"] = std::move(rows);
        *out = make_report(std::move(r));
    });
}

}  // extern "C"
