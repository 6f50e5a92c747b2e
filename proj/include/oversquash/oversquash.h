#ifndef OVERSQUASH_H
#define OVERSQUASH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OS_API __declspec(dllexport)
#else
#define OS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct os_graph os_graph;
typedef struct os_report os_report;

/* Status codes are stable; new codes are only ever appended. */
typedef enum os_status {
    OS_OK = 0,
    OS_INVALID_ARGUMENT,
    OS_SELF_LOOP,
    OS_DUPLICATE_EDGE,
    OS_DISCONNECTED,
    OS_NODE_OUT_OF_RANGE,
    OS_EMPTY_GRAPH,
    OS_TOO_LARGE,
    OS_INVALID_DISTANCE,
    OS_NEGATIVE_COEFFICIENT,
    OS_NOT_SYMMETRIC,
    OS_NO_CONVERGENCE,
    OS_SINGULAR_SYSTEM,
    OS_SAME_NODE,
    OS_SHAPE_MISMATCH,
    OS_DISTANCE_MISMATCH,
    OS_MODE_PRECONDITION_VIOLATED,
    OS_BIPARTITE_GRAPH,
    OS_EDGE_ALREADY_PRESENT,
    OS_BUDGET_EXCEEDED,
    OS_DIVERGED_LOSS,
    OS_INSUFFICIENT_GRAPHS,
    OS_EMPTY_VECTOR,
    OS_OVERFLOW,
    OS_IO,
    OS_PARSE,
    OS_INTERNAL
} os_status;

typedef enum os_format { OS_FORMAT_JSON = 0, OS_FORMAT_CSV = 1 } os_format;
typedef enum os_graph_format { OS_GRAPH_EDGE_LIST = 0, OS_GRAPH_JSON = 1 } os_graph_format;

OS_API const char* os_status_name(os_status status);
/* 1 for numerical failures (no convergence, singular system, diverged loss,
   overflow), 0 otherwise. */
OS_API int os_status_is_numerical(os_status status);
/* Message of the last failing call on this thread; "" if none. */
OS_API const char* os_last_error(void);

/* Strings returned through char** out-parameters are owned by the caller. */
OS_API void os_string_free(char* s);

/* edges holds num_edges (u, v) pairs, flattened. */
OS_API os_status os_graph_create(int num_nodes, const int* edges, int num_edges, os_graph** out);
OS_API os_status os_graph_parse(const char* text, os_graph** out);
OS_API os_status os_graph_load(const char* path, os_graph** out);
/* family: ring, crossed_ring, clique_path (size = r), path, cycle, complete
   (size = n), barbell (size = clique size), random (size = n, `extra` added
   non-edges). Transfer families record their source and target. */
OS_API os_status os_graph_generate(const char* family, int size, int extra, uint64_t seed,
                                   os_graph** out);
OS_API void os_graph_free(os_graph* graph);
OS_API int os_graph_num_nodes(const os_graph* graph);
OS_API int os_graph_num_edges(const os_graph* graph);
/* Copies the canonical edge list into out (capacity in pairs). */
OS_API os_status os_graph_edges(const os_graph* graph, int* out, int capacity);
OS_API os_status os_graph_serialize(const os_graph* graph, os_graph_format format, char** out);

OS_API os_status os_report_render(const os_report* report, os_format format, char** out);
/* Named matrix carried by the report (metrics: resistance, commute, access;
   walk diffusion: zeta_<m>, correction_<m>) as CSV. OS_INVALID_ARGUMENT if the
   report has no such matrix. */
OS_API os_status os_report_matrix_csv(const os_report* report, const char* name, char** out);
/* Comma-separated names of the carried matrices, in sorted order. */
OS_API os_status os_report_matrix_names(const os_report* report, char** out);
OS_API void os_report_free(os_report* report);

/* Describes a generated or loaded graph: size, edges, transfer endpoints. */
OS_API os_status os_describe(const os_graph* graph, os_report** out);

/* matrices != 0 adds the resistance, commute and access matrices. */
OS_API os_status os_metrics(const os_graph* graph, int matrices, os_report** out);

typedef struct os_mpnn_config {
    int width;
    int depth;
    double c_r;
    double c_a;
    const char* shift; /* adjacency, random_walk, symmetric */
    const char* sigma; /* relu, tanh, identity */
    double weight_scale;
    uint64_t seed;
} os_mpnn_config;

OS_API os_mpnn_config os_mpnn_config_default(void);

/* pairs holds num_pairs (v, u) pairs; num_pairs == 0 means every ordered
   pair. One row per pair: exact Jacobian norms at (k = 0, m = depth) and
   every bound whose preconditions hold. */
OS_API os_status os_sensitivity(const os_graph* graph, const os_mpnn_config* config,
                                const int* pairs, int num_pairs, os_report** out);

/* gamma(i; m) and the walk-weighted operators up to max_length. */
OS_API os_status os_walk_diffusion(const os_graph* graph, int max_length, os_report** out);

typedef struct os_obstruction_config {
    double rho;
    double nu;
    double mu;
    double c_r;
    double c_a;
    int depth;
    const char* mode; /* access or commute */
} os_obstruction_config;

OS_API os_obstruction_config os_obstruction_config_default(void);

/* num_pairs == 0 means every unordered pair v < u. */
OS_API os_status os_obstruction(const os_graph* graph, const os_obstruction_config* config,
                                const int* pairs, int num_pairs, os_report** out);

typedef struct os_rewire_config {
    const char* strategy;  /* spatial_threshold, spatial_diameter, spectral_gap, resistance */
    int budget;
    const char* objective; /* spectral strategies: max_gap or min_total_resistance */
    double threshold;      /* spatial strategies; NaN disables */
    uint64_t seed;
} os_rewire_config;

OS_API os_rewire_config os_rewire_config_default(void);

OS_API os_status os_rewire(const os_graph* graph, const os_rewire_config* config,
                           os_graph** rewired, os_report** out);

typedef struct os_transfer_config {
    const char* task;  /* ring, crossed_ring, clique_path */
    int r;
    const char* model; /* gcn, sage, gin */
    int hidden;
    int epochs;
    double lr;
    int batch_size; /* 0 = full batch */
    int train;
    int test;
    int p;
    uint64_t seed;
} os_transfer_config;

OS_API os_transfer_config os_transfer_config_default(void);
OS_API os_status os_transfer(const os_transfer_config* config, os_report** out);

typedef struct os_signal_config {
    int graphs;
    int min_nodes;
    int max_nodes;
    int depth; /* 0 = rounded mean diameter of the suite */
    int width;
    int samples;
    int models;
    uint64_t seed;
} os_signal_config;

OS_API os_signal_config os_signal_config_default(void);
OS_API os_status os_signal(const os_signal_config* config, os_report** out);

#ifdef __cplusplus
}
#endif

#endif
