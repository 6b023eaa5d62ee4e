/* C interface to the star-graph heat kernel library.
 *
 * Every fallible call returns an sg_status; on failure the message of the
 * most recent error on the calling thread is available from sg_last_error().
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_destroy function. Edge indices are 0-based. */
#ifndef STARGRAPH_H
#define STARGRAPH_H

#include <stddef.h>
#include <stdint.h>

#if defined(STARGRAPH_BUILDING_LIBRARY)
#define SG_API __attribute__((visibility("default")))
#else
#define SG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_INVALID_ARGUMENT = 1,
  SG_ERR_WEIGHT = 2,
  SG_ERR_KIRCHHOFF = 3,
  SG_ERR_DOMAIN = 4,
  SG_ERR_QUADRATURE = 5,
  SG_ERR_NO_WITNESS = 6,
  SG_ERR_CONFIG = 7,
  SG_ERR_SINGULAR = 8,
  SG_ERR_INTERNAL = 9
} sg_status;

typedef struct sg_graph sg_graph;
typedef struct sg_function sg_function;
typedef struct sg_harmonic sg_harmonic;
typedef struct sg_fd_result sg_fd_result;
typedef struct sg_walk_report sg_walk_report;

typedef struct sg_point {
  size_t edge;
  double coord;
} sg_point;

typedef struct sg_quad_spec {
  double tail_eps;
  double rel_tol;
  int max_panels;
} sg_quad_spec;

typedef struct sg_kernel_value {
  double value;
  double d_x;
  double d_xx;
  double d_t;
} sg_kernel_value;

typedef struct sg_semigroup_value {
  double u;
  double u_x;
  double u_xx;
  double u_t;
} sg_semigroup_value;

typedef struct sg_witness {
  size_t edge;
  double eta;
  double lambda;
  double r0;
} sg_witness;

typedef struct sg_liyau_report {
  sg_point point;
  double t;
  double u, u_x, u_xx, u_t;
  double lhs;
  double I_term;
  double rhs;
  double margin;
  double bound_x;
  double bound_l1;
  double I_literal;
  int refined;
} sg_liyau_report;

typedef struct sg_harnack_report {
  sg_point x;
  sg_point y;
  double t;
  double s;
  double distance;
  double ratio;
  double rho;
  double C;
  double rhs;
  double margin;
  int refined;
} sg_harnack_report;

typedef struct sg_compose_report {
  double discrepancy;
  double interpolation_bound;
  double u;
  double spacing;
} sg_compose_report;

typedef struct sg_invariance_report {
  double discrepancy;
  double truncation_bound;
  double value;
} sg_invariance_report;

typedef struct sg_fd_config {
  double length;
  size_t nx;
  size_t nt;
  double final_time;
  size_t snapshots;
} sg_fd_config;

typedef struct sg_walk_config {
  double step;
  uint64_t n_paths;
  uint64_t seed;
} sg_walk_config;

typedef struct sg_walk_bin {
  size_t edge;
  double lo;
  double hi;
  uint64_t count;
  double expected;
  double z;
} sg_walk_bin;

typedef struct sg_walk_edge_stat {
  double frequency;
  double expected;
  double sigma;
} sg_walk_edge_stat;

/* --- general -------------------------------------------------------------- */
SG_API const char* sg_last_error(void);
SG_API const char* sg_version(void);
SG_API sg_quad_spec sg_quad_spec_default(void);

/* --- graph ---------------------------------------------------------------- */
SG_API sg_status sg_graph_create(const double* weights, size_t n, sg_graph** out);
SG_API void sg_graph_destroy(sg_graph* graph);
SG_API size_t sg_graph_edge_count(const sg_graph* graph);
SG_API double sg_graph_weight(const sg_graph* graph, size_t edge);
SG_API double sg_distance(sg_point p, sg_point q);
SG_API sg_status sg_in_ball(sg_point p, double radius, int* out);

SG_API sg_status sg_harmonic_create(const sg_graph* graph, const double* slopes, size_t n,
                                    double value_at_vertex, sg_harmonic** out);
SG_API void sg_harmonic_destroy(sg_harmonic* h);
SG_API sg_status sg_harmonic_eval(const sg_harmonic* h, sg_point p, double* out);
SG_API int sg_harmonic_is_bounded(const sg_harmonic* h);

/* --- initial data ----------------------------------------------------------- */
/* JSON: {"atoms":[{"edge","loc","w"}], "densities":[{"edge","kind",...}]},
 * edges 1-based, kinds indicator(a,b,height) gauss(center,sigma,height)
 * exp(rate,height) grid(h,values). */
SG_API sg_status sg_function_from_json(const char* json, sg_function** out);
SG_API void sg_function_destroy(sg_function* f);
SG_API sg_status sg_function_l1_norm(const sg_function* f, size_t edge, double* out);
SG_API double sg_function_total_mass(const sg_function* f);
/* sum_j alpha_j |phi_j|_1, the mass conserved by the heat flow. */
SG_API sg_status sg_function_weighted_mass(const sg_function* f, const sg_graph* graph, double* out);
SG_API sg_status sg_function_eval_density(const sg_function* f, sg_point p, double* out);
SG_API sg_status sg_function_witness(const sg_function* f, sg_witness* out);

/* --- heat kernel ------------------------------------------------------------ */
SG_API sg_status sg_gauss(double z, double t, sg_kernel_value* out);
SG_API sg_status sg_kernel(const sg_graph* graph, sg_point x, sg_point y, double t,
                           sg_kernel_value* out);
SG_API sg_status sg_kernel_mass(const sg_graph* graph, sg_point x, double t,
                                const sg_quad_spec* spec, double* out);
SG_API sg_status sg_tail_radius(double t, double eps, double* out);

/* --- semigroup -------------------------------------------------------------- */
/* spec may be NULL for defaults. */
SG_API sg_status sg_apply(const sg_graph* graph, const sg_function* f, sg_point x, double t,
                          const sg_quad_spec* spec, sg_semigroup_value* out);
SG_API sg_status sg_log_second_derivative(const sg_semigroup_value* v, double* out);
SG_API sg_status sg_compose_check(const sg_graph* graph, const sg_function* f, sg_point x,
                                  double t1, double t2, const sg_quad_spec* spec,
                                  sg_compose_report* out);
SG_API sg_status sg_harmonic_invariance(const sg_graph* graph, const sg_harmonic* h,
                                        sg_point x, double t, const sg_quad_spec* spec,
                                        sg_invariance_report* out);

/* --- estimates -------------------------------------------------------------- */
SG_API sg_status sg_h_factor(const sg_graph* graph, size_t edge, double x, double y, double t,
                             double* out);
SG_API sg_status sg_curvature_term(const sg_graph* graph, const sg_function* f, sg_point x,
                                   double t, const sg_quad_spec* spec, double* out);
SG_API sg_status sg_liyau_evaluate(const sg_graph* graph, const sg_function* f, sg_point x,
                                 double t, const sg_quad_spec* spec, sg_liyau_report* out);
SG_API sg_status sg_rho(sg_point x, sg_point y, double t, double s, double* out);
SG_API sg_status sg_harnack_constant(const sg_graph* graph, const sg_function* f, sg_point x,
                                     sg_point y, double t, double s, const sg_quad_spec* spec,
                                     size_t r_grid, double* out);
SG_API sg_status sg_harnack_constant_bound(const sg_graph* graph, const sg_function* f,
                                           double radius, double eps, double* out);
SG_API sg_status sg_harnack_evaluate(const sg_graph* graph, const sg_function* f, sg_point x,
                                   sg_point y, double t, double s, const sg_quad_spec* spec,
                                   size_t r_grid, sg_harnack_report* out);

/* --- closed-form examples (three edges, alpha = 1/3) -------------------------- */
/* which = 1 or 2; out_u / out_lhs may be NULL. */
SG_API sg_status sg_example_closed_form(int which, size_t edge, double x, double t,
                                        double* out_u, double* out_lhs);
/* Graph and initial datum of example `which`. */
SG_API sg_status sg_example_setup(int which, sg_graph** graph, sg_function** f);

/* --- finite-difference oracle ----------------------------------------------- */
SG_API sg_status sg_fd_solve(const sg_graph* graph, const sg_function* f,
                             const sg_fd_config* config, sg_fd_result** out);
SG_API void sg_fd_result_destroy(sg_fd_result* r);
SG_API size_t sg_fd_result_snapshot_count(const sg_fd_result* r);
SG_API double sg_fd_result_dx(const sg_fd_result* r);
SG_API size_t sg_fd_result_nx(const sg_fd_result* r);
SG_API sg_status sg_fd_result_time(const sg_fd_result* r, size_t snapshot, double* out);
/* node 0 is the vertex, node nx+1 the Dirichlet end. */
SG_API sg_status sg_fd_result_node(const sg_fd_result* r, size_t snapshot, size_t edge,
                                   size_t node, double* out);
SG_API sg_status sg_fd_result_eval(const sg_fd_result* r, size_t snapshot, sg_point p,
                                   double* out);
/* alpha-weighted trapezoid mass. */
SG_API sg_status sg_fd_result_mass(const sg_fd_result* r, size_t snapshot, double* out);
SG_API sg_status sg_fd_result_kirchhoff_residual(const sg_fd_result* r, size_t snapshot,
                                                 double* out);

/* --- random-walk oracle ------------------------------------------------------ */
SG_API sg_status sg_walk_compare(const sg_graph* graph, sg_point start, double t,
                                 const sg_walk_config* config, size_t bins,
                                 sg_walk_report** out);
SG_API void sg_walk_report_destroy(sg_walk_report* r);
SG_API size_t sg_walk_report_path_count(const sg_walk_report* r);
SG_API sg_status sg_walk_report_endpoint(const sg_walk_report* r, size_t path, sg_point* out);
SG_API double sg_walk_report_simulated_time(const sg_walk_report* r);
SG_API size_t sg_walk_report_bin_count(const sg_walk_report* r);
SG_API sg_status sg_walk_report_bin(const sg_walk_report* r, size_t index, sg_walk_bin* out);
SG_API sg_status sg_walk_report_edge(const sg_walk_report* r, size_t edge,
                                     sg_walk_edge_stat* out);
SG_API double sg_walk_report_max_abs_z(const sg_walk_report* r);
SG_API double sg_walk_report_max_edge_sigmas(const sg_walk_report* r);

#ifdef __cplusplus
}
#endif

#endif /* STARGRAPH_H */
