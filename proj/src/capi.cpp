#include "stargraph/stargraph.h"

#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "stargraph/analysis.hpp"
#include "stargraph/errors.hpp"
#include "stargraph/graph.hpp"
#include "stargraph/initial_data.hpp"
#include "stargraph/kernel.hpp"
#include "stargraph/oracles.hpp"
#include "stargraph/semigroup.hpp"

struct sg_graph {
  stargraph::StarGraph graph;
};

struct sg_function {
  stargraph::GraphFunction function;
};

struct sg_harmonic {
  stargraph::HarmonicFunction harmonic;
};

struct sg_fd_result {
  stargraph::FDSolution solution;
};

struct sg_walk_report {
  stargraph::WalkReport report;
};

namespace {

thread_local std::string g_last_error;

sg_status fail(sg_status code, const char* message) {
  g_last_error = message;
  return code;
}

template <class F>
sg_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SG_OK;
  } catch (const stargraph::WeightError& e) {
    return fail(SG_ERR_WEIGHT, e.what());
  } catch (const stargraph::KirchhoffError& e) {
    return fail(SG_ERR_KIRCHHOFF, e.what());
  } catch (const stargraph::DomainError& e) {
    return fail(SG_ERR_DOMAIN, e.what());
  } catch (const stargraph::QuadratureError& e) {
    return fail(SG_ERR_QUADRATURE, e.what());
  } catch (const stargraph::NoWitnessError& e) {
    return fail(SG_ERR_NO_WITNESS, e.what());
  } catch (const stargraph::ConfigError& e) {
    return fail(SG_ERR_CONFIG, e.what());
  } catch (const stargraph::SingularSystemError& e) {
    return fail(SG_ERR_SINGULAR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SG_ERR_INTERNAL, "unknown error");
  }
}

stargraph::GraphPoint to_point(sg_point p) { return {p.edge, p.coord}; }
sg_point from_point(const stargraph::GraphPoint& p) { return {p.edge, p.coord}; }

stargraph::QuadratureSpec to_spec(const sg_quad_spec* spec) {
  stargraph::QuadratureSpec q;
  if (spec != nullptr) {
    q.tail_eps = spec->tail_eps;
    q.rel_tol = spec->rel_tol;
    q.max_panels = spec->max_panels;
  }
  q.validate();
  return q;
}

#define SG_REQUIRE(cond)                                                  \
  do {                                                                    \
    if (!(cond)) return fail(SG_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* sg_last_error(void) { return g_last_error.c_str(); }

const char* sg_version(void) { return "0.1.0"; }

sg_quad_spec sg_quad_spec_default(void) {
  const stargraph::QuadratureSpec q;
  return {q.tail_eps, q.rel_tol, q.max_panels};
}

sg_status sg_graph_create(const double* weights, size_t n, sg_graph** out) {
  SG_REQUIRE(out != nullptr);
  SG_REQUIRE(weights != nullptr || n == 0);
  *out = nullptr;
  return guarded([&] {
    *out = new sg_graph{stargraph::StarGraph(std::vector<double>(weights, weights + n))};
  });
}

void sg_graph_destroy(sg_graph* graph) { delete graph; }

size_t sg_graph_edge_count(const sg_graph* graph) {
  return graph == nullptr ? 0 : graph->graph.edge_count();
}

double sg_graph_weight(const sg_graph* graph, size_t edge) {
  if (graph == nullptr || edge >= graph->graph.edge_count()) return 0.0;
  return graph->graph.weight(edge);
}

double sg_distance(sg_point p, sg_point q) { return stargraph::distance(to_point(p), to_point(q)); }

sg_status sg_in_ball(sg_point p, double radius, int* out) {
  SG_REQUIRE(out != nullptr);
  return guarded([&] { *out = stargraph::in_ball(to_point(p), radius) ? 1 : 0; });
}

sg_status sg_harmonic_create(const sg_graph* graph, const double* slopes, size_t n,
                             double value_at_vertex, sg_harmonic** out) {
  SG_REQUIRE(graph != nullptr && out != nullptr);
  SG_REQUIRE(slopes != nullptr || n == 0);
  *out = nullptr;
  return guarded([&] {
    *out = new sg_harmonic{stargraph::make_harmonic(
        graph->graph, std::vector<double>(slopes, slopes + n), value_at_vertex)};
  });
}

void sg_harmonic_destroy(sg_harmonic* h) { delete h; }

sg_status sg_harmonic_eval(const sg_harmonic* h, sg_point p, double* out) {
  SG_REQUIRE(h != nullptr && out != nullptr);
  return guarded([&] { *out = h->harmonic(to_point(p)); });
}

int sg_harmonic_is_bounded(const sg_harmonic* h) {
  return h != nullptr && h->harmonic.is_bounded() ? 1 : 0;
}

sg_status sg_function_from_json(const char* json, sg_function** out) {
  SG_REQUIRE(json != nullptr && out != nullptr);
  *out = nullptr;
  return guarded([&] { *out = new sg_function{stargraph::GraphFunction::from_json(json)}; });
}

void sg_function_destroy(sg_function* f) { delete f; }

sg_status sg_function_l1_norm(const sg_function* f, size_t edge, double* out) {
  SG_REQUIRE(f != nullptr && out != nullptr);
  return guarded([&] { *out = f->function.l1_norm(edge); });
}

double sg_function_total_mass(const sg_function* f) {
  return f == nullptr ? 0.0 : f->function.total_mass();
}

sg_status sg_function_weighted_mass(const sg_function* f, const sg_graph* graph, double* out) {
  SG_REQUIRE(f != nullptr && graph != nullptr && out != nullptr);
  return guarded([&] { *out = f->function.weighted_mass(graph->graph); });
}

sg_status sg_function_eval_density(const sg_function* f, sg_point p, double* out) {
  SG_REQUIRE(f != nullptr && out != nullptr);
  return guarded([&] { *out = f->function.eval_density(to_point(p)); });
}

sg_status sg_function_witness(const sg_function* f, sg_witness* out) {
  SG_REQUIRE(f != nullptr && out != nullptr);
  return guarded([&] {
    const auto w = f->function.positivity_witness();
    *out = {w.edge, w.eta, w.lambda, w.r0};
  });
}

sg_status sg_gauss(double z, double t, sg_kernel_value* out) {
  SG_REQUIRE(out != nullptr);
  return guarded([&] {
    const auto k = stargraph::gauss(z, t);
    *out = {k.value, k.d_x, k.d_xx, k.d_t};
  });
}

sg_status sg_kernel(const sg_graph* graph, sg_point x, sg_point y, double t,
                    sg_kernel_value* out) {
  SG_REQUIRE(graph != nullptr && out != nullptr);
  return guarded([&] {
    const auto k = stargraph::kernel(graph->graph, to_point(x), to_point(y), t);
    *out = {k.value, k.d_x, k.d_xx, k.d_t};
  });
}

sg_status sg_kernel_mass(const sg_graph* graph, sg_point x, double t, const sg_quad_spec* spec,
                         double* out) {
  SG_REQUIRE(graph != nullptr && out != nullptr);
  return guarded(
      [&] { *out = stargraph::kernel_mass(graph->graph, to_point(x), t, to_spec(spec)); });
}

sg_status sg_tail_radius(double t, double eps, double* out) {
  SG_REQUIRE(out != nullptr);
  return guarded([&] { *out = stargraph::tail_radius(t, eps); });
}

sg_status sg_apply(const sg_graph* graph, const sg_function* f, sg_point x, double t,
                   const sg_quad_spec* spec, sg_semigroup_value* out) {
  SG_REQUIRE(graph != nullptr && f != nullptr && out != nullptr);
  return guarded([&] {
    const auto v = stargraph::apply(graph->graph, f->function, to_point(x), t, to_spec(spec));
    *out = {v.u, v.u_x, v.u_xx, v.u_t};
  });
}

sg_status sg_log_second_derivative(const sg_semigroup_value* v, double* out) {
  SG_REQUIRE(v != nullptr && out != nullptr);
  return guarded([&] {
    *out = stargraph::log_second_derivative({v->u, v->u_x, v->u_xx, v->u_t});
  });
}

sg_status sg_compose_check(const sg_graph* graph, const sg_function* f, sg_point x, double t1,
                           double t2, const sg_quad_spec* spec, sg_compose_report* out) {
  SG_REQUIRE(graph != nullptr && f != nullptr && out != nullptr);
  return guarded([&] {
    const auto r =
        stargraph::compose_check(graph->graph, f->function, to_point(x), t1, t2, to_spec(spec));
    *out = {r.discrepancy, r.interpolation_bound, r.u, r.spacing};
  });
}

sg_status sg_harmonic_invariance(const sg_graph* graph, const sg_harmonic* h, sg_point x,
                                 double t, const sg_quad_spec* spec, sg_invariance_report* out) {
  SG_REQUIRE(graph != nullptr && h != nullptr && out != nullptr);
  return guarded([&] {
    const auto r =
        stargraph::harmonic_invariance(graph->graph, h->harmonic, to_point(x), t, to_spec(spec));
    *out = {r.discrepancy, r.truncation_bound, r.value};
  });
}

sg_status sg_h_factor(const sg_graph* graph, size_t edge, double x, double y, double t,
                      double* out) {
  SG_REQUIRE(graph != nullptr && out != nullptr);
  return guarded([&] { *out = stargraph::h_factor(graph->graph, edge, x, y, t); });
}

sg_status sg_curvature_term(const sg_graph* graph, const sg_function* f, sg_point x, double t,
                            const sg_quad_spec* spec, double* out) {
  SG_REQUIRE(graph != nullptr && f != nullptr && out != nullptr);
  return guarded([&] {
    *out = stargraph::curvature_term(graph->graph, f->function, to_point(x), t, to_spec(spec));
  });
}

sg_status sg_liyau_evaluate(const sg_graph* graph, const sg_function* f, sg_point x, double t,
                          const sg_quad_spec* spec, sg_liyau_report* out) {
  SG_REQUIRE(graph != nullptr && f != nullptr && out != nullptr);
  return guarded([&] {
    const auto r =
        stargraph::liyau_report(graph->graph, f->function, to_point(x), t, to_spec(spec));
    out->point = from_point(r.point);
    out->t = r.t;
    out->u = r.u;
    out->u_x = r.u_x;
    out->u_xx = r.u_xx;
    out->u_t = r.u_t;
    out->lhs = r.lhs;
    out->I_term = r.I_term;
    out->rhs = r.rhs;
    out->margin = r.margin;
    out->bound_x = r.bound_x;
    out->bound_l1 = r.bound_l1;
    out->I_literal = r.I_literal;
    out->refined = r.refined ? 1 : 0;
  });
}

sg_status sg_rho(sg_point x, sg_point y, double t, double s, double* out) {
  SG_REQUIRE(out != nullptr);
  return guarded([&] { *out = stargraph::rho(to_point(x), to_point(y), t, s); });
}

sg_status sg_harnack_constant(const sg_graph* graph, const sg_function* f, sg_point x,
                              sg_point y, double t, double s, const sg_quad_spec* spec,
                              size_t r_grid, double* out) {
  SG_REQUIRE(graph != nullptr && f != nullptr && out != nullptr);
  return guarded([&] {
    *out = stargraph::harnack_constant(graph->graph, f->function, to_point(x), to_point(y), t, s,
                                       to_spec(spec), r_grid);
  });
}

sg_status sg_harnack_constant_bound(const sg_graph* graph, const sg_function* f, double radius,
                                    double eps, double* out) {
  SG_REQUIRE(graph != nullptr && f != nullptr && out != nullptr);
  return guarded(
      [&] { *out = stargraph::harnack_constant_bound(graph->graph, f->function, radius, eps); });
}

sg_status sg_harnack_evaluate(const sg_graph* graph, const sg_function* f, sg_point x, sg_point y,
                            double t, double s, const sg_quad_spec* spec, size_t r_grid,
                            sg_harnack_report* out) {
  SG_REQUIRE(graph != nullptr && f != nullptr && out != nullptr);
  return guarded([&] {
    const auto r = stargraph::harnack_report(graph->graph, f->function, to_point(x), to_point(y),
                                             t, s, to_spec(spec), r_grid);
    out->x = from_point(r.x);
    out->y = from_point(r.y);
    out->t = r.t;
    out->s = r.s;
    out->distance = r.distance;
    out->ratio = r.ratio;
    out->rho = r.rho;
    out->C = r.C;
    out->rhs = r.rhs;
    out->margin = r.margin;
    out->refined = r.refined ? 1 : 0;
  });
}

sg_status sg_example_closed_form(int which, size_t edge, double x, double t, double* out_u,
                                 double* out_lhs) {
  if (which != 1 && which != 2) return fail(SG_ERR_INVALID_ARGUMENT, "example must be 1 or 2");
  return guarded([&] {
    if (which == 1) {
      if (edge > 2) throw stargraph::DomainError("edge out of range");
      if (out_u != nullptr) *out_u = stargraph::example1_u(x, t);
      if (out_lhs != nullptr) *out_lhs = stargraph::example1_lhs(x, t);
    } else {
      if (out_u != nullptr) *out_u = stargraph::example2_u(edge, x, t);
      if (out_lhs != nullptr) *out_lhs = stargraph::example2_lhs(edge, x, t);
    }
  });
}

sg_status sg_example_setup(int which, sg_graph** graph, sg_function** f) {
  SG_REQUIRE(graph != nullptr && f != nullptr);
  if (which != 1 && which != 2) return fail(SG_ERR_INVALID_ARGUMENT, "example must be 1 or 2");
  *graph = nullptr;
  *f = nullptr;
  return guarded([&] {
    auto g = std::make_unique<sg_graph>(sg_graph{stargraph::example_graph()});
    auto fn = std::make_unique<sg_function>(
        sg_function{which == 1 ? stargraph::example1_data() : stargraph::example2_data()});
    *graph = g.release();
    *f = fn.release();
  });
}

sg_status sg_fd_solve(const sg_graph* graph, const sg_function* f, const sg_fd_config* config,
                      sg_fd_result** out) {
  SG_REQUIRE(graph != nullptr && f != nullptr && config != nullptr && out != nullptr);
  *out = nullptr;
  return guarded([&] {
    stargraph::FDConfig c;
    c.length = config->length;
    c.nx = config->nx;
    c.nt = config->nt;
    c.final_time = config->final_time;
    c.snapshots = config->snapshots;
    *out = new sg_fd_result{stargraph::fd_solve(graph->graph, f->function, c)};
  });
}

void sg_fd_result_destroy(sg_fd_result* r) { delete r; }

size_t sg_fd_result_snapshot_count(const sg_fd_result* r) {
  return r == nullptr ? 0 : r->solution.snapshots().size();
}

double sg_fd_result_dx(const sg_fd_result* r) {
  return r == nullptr ? 0.0 : r->solution.config().dx();
}

size_t sg_fd_result_nx(const sg_fd_result* r) {
  return r == nullptr ? 0 : r->solution.config().nx;
}

#define SG_SNAPSHOT(r, index)                                            \
  SG_REQUIRE(r != nullptr && out != nullptr);                            \
  if (index >= r->solution.snapshots().size())                           \
    return fail(SG_ERR_INVALID_ARGUMENT, "snapshot index out of range"); \
  const auto& snap = r->solution.snapshots()[index]

sg_status sg_fd_result_time(const sg_fd_result* r, size_t snapshot, double* out) {
  SG_SNAPSHOT(r, snapshot);
  *out = snap.time;
  return SG_OK;
}

sg_status sg_fd_result_node(const sg_fd_result* r, size_t snapshot, size_t edge, size_t node,
                            double* out) {
  SG_SNAPSHOT(r, snapshot);
  return guarded([&] { *out = r->solution.node(snap, edge, node); });
}

sg_status sg_fd_result_eval(const sg_fd_result* r, size_t snapshot, sg_point p, double* out) {
  SG_SNAPSHOT(r, snapshot);
  return guarded([&] { *out = r->solution.eval(snap, to_point(p)); });
}

sg_status sg_fd_result_mass(const sg_fd_result* r, size_t snapshot, double* out) {
  SG_SNAPSHOT(r, snapshot);
  return guarded([&] { *out = r->solution.mass(snap); });
}

sg_status sg_fd_result_kirchhoff_residual(const sg_fd_result* r, size_t snapshot, double* out) {
  SG_SNAPSHOT(r, snapshot);
  return guarded([&] { *out = r->solution.kirchhoff_residual(snap); });
}

sg_status sg_walk_compare(const sg_graph* graph, sg_point start, double t,
                          const sg_walk_config* config, size_t bins, sg_walk_report** out) {
  SG_REQUIRE(graph != nullptr && config != nullptr && out != nullptr);
  *out = nullptr;
  return guarded([&] {
    const stargraph::WalkConfig c{config->step, config->n_paths, config->seed};
    *out = new sg_walk_report{
        stargraph::walk_compare(graph->graph, to_point(start), t, c, bins)};
  });
}

void sg_walk_report_destroy(sg_walk_report* r) { delete r; }

size_t sg_walk_report_path_count(const sg_walk_report* r) {
  return r == nullptr ? 0 : r->report.walk.endpoints.size();
}

sg_status sg_walk_report_endpoint(const sg_walk_report* r, size_t path, sg_point* out) {
  SG_REQUIRE(r != nullptr && out != nullptr);
  if (path >= r->report.walk.endpoints.size())
    return fail(SG_ERR_INVALID_ARGUMENT, "path index out of range");
  *out = from_point(r->report.walk.endpoints[path]);
  return SG_OK;
}

double sg_walk_report_simulated_time(const sg_walk_report* r) {
  return r == nullptr ? 0.0 : r->report.walk.simulated_time;
}

size_t sg_walk_report_bin_count(const sg_walk_report* r) {
  return r == nullptr ? 0 : r->report.bins.size();
}

sg_status sg_walk_report_bin(const sg_walk_report* r, size_t index, sg_walk_bin* out) {
  SG_REQUIRE(r != nullptr && out != nullptr);
  if (index >= r->report.bins.size()) return fail(SG_ERR_INVALID_ARGUMENT, "bin index out of range");
  const auto& b = r->report.bins[index];
  *out = {b.edge, b.lo, b.hi, b.count, b.expected, b.z};
  return SG_OK;
}

sg_status sg_walk_report_edge(const sg_walk_report* r, size_t edge, sg_walk_edge_stat* out) {
  SG_REQUIRE(r != nullptr && out != nullptr);
  if (edge >= r->report.edges.size()) return fail(SG_ERR_INVALID_ARGUMENT, "edge out of range");
  const auto& e = r->report.edges[edge];
  *out = {e.frequency, e.expected, e.sigma};
  return SG_OK;
}

double sg_walk_report_max_abs_z(const sg_walk_report* r) {
  return r == nullptr ? 0.0 : r->report.max_abs_z;
}

double sg_walk_report_max_edge_sigmas(const sg_walk_report* r) {
  return r == nullptr ? 0.0 : r->report.max_edge_sigmas;
}

}  // extern "C"
