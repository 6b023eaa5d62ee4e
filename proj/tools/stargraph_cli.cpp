#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_support.hpp"

namespace {

using namespace cli;

struct Options {
  std::string config;
  std::string out = "-";
  std::optional<double> rel_tol;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

// Summaries share stdout with the data only when the data goes to a file.
std::ostream& summary(const Options& opt) {
  return (opt.out.empty() || opt.out == "-") ? std::cerr : std::cout;
}

std::size_t edge_label(std::size_t edge) { return edge + 1; }

int cmd_kernel(const Options& opt) {
  const json cfg = load_config(opt.config);
  const Graph graph = parse_graph(cfg);
  const std::size_t n = sg_graph_edge_count(graph.get());
  const auto xs = parse_points(cfg, "x", n);
  const auto ys = parse_points(cfg, "y", n);
  const auto ts = parse_times(cfg, "t");

  Csv csv("edge_x,x,edge_y,y,t,gamma,gamma_dx,gamma_dxx,gamma_dt");
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      for (double t : ts) {
        sg_kernel_value k{};
        check_numeric(sg_kernel(graph.get(), x, y, t, &k), "kernel");
        csv.row({std::to_string(edge_label(x.edge)), num(x.coord), std::to_string(edge_label(y.edge)),
                 num(y.coord), num(t), num(k.value), num(k.d_x), num(k.d_xx), num(k.d_t)});
      }
    }
  }
  csv.write(opt.out);
  summary(opt) << "rows=" << xs.size() * ys.size() * ts.size() << "\n";
  return 0;
}

int cmd_liyau_scan(const Options& opt) {
  const json cfg = load_config(opt.config);
  const Graph graph = parse_graph(cfg);
  const Function phi = parse_function(cfg);
  const std::size_t n = sg_graph_edge_count(graph.get());
  const auto xs = parse_points(cfg, "x", n);
  const auto ts = parse_times(cfg, "t");
  const sg_quad_spec spec = parse_quadrature(cfg, opt.rel_tol);

  const std::size_t rows = xs.size() * ts.size();
  const auto reports = parallel_rows<sg_liyau_report>(rows, opt.threads, [&](std::size_t i) {
    sg_liyau_report r{};
    check_numeric(sg_liyau_evaluate(graph.get(), phi.get(), xs[i / ts.size()], ts[i % ts.size()],
                                    &spec, &r),
                  "liyau");
    return r;
  });

  Csv csv("edge,x,t,u,u_x,u_xx,u_t,lhs,I_term,rhs,margin,bound_x,bound_l1");
  std::size_t argmin = 0;
  std::size_t refined = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    csv.row({std::to_string(edge_label(r.point.edge)), num(r.point.coord), num(r.t), num(r.u),
             num(r.u_x), num(r.u_xx), num(r.u_t), num(r.lhs), num(r.I_term), num(r.rhs),
             num(r.margin), num(r.bound_x), num(r.bound_l1)});
    if (r.margin < reports[argmin].margin) argmin = i;
    refined += r.refined ? 1 : 0;
  }
  csv.write(opt.out);
  auto& os = summary(opt);
  os << "rows=" << rows << "\n";
  if (rows > 0) {
    const auto& r = reports[argmin];
    os << "min_margin=" << num(r.margin) << " at edge=" << edge_label(r.point.edge)
       << " x=" << num(r.point.coord) << " t=" << num(r.t) << "\n";
    os << "refined=" << refined << "\n";
  }
  return 0;
}

int cmd_harnack(const Options& opt) {
  const json cfg = load_config(opt.config);
  const Graph graph = parse_graph(cfg);
  const Function phi = parse_function(cfg);
  const std::size_t n = sg_graph_edge_count(graph.get());
  const auto xs = parse_points(cfg, "x", n);
  const auto ys = parse_points(cfg, "y", n);
  const auto ts = parse_times(cfg, "t");
  const auto ss = parse_times(cfg, "s");
  const auto r_grid = get_or<std::size_t>(cfg, "r_grid", 101);
  if (r_grid < 2) config_error("r_grid must be at least 2");
  const sg_quad_spec spec = parse_quadrature(cfg, opt.rel_tol);

  struct Job {
    sg_point x, y;
    double t, s;
  };
  std::vector<Job> jobs;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      for (double t : ts) {
        for (double s : ss) {
          if (s < t) jobs.push_back({x, y, t, s});
        }
      }
    }
  }
  const auto reports = parallel_rows<sg_harnack_report>(jobs.size(), opt.threads, [&](std::size_t i) {
    const Job& j = jobs[i];
    sg_harnack_report r{};
    check_numeric(sg_harnack_evaluate(graph.get(), phi.get(), j.x, j.y, j.t, j.s, &spec, r_grid, &r),
                  "harnack");
    return r;
  });

  Csv csv("edge_x,x,edge_y,y,t,s,distance,ratio,rho,C,rhs,margin");
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    csv.row({std::to_string(edge_label(r.x.edge)), num(r.x.coord), std::to_string(edge_label(r.y.edge)),
             num(r.y.coord), num(r.t), num(r.s), num(r.distance), num(r.ratio), num(r.rho), num(r.C),
             num(r.rhs), num(r.margin)});
    if (r.margin < reports[argmin].margin) argmin = i;
  }
  csv.write(opt.out);
  auto& os = summary(opt);
  os << "rows=" << reports.size() << "\n";
  if (!reports.empty()) {
    const auto& r = reports[argmin];
    os << "min_margin=" << num(r.margin) << " at x=(" << edge_label(r.x.edge) << "," << num(r.x.coord)
       << ") y=(" << edge_label(r.y.edge) << "," << num(r.y.coord) << ") t=" << num(r.t)
       << " s=" << num(r.s) << "\n";
  }
  return 0;
}

int cmd_oracle_fd(const Options& opt) {
  const json cfg = load_config(opt.config);
  const Graph graph = parse_graph(cfg);
  const Function phi = parse_function(cfg);
  const std::size_t n = sg_graph_edge_count(graph.get());
  if (!cfg.contains("fd")) config_error("missing field 'fd'");
  const json& fd = cfg.at("fd");
  sg_fd_config fc{};
  fc.length = get_or(fd, "L", 20.0);
  fc.nx = get_or<std::size_t>(fd, "nx", 1000);
  fc.nt = get_or<std::size_t>(fd, "nt", 1000);
  fc.final_time = get_or(fd, "T", 1.0);
  fc.snapshots = get_or<std::size_t>(fd, "snapshots", 1);
  const auto mode = get_or<std::string>(cfg, "export", "probes");
  if (mode != "probes" && mode != "grid") config_error("export must be 'probes' or 'grid'");
  const sg_quad_spec spec = parse_quadrature(cfg, opt.rel_tol);
  std::vector<sg_point> probes;
  if (mode == "probes") probes = parse_points(cfg, "probes", n);

  sg_fd_result* raw = nullptr;
  check_setup(sg_fd_solve(graph.get(), phi.get(), &fc, &raw), "fd");
  const FdResult result(raw);
  const std::size_t snaps = sg_fd_result_snapshot_count(result.get());

  auto& os = summary(opt);
  if (mode == "grid") {
    Csv csv("edge,x,t,u");
    const double dx = sg_fd_result_dx(result.get());
    const std::size_t nx = sg_fd_result_nx(result.get());
    for (std::size_t k = 0; k < snaps; ++k) {
      double t = 0.0;
      check_numeric(sg_fd_result_time(result.get(), k, &t), "fd");
      for (std::size_t e = 0; e < n; ++e) {
        for (std::size_t j = 0; j <= nx + 1; ++j) {
          double u = 0.0;
          check_numeric(sg_fd_result_node(result.get(), k, e, j, &u), "fd");
          csv.row({std::to_string(edge_label(e)), num(static_cast<double>(j) * dx), num(t), num(u)});
        }
      }
    }
    csv.write(opt.out);
    os << "snapshots=" << snaps << "\n";
    return 0;
  }

  struct Probe {
    double t, fd, exact;
  };
  const std::size_t rows = snaps * probes.size();
  const auto values = parallel_rows<Probe>(rows, opt.threads, [&](std::size_t i) {
    const std::size_t k = i / probes.size();
    const sg_point p = probes[i % probes.size()];
    Probe out{};
    check_numeric(sg_fd_result_time(result.get(), k, &out.t), "fd");
    check_numeric(sg_fd_result_eval(result.get(), k, p, &out.fd), "fd");
    sg_semigroup_value v{};
    check_numeric(sg_apply(graph.get(), phi.get(), p, out.t, &spec, &v), "apply");
    out.exact = v.u;
    return out;
  });

  Csv csv("edge,x,t,u_fd,u_kernel,abs_diff");
  double linf = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const sg_point p = probes[i % probes.size()];
    const auto& v = values[i];
    const double diff = std::abs(v.fd - v.exact);
    linf = std::max(linf, diff);
    csv.row({std::to_string(edge_label(p.edge)), num(p.coord), num(v.t), num(v.fd), num(v.exact),
             num(diff)});
  }
  csv.write(opt.out);
  double residual = 0.0;
  double mass = 0.0;
  double initial = 0.0;
  check_numeric(sg_function_weighted_mass(phi.get(), graph.get(), &initial), "mass");
  if (snaps > 0) {
    check_numeric(sg_fd_result_kirchhoff_residual(result.get(), snaps - 1, &residual), "fd");
    check_numeric(sg_fd_result_mass(result.get(), snaps - 1, &mass), "fd");
  }
  os << "rows=" << rows << "\n"
     << "linf=" << num(linf) << "\n"
     << "final_mass=" << num(mass) << " initial_mass=" << num(initial)
     << "\n"
     << "kirchhoff_residual=" << num(residual) << "\n";
  return 0;
}

int cmd_oracle_walk(const Options& opt) {
  const json cfg = load_config(opt.config);
  const Graph graph = parse_graph(cfg);
  const std::size_t n = sg_graph_edge_count(graph.get());
  const json start_node = cfg.contains("start") ? cfg.at("start") : json::object();
  const auto start_edge = get_or<long long>(start_node, "edge", 1);
  if (start_edge < 1 || static_cast<std::size_t>(start_edge) > n) config_error("start edge out of range");
  const sg_point start{static_cast<std::size_t>(start_edge - 1), get_or(start_node, "x", 0.0)};
  if (!(start.coord >= 0.0)) config_error("start coordinate must be nonnegative");
  const double t = get<double>(cfg, "t");
  if (!(t > 0.0)) config_error("t must be positive");
  const json walk = cfg.contains("walk") ? cfg.at("walk") : json::object();
  sg_walk_config wc{};
  wc.step = get_or(walk, "step", 0.01);
  wc.n_paths = get_or<std::uint64_t>(walk, "n_paths", 10000);
  wc.seed = opt.seed ? *opt.seed : get_or<std::uint64_t>(walk, "seed", 1);
  const auto bins = get_or<std::size_t>(cfg, "bins", 40);
  if (bins == 0) config_error("bins must be positive");
  const auto mode = get_or<std::string>(cfg, "export", "bins");
  if (mode != "bins" && mode != "paths") config_error("export must be 'bins' or 'paths'");

  sg_walk_report* raw = nullptr;
  check_setup(sg_walk_compare(graph.get(), start, t, &wc, bins, &raw), "walk");
  const WalkReport report(raw);

  if (mode == "paths") {
    Csv csv("path_id,edge,coord");
    const std::size_t paths = sg_walk_report_path_count(report.get());
    for (std::size_t i = 0; i < paths; ++i) {
      sg_point p{};
      check_numeric(sg_walk_report_endpoint(report.get(), i, &p), "walk");
      csv.row({std::to_string(i), std::to_string(edge_label(p.edge)), num(p.coord)});
    }
    csv.write(opt.out);
  } else {
    Csv csv("edge,lo,hi,count,expected,z");
    const std::size_t count = sg_walk_report_bin_count(report.get());
    for (std::size_t i = 0; i < count; ++i) {
      sg_walk_bin b{};
      check_numeric(sg_walk_report_bin(report.get(), i, &b), "walk");
      csv.row({std::to_string(edge_label(b.edge)), num(b.lo), num(b.hi), num(b.count), num(b.expected),
               num(b.z)});
    }
    csv.write(opt.out);
  }

  auto& os = summary(opt);
  os << "paths=" << wc.n_paths << " seed=" << wc.seed << " simulated_time="
     << num(sg_walk_report_simulated_time(report.get())) << "\n";
  for (std::size_t e = 0; e < n; ++e) {
    sg_walk_edge_stat s{};
    check_numeric(sg_walk_report_edge(report.get(), e, &s), "walk");
    os << "edge=" << edge_label(e) << " frequency=" << num(s.frequency) << " expected="
       << num(s.expected) << " sigma=" << num(s.sigma) << "\n";
  }
  os << "max_abs_z=" << num(sg_walk_report_max_abs_z(report.get())) << "\n"
     << "max_edge_sigmas=" << num(sg_walk_report_max_edge_sigmas(report.get())) << "\n";
  return 0;
}

int cmd_examples(const Options& opt) {
  const json cfg = load_config(opt.config);
  std::vector<int> which;
  if (cfg.contains("example") && cfg.at("example").is_number_integer()) {
    which.push_back(cfg.at("example").get<int>());
  } else {
    which = get_or<std::vector<int>>(cfg, "example", {1, 2});
  }
  for (int w : which) {
    if (w != 1 && w != 2) config_error("example must be 1 or 2");
  }
  const auto xs = parse_points(cfg, "x", 3);
  const auto ts = parse_times(cfg, "t");
  const sg_quad_spec spec = parse_quadrature(cfg, opt.rel_tol);

  struct Row {
    double u, u_closed, lhs, lhs_closed;
  };
  const std::size_t per = xs.size() * ts.size();
  const auto rows = parallel_rows<Row>(which.size() * per, opt.threads, [&](std::size_t i) {
    const int w = which[i / per];
    const sg_point x = xs[(i % per) / ts.size()];
    const double t = ts[i % ts.size()];
    sg_graph* g = nullptr;
    sg_function* f = nullptr;
    check_numeric(sg_example_setup(w, &g, &f), "examples");
    const Graph graph(g);
    const Function phi(f);
    Row r{};
    sg_semigroup_value v{};
    check_numeric(sg_apply(graph.get(), phi.get(), x, t, &spec, &v), "apply");
    r.u = v.u;
    check_numeric(sg_log_second_derivative(&v, &r.lhs), "log derivative");
    check_numeric(sg_example_closed_form(w, x.edge, x.coord, t, &r.u_closed, &r.lhs_closed),
                  "closed form");
    return r;
  });

  Csv csv("example,edge,x,t,u_pipeline,u_closed,u_abs_diff,lhs_pipeline,lhs_closed,lhs_abs_diff");
  double max_u = 0.0;
  double max_lhs = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const sg_point x = xs[(i % per) / ts.size()];
    const auto& r = rows[i];
    const double du = std::abs(r.u - r.u_closed);
    const double dl = std::abs(r.lhs - r.lhs_closed);
    max_u = std::max(max_u, du);
    max_lhs = std::max(max_lhs, dl);
    csv.row({std::to_string(which[i / per]), std::to_string(edge_label(x.edge)), num(x.coord),
             num(ts[i % ts.size()]), num(r.u), num(r.u_closed), num(du), num(r.lhs), num(r.lhs_closed),
             num(dl)});
  }
  csv.write(opt.out);
  summary(opt) << "rows=" << rows.size() << "\n"
               << "max_u_abs_diff=" << num(max_u) << "\n"
               << "max_lhs_abs_diff=" << num(max_lhs) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat kernel, Li-Yau and Harnack checks on weighted star graphs"};
  app.require_subcommand(1);
  Options opt;

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Command commands[] = {
      {"kernel", "tabulate the heat kernel and its derivatives", cmd_kernel},
      {"liyau-scan", "evaluate the Li-Yau margin over a grid", cmd_liyau_scan},
      {"harnack", "evaluate the Harnack margin over point pairs", cmd_harnack},
      {"oracle-fd", "compare against the Crank-Nicolson solver", cmd_oracle_fd},
      {"oracle-walk", "compare against the random-walk simulator", cmd_oracle_walk},
      {"examples", "closed-form examples against the pipeline", cmd_examples},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", opt.config, "JSON run configuration")->required();
    sub->add_option("--out", opt.out, "CSV output path ('-' for stdout)");
    sub->add_option("--rel-tol", opt.rel_tol, "quadrature relative tolerance");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
    subs.emplace_back(sub, c.run);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    for (const auto& [sub, run] : subs) {
      if (sub->parsed()) return run(opt);
    }
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
