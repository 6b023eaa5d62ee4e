#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "stargraph/stargraph.h"

namespace cli {

using nlohmann::json;

inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

class Failure : public std::runtime_error {
 public:
  Failure(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] int code() const noexcept { return code_; }

 private:
  int code_;
};

[[noreturn]] inline void config_error(const std::string& message) {
  throw Failure(kExitConfig, message);
}

// Statuses raised while building inputs are configuration problems.
inline void check_setup(sg_status status, const std::string& context) {
  if (status != SG_OK) config_error(context + ": " + sg_last_error());
}

inline void check_numeric(sg_status status, const std::string& context) {
  if (status != SG_OK) throw Failure(kExitNumeric, context + ": " + sg_last_error());
}

struct GraphDeleter {
  void operator()(sg_graph* p) const { sg_graph_destroy(p); }
};
struct FunctionDeleter {
  void operator()(sg_function* p) const { sg_function_destroy(p); }
};
struct FdDeleter {
  void operator()(sg_fd_result* p) const { sg_fd_result_destroy(p); }
};
struct WalkDeleter {
  void operator()(sg_walk_report* p) const { sg_walk_report_destroy(p); }
};
using Graph = std::unique_ptr<sg_graph, GraphDeleter>;
using Function = std::unique_ptr<sg_function, FunctionDeleter>;
using FdResult = std::unique_ptr<sg_fd_result, FdDeleter>;
using WalkReport = std::unique_ptr<sg_walk_report, WalkDeleter>;

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string num(std::uint64_t v) { return std::to_string(v); }

inline json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    config_error(path + ": " + e.what());
  }
}

template <class T>
T get(const json& node, const char* key) {
  if (!node.contains(key)) config_error(std::string("missing field '") + key + "'");
  try {
    return node.at(key).get<T>();
  } catch (const json::exception&) {
    config_error(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T get_or(const json& node, const char* key, T fallback) {
  return node.contains(key) ? get<T>(node, key) : fallback;
}

// Either a plain list or {"start", "stop", "count"} (count >= 0, endpoints included).
inline std::vector<double> parse_values(const json& node, const char* what) {
  if (node.is_array()) {
    std::vector<double> out;
    for (const auto& v : node) {
      if (!v.is_number()) config_error(std::string(what) + ": non-numeric entry");
      out.push_back(v.get<double>());
    }
    return out;
  }
  if (!node.is_object()) config_error(std::string(what) + ": expected a list or a range object");
  const auto start = get<double>(node, "start");
  const auto stop = get<double>(node, "stop");
  const auto count = get<long long>(node, "count");
  if (count < 0) config_error(std::string(what) + ": negative count");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    out.push_back(count == 1 ? start
                             : start + (stop - start) * static_cast<double>(k) /
                                           static_cast<double>(count - 1));
  }
  return out;
}

inline std::vector<double> parse_times(const json& cfg, const char* key) {
  if (!cfg.contains(key)) config_error(std::string("missing field '") + key + "'");
  auto times = parse_values(cfg.at(key), key);
  for (double t : times) {
    if (!(t > 0.0)) config_error(std::string(key) + ": times must be positive");
  }
  return times;
}

// {"edges": [1-based...], "coords": values}; a point list is edge-major.
inline std::vector<sg_point> parse_points(const json& cfg, const char* key, std::size_t edges) {
  if (!cfg.contains(key)) config_error(std::string("missing field '") + key + "'");
  const json& node = cfg.at(key);
  std::vector<long long> edge_list;
  if (node.contains("edges")) {
    edge_list = get<std::vector<long long>>(node, "edges");
  } else {
    for (std::size_t e = 1; e <= edges; ++e) edge_list.push_back(static_cast<long long>(e));
  }
  if (!node.contains("coords")) config_error(std::string(key) + ": missing 'coords'");
  const auto coords = parse_values(node.at("coords"), key);
  std::vector<sg_point> out;
  for (long long e : edge_list) {
    if (e < 1 || static_cast<std::size_t>(e) > edges) {
      config_error(std::string(key) + ": edge " + std::to_string(e) + " out of range");
    }
    for (double x : coords) {
      if (!(x >= 0.0) || !std::isfinite(x)) config_error(std::string(key) + ": bad coordinate");
      out.push_back({static_cast<std::size_t>(e - 1), x});
    }
  }
  return out;
}

inline Graph parse_graph(const json& cfg) {
  const auto weights = get<std::vector<double>>(cfg, "weights");
  sg_graph* g = nullptr;
  check_setup(sg_graph_create(weights.data(), weights.size(), &g), "weights");
  return Graph(g);
}

inline Function parse_function(const json& cfg) {
  if (!cfg.contains("function")) config_error("missing field 'function'");
  sg_function* f = nullptr;
  check_setup(sg_function_from_json(cfg.at("function").dump().c_str(), &f), "function");
  return Function(f);
}

inline sg_quad_spec parse_quadrature(const json& cfg, std::optional<double> rel_tol) {
  sg_quad_spec spec = sg_quad_spec_default();
  if (cfg.contains("quadrature")) {
    const json& q = cfg.at("quadrature");
    spec.rel_tol = get_or(q, "rel_tol", spec.rel_tol);
    spec.tail_eps = get_or(q, "tail_eps", spec.tail_eps);
    spec.max_panels = get_or(q, "max_panels", spec.max_panels);
  }
  if (rel_tol) spec.rel_tol = *rel_tol;
  if (!(spec.rel_tol > 0.0)) config_error("rel_tol must be positive");
  if (!(spec.tail_eps > 0.0 && spec.tail_eps < 1.0)) config_error("tail_eps must lie in (0,1)");
  if (spec.max_panels < 8) config_error("max_panels must be at least 8");
  return spec;
}

// Runs body(i) for i < n on a few workers; results come back in index order
// and the lowest-index failure is rethrown.
template <class Row, class F>
std::vector<Row> parallel_rows(std::size_t n, unsigned threads, F body) {
  std::vector<Row> rows(n);
  std::vector<std::exception_ptr> errors(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  auto work = [&](unsigned id) {
    for (std::size_t i = id; i < n; i += threads) {
      try {
        rows[i] = body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned id = 1; id < threads; ++id) pool.emplace_back(work, id);
    work(0);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

class Csv {
 public:
  explicit Csv(const std::string& header) { text_ = header + "\n"; }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text_ += ',';
      text_ += fields[i];
    }
    text_ += '\n';
  }

  void write(const std::string& path) const {
    if (path.empty() || path == "-") {
      std::cout << text_;
      std::cout.flush();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) config_error("cannot write " + path);
    out << text_;
  }

 private:
  std::string text_;
};

}  // namespace cli
