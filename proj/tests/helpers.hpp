// Shared test utilities: independent brute-force oracles, statistical
// helpers, and a harness for driving the CLI binary.
#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "tricount/estimator.hpp"
#include "tricount/graph.hpp"

namespace testutil {

using tricount::EdgeRef;
using tricount::Graph;
using tricount::VertexId;

// ---- independent exact oracles (adjacency-matrix triple loop) ----

inline std::vector<std::vector<char>> dense_adj(const Graph& g) {
  std::vector<std::vector<char>> adj(g.n(), std::vector<char>(g.n(), 0));
  for (const EdgeRef& e : g.edges()) {
    adj[e.u][e.v] = 1;
    adj[e.v][e.u] = 1;
  }
  return adj;
}

inline std::uint64_t brute_triangles(const Graph& g) {
  const auto adj = dense_adj(g);
  std::uint64_t t = 0;
  for (VertexId a = 0; a < g.n(); ++a)
    for (VertexId b = a + 1; b < g.n(); ++b)
      if (adj[a][b])
        for (VertexId c = b + 1; c < g.n(); ++c)
          if (adj[a][c] && adj[b][c]) ++t;
  return t;
}

inline std::vector<std::uint64_t> brute_triangles_per_edge(const Graph& g) {
  const auto adj = dense_adj(g);
  std::vector<std::uint64_t> te(g.m(), 0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const EdgeRef& e = g.edges()[i];
    for (VertexId w = 0; w < g.n(); ++w) {
      if (w != e.u && w != e.v && adj[e.u][w] && adj[e.v][w]) ++te[i];
    }
  }
  return te;
}

// Degeneracy by literal repeated min-degree removal, O(n^2) per step.
inline std::uint64_t naive_degeneracy(const Graph& g) {
  auto adj = dense_adj(g);
  std::vector<std::uint64_t> deg(g.n(), 0);
  std::vector<char> alive(g.n(), 1);
  for (VertexId v = 0; v < g.n(); ++v) deg[v] = g.degree(v);
  std::uint64_t best = 0;
  for (VertexId round = 0; round < g.n(); ++round) {
    VertexId pick = 0;
    std::uint64_t lo = UINT64_MAX;
    for (VertexId v = 0; v < g.n(); ++v) {
      if (alive[v] && deg[v] < lo) {
        lo = deg[v];
        pick = v;
      }
    }
    best = std::max(best, lo);
    alive[pick] = 0;
    for (VertexId w = 0; w < g.n(); ++w) {
      if (alive[w] && adj[pick][w]) --deg[w];
    }
  }
  return best;
}

// Exact heavy/light function: edge is heavy iff its triangle count exceeds
// tau. Keyed by the packed normalized edge.
inline tricount::EdgeOracle exact_threshold_oracle(const Graph& g, double tau) {
  auto te = tricount::triangles_per_edge(g);
  auto map = std::make_shared<std::unordered_map<std::uint64_t, std::uint64_t>>();
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    map->emplace(g.edges()[i].packed(), te[i]);
  }
  return [map, tau](const EdgeRef& e) -> int {
    return static_cast<double>(map->at(e.packed())) > tau ? 1 : 0;
  };
}

// Triangles with at least one light edge under the given oracle.
inline std::uint64_t light_triangle_count(const Graph& g,
                                          const tricount::EdgeOracle& oracle) {
  std::uint64_t count = 0;
  tricount::for_each_triangle(g, [&](VertexId a, VertexId b, VertexId c) {
    if (oracle(EdgeRef(a, b)) == 0 || oracle(EdgeRef(a, c)) == 0 ||
        oracle(EdgeRef(b, c)) == 0) {
      ++count;
    }
  });
  return count;
}

// Hub edge (0,1) sharing `pages` common neighbours, endpoint degrees padded
// with pendants up to hub_degree. T_e(0,1) = pages exactly.
inline Graph book_graph(std::uint64_t pages, std::uint64_t hub_degree) {
  std::vector<EdgeRef> edges;
  edges.emplace_back(0, 1);
  VertexId next = 2;
  for (std::uint64_t p = 0; p < pages; ++p, ++next) {
    edges.emplace_back(0, next);
    edges.emplace_back(1, next);
  }
  const std::uint64_t pendants = hub_degree - 1 - pages;
  for (std::uint64_t i = 0; i < pendants; ++i, ++next) edges.emplace_back(0, next);
  for (std::uint64_t i = 0; i < pendants; ++i, ++next) edges.emplace_back(1, next);
  return Graph(next, std::move(edges));
}

// ---- statistics ----

inline double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double stddev_of(const std::vector<double>& xs) {
  const double mu = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

inline double chi2_uniform(const std::vector<std::uint64_t>& counts,
                           double expected) {
  double stat = 0.0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

// Upper critical values of the chi-square distribution at significance 0.001
// for the degree-of-freedom values used by the suite.
inline double chi2_crit_001(std::size_t dof) {
  static const std::map<std::size_t, double> table{
      {5, 20.515}, {63, 103.44}, {255, 330.55}};
  return table.at(dof);
}

// Least-squares slope of ys over xs.
inline double fit_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  const double mx = mean_of(xs), my = mean_of(ys);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / den;
}

// ---- CLI harness ----

struct CliResult {
  int exit_code = -1;
  std::string out;
};

inline std::string cli_path() {
  const char* env = std::getenv("TRICOUNT_CLI");
  return env != nullptr ? std::string(env) : std::string("./build/tricount");
}

inline CliResult run_cli(const std::string& args, bool keep_stderr = false) {
  const std::string cmd =
      cli_path() + " " + args + (keep_stderr ? " 2>&1" : " 2>/dev/null");
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

inline std::string temp_path(const std::string& name) {
  const char* base = std::getenv("TMPDIR");
  std::string dir = base != nullptr ? base : "/tmp";
  return dir + "/tricount_test_" + std::to_string(getpid()) + "_" + name;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace testutil
