#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tricount/rng.hpp"

namespace tricount {

using VertexId = std::uint32_t;

// Undirected edge with normalized endpoints (u < v).
struct EdgeRef {
  VertexId u = 0;
  VertexId v = 0;

  EdgeRef() = default;
  EdgeRef(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool operator==(const EdgeRef& o) const { return u == o.u && v == o.v; }
  bool operator!=(const EdgeRef& o) const { return !(*this == o); }
  bool operator<(const EdgeRef& o) const {
    return u != o.u ? u < o.u : v < o.v;
  }
  std::uint64_t packed() const {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
};

// Vertex triple sorted ascending; identifies a triangle independently of how
// it was found.
struct TriangleKey {
  VertexId a = 0, b = 0, c = 0;

  TriangleKey() = default;
  TriangleKey(VertexId x, VertexId y, VertexId z);

  bool operator==(const TriangleKey& o) const {
    return a == o.a && b == o.b && c == o.c;
  }
};

struct TriangleKeyHash {
  std::size_t operator()(const TriangleKey& t) const {
    std::uint64_t h = (static_cast<std::uint64_t>(t.a) << 42) ^
                      (static_cast<std::uint64_t>(t.b) << 21) ^ t.c;
    h ^= h >> 33;
    h *= 0xFF51AFD7ED558CCDull;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

struct EdgeRefHash {
  std::size_t operator()(const EdgeRef& e) const {
    std::uint64_t h = e.packed();
    h ^= h >> 33;
    h *= 0xC4CEB9FE1A85EC53ull;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

// Materialized simple undirected graph: sorted adjacency plus edge list.
class Graph {
 public:
  Graph() = default;
  // Takes a deduplicated, self-loop-free edge list; normalizes and sorts it
  // and builds adjacency. Throws UsageError on invalid input.
  Graph(VertexId n, std::vector<EdgeRef> edges);

  VertexId n() const { return n_; }
  std::uint64_t m() const { return edges_.size(); }
  const std::vector<EdgeRef>& edges() const { return edges_; }
  std::uint64_t degree(VertexId v) const { return adj_[v].size(); }
  const std::vector<VertexId>& neighbours(VertexId v) const { return adj_[v]; }
  bool has_edge(VertexId u, VertexId v) const;

  // Endpoint with the smaller degree; ties broken toward the smaller id.
  VertexId low_endpoint(const EdgeRef& e) const;
  // deg(e) = min of the endpoint degrees.
  std::uint64_t edge_degree(const EdgeRef& e) const;

 private:
  VertexId n_ = 0;
  std::vector<EdgeRef> edges_;
  std::vector<std::vector<VertexId>> adj_;
};

// ---- exact oracles ----

// Number of triangles containing each edge, aligned with g.edges().
// Sum over edges equals 3T.
std::vector<std::uint64_t> triangles_per_edge(const Graph& g);

std::uint64_t count_triangles_exact(const Graph& g);

// Visits every triangle exactly once with a < b < c.
void for_each_triangle(const Graph& g,
                       const std::function<void(VertexId, VertexId, VertexId)>& fn);

// Degeneracy by min-degree peeling (0 for the empty graph). An upper bound on
// arboricity within a factor of 2 and the default stand-in for it.
std::uint64_t degeneracy(const Graph& g);

// ceil(m / (n - 1)): a lower bound on arboricity (0 when n < 2 or m = 0).
std::uint64_t density_lower_bound(const Graph& g);

// ---- I/O ----

// Format: first line "n m", then m lines "u v" with 0-based vertex ids.
// Throws InputError with a line number on malformed, out-of-range, duplicate,
// or self-loop entries.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

// ---- generators ----

Graph gen_clique(VertexId n);
Graph gen_er(VertexId n, double p, Rng& rng);
// Union of `alpha` uniform random recursive trees on [0,n); duplicate edges
// dropped. Arboricity <= alpha; triangle-free only for alpha = 1 (overlapping
// trees can close triangles).
Graph gen_forest_union(VertexId n, std::uint32_t alpha, Rng& rng);

struct PlantedGraph {
  Graph graph;
  std::uint64_t planted = 0;  // accepted edge-disjoint triples
};
// forest_union(n, alpha) plus t_target edge-disjoint planted triangles: each
// accepted triple adds three fresh edges and therefore at least one new
// triangle, so the result has >= t_target triangles (usually more; compare
// against count_triangles_exact). Throws InfeasibleError if the target cannot
// be reached.
PlantedGraph gen_planted(VertexId n, std::uint32_t alpha, std::uint64_t t_target,
                         Rng& rng);

// Deterministic scaling-family member: t vertex-disjoint triangles plus a
// disjoint path carrying m_total - 3t edges, total n_total vertices (the rest
// isolated). Exactly t triangles, degeneracy 2. Requires m_total >= 3t and
// n_total large enough to host both parts.
Graph gen_tri_path(std::uint64_t t, std::uint64_t m_total, std::uint64_t n_total);

}  // namespace tricount
