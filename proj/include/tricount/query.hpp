#pragma once

#include <cstdint>

#include "tricount/graph.hpp"
#include "tricount/rng.hpp"

namespace tricount {

// Per-kind query accounting. bit reads apply to the implicit gadget backend
// only (zero for materialized graphs).
struct QueryCounter {
  std::uint64_t degree_q = 0;
  std::uint64_t neighbour_q = 0;
  std::uint64_t edge_q = 0;
  std::uint64_t random_edge_q = 0;
  std::uint64_t oracle_bit_q = 0;

  std::uint64_t total() const {
    return degree_q + neighbour_q + edge_q + random_edge_q + oracle_bit_q;
  }

  QueryCounter& operator+=(const QueryCounter& o) {
    degree_q += o.degree_q;
    neighbour_q += o.neighbour_q;
    edge_q += o.edge_q;
    random_edge_q += o.random_edge_q;
    oracle_bit_q += o.oracle_bit_q;
    return *this;
  }

  QueryCounter operator-(const QueryCounter& o) const {
    return QueryCounter{degree_q - o.degree_q, neighbour_q - o.neighbour_q,
                        edge_q - o.edge_q, random_edge_q - o.random_edge_q,
                        oracle_bit_q - o.oracle_bit_q};
  }

  bool operator==(const QueryCounter& o) const {
    return degree_q == o.degree_q && neighbour_q == o.neighbour_q &&
           edge_q == o.edge_q && random_edge_q == o.random_edge_q &&
           oracle_bit_q == o.oracle_bit_q;
  }
};

// The four-query access contract. Every call increments exactly one counter
// by exactly 1 (bit reads are accounted separately by the gadget backend).
// A backend instance with its counter belongs to a single run.
class QueryBackend {
 public:
  virtual ~QueryBackend() = default;

  virtual VertexId n() const = 0;     // metadata, free
  virtual std::uint64_t m() const = 0;  // metadata, free

  virtual std::uint64_t degree(VertexId v) = 0;
  // 1-indexed; enumerates N(v) without repetition in the backend's fixed
  // order. i must be in [1, degree(v)].
  virtual VertexId neighbour(VertexId v, std::uint64_t i) = 0;
  // Membership bit. edge(v, v) is a counted query answering false.
  virtual bool edge(VertexId u, VertexId v) = 0;
  // Uniform over the edge set; normalized EdgeRef.
  virtual EdgeRef random_edge(Rng& rng) = 0;

  QueryCounter& counter() { return counter_; }
  const QueryCounter& counter() const { return counter_; }

 protected:
  QueryCounter counter_;
};

// Backend over a materialized Graph. Neighbour order is ascending vertex id;
// RandomEdge draws a uniform index into the edge list.
class MaterializedBackend final : public QueryBackend {
 public:
  explicit MaterializedBackend(const Graph& g) : g_(&g) {}

  VertexId n() const override { return g_->n(); }
  std::uint64_t m() const override { return g_->m(); }

  std::uint64_t degree(VertexId v) override;
  VertexId neighbour(VertexId v, std::uint64_t i) override;
  bool edge(VertexId u, VertexId v) override;
  EdgeRef random_edge(Rng& rng) override;

 private:
  const Graph* g_;
};

}  // namespace tricount
