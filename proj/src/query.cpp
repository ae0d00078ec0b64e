#include "tricount/query.hpp"

#include <stdexcept>
#include <string>

#include "tricount/errors.hpp"

namespace tricount {

std::uint64_t MaterializedBackend::degree(VertexId v) {
  if (v >= g_->n()) throw std::out_of_range("degree: vertex out of range");
  ++counter_.degree_q;
  return g_->degree(v);
}

VertexId MaterializedBackend::neighbour(VertexId v, std::uint64_t i) {
  if (v >= g_->n()) throw std::out_of_range("neighbour: vertex out of range");
  if (i < 1 || i > g_->degree(v)) {
    throw std::out_of_range("neighbour: index " + std::to_string(i) +
                            " out of range for vertex " + std::to_string(v));
  }
  ++counter_.neighbour_q;
  return g_->neighbours(v)[i - 1];
}

bool MaterializedBackend::edge(VertexId u, VertexId v) {
  if (u >= g_->n() || v >= g_->n()) {
    throw std::out_of_range("edge: vertex out of range");
  }
  ++counter_.edge_q;
  if (u == v) return false;
  return g_->has_edge(u, v);
}

EdgeRef MaterializedBackend::random_edge(Rng& rng) {
  if (g_->m() == 0) throw UsageError("random_edge: empty edge set");
  ++counter_.random_edge_q;
  return g_->edges()[rng.below(g_->m())];
}

}  // namespace tricount
