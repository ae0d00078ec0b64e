#pragma once

#include <cstdint>

#include "tricount/query.hpp"
#include "tricount/rng.hpp"

namespace tricount {

struct HeavyDecision {
  int bit = 0;           // 1 = heavy, 0 = light
  std::uint64_t r = 0;   // samples used
  double y_hat = 0.0;    // fraction of samples that closed a triangle
};

// Classifies edge e as heavy/light by sampling neighbours of its low-degree
// endpoint. Performs exactly 2 Degree queries plus r x (1 Neighbour + 1 Edge)
// with r = ceil(16 * eps * deg(e) / alpha * ln(1/delta)), r >= 1. With
// probability >= 1-delta the answer is 1 when T_e >= 2*alpha/eps and 0 when
// T_e <= alpha/(2*eps); the middle regime carries no guarantee. The caller is
// responsible for e being an edge and for its choice of delta.
HeavyDecision heavy(QueryBackend& b, const EdgeRef& e, double alpha, double eps,
                    double delta, Rng& rng);

}  // namespace tricount
