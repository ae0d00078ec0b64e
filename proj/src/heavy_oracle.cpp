#include "tricount/heavy_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "tricount/errors.hpp"

namespace tricount {

HeavyDecision heavy(QueryBackend& b, const EdgeRef& e, double alpha, double eps,
                    double delta, Rng& rng) {
  if (!(alpha > 0.0)) throw UsageError("heavy: alpha must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw UsageError("heavy: eps must be in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw UsageError("heavy: delta must be in (0,1)");

  std::uint64_t du = b.degree(e.u);
  std::uint64_t dv = b.degree(e.v);
  // Low-degree endpoint, ties toward the smaller id (e is normalized u < v).
  VertexId v = du <= dv ? e.u : e.v;
  VertexId x = du <= dv ? e.v : e.u;
  std::uint64_t dlow = std::min(du, dv);
  double deg_e = static_cast<double>(dlow);

  double r_real = 16.0 * eps * deg_e / alpha * std::log(1.0 / delta);
  std::uint64_t r = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(r_real)));

  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < r; ++t) {
    std::uint64_t k = rng.below(dlow) + 1;
    VertexId u = b.neighbour(v, k);
    if (b.edge(u, x)) ++hits;  // u == x answers false but still counts
  }
  double y_hat = static_cast<double>(hits) / static_cast<double>(r);
  HeavyDecision d;
  d.r = r;
  d.y_hat = y_hat;
  d.bit = y_hat >= alpha / (eps * deg_e) ? 1 : 0;
  return d;
}

}  // namespace tricount
