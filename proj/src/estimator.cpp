#include "tricount/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tricount/errors.hpp"
#include "tricount/heavy_oracle.hpp"

namespace tricount {

void EstimatorConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw UsageError("config: eps must be in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw UsageError("config: delta must be in (0,1)");
  if (!(c > 0.0)) throw UsageError("config: c must be positive");
  if (!(h > l && l > 0.0)) throw UsageError("config: need h > l > 0");
  if (!(sample_scale > 0.0)) throw UsageError("config: sample_scale must be positive");
  if (!(median_coeff > 0.0)) throw UsageError("config: median_coeff must be positive");
  if (oracle_delta < 0.0 || oracle_delta >= 1.0) {
    throw UsageError("config: oracle_delta must be 0 (auto) or in (0,1)");
  }
}

namespace {

// Lexicographically smallest light edge of the triangle found through light
// edge e = (v,x) with apex u. Only candidates that could improve on the
// current best are sent to the oracle, which keeps the assignment fixed
// (independent of which edge found the triangle first) as long as the oracle
// answers consistently within the run.
EdgeRef canonical_edge(const EdgeRef& e, VertexId v, VertexId x, VertexId u,
                       const EdgeOracle& oracle) {
  EdgeRef best = e;
  for (const EdgeRef cand : {EdgeRef(v, u), EdgeRef(x, u)}) {
    if (cand < best && oracle(cand) == 0) best = cand;
  }
  return best;
}

}  // namespace

EstimateReport estimate_with_oracle(QueryBackend& b, double t_tilde, double alpha,
                                    const EstimatorConfig& cfg,
                                    const EdgeOracle& oracle, Rng& rng) {
  cfg.validate();
  if (!(alpha > 0.0)) throw UsageError("estimate: alpha must be positive");
  const VertexId n = b.n();
  const std::uint64_t m = b.m();
  const double dn = static_cast<double>(n);
  if (t_tilde < 1.0) throw UsageError("estimate: t_tilde < 1");
  if (t_tilde > dn * dn * dn) throw UsageError("estimate: t_tilde > n^3");

  double s_real = cfg.sample_scale * 4.0 * cfg.c * (1.0 + cfg.h) *
                  std::pow(cfg.eps, -3.0) *
                  (static_cast<double>(m) * alpha / t_tilde) * std::log(dn);
  if (!std::isfinite(s_real) || !(s_real > 0.0)) {
    throw UsageError("estimate: computed sample size is 0 (s_real=" +
                     std::to_string(s_real) + "); not clamping");
  }
  const std::uint64_t s = static_cast<std::uint64_t>(std::ceil(s_real));
  if (cfg.max_samples > 0 && s > cfg.max_samples) {
    throw InfeasibleError("estimate: sample size s=" + std::to_string(s) +
                          " exceeds max_samples=" + std::to_string(cfg.max_samples));
  }

  EstimateReport report;
  report.s = s;
  if (cfg.collect_records) report.records.reserve(s);
  const QueryCounter start = b.counter();

  // Per-run verdict cache: the oracle behaves as one fixed function for the
  // whole run, which the canonical charging relies on.
  std::unordered_map<std::uint64_t, int> verdicts;
  auto cached_oracle = [&](const EdgeRef& q) -> int {
    auto it = verdicts.find(q.packed());
    if (it != verdicts.end()) return it->second;
    int bit = oracle(q);
    ++report.oracle_calls;
    verdicts.emplace(q.packed(), bit);
    return bit;
  };

  double sum_w = 0.0;
  for (std::uint64_t i = 0; i < s; ++i) {
    const EdgeRef e = b.random_edge(rng);
    const std::uint64_t du = b.degree(e.u);
    const std::uint64_t dv = b.degree(e.v);
    const VertexId v = du <= dv ? e.u : e.v;  // ties toward smaller id
    const VertexId x = du <= dv ? e.v : e.u;
    const std::uint64_t dlow = std::min(du, dv);

    const int bit = cached_oracle(e);
    const double coin = rng.u01();  // always consumed, keeps streams aligned

    std::uint64_t r_e = 0;
    std::uint64_t charged = 0;
    double w = 0.0;
    if (bit == 0) {
      const double dl = static_cast<double>(dlow);
      if (dl <= alpha) {
        r_e = coin < dl / alpha ? 1 : 0;
      } else {
        r_e = static_cast<std::uint64_t>(std::ceil(dl / alpha));
      }
      for (std::uint64_t t = 0; t < r_e; ++t) {
        const std::uint64_t k = rng.below(dlow) + 1;
        const VertexId u = b.neighbour(v, k);
        if (!b.edge(u, x)) continue;  // u == x answers false
        const TriangleKey tri(v, x, u);
        const EdgeRef* charge = report.registry.find(tri);
        if (charge == nullptr) {
          report.registry.insert(tri, canonical_edge(e, v, x, u, cached_oracle));
          charge = report.registry.find(tri);
        }
        if (*charge == e) {
          ++charged;
        } else {
          ++report.duplicates_suppressed;
        }
      }
      if (r_e > 0) {
        w = (static_cast<double>(charged) / static_cast<double>(r_e)) *
            std::max(alpha, static_cast<double>(dlow));
      }
    }
    sum_w += w;
    if (cfg.collect_records) {
      report.records.push_back(
          {e, static_cast<std::uint8_t>(bit), r_e, charged, w});
    }
  }

  report.t_hat = static_cast<double>(m) / static_cast<double>(s) * sum_w;
  report.counters = b.counter() - start;
  return report;
}

EstimateReport estimate(QueryBackend& b, double t_tilde, double alpha,
                        const EstimatorConfig& cfg, Rng& rng) {
  cfg.validate();
  if (b.m() == 0) throw UsageError("estimate: graph has no edges");
  const double oracle_delta =
      cfg.oracle_delta > 0.0
          ? cfg.oracle_delta
          : 1.0 / (static_cast<double>(b.m()) * static_cast<double>(b.n()));
  EstimatorConfig inner = cfg;
  inner.eps = cfg.eps / 2.0;  // the substitution applies to the s-formula only
  const double oracle_eps = cfg.eps / 6.0;
  EdgeOracle oracle = [&b, alpha, oracle_eps, oracle_delta, &rng](const EdgeRef& e) {
    return heavy(b, e, alpha, oracle_eps, oracle_delta, rng).bit;
  };
  return estimate_with_oracle(b, t_tilde, alpha, inner, oracle, rng);
}

}  // namespace tricount
