#include "tricount/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tricount/errors.hpp"

namespace tricount {

std::pair<double, SearchTrace> search(QueryBackend& b, double alpha,
                                      const EstimatorConfig& cfg, Rng& rng) {
  cfg.validate();
  const VertexId n = b.n();
  if (n < 2) throw UsageError("search: need n >= 2");
  const double dn = static_cast<double>(n);
  const double n3 = dn * dn * dn;

  const double cln = cfg.c * std::log(dn);
  const std::uint64_t reps =
      cln > 1.0 ? std::max<std::uint64_t>(
                      1, static_cast<std::uint64_t>(std::ceil(2.0 * std::log(cln))))
                : 1;

  EstimatorConfig inner = cfg;
  inner.collect_records = false;

  SearchTrace trace;
  const QueryCounter start = b.counter();
  for (double t_bar = n3; t_bar >= 1.0; t_bar *= 0.5) {
    for (double t_tilde = n3; t_tilde >= t_bar; t_tilde *= 0.5) {
      double x = std::numeric_limits<double>::infinity();
      for (std::uint32_t rep = 0; rep < reps; ++rep) {
        EstimateReport r = estimate(b, t_tilde, alpha, inner, rng);
        ++trace.estimate_calls;
        x = std::min(x, r.t_hat);
        trace.steps.push_back({t_bar, t_tilde, rep, r.t_hat, false});
      }
      if (x >= t_tilde) {
        trace.steps.back().terminated = true;
        trace.final_x = x;
        trace.counters = b.counter() - start;
        return {x, trace};
      }
    }
  }
  trace.final_x = 0.0;
  trace.counters = b.counter() - start;
  return {0.0, trace};
}

double estimate_with_confidence(QueryBackend& b, double alpha, double eps,
                                double delta, const EstimatorConfig& cfg,
                                Rng& rng, ConfidenceReport* out) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw UsageError("estimate_with_confidence: delta must be in (0,1)");
  }
  EstimatorConfig run_cfg = cfg;
  run_cfg.eps = eps;
  run_cfg.delta = delta;
  run_cfg.validate();

  const std::uint64_t reps =
      delta >= 1.0 / 6.0
          ? 1
          : std::max<std::uint64_t>(
                1, static_cast<std::uint64_t>(
                       std::ceil(cfg.median_coeff * std::log(1.0 / delta))));

  std::vector<double> estimates;
  estimates.reserve(reps);
  QueryCounter agg;
  for (std::uint64_t i = 0; i < reps; ++i) {
    Rng run_rng = rng.split();
    auto [x, tr] = search(b, alpha, run_cfg, run_rng);
    estimates.push_back(x);
    agg += tr.counters;
    if (out != nullptr && out->keep_traces) out->traces.push_back(std::move(tr));
  }

  std::vector<double> sorted = estimates;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[(reps - 1) / 2];  // lower median when even

  if (out != nullptr) {
    out->repetitions = reps;
    out->run_estimates = std::move(estimates);
    out->median = median;
    out->counters = agg;
  }
  return median;
}

}  // namespace tricount
