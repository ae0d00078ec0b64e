#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tricount/estimator.hpp"
#include "tricount/query.hpp"
#include "tricount/rng.hpp"

namespace tricount {

struct SearchStep {
  double t_bar = 0.0;
  double t_tilde = 0.0;
  std::uint32_t rep = 0;
  double x_i = 0.0;
  bool terminated = false;  // set on the last repetition of the final rung
};

struct SearchTrace {
  std::vector<SearchStep> steps;
  double final_x = 0.0;
  QueryCounter counters;
  std::uint64_t estimate_calls = 0;
};

// Geometric search over the guess t_tilde, removing the advice assumption.
// t_bar descends over real values n^3/2^j while >= 1; for each t_bar the
// inner t_tilde descends n^3/2^i down to t_bar; each rung runs
// max(1, ceil(2*ln(c*ln n))) repetitions of estimate() and returns
// X = min_i X_i at the first rung where X >= t_tilde. Returns 0 after the
// ladder exhausts (the triangle-free fallback). No results are cached across
// t_bar iterations.
std::pair<double, SearchTrace> search(QueryBackend& b, double alpha,
                                      const EstimatorConfig& cfg, Rng& rng);

struct ConfidenceReport {
  bool keep_traces = false;  // set by the caller before the run
  std::uint64_t repetitions = 0;
  std::vector<double> run_estimates;
  std::vector<SearchTrace> traces;
  double median = 0.0;
  QueryCounter counters;
};

// Median-trick amplification: R = 1 when delta >= 1/6 (a single search
// already succeeds with probability >= 5/6), else ceil(median_coeff *
// ln(1/delta)) independent search() runs; returns the lower median.
double estimate_with_confidence(QueryBackend& b, double alpha, double eps,
                                double delta, const EstimatorConfig& cfg,
                                Rng& rng, ConfidenceReport* out = nullptr);

}  // namespace tricount
