#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tricount/graph.hpp"
#include "tricount/query.hpp"
#include "tricount/rng.hpp"

namespace tricount {

struct EstimatorConfig {
  double eps = 0.25;           // target relative error, in (0,1)
  double delta = 1.0 / 6.0;    // confidence for the amplified wrappers
  double c = 1.0;              // oversampling constant
  double l = 6.0;              // light threshold constant (documentation label)
  double h = 24.0;             // heavy threshold constant; enters s via 4c(1+h)
  double oracle_delta = 0.0;   // per-call heavy-oracle delta; 0 => 1/(m*n)
  double sample_scale = 1.0;   // 1.0 = analysis mode; <1 = practical mode
  double median_coeff = 18.0;  // repetitions = ceil(median_coeff * ln(1/delta))
  std::uint64_t max_samples = 100000000;  // infeasible above this s; 0 = off
  std::uint64_t seed = 0;      // carried for CLI plumbing only
  bool collect_records = false;  // keep per-edge records in the report

  void validate() const;
};

// Fixed assignment of each found triangle to exactly one charging edge.
// A triangle found again through a different edge is discarded; through the
// registered edge it is counted again.
class TriangleRegistry {
 public:
  const EdgeRef* find(const TriangleKey& t) const {
    auto it = map_.find(t);
    return it == map_.end() ? nullptr : &it->second;
  }
  void insert(const TriangleKey& t, const EdgeRef& e) {
    map_.emplace(t, e);
    entries_.emplace_back(t, e);
  }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::pair<TriangleKey, EdgeRef>>& entries() const {
    return entries_;
  }

 private:
  std::unordered_map<TriangleKey, EdgeRef, TriangleKeyHash> map_;
  std::vector<std::pair<TriangleKey, EdgeRef>> entries_;  // insertion order
};

struct PerEdgeRecord {
  EdgeRef e;
  std::uint8_t heavy_bit = 0;
  std::uint64_t r_e = 0;
  std::uint64_t charged = 0;
  double w = 0.0;
};

struct EstimateReport {
  double t_hat = 0.0;
  std::uint64_t s = 0;                  // edge samples drawn
  std::vector<PerEdgeRecord> records;   // populated when cfg.collect_records
  TriangleRegistry registry;
  std::uint64_t duplicates_suppressed = 0;
  QueryCounter counters;                // queries consumed by this run
  std::uint64_t oracle_calls = 0;       // distinct underlying oracle invocations
};

using EdgeOracle = std::function<int(const EdgeRef&)>;

// Weight-function estimator with an injected heavy/light oracle.
// Draws s = ceil(sample_scale * 4c(1+h) * eps^-3 * (m*alpha/t_tilde) * ln n)
// edges with replacement; every sampled edge consumes one extra coin flip so
// rng streams stay aligned across configurations. Light sampled edges run
// r_e neighbour trials from the low-degree endpoint; found triangles are
// charged to a fixed canonical edge (lexicographically smallest light edge of
// the triangle, resolved with <= 2 extra oracle consultations, memoized per
// run) and w(e) = (charged / r_e) * max(alpha, deg(e)).
EstimateReport estimate_with_oracle(QueryBackend& b, double t_tilde, double alpha,
                                    const EstimatorConfig& cfg,
                                    const EdgeOracle& oracle, Rng& rng);

// Production wrapper: eps/2 in the sample-size formula, oracle realized by
// heavy(e, alpha, eps/6, oracle_delta) with oracle_delta defaulting to
// 1/(m*n); oracle queries land in the same counters.
EstimateReport estimate(QueryBackend& b, double t_tilde, double alpha,
                        const EstimatorConfig& cfg, Rng& rng);

}  // namespace tricount
