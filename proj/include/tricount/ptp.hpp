#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tricount/estimator.hpp"
#include "tricount/graph.hpp"
#include "tricount/query.hpp"
#include "tricount/rng.hpp"

namespace tricount {

enum class PtpDist { D0, D1 };

std::string to_string(PtpDist d);

struct PtpInstance {
  std::uint64_t M = 0;
  std::uint64_t k = 0;
  double gamma = 0.0;
  std::vector<std::uint8_t> bits;  // length M, values 0/1
  std::string source = "external";  // "D0" | "D1" | "external"

  std::uint64_t popcount() const;
};

// Empty when (M, k, gamma) sits inside the lemma window
// 12*ln(1/delta)/gamma^2 <= k <= M/6 with gamma in (0,1/4) and delta in
// (0,1/100]; otherwise a human-readable description of the violations.
std::string ptp_window_warning(std::uint64_t M, std::uint64_t k, double gamma,
                               double delta);

// i.i.d. bits with P[1] = (1-2*gamma)*k/M under D0 and (1+2*gamma)*k/M under
// D1. Out-of-window parameters only warn (reported via *warning, checked at
// reference delta = 0.01); probabilities outside [0,1] are infeasible.
PtpInstance sample_ptp(std::uint64_t M, std::uint64_t k, double gamma,
                       PtpDist dist, Rng& rng, std::string* warning = nullptr);

// Layout of the gadget graph G_x. Vertex ids are contiguous:
// A = [0, R), A' = [R, 2R), B = [2R, 3R), B' = [3R, 4R), S = [4R, 4R+alpha*)
// with R = M/alpha*. Bit x_{r,c} (0-based row r, column c; flat index
// r*alpha* + c) connects row r to row (r + c + 1) mod R:
//   bit 0 -> (a_r, a'_t) and (b_r, b'_t); bit 1 -> (a_r, b_t) and (a'_r, b'_t);
// plus the complete bipartite (A u B) x S. Then m = 4M and the triangle count
// is exactly popcount(x) * alpha*.
struct GadgetSpec {
  std::uint64_t M = 0;
  std::uint64_t alpha_star = 0;

  std::uint64_t rows() const { return M / alpha_star; }
  std::uint64_t n() const { return 4 * rows() + alpha_star; }
  std::uint64_t m() const { return 4 * M; }

  // alpha* >= 1, alpha* | M, and alpha*^2 <= M (otherwise two columns of one
  // row collide mod R and the construction stops being a simple graph).
  void validate() const;
};

// Materializes G_x. Additionally guards M <= 10^6.
Graph build_explicit_gadget(const std::vector<std::uint8_t>& bits,
                            std::uint64_t alpha_star);

// Implicit backend answering the four queries from bit reads. Each first read
// of a bit increments oracle_bit_q; memoized re-reads are free. Degrees of
// A/B'/S vertices are closed-form (2*alpha*, alpha*, 2M/alpha*); B and A'
// degrees resolve their row + diagonal profile (<= 2*alpha* new bits, then
// free). RandomEdge lazily builds the full degree table (charging all
// remaining bits once) and afterwards costs no bits; its uniform-neighbour
// step is internal and does not bump neighbour_q.
class GadgetBackend final : public QueryBackend {
 public:
  GadgetBackend(const GadgetSpec& spec, const std::vector<std::uint8_t>& bits);

  VertexId n() const override { return static_cast<VertexId>(spec_.n()); }
  std::uint64_t m() const override { return spec_.m(); }

  std::uint64_t degree(VertexId v) override;
  VertexId neighbour(VertexId v, std::uint64_t i) override;
  bool edge(VertexId u, VertexId v) override;
  EdgeRef random_edge(Rng& rng) override;

 private:
  enum class Part { A, Ap, B, Bp, S };

  Part part_of(VertexId v, std::uint64_t& idx) const;
  int read_bit(std::uint64_t r, std::uint64_t c);
  std::uint64_t row_ones(std::uint64_t r);
  std::uint64_t diag_ones(std::uint64_t r);
  std::uint64_t degree_internal(VertexId v);
  VertexId neighbour_internal(VertexId v, std::uint64_t i);
  void build_table();

  GadgetSpec spec_;
  const std::vector<std::uint8_t>* bits_;
  std::vector<std::uint8_t> bit_seen_;
  std::vector<std::uint64_t> cum_;  // cumulative degrees, size n+1
  bool table_built_ = false;
};

struct DistinguishReport {
  double t_hat = 0.0;
  double threshold = 0.0;
  std::uint64_t repetitions = 0;
  QueryCounter counters;
};

// Runs the triangle estimator (estimate_with_confidence with eps = gamma,
// delta = cfg.delta, alpha = alpha*) over the implicit backend and labels the
// instance D1 iff t_hat >= (1 - gamma^2) * k * alpha*.
PtpDist ptp_distinguish(const std::vector<std::uint8_t>& bits,
                        const GadgetSpec& spec, std::uint64_t k, double gamma,
                        const EstimatorConfig& cfg, Rng& rng,
                        DistinguishReport* out = nullptr);

}  // namespace tricount
