#include "tricount/ptp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tricount/errors.hpp"
#include "tricount/search.hpp"

namespace tricount {

std::string to_string(PtpDist d) { return d == PtpDist::D0 ? "D0" : "D1"; }

std::uint64_t PtpInstance::popcount() const {
  return std::accumulate(bits.begin(), bits.end(), std::uint64_t{0});
}

std::string ptp_window_warning(std::uint64_t M, std::uint64_t k, double gamma,
                               double delta) {
  std::string w;
  auto add = [&w](const std::string& s) {
    if (!w.empty()) w += "; ";
    w += s;
  };
  if (!(gamma > 0.0 && gamma < 0.25)) add("gamma outside (0, 1/4)");
  // Closed at the reference confidence: 1/100 itself is the delta the
  // deviation bound is quoted at, so it must not warn.
  if (!(delta > 0.0 && delta <= 0.01)) add("delta outside (0, 1/100]");
  if (gamma > 0.0 && delta > 0.0) {
    double lo = 12.0 * std::log(1.0 / delta) / (gamma * gamma);
    if (static_cast<double>(k) < lo) {
      add("k below 12*ln(1/delta)/gamma^2 = " + std::to_string(lo));
    }
  }
  if (static_cast<double>(k) > static_cast<double>(M) / 6.0) add("k above M/6");
  return w;
}

PtpInstance sample_ptp(std::uint64_t M, std::uint64_t k, double gamma,
                       PtpDist dist, Rng& rng, std::string* warning) {
  if (M == 0) throw UsageError("sample_ptp: M must be positive");
  const double p = (dist == PtpDist::D0 ? 1.0 - 2.0 * gamma : 1.0 + 2.0 * gamma) *
                   static_cast<double>(k) / static_cast<double>(M);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InfeasibleError("sample_ptp: bit probability " + std::to_string(p) +
                          " outside [0,1]");
  }
  // Lemma window checked at the reference confidence of the deviation bound.
  const std::string w = ptp_window_warning(M, k, gamma, 0.01);
  if (warning != nullptr) *warning = w;

  PtpInstance inst;
  inst.M = M;
  inst.k = k;
  inst.gamma = gamma;
  inst.source = to_string(dist);
  inst.bits.resize(M);
  for (std::uint64_t i = 0; i < M; ++i) {
    inst.bits[i] = rng.bernoulli(p) ? 1 : 0;
  }
  return inst;
}

void GadgetSpec::validate() const {
  if (M == 0 || alpha_star == 0) {
    throw UsageError("gadget: M and alpha* must be positive");
  }
  if (M % alpha_star != 0) {
    throw InfeasibleError("gadget: alpha* does not divide M");
  }
  if (alpha_star * alpha_star > M) {
    throw InfeasibleError(
        "gadget: alpha*^2 > M collapses distinct columns of a row onto the "
        "same target row (duplicate edges)");
  }
}

Graph build_explicit_gadget(const std::vector<std::uint8_t>& bits,
                            std::uint64_t alpha_star) {
  GadgetSpec spec{bits.size(), alpha_star};
  spec.validate();
  if (spec.M > 1000000) {
    throw InfeasibleError("gadget: explicit materialization limited to M <= 1e6");
  }
  const std::uint64_t R = spec.rows();
  const VertexId a0 = 0;
  const VertexId ap0 = static_cast<VertexId>(R);
  const VertexId b0 = static_cast<VertexId>(2 * R);
  const VertexId bp0 = static_cast<VertexId>(3 * R);
  const VertexId s0 = static_cast<VertexId>(4 * R);

  std::vector<EdgeRef> edges;
  edges.reserve(spec.m());
  for (std::uint64_t r = 0; r < R; ++r) {
    for (std::uint64_t q = 0; q < alpha_star; ++q) {
      edges.emplace_back(a0 + static_cast<VertexId>(r), s0 + static_cast<VertexId>(q));
      edges.emplace_back(b0 + static_cast<VertexId>(r), s0 + static_cast<VertexId>(q));
    }
  }
  for (std::uint64_t r = 0; r < R; ++r) {
    for (std::uint64_t c = 0; c < alpha_star; ++c) {
      const VertexId t = static_cast<VertexId>((r + c + 1) % R);
      const VertexId rr = static_cast<VertexId>(r);
      if (bits[r * alpha_star + c]) {
        edges.emplace_back(a0 + rr, b0 + t);
        edges.emplace_back(ap0 + rr, bp0 + t);
      } else {
        edges.emplace_back(a0 + rr, ap0 + t);
        edges.emplace_back(b0 + rr, bp0 + t);
      }
    }
  }
  return Graph(static_cast<VertexId>(spec.n()), std::move(edges));
}

GadgetBackend::GadgetBackend(const GadgetSpec& spec,
                             const std::vector<std::uint8_t>& bits)
    : spec_(spec), bits_(&bits), bit_seen_(spec.M, 0) {
  spec_.validate();
  if (bits.size() != spec_.M) {
    throw UsageError("gadget backend: bit string length != M");
  }
}

GadgetBackend::Part GadgetBackend::part_of(VertexId v, std::uint64_t& idx) const {
  const std::uint64_t R = spec_.rows();
  if (v < R) { idx = v; return Part::A; }
  if (v < 2 * R) { idx = v - R; return Part::Ap; }
  if (v < 3 * R) { idx = v - 2 * R; return Part::B; }
  if (v < 4 * R) { idx = v - 3 * R; return Part::Bp; }
  if (v < 4 * R + spec_.alpha_star) { idx = v - 4 * R; return Part::S; }
  throw std::out_of_range("gadget backend: vertex out of range");
}

int GadgetBackend::read_bit(std::uint64_t r, std::uint64_t c) {
  const std::uint64_t idx = r * spec_.alpha_star + c;
  if (!bit_seen_[idx]) {
    bit_seen_[idx] = 1;
    ++counter_.oracle_bit_q;
  }
  return (*bits_)[idx];
}

std::uint64_t GadgetBackend::row_ones(std::uint64_t r) {
  std::uint64_t ones = 0;
  for (std::uint64_t c = 0; c < spec_.alpha_star; ++c) ones += read_bit(r, c);
  return ones;
}

// Diagonal of row r: the bits whose edge lands on row r, one per column
// (source row (r - c - 1) mod R).
std::uint64_t GadgetBackend::diag_ones(std::uint64_t r) {
  const std::uint64_t R = spec_.rows();
  std::uint64_t ones = 0;
  for (std::uint64_t c = 0; c < spec_.alpha_star; ++c) {
    ones += read_bit((r + R - c - 1) % R, c);
  }
  return ones;
}

std::uint64_t GadgetBackend::degree_internal(VertexId v) {
  std::uint64_t idx;
  const std::uint64_t as = spec_.alpha_star;
  switch (part_of(v, idx)) {
    case Part::A:
      return 2 * as;
    case Part::Bp:
      return as;
    case Part::S:
      return 2 * spec_.rows();
    case Part::B:
      return as + (as - row_ones(idx)) + diag_ones(idx);
    case Part::Ap:
      return row_ones(idx) + (as - diag_ones(idx));
  }
  return 0;  // unreachable
}

VertexId GadgetBackend::neighbour_internal(VertexId v, std::uint64_t i) {
  std::uint64_t idx;
  const Part part = part_of(v, idx);
  const std::uint64_t R = spec_.rows();
  const std::uint64_t as = spec_.alpha_star;
  const std::uint64_t a0 = 0, ap0 = R, b0 = 2 * R, bp0 = 3 * R, s0 = 4 * R;
  if (i < 1 || i > degree_internal(v)) {
    throw std::out_of_range("gadget neighbour: index out of range");
  }
  switch (part) {
    case Part::A: {
      if (i <= as) return static_cast<VertexId>(s0 + i - 1);
      const std::uint64_t c = i - as - 1;
      const std::uint64_t t = (idx + c + 1) % R;
      return static_cast<VertexId>(read_bit(idx, c) ? b0 + t : ap0 + t);
    }
    case Part::S: {
      if (i <= R) return static_cast<VertexId>(a0 + i - 1);
      return static_cast<VertexId>(b0 + (i - R - 1));
    }
    case Part::Bp: {
      const std::uint64_t c = i - 1;
      const std::uint64_t p = (idx + R - c - 1) % R;
      return static_cast<VertexId>(read_bit(p, c) ? ap0 + p : b0 + p);
    }
    case Part::B: {
      if (i <= as) return static_cast<VertexId>(s0 + i - 1);
      std::uint64_t j = i - as;
      // Emission block: zero bits of row idx, columns ascending.
      for (std::uint64_t c = 0; c < as; ++c) {
        if (read_bit(idx, c) == 0 && --j == 0) {
          return static_cast<VertexId>(bp0 + (idx + c + 1) % R);
        }
      }
      // Receive block: one bits on the diagonal, columns ascending.
      for (std::uint64_t c = 0; c < as; ++c) {
        const std::uint64_t p = (idx + R - c - 1) % R;
        if (read_bit(p, c) == 1 && --j == 0) {
          return static_cast<VertexId>(a0 + p);
        }
      }
      throw std::out_of_range("gadget neighbour: index out of range");
    }
    case Part::Ap: {
      std::uint64_t j = i;
      for (std::uint64_t c = 0; c < as; ++c) {
        if (read_bit(idx, c) == 1 && --j == 0) {
          return static_cast<VertexId>(bp0 + (idx + c + 1) % R);
        }
      }
      for (std::uint64_t c = 0; c < as; ++c) {
        const std::uint64_t p = (idx + R - c - 1) % R;
        if (read_bit(p, c) == 0 && --j == 0) {
          return static_cast<VertexId>(a0 + p);
        }
      }
      throw std::out_of_range("gadget neighbour: index out of range");
    }
  }
  throw std::out_of_range("gadget neighbour: unreachable");
}

std::uint64_t GadgetBackend::degree(VertexId v) {
  std::uint64_t idx;
  part_of(v, idx);  // range check
  ++counter_.degree_q;
  return degree_internal(v);
}

VertexId GadgetBackend::neighbour(VertexId v, std::uint64_t i) {
  std::uint64_t idx;
  part_of(v, idx);  // range check
  ++counter_.neighbour_q;
  return neighbour_internal(v, i);
}

bool GadgetBackend::edge(VertexId u, VertexId v) {
  std::uint64_t iu, iv;
  const Part pu = part_of(u, iu);
  const Part pv = part_of(v, iv);
  ++counter_.edge_q;
  if (u == v) return false;
  const std::uint64_t R = spec_.rows();
  const std::uint64_t as = spec_.alpha_star;

  if (pu == Part::S || pv == Part::S) {
    const Part other = pu == Part::S ? pv : pu;
    if (pu == Part::S && pv == Part::S) return false;
    return other == Part::A || other == Part::B;
  }
  // Remaining adjacencies are bit edges from a source row to a target row.
  auto bit_edge = [&](std::uint64_t src, std::uint64_t dst, int want) -> bool {
    const std::uint64_t c = (dst + R - src - 1) % R;
    if (c >= as) return false;
    return read_bit(src, c) == want;
  };
  if (pu == Part::A && pv == Part::Ap) return bit_edge(iu, iv, 0);
  if (pu == Part::Ap && pv == Part::A) return bit_edge(iv, iu, 0);
  if (pu == Part::B && pv == Part::Bp) return bit_edge(iu, iv, 0);
  if (pu == Part::Bp && pv == Part::B) return bit_edge(iv, iu, 0);
  if (pu == Part::A && pv == Part::B) return bit_edge(iu, iv, 1);
  if (pu == Part::B && pv == Part::A) return bit_edge(iv, iu, 1);
  if (pu == Part::Ap && pv == Part::Bp) return bit_edge(iu, iv, 1);
  if (pu == Part::Bp && pv == Part::Ap) return bit_edge(iv, iu, 1);
  return false;
}

void GadgetBackend::build_table() {
  const std::uint64_t n_total = spec_.n();
  cum_.assign(n_total + 1, 0);
  for (std::uint64_t v = 0; v < n_total; ++v) {
    cum_[v + 1] = cum_[v] + degree_internal(static_cast<VertexId>(v));
  }
  table_built_ = true;
}

EdgeRef GadgetBackend::random_edge(Rng& rng) {
  if (!table_built_) build_table();
  ++counter_.random_edge_q;
  // One draw over the degree sum 2m: picks v with probability deg(v)/(2m) and
  // the offset inside v's block is the uniform neighbour index.
  const std::uint64_t draw = rng.below(cum_.back());
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), draw);
  const std::uint64_t v = static_cast<std::uint64_t>(it - cum_.begin()) - 1;
  const std::uint64_t j = draw - cum_[v];
  const VertexId u = neighbour_internal(static_cast<VertexId>(v), j + 1);
  return EdgeRef(static_cast<VertexId>(v), u);
}

PtpDist ptp_distinguish(const std::vector<std::uint8_t>& bits,
                        const GadgetSpec& spec, std::uint64_t k, double gamma,
                        const EstimatorConfig& cfg, Rng& rng,
                        DistinguishReport* out) {
  spec.validate();
  GadgetBackend backend(spec, bits);
  ConfidenceReport conf;
  const double t_hat =
      estimate_with_confidence(backend, static_cast<double>(spec.alpha_star),
                               gamma, cfg.delta, cfg, rng, &conf);
  const double threshold = (1.0 - gamma * gamma) * static_cast<double>(k) *
                           static_cast<double>(spec.alpha_star);
  if (out != nullptr) {
    out->t_hat = t_hat;
    out->threshold = threshold;
    out->repetitions = conf.repetitions;
    out->counters = conf.counters;
  }
  return t_hat >= threshold ? PtpDist::D1 : PtpDist::D0;
}

}  // namespace tricount
