#include "tricount/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "tricount/errors.hpp"

namespace tricount {

TriangleKey::TriangleKey(VertexId x, VertexId y, VertexId z) : a(x), b(y), c(z) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
}

Graph::Graph(VertexId n, std::vector<EdgeRef> edges)
    : n_(n), edges_(std::move(edges)) {
  adj_.resize(n_);
  for (const EdgeRef& e : edges_) {
    if (e.u == e.v || e.v >= n_) {
      throw UsageError("graph: invalid edge (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ") for n=" + std::to_string(n_));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i] == edges_[i - 1]) {
      throw UsageError("graph: duplicate edge (" + std::to_string(edges_[i].u) +
                       "," + std::to_string(edges_[i].v) + ")");
    }
  }
  for (const EdgeRef& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u == v) return false;
  const auto& small = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  VertexId target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(small.begin(), small.end(), target);
}

VertexId Graph::low_endpoint(const EdgeRef& e) const {
  std::uint64_t du = degree(e.u), dv = degree(e.v);
  if (du != dv) return du < dv ? e.u : e.v;
  return e.u;  // e.u < e.v by normalization
}

std::uint64_t Graph::edge_degree(const EdgeRef& e) const {
  return std::min(degree(e.u), degree(e.v));
}

namespace {

// |N(u) ∩ N(v)| by iterating the shorter sorted list and binary-searching the
// longer one.
std::uint64_t common_neighbours(const Graph& g, VertexId u, VertexId v) {
  const auto& a = g.neighbours(u);
  const auto& b = g.neighbours(v);
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& big = a.size() <= b.size() ? b : a;
  std::uint64_t count = 0;
  for (VertexId w : small) {
    if (std::binary_search(big.begin(), big.end(), w)) ++count;
  }
  return count;
}

}  // namespace

std::vector<std::uint64_t> triangles_per_edge(const Graph& g) {
  std::vector<std::uint64_t> te;
  te.reserve(g.m());
  for (const EdgeRef& e : g.edges()) te.push_back(common_neighbours(g, e.u, e.v));
  return te;
}

std::uint64_t count_triangles_exact(const Graph& g) {
  std::uint64_t sum = 0;
  for (const EdgeRef& e : g.edges()) sum += common_neighbours(g, e.u, e.v);
  return sum / 3;
}

void for_each_triangle(const Graph& g,
                       const std::function<void(VertexId, VertexId, VertexId)>& fn) {
  // Each triangle a<b<c is reported from its (a,b) edge with c above both.
  for (const EdgeRef& e : g.edges()) {
    const auto& a = g.neighbours(e.u);
    const auto& b = g.neighbours(e.v);
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& big = a.size() <= b.size() ? b : a;
    auto from = std::upper_bound(small.begin(), small.end(), e.v);
    for (auto it = from; it != small.end(); ++it) {
      if (std::binary_search(big.begin(), big.end(), *it)) fn(e.u, e.v, *it);
    }
  }
}

std::uint64_t degeneracy(const Graph& g) {
  const VertexId n = g.n();
  if (n == 0 || g.m() == 0) return 0;
  std::vector<std::uint64_t> deg(n);
  std::uint64_t max_deg = 0;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // Bucket queue over current degrees.
  std::vector<std::vector<VertexId>> buckets(max_deg + 1);
  for (VertexId v = 0; v < n; ++v) buckets[deg[v]].push_back(v);
  std::vector<bool> removed(n, false);
  std::uint64_t kappa = 0;
  std::uint64_t cursor = 0;
  for (VertexId peeled = 0; peeled < n; ++peeled) {
    while (cursor <= max_deg && buckets[cursor].empty()) ++cursor;
    // Lazy deletion: entries whose degree changed are skipped.
    while (true) {
      auto& bucket = buckets[cursor];
      if (bucket.empty()) {
        ++cursor;
        while (cursor <= max_deg && buckets[cursor].empty()) ++cursor;
        continue;
      }
      VertexId v = bucket.back();
      bucket.pop_back();
      if (removed[v] || deg[v] != cursor) continue;
      removed[v] = true;
      kappa = std::max(kappa, cursor);
      for (VertexId w : g.neighbours(v)) {
        if (!removed[w] && deg[w] > 0) {
          --deg[w];
          buckets[deg[w]].push_back(w);
          if (deg[w] < cursor) cursor = deg[w];
        }
      }
      break;
    }
  }
  return kappa;
}

std::uint64_t density_lower_bound(const Graph& g) {
  if (g.n() < 2 || g.m() == 0) return 0;
  std::uint64_t denom = g.n() - 1;
  return (g.m() + denom - 1) / denom;
}

namespace {

std::uint64_t parse_u64_field(const std::string& tok, std::size_t line_no,
                              const char* what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError("line " + std::to_string(line_no) + ": malformed " + what +
                     " '" + tok + "'");
  }
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    throw InputError("line " + std::to_string(line_no) + ": malformed " + what +
                     " '" + tok + "'");
  }
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&](bool required) -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    if (required) throw InputError("unexpected end of file");
    return false;
  };

  if (!next_line(false)) throw InputError("empty input");
  std::istringstream head(line);
  std::string tok_n, tok_m, extra;
  head >> tok_n >> tok_m;
  if (head >> extra) {
    throw InputError("line " + std::to_string(line_no) +
                     ": expected exactly 'n m'");
  }
  std::uint64_t n = parse_u64_field(tok_n, line_no, "vertex count");
  std::uint64_t m = parse_u64_field(tok_m, line_no, "edge count");
  if (n > 0xFFFFFFFFull) {
    throw InputError("line " + std::to_string(line_no) + ": n too large");
  }

  std::vector<EdgeRef> edges;
  edges.reserve(m);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  for (std::uint64_t i = 0; i < m; ++i) {
    next_line(true);
    std::istringstream row(line);
    std::string tu, tv;
    row >> tu >> tv;
    if (row >> extra) {
      throw InputError("line " + std::to_string(line_no) +
                       ": expected exactly 'u v'");
    }
    std::uint64_t u = parse_u64_field(tu, line_no, "vertex id");
    std::uint64_t v = parse_u64_field(tv, line_no, "vertex id");
    if (u >= n || v >= n) {
      throw InputError("line " + std::to_string(line_no) + ": vertex id out of range");
    }
    if (u == v) {
      throw InputError("line " + std::to_string(line_no) + ": self-loop");
    }
    EdgeRef e(static_cast<VertexId>(u), static_cast<VertexId>(v));
    if (!seen.insert(e.packed()).second) {
      throw InputError("line " + std::to_string(line_no) + ": duplicate edge");
    }
    edges.push_back(e);
  }
  if (next_line(false)) {
    throw InputError("line " + std::to_string(line_no) +
                     ": trailing content after " + std::to_string(m) + " edges");
  }
  return Graph(static_cast<VertexId>(n), std::move(edges));
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return load_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const EdgeRef& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  write_edge_list(g, out);
  if (!out) throw InputError("write to '" + path + "' failed");
}

Graph gen_clique(VertexId n) {
  std::vector<EdgeRef> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

Graph gen_er(VertexId n, double p, Rng& rng) {
  if (p < 0.0 || p > 1.0) throw UsageError("er: p must be in [0,1]");
  std::vector<EdgeRef> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph gen_forest_union(VertexId n, std::uint32_t alpha, Rng& rng) {
  if (n == 0) return Graph(0, {});
  std::unordered_set<std::uint64_t> seen;
  std::vector<EdgeRef> edges;
  std::vector<VertexId> perm(n);
  for (std::uint32_t round = 0; round < alpha; ++round) {
    // Uniform random recursive tree over a fresh random vertex order.
    for (VertexId i = 0; i < n; ++i) perm[i] = i;
    for (VertexId i = n; i > 1; --i) {
      std::swap(perm[i - 1], perm[rng.below(i)]);
    }
    for (VertexId i = 1; i < n; ++i) {
      VertexId parent = perm[rng.below(i)];
      EdgeRef e(parent, perm[i]);
      if (seen.insert(e.packed()).second) edges.push_back(e);
    }
  }
  return Graph(n, std::move(edges));
}

PlantedGraph gen_planted(VertexId n, std::uint32_t alpha, std::uint64_t t_target,
                         Rng& rng) {
  if (n < 3 && t_target > 0) throw InfeasibleError("planted: need n >= 3");
  Graph base = gen_forest_union(n, alpha, rng);
  std::unordered_set<std::uint64_t> seen;
  std::vector<EdgeRef> edges = base.edges();
  seen.reserve(edges.size() * 2 + t_target * 8);
  for (const EdgeRef& e : edges) seen.insert(e.packed());

  std::uint64_t planted = 0;
  std::uint64_t attempts = 0;
  const std::uint64_t max_attempts = 200 * t_target + 100000;
  while (planted < t_target) {
    if (++attempts > max_attempts) {
      throw InfeasibleError("planted: could not place " + std::to_string(t_target) +
                            " edge-disjoint triangles (n=" + std::to_string(n) +
                            ", placed " + std::to_string(planted) + ")");
    }
    VertexId a = static_cast<VertexId>(rng.below(n));
    VertexId b = static_cast<VertexId>(rng.below(n));
    VertexId c = static_cast<VertexId>(rng.below(n));
    if (a == b || b == c || a == c) continue;
    EdgeRef ab(a, b), bc(b, c), ac(a, c);
    if (seen.count(ab.packed()) || seen.count(bc.packed()) || seen.count(ac.packed()))
      continue;
    seen.insert(ab.packed());
    seen.insert(bc.packed());
    seen.insert(ac.packed());
    edges.push_back(ab);
    edges.push_back(bc);
    edges.push_back(ac);
    ++planted;
  }
  return PlantedGraph{Graph(n, std::move(edges)), planted};
}

Graph gen_tri_path(std::uint64_t t, std::uint64_t m_total, std::uint64_t n_total) {
  if (m_total < 3 * t) throw InfeasibleError("tripath: m_total < 3*t");
  std::uint64_t pad_edges = m_total - 3 * t;
  std::uint64_t need = 3 * t + (pad_edges > 0 ? pad_edges + 1 : 0);
  if (n_total < need) {
    throw InfeasibleError("tripath: n_total too small (need " +
                          std::to_string(need) + ")");
  }
  if (n_total > 0xFFFFFFFFull) throw InfeasibleError("tripath: n_total too large");
  std::vector<EdgeRef> edges;
  edges.reserve(m_total);
  for (std::uint64_t i = 0; i < t; ++i) {
    VertexId a = static_cast<VertexId>(3 * i);
    edges.emplace_back(a, a + 1);
    edges.emplace_back(a + 1, a + 2);
    edges.emplace_back(a, a + 2);
  }
  VertexId p0 = static_cast<VertexId>(3 * t);
  for (std::uint64_t i = 0; i < pad_edges; ++i) {
    edges.emplace_back(p0 + static_cast<VertexId>(i),
                       p0 + static_cast<VertexId>(i + 1));
  }
  return Graph(static_cast<VertexId>(n_total), std::move(edges));
}

}  // namespace tricount
