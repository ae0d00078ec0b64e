// Command-line front end: exact counts, estimator/search pipeline, gadget
// instance tooling, and batch benchmarks.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tricount/errors.hpp"
#include "tricount/estimator.hpp"
#include "tricount/graph.hpp"
#include "tricount/heavy_oracle.hpp"
#include "tricount/ptp.hpp"
#include "tricount/query.hpp"
#include "tricount/rng.hpp"
#include "tricount/search.hpp"
#include "tricount/serialize.hpp"

namespace {

using nlohmann::json;
using namespace tricount;

// ---------- misc helpers ----------

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t parse_u64(const std::string& tok, const std::string& what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("malformed " + what + " '" + tok + "'");
  }
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    throw UsageError("malformed " + what + " '" + tok + "'");
  }
}

double parse_double(const std::string& tok, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw UsageError("malformed " + what + " '" + tok + "'");
  }
}

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ':')) parts.push_back(cur);
  return parts;
}

void emit(const std::string& payload, const std::string& out_path) {
  std::cout << payload;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot open '" + out_path + "' for writing");
    out << payload;
    if (!out) throw InputError("write to '" + out_path + "' failed");
  }
}

class Stopwatch {
 public:
  std::uint64_t elapsed_ms(bool enabled) const {
    if (!enabled) return 0;
    auto dt = std::chrono::steady_clock::now() - start_;
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count());
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---------- graph sources ----------

struct GenSpec {
  std::string kind;
  std::vector<std::string> args;
  bool randomized = false;
};

GenSpec parse_gen_spec(const std::string& spec) {
  GenSpec g;
  auto parts = split_colon(spec);
  if (parts.empty()) throw UsageError("empty --gen spec");
  g.kind = parts[0];
  g.args.assign(parts.begin() + 1, parts.end());
  auto expect = [&](std::size_t n) {
    if (g.args.size() != n) {
      throw UsageError("--gen " + g.kind + " expects " + std::to_string(n) +
                       " ':'-separated arguments");
    }
  };
  if (g.kind == "clique") {
    expect(1);
  } else if (g.kind == "er") {
    expect(2);
    g.randomized = true;
  } else if (g.kind == "forest") {
    expect(2);
    g.randomized = true;
  } else if (g.kind == "planted") {
    expect(3);
    g.randomized = true;
  } else if (g.kind == "tripath") {
    expect(3);
  } else {
    throw UsageError("unknown --gen kind '" + g.kind +
                     "' (expected clique|er|forest|planted|tripath)");
  }
  return g;
}

Graph build_gen(const GenSpec& g, Rng& rng) {
  if (g.kind == "clique") {
    return gen_clique(static_cast<VertexId>(parse_u64(g.args[0], "clique n")));
  }
  if (g.kind == "er") {
    return gen_er(static_cast<VertexId>(parse_u64(g.args[0], "er n")),
                  parse_double(g.args[1], "er p"), rng);
  }
  if (g.kind == "forest") {
    return gen_forest_union(static_cast<VertexId>(parse_u64(g.args[0], "forest n")),
                            static_cast<std::uint32_t>(parse_u64(g.args[1], "forest alpha")),
                            rng);
  }
  if (g.kind == "planted") {
    return gen_planted(static_cast<VertexId>(parse_u64(g.args[0], "planted n")),
                       static_cast<std::uint32_t>(parse_u64(g.args[1], "planted alpha")),
                       parse_u64(g.args[2], "planted t"), rng)
        .graph;
  }
  if (g.kind == "tripath") {
    return gen_tri_path(parse_u64(g.args[0], "tripath t"),
                        parse_u64(g.args[1], "tripath m"),
                        parse_u64(g.args[2], "tripath n"));
  }
  throw UsageError("unknown --gen kind");
}

struct CommonOpts {
  std::string input;
  std::string gen;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool timing = false;
  bool verbose = false;
};

// Loads or generates the graph. `rng` is the dedicated generation substream.
Graph resolve_graph(const CommonOpts& opts, Rng& rng, bool seed_always_required) {
  const bool have_input = !opts.input.empty();
  const bool have_gen = !opts.gen.empty();
  if (have_input == have_gen) {
    throw UsageError("exactly one of --input and --gen is required");
  }
  if (have_input) {
    if (seed_always_required && !opts.seed.has_value()) {
      throw UsageError("--seed is required for randomized commands");
    }
    return load_edge_list_file(opts.input);
  }
  GenSpec spec = parse_gen_spec(opts.gen);
  if ((spec.randomized || seed_always_required) && !opts.seed.has_value()) {
    throw UsageError("--seed is required (randomized generator or command)");
  }
  return build_gen(spec, rng);
}

// ---------- subcommand options ----------

struct EstimatorOpts {
  double eps = 0.25;
  double delta = 1.0 / 6.0;
  double c = 1.0;
  double l = 6.0;
  double h = 24.0;
  double oracle_delta = 0.0;
  double sample_scale = 1.0;
  double median_coeff = 18.0;
  std::uint64_t max_samples = 100000000;

  EstimatorConfig to_config(std::uint64_t seed) const {
    EstimatorConfig cfg;
    cfg.eps = eps;
    cfg.delta = delta;
    cfg.c = c;
    cfg.l = l;
    cfg.h = h;
    cfg.oracle_delta = oracle_delta;
    cfg.sample_scale = sample_scale;
    cfg.median_coeff = median_coeff;
    cfg.max_samples = max_samples;
    cfg.seed = seed;
    return cfg;
  }
};

void add_estimator_options(CLI::App* sub, EstimatorOpts* e) {
  sub->add_option("--eps", e->eps, "Target relative error in (0,1)");
  sub->add_option("--delta", e->delta, "Failure probability in (0,1)");
  sub->add_option("--c", e->c, "Oversampling constant");
  sub->add_option("--l-coeff", e->l, "Light threshold constant");
  sub->add_option("--h-coeff", e->h, "Heavy threshold constant");
  sub->add_option("--oracle-delta", e->oracle_delta,
                  "Per-call oracle confidence; 0 selects 1/(m*n)");
  sub->add_option("--sample-scale", e->sample_scale,
                  "Multiplier on the sample-size formula (practical mode < 1)");
  sub->add_option("--median-coeff", e->median_coeff,
                  "Median-trick repetition coefficient");
  sub->add_option("--max-samples", e->max_samples,
                  "Refuse single runs above this sample count (0 = off)");
}

double resolve_alpha(const Graph& g, const std::optional<double>& alpha_flag,
                     bool* defaulted) {
  if (alpha_flag.has_value()) {
    if (!(*alpha_flag > 0.0)) throw UsageError("--alpha must be positive");
    if (defaulted != nullptr) *defaulted = false;
    return *alpha_flag;
  }
  const std::uint64_t kappa = degeneracy(g);
  if (defaulted != nullptr) *defaulted = true;
  std::cerr << "warning: --alpha not given; defaulting to degeneracy kappa="
            << kappa << " (guarantees then hold w.r.t. kappa)\n";
  if (kappa == 0) throw UsageError("graph has no edges; alpha undefined");
  return static_cast<double>(kappa);
}

// ---------- subcommands ----------

int cmd_exact(const CommonOpts& opts) {
  Stopwatch watch;
  Rng root(opts.seed.value_or(0));
  Rng gen_rng = root.split();
  Graph g = resolve_graph(opts, gen_rng, /*seed_always_required=*/false);

  const std::uint64_t t = count_triangles_exact(g);
  const auto te = triangles_per_edge(g);
  std::uint64_t te_sum = 0, te_max = 0, te_nonzero = 0;
  for (std::uint64_t x : te) {
    te_sum += x;
    te_max = std::max(te_max, x);
    if (x > 0) ++te_nonzero;
  }
  json j{{"schema", 1},
         {"command", "exact"},
         {"n", g.n()},
         {"m", g.m()},
         {"T", t},
         {"kappa", degeneracy(g)},
         {"density_lower_bound", density_lower_bound(g)},
         {"te", json{{"sum", te_sum}, {"max", te_max}, {"edges_in_triangles", te_nonzero}}},
         {"ms", watch.elapsed_ms(opts.timing)}};
  emit(j.dump(2) + "\n", opts.out);
  return 0;
}

int cmd_estimate(const CommonOpts& opts, const EstimatorOpts& eopts,
                 const std::optional<double>& alpha_flag,
                 const std::optional<double>& t_tilde, bool with_exact) {
  Stopwatch watch;
  if (!opts.seed.has_value()) throw UsageError("--seed is required");
  Rng root(*opts.seed);
  Rng gen_rng = root.split();
  Rng est_rng = root.split();
  Graph g = resolve_graph(opts, gen_rng, /*seed_always_required=*/true);
  if (g.m() == 0) throw UsageError("estimation requires at least one edge");

  bool alpha_defaulted = false;
  const double alpha = resolve_alpha(g, alpha_flag, &alpha_defaulted);
  EstimatorConfig cfg = eopts.to_config(*opts.seed);
  cfg.validate();

  MaterializedBackend backend(g);
  json j{{"schema", 1},
         {"command", "estimate"},
         {"n", g.n()},
         {"m", g.m()},
         {"alpha", alpha},
         {"alpha_defaulted", alpha_defaulted},
         {"eps", cfg.eps},
         {"delta", cfg.delta},
         {"sample_scale", cfg.sample_scale},
         {"seed", *opts.seed}};

  if (t_tilde.has_value()) {
    cfg.collect_records = opts.verbose;
    EstimateReport report = estimate(backend, *t_tilde, alpha, cfg, est_rng);
    j["t_tilde"] = *t_tilde;
    j["estimate"] = report.t_hat;
    j["report"] = to_json(report, opts.verbose);
  } else {
    ConfidenceReport conf;
    conf.keep_traces = opts.verbose;
    const double est =
        estimate_with_confidence(backend, alpha, cfg.eps, cfg.delta, cfg, est_rng, &conf);
    j["estimate"] = est;
    j["repetitions"] = conf.repetitions;
    j["run_estimates"] = conf.run_estimates;
    j["queries"] = to_json(conf.counters);
    if (opts.verbose) {
      json traces = json::array();
      for (const SearchTrace& tr : conf.traces) traces.push_back(to_json(tr, true));
      j["traces"] = traces;
    }
  }
  if (with_exact) {
    const std::uint64_t t = count_triangles_exact(g);
    const double est = j["estimate"].get<double>();
    j["exact"] = t;
    if (t > 0) {
      j["rel_err"] = std::abs(est - static_cast<double>(t)) / static_cast<double>(t);
    } else {
      if (est == 0.0) {
        j["rel_err"] = 0.0;
      } else {
        j["rel_err"] = nullptr;  // undefined when T = 0 but the estimate is not
      }
    }
  }
  j["ms"] = watch.elapsed_ms(opts.timing);
  emit(j.dump(2) + "\n", opts.out);
  return 0;
}

int cmd_gadget(const CommonOpts& opts, const EstimatorOpts& eopts,
               std::uint64_t M, std::uint64_t alpha_star, std::uint64_t k,
               double gamma, const std::string& dist_name,
               const std::string& in_instance, const std::string& out_instance,
               const std::string& explicit_path, bool distinguish) {
  Stopwatch watch;
  PtpInstance inst;
  std::string warning;
  const bool sampling = in_instance.empty();
  if (sampling || distinguish) {
    if (!opts.seed.has_value()) {
      throw UsageError("--seed is required when sampling or distinguishing");
    }
  }
  Rng root(opts.seed.value_or(0));
  Rng sample_rng = root.split();
  Rng est_rng = root.split();

  if (sampling) {
    if (M == 0 || alpha_star == 0) {
      throw UsageError("--M and --alpha-star are required");
    }
    PtpDist dist;
    if (dist_name == "D0") {
      dist = PtpDist::D0;
    } else if (dist_name == "D1") {
      dist = PtpDist::D1;
    } else {
      throw UsageError("--dist must be D0 or D1");
    }
    inst = sample_ptp(M, k, gamma, dist, sample_rng, &warning);
  } else {
    std::ifstream in(in_instance);
    if (!in) throw InputError("cannot open '" + in_instance + "'");
    json parsed;
    try {
      in >> parsed;
    } catch (const json::exception& e) {
      throw InputError("instance '" + in_instance + "': " + e.what());
    }
    inst = ptp_instance_from_json(parsed);
    if (alpha_star == 0) throw UsageError("--alpha-star is required");
    warning = ptp_window_warning(inst.M, inst.k, inst.gamma, 0.01);
  }

  GadgetSpec spec{inst.M, alpha_star};
  spec.validate();
  if (!warning.empty()) {
    std::cerr << "warning: PTP parameters outside the lemma window: " << warning
              << "\n";
  }

  if (!out_instance.empty()) {
    std::ofstream out(out_instance);
    if (!out) throw InputError("cannot open '" + out_instance + "' for writing");
    out << to_json(inst).dump(2) << "\n";
    if (!out) throw InputError("write to '" + out_instance + "' failed");
  }
  if (!explicit_path.empty()) {
    Graph g = build_explicit_gadget(inst.bits, alpha_star);
    write_edge_list_file(g, explicit_path);
  }

  const std::uint64_t pop = inst.popcount();
  json j{{"schema", 1},
         {"command", "gadget"},
         {"M", inst.M},
         {"alpha_star", alpha_star},
         {"k", inst.k},
         {"gamma", inst.gamma},
         {"source", inst.source},
         {"popcount", pop},
         {"T", pop * alpha_star},
         {"n", spec.n()},
         {"m", spec.m()}};
  if (!warning.empty()) j["window_warning"] = warning;

  if (distinguish) {
    EstimatorConfig cfg = eopts.to_config(opts.seed.value_or(0));
    cfg.validate();
    DistinguishReport rep;
    const PtpDist label =
        ptp_distinguish(inst.bits, spec, inst.k, inst.gamma, cfg, est_rng, &rep);
    j["label"] = to_string(label);
    j["t_hat"] = rep.t_hat;
    j["threshold"] = rep.threshold;
    j["repetitions"] = rep.repetitions;
    j["queries"] = to_json(rep.counters);
  }
  j["ms"] = watch.elapsed_ms(opts.timing);
  emit(j.dump(2) + "\n", opts.out);
  return 0;
}

int cmd_bench(const CommonOpts& opts, const EstimatorOpts& eopts,
              const std::optional<double>& alpha_flag, const std::string& family,
              std::uint64_t seeds, std::uint64_t members) {
  if (!opts.seed.has_value()) throw UsageError("--seed is required");
  if (seeds == 0) throw UsageError("--seeds must be at least 1");
  if (members == 0 || members > 24) {
    throw UsageError("--members must be in 1..24");
  }

  auto parts = split_colon(family);
  std::vector<std::uint64_t> t_values;
  std::string kind = parts.empty() ? "" : parts[0];
  std::uint64_t base_t = 0, m_total = 0, n_planted = 0, alpha_planted = 0;
  if (kind == "tri" && parts.size() == 3) {
    base_t = parse_u64(parts[1], "tri t0");
    m_total = parse_u64(parts[2], "tri m");
  } else if (kind == "planted" && parts.size() == 4) {
    n_planted = parse_u64(parts[1], "planted n");
    alpha_planted = parse_u64(parts[2], "planted alpha");
    base_t = parse_u64(parts[3], "planted t0");
  } else {
    throw UsageError("--family must be tri:T0:M or planted:N:A:T0");
  }
  if (base_t == 0) throw UsageError("family T0 must be positive");
  for (std::uint64_t i = 0; i < members; ++i) {
    t_values.push_back(base_t << i);
  }

  std::ostringstream csv;
  csv << "n,m,T,alpha,eps,seed,queries_total,queries_degree,queries_neighbour,"
         "queries_edge,queries_random_edge,estimate,rel_err,ms\n";

  bool warned_alpha = false;
  for (std::uint64_t t_member : t_values) {
    for (std::uint64_t si = 0; si < seeds; ++si) {
      Stopwatch watch;
      const std::uint64_t seed = *opts.seed + si;
      Rng root(seed);
      Rng gen_rng = root.split();
      Rng est_rng = root.split();

      Graph g = kind == "tri"
                    ? gen_tri_path(t_member, m_total,
                                   std::max(m_total + 1, 24 * base_t))
                    : gen_planted(static_cast<VertexId>(n_planted),
                                  static_cast<std::uint32_t>(alpha_planted),
                                  t_member, gen_rng)
                          .graph;
      const std::uint64_t t_exact = count_triangles_exact(g);

      double alpha;
      if (alpha_flag.has_value()) {
        if (!(*alpha_flag > 0.0)) throw UsageError("--alpha must be positive");
        alpha = *alpha_flag;
      } else {
        alpha = static_cast<double>(degeneracy(g));
        if (!warned_alpha) {
          std::cerr << "warning: --alpha not given; using per-instance degeneracy\n";
          warned_alpha = true;
        }
      }

      EstimatorConfig cfg = eopts.to_config(seed);
      cfg.validate();
      MaterializedBackend backend(g);
      ConfidenceReport conf;
      const double est = estimate_with_confidence(backend, alpha, cfg.eps,
                                                  cfg.delta, cfg, est_rng, &conf);
      const double rel_err =
          t_exact > 0
              ? std::abs(est - static_cast<double>(t_exact)) / static_cast<double>(t_exact)
              : (est == 0.0 ? 0.0 : -1.0);
      const QueryCounter& q = conf.counters;
      csv << g.n() << ',' << g.m() << ',' << t_exact << ',' << format_double(alpha)
          << ',' << format_double(cfg.eps) << ',' << seed << ',' << q.total() << ','
          << q.degree_q << ',' << q.neighbour_q << ',' << q.edge_q << ','
          << q.random_edge_q << ',' << format_double(est) << ','
          << format_double(rel_err) << ',' << watch.elapsed_ms(opts.timing) << '\n';
    }
  }
  emit(csv.str(), opts.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangle-count estimation with sublinear query access"};
  app.require_subcommand(1);

  CommonOpts exact_opts, est_opts, gad_opts, bench_opts;
  EstimatorOpts est_eopts, gad_eopts, bench_eopts;
  std::optional<double> est_alpha, bench_alpha, est_t_tilde;
  bool est_with_exact = false;
  std::uint64_t gad_M = 0, gad_alpha_star = 0, gad_k = 0, bench_seeds = 1;
  std::uint64_t bench_members = 4;
  double gad_gamma = 0.0;
  std::string gad_dist = "D0", gad_in, gad_out_instance, gad_explicit, bench_family;
  bool gad_distinguish = false;

  auto add_common = [](CLI::App* sub, CommonOpts* o, bool with_graph_source) {
    if (with_graph_source) {
      sub->add_option("--input", o->input, "Edge-list file ('n m' header, one 'u v' per line)");
      sub->add_option("--gen", o->gen,
                      "Generator spec: clique:N | er:N:P | forest:N:A | planted:N:A:T | tripath:T:M:N");
    }
    sub->add_option("--out", o->out, "Also write the report to this file");
    sub->add_option("--seed", [o](const std::vector<std::string>& v) {
      o->seed = parse_u64(v.at(0), "--seed");
      return true;
    }, "RNG seed (required for randomized commands)");
    sub->add_flag("--timing", o->timing, "Emit real wall time in ms (breaks byte determinism)");
    sub->add_flag("--verbose", o->verbose, "Include per-edge records / search traces");
  };

  auto* sub_exact = app.add_subcommand("exact", "Exact counts and structural stats");
  add_common(sub_exact, &exact_opts, true);

  auto* sub_est = app.add_subcommand("estimate", "Randomized triangle estimate");
  add_common(sub_est, &est_opts, true);
  add_estimator_options(sub_est, &est_eopts);
  sub_est->add_option("--alpha", [&est_alpha](const std::vector<std::string>& v) {
    est_alpha = parse_double(v.at(0), "--alpha");
    return true;
  }, "Arboricity bound (defaults to degeneracy, with a warning)");
  sub_est->add_option("--t-tilde", [&est_t_tilde](const std::vector<std::string>& v) {
    est_t_tilde = parse_double(v.at(0), "--t-tilde");
    return true;
  }, "Advice value: bypass the search and run a single estimate");
  sub_est->add_flag("--with-exact", est_with_exact, "Also compute the exact count and rel_err");

  auto* sub_gad = app.add_subcommand("gadget", "Sample/inspect PTP gadget instances");
  add_common(sub_gad, &gad_opts, false);
  add_estimator_options(sub_gad, &gad_eopts);
  sub_gad->add_option("--M", gad_M, "Bit-string length");
  sub_gad->add_option("--alpha-star", gad_alpha_star, "Gadget arboricity parameter");
  sub_gad->add_option("--k", gad_k, "PTP threshold parameter");
  sub_gad->add_option("--gamma", gad_gamma, "PTP gap parameter in (0, 1/4)");
  sub_gad->add_option("--dist", gad_dist, "Distribution to sample: D0 | D1");
  sub_gad->add_option("--in-instance", gad_in, "Load an instance JSON instead of sampling");
  sub_gad->add_option("--out-instance", gad_out_instance, "Write the instance JSON here");
  sub_gad->add_option("--explicit", gad_explicit, "Write the materialized edge list here");
  sub_gad->add_flag("--distinguish", gad_distinguish, "Run the distinguisher reduction");

  auto* sub_bench = app.add_subcommand("bench", "Scaling benchmark; CSV output");
  add_common(sub_bench, &bench_opts, false);
  add_estimator_options(sub_bench, &bench_eopts);
  sub_bench->add_option("--family", bench_family, "tri:T0:M (fixed m) or planted:N:A:T0");
  sub_bench->add_option("--seeds", bench_seeds, "Seeds per family member (seed, seed+1, ...)");
  sub_bench->add_option("--members", bench_members,
                        "Family members: T = T0*2^i for i < members");
  sub_bench->add_option("--alpha", [&bench_alpha](const std::vector<std::string>& v) {
    bench_alpha = parse_double(v.at(0), "--alpha");
    return true;
  }, "Arboricity bound for all members (defaults to per-instance degeneracy)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sub_exact->parsed()) return cmd_exact(exact_opts);
    if (sub_est->parsed()) {
      return cmd_estimate(est_opts, est_eopts, est_alpha, est_t_tilde, est_with_exact);
    }
    if (sub_gad->parsed()) {
      return cmd_gadget(gad_opts, gad_eopts, gad_M, gad_alpha_star, gad_k, gad_gamma,
                        gad_dist, gad_in, gad_out_instance, gad_explicit,
                        gad_distinguish);
    }
    if (sub_bench->parsed()) {
      return cmd_bench(bench_opts, bench_eopts, bench_alpha, bench_family,
                       bench_seeds, bench_members);
    }
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
