#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "tricount/graph.hpp"
#include "tricount/rng.hpp"

using namespace tricount;
using nlohmann::json;
using testutil::run_cli;
using testutil::temp_path;
using testutil::write_file;

namespace {

json parse_stdout(const std::string& s) { return json::parse(s); }

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

constexpr const char* kCsvHeader =
    "n,m,T,alpha,eps,seed,queries_total,queries_degree,queries_neighbour,"
    "queries_edge,queries_random_edge,estimate,rel_err,ms";

}  // namespace

TEST_CASE("exact on a generated clique") {
  auto r = run_cli("exact --gen clique:4");
  REQUIRE(r.exit_code == 0);
  json j = parse_stdout(r.out);
  CHECK(j["command"] == "exact");
  CHECK(j["n"] == 4);
  CHECK(j["m"] == 6);
  CHECK(j["T"] == 4);
  CHECK(j["kappa"] == 3);
  CHECK(j["density_lower_bound"] == 2);
  CHECK(j["te"]["sum"] == 12);  // 3T
  CHECK(j["te"]["max"] == 2);
  CHECK(j["te"]["edges_in_triangles"] == 6);
  CHECK(j["ms"] == 0);  // timing off by default
}

TEST_CASE("exact from edge list files") {
  SUBCASE("a hand-written clique") {
    const std::string path = temp_path("k4.edges");
    write_file(path, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    auto r = run_cli("exact --input " + path);
    REQUIRE(r.exit_code == 0);
    json j = parse_stdout(r.out);
    CHECK(j["T"] == 4);
    CHECK(j["kappa"] == 3);
    std::remove(path.c_str());
  }

  SUBCASE("an empty graph") {
    const std::string path = temp_path("empty.edges");
    write_file(path, "3 0\n");
    auto r = run_cli("exact --input " + path);
    REQUIRE(r.exit_code == 0);
    json j = parse_stdout(r.out);
    CHECK(j["n"] == 3);
    CHECK(j["m"] == 0);
    CHECK(j["T"] == 0);
    CHECK(j["kappa"] == 0);
    std::remove(path.c_str());
  }

  SUBCASE("agreement with the library on a generated graph") {
    Rng gen(60);
    Graph g = gen_er(40, 0.12, gen);
    const std::string path = temp_path("er.edges");
    write_edge_list_file(g, path);
    auto r = run_cli("exact --input " + path);
    REQUIRE(r.exit_code == 0);
    json j = parse_stdout(r.out);
    CHECK(j["T"] == count_triangles_exact(g));
    CHECK(j["kappa"] == degeneracy(g));
    CHECK(j["m"] == g.m());
    std::remove(path.c_str());
  }
}

TEST_CASE("estimate with a pinned guess bypasses the search") {
  auto r = run_cli(
      "estimate --gen clique:8 --alpha 7 --t-tilde 56 --sample-scale 0.05 "
      "--seed 3");
  REQUIRE(r.exit_code == 0);
  json j = parse_stdout(r.out);
  CHECK(j["command"] == "estimate");
  CHECK(j["t_tilde"] == 56.0);
  CHECK(j["alpha"] == 7.0);
  CHECK(j["alpha_defaulted"] == false);
  CHECK(j["report"]["s"].get<std::uint64_t>() > 0);
  CHECK(j["estimate"].get<double>() >= 0.0);
  CHECK(!j.contains("repetitions"));  // no confidence wrapper on this path
}

TEST_CASE("estimate reports zero on a triangle-free graph") {
  Rng gen(61);
  Graph tree = gen_forest_union(30, 1, gen);
  const std::string path = temp_path("tree.edges");
  write_edge_list_file(tree, path);
  auto r = run_cli("estimate --input " + path +
                   " --alpha 1 --sample-scale 1e-4 --delta 0.2 --seed 4");
  REQUIRE(r.exit_code == 0);
  json j = parse_stdout(r.out);
  CHECK(j["estimate"] == 0.0);
  CHECK(j["repetitions"] == 1);  // delta >= 1/6
  CHECK(j["run_estimates"] == json::array({0.0}));
  std::remove(path.c_str());
}

TEST_CASE("alpha defaults to the degeneracy with a warning") {
  const std::string args =
      "estimate --gen clique:8 --t-tilde 56 --sample-scale 0.05 --seed 5";
  auto clean = run_cli(args);
  REQUIRE(clean.exit_code == 0);
  json j = parse_stdout(clean.out);
  CHECK(j["alpha"] == 7.0);
  CHECK(j["alpha_defaulted"] == true);
  auto noisy = run_cli(args, /*keep_stderr=*/true);
  CHECK(noisy.out.find("warning:") != std::string::npos);
}

TEST_CASE("reruns are byte identical") {
  const std::vector<std::string> invocations = {
      "exact --gen er:60:0.1 --seed 6",
      "estimate --gen planted:2000:4:20000 --eps 0.25 --delta 0.1 "
      "--sample-scale 1e-10 --seed 7",
      "gadget --M 64 --alpha-star 8 --k 10 --gamma 0.2 --dist D1 --seed 9",
      "bench --family tri:3:40 --seeds 2 --members 2 --alpha 2 "
      "--sample-scale 0.02 --seed 11",
  };
  for (const std::string& args : invocations) {
    CAPTURE(args);
    auto a = run_cli(args);
    auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("bench emits the pinned CSV schema") {
  auto r = run_cli(
      "bench --family tri:3:40 --members 3 --seeds 2 --alpha 2 "
      "--sample-scale 0.02 --seed 12");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 7);  // header + 3 members x 2 seeds
  CHECK(lines[0] == kCsvHeader);
  const std::vector<std::string> want_t = {"3", "3", "6", "6", "12", "12"};
  const std::vector<std::string> want_seed = {"12", "13", "12", "13", "12", "13"};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv(lines[i]);
    REQUIRE(cells.size() == 14);
    CHECK(cells[0] == "72");  // n pinned by the family
    CHECK(cells[1] == "40");  // m fixed across members
    CHECK(cells[2] == want_t[i - 1]);
    CHECK(cells[3] == "2");
    CHECK(cells[5] == want_seed[i - 1]);
    CHECK(std::stod(cells[12]) >= 0.0);  // rel_err defined: T > 0
  }
}

TEST_CASE("a family of one instance and one seed is a single row") {
  auto r = run_cli(
      "bench --family tri:3:40 --members 1 --seeds 1 --alpha 2 "
      "--sample-scale 0.02 --seed 13");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == kCsvHeader);
  CHECK(split_csv(lines[1]).size() == 14);
}

TEST_CASE("gadget export round trip") {
  const std::string inst_path = temp_path("inst.json");
  const std::string edges_path = temp_path("gadget.edges");
  auto r = run_cli("gadget --M 64 --alpha-star 8 --k 12 --gamma 0.2 --dist D1 "
                   "--seed 13 --out-instance " + inst_path +
                   " --explicit " + edges_path);
  REQUIRE(r.exit_code == 0);
  json j = parse_stdout(r.out);
  CHECK(j["M"] == 64);
  CHECK(j["n"] == 40);
  CHECK(j["m"] == 256);
  CHECK(j["source"] == "D1");
  const std::uint64_t pop = j["popcount"].get<std::uint64_t>();
  CHECK(j["T"] == pop * 8);

  // The materialized edge list carries exactly that many triangles.
  auto exact = run_cli("exact --input " + edges_path);
  REQUIRE(exact.exit_code == 0);
  json je = parse_stdout(exact.out);
  CHECK(je["T"] == pop * 8);
  CHECK(je["m"] == 256);

  // Reloading the exported instance reproduces the same summary.
  auto reload = run_cli("gadget --in-instance " + inst_path + " --alpha-star 8");
  REQUIRE(reload.exit_code == 0);
  json jr = parse_stdout(reload.out);
  CHECK(jr["popcount"] == pop);
  CHECK(jr["T"] == pop * 8);
  CHECK(jr["source"] == "D1");
  CHECK(jr["k"] == 12);

  std::remove(inst_path.c_str());
  std::remove(edges_path.c_str());
}

TEST_CASE("gadget distinguishes pinned instances") {
  const std::string ones_path = temp_path("ones.json");
  const std::string zeros_path = temp_path("zeros.json");
  const std::string ones_hex(16, 'f');
  const std::string zeros_hex(16, '0');
  write_file(ones_path,
             "{\"schema\":1,\"M\":64,\"k\":16,\"gamma\":0.2,"
             "\"source\":\"external\",\"bits_hex\":\"" + ones_hex + "\"}\n");
  write_file(zeros_path,
             "{\"schema\":1,\"M\":64,\"k\":16,\"gamma\":0.2,"
             "\"source\":\"external\",\"bits_hex\":\"" + zeros_hex + "\"}\n");

  auto d1 = run_cli("gadget --in-instance " + ones_path +
                    " --alpha-star 8 --distinguish --sample-scale 5e-3 --seed 14");
  REQUIRE(d1.exit_code == 0);
  json j1 = parse_stdout(d1.out);
  CHECK(j1["label"] == "D1");
  CHECK(j1["t_hat"].get<double>() >= j1["threshold"].get<double>());

  auto d0 = run_cli("gadget --in-instance " + zeros_path +
                    " --alpha-star 8 --distinguish --sample-scale 1e-6 --seed 15");
  REQUIRE(d0.exit_code == 0);
  json j0 = parse_stdout(d0.out);
  CHECK(j0["label"] == "D0");
  CHECK(j0["t_hat"] == 0.0);

  std::remove(ones_path.c_str());
  std::remove(zeros_path.c_str());
}

TEST_CASE("exit codes") {
  const std::string missing = temp_path("does-not-exist.edges");
  const std::string malformed = temp_path("malformed.edges");
  write_file(malformed, "1 2 3\n4\n");
  const std::string badjson = temp_path("bad.json");
  write_file(badjson, "{\n");

  struct Case {
    std::string args;
    int want;
  };
  const std::vector<Case> cases = {
      {"exact --gen clique:4", 0},
      {"--help", 0},
      // usage errors
      {"estimate --seed 1", 2},
      {"estimate --gen clique:4 --input " + malformed + " --seed 1", 2},
      {"estimate --gen planted:10:2:1 --t-tilde 1", 2},  // missing seed
      {"estimate --gen bogus:4 --seed 1 --t-tilde 1", 2},
      {"estimate --gen clique:4 --seed 1 --t-tilde 56 --eps 1.5", 2},
      {"estimate --gen clique:4 --seed 1 --t-tilde 0.5", 2},
      {"bench --family tri:3:40 --alpha 2 --members 0 --seed 1", 2},
      {"bench --family nope --seed 1", 2},
      {"frobnicate", 2},
      {"estimate --gen clique:4 --seed 1 --t-tilde 1 --unknown-flag", 2},
      // input errors
      {"exact --input " + missing, 3},
      {"exact --input " + malformed, 3},
      {"gadget --in-instance " + badjson + " --alpha-star 2", 3},
      // infeasible parameters
      {"gadget --M 10 --alpha-star 3 --k 1 --gamma 0.2 --dist D0 --seed 2", 4},
      {"gadget --M 8 --alpha-star 4 --k 1 --gamma 0.2 --dist D0 --seed 2", 4},
      {"gadget --M 100 --alpha-star 10 --k 80 --gamma 0.25 --dist D1 --seed 2", 4},
      {"estimate --gen clique:30 --seed 2 --alpha 29 --t-tilde 4060 "
       "--max-samples 10", 4},
  };
  for (const Case& c : cases) {
    CAPTURE(c.args);
    CHECK(run_cli(c.args).exit_code == c.want);
  }
  std::remove(malformed.c_str());
  std::remove(badjson.c_str());
}

TEST_CASE("the out flag duplicates stdout into a file") {
  const std::string path = temp_path("exact.json");
  auto r = run_cli("exact --gen clique:5 --out " + path);
  REQUIRE(r.exit_code == 0);
  CHECK(read_file(path) == r.out);
  std::remove(path.c_str());
}
