#include "tricount/serialize.hpp"

#include <string>

#include "tricount/errors.hpp"

namespace tricount {

using nlohmann::json;

json to_json(const QueryCounter& c) {
  return json{{"degree", c.degree_q},
              {"neighbour", c.neighbour_q},
              {"edge", c.edge_q},
              {"random_edge", c.random_edge_q},
              {"bit_reads", c.oracle_bit_q}};
}

json to_json(const PerEdgeRecord& r) {
  return json{{"edge", {r.e.u, r.e.v}},
              {"heavy_bit", r.heavy_bit},
              {"r_e", r.r_e},
              {"charged", r.charged},
              {"w", r.w}};
}

json to_json(const EstimateReport& r, bool verbose) {
  json j{{"t_hat", r.t_hat},
         {"s", r.s},
         {"duplicates_suppressed", r.duplicates_suppressed},
         {"oracle_calls", r.oracle_calls},
         {"queries", to_json(r.counters)},
         {"distinct_triangles", r.registry.size()}};
  if (verbose) {
    json recs = json::array();
    for (const auto& rec : r.records) recs.push_back(to_json(rec));
    j["records"] = recs;
  }
  return j;
}

json to_json(const SearchTrace& t, bool verbose) {
  json j{{"final_x", t.final_x},
         {"estimate_calls", t.estimate_calls},
         {"queries", to_json(t.counters)}};
  if (verbose) {
    json steps = json::array();
    for (const SearchStep& s : t.steps) {
      steps.push_back(json{{"t_bar", s.t_bar},
                           {"t_tilde", s.t_tilde},
                           {"rep", s.rep},
                           {"x_i", s.x_i},
                           {"terminated", s.terminated}});
    }
    j["steps"] = steps;
  }
  return j;
}

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

std::string bits_to_hex(const std::vector<std::uint8_t>& bits) {
  const std::size_t n_bytes = (bits.size() + 7) / 8;
  std::string hex(n_bytes * 2, '0');
  for (std::size_t byte = 0; byte < n_bytes; ++byte) {
    unsigned value = 0;
    for (std::size_t bit = 0; bit < 8; ++bit) {  // LSB-first within the byte
      const std::size_t idx = byte * 8 + bit;
      if (idx < bits.size() && bits[idx]) value |= 1u << bit;
    }
    hex[byte * 2] = kHexDigits[value >> 4];
    hex[byte * 2 + 1] = kHexDigits[value & 0xF];
  }
  return hex;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::vector<std::uint8_t> hex_to_bits(const std::string& hex, std::uint64_t M) {
  const std::size_t n_bytes = (M + 7) / 8;
  if (hex.size() != n_bytes * 2) {
    throw InputError("instance: bits_hex has length " + std::to_string(hex.size()) +
                     ", expected " + std::to_string(n_bytes * 2));
  }
  std::vector<std::uint8_t> bits(M, 0);
  for (std::size_t byte = 0; byte < n_bytes; ++byte) {
    const int hi = hex_value(hex[byte * 2]);
    const int lo = hex_value(hex[byte * 2 + 1]);
    if (hi < 0 || lo < 0) throw InputError("instance: bits_hex is not hex");
    const unsigned value = static_cast<unsigned>(hi << 4 | lo);
    for (std::size_t bit = 0; bit < 8; ++bit) {
      const std::size_t idx = byte * 8 + bit;
      if (idx < M) {
        bits[idx] = (value >> bit) & 1u;
      } else if ((value >> bit) & 1u) {
        throw InputError("instance: nonzero padding bits beyond M");
      }
    }
  }
  return bits;
}

}  // namespace

json to_json(const PtpInstance& inst) {
  return json{{"schema", 1},
              {"M", inst.M},
              {"k", inst.k},
              {"gamma", inst.gamma},
              {"source", inst.source},
              {"bits_hex", bits_to_hex(inst.bits)}};
}

PtpInstance ptp_instance_from_json(const json& j) {
  try {
    if (!j.is_object()) throw InputError("instance: not a JSON object");
    if (j.value("schema", 0) != 1) throw InputError("instance: unsupported schema");
    PtpInstance inst;
    inst.M = j.at("M").get<std::uint64_t>();
    inst.k = j.at("k").get<std::uint64_t>();
    inst.gamma = j.at("gamma").get<double>();
    inst.source = j.at("source").get<std::string>();
    if (inst.source != "D0" && inst.source != "D1" && inst.source != "external") {
      throw InputError("instance: source must be D0, D1, or external");
    }
    inst.bits = hex_to_bits(j.at("bits_hex").get<std::string>(), inst.M);
    return inst;
  } catch (const json::exception& e) {
    throw InputError(std::string("instance: ") + e.what());
  }
}

}  // namespace tricount
