#pragma once

#include <json.hpp>

#include "tricount/estimator.hpp"
#include "tricount/ptp.hpp"
#include "tricount/query.hpp"
#include "tricount/search.hpp"

namespace tricount {

nlohmann::json to_json(const QueryCounter& c);
nlohmann::json to_json(const PerEdgeRecord& r);
nlohmann::json to_json(const EstimateReport& r, bool verbose);
nlohmann::json to_json(const SearchTrace& t, bool verbose);
nlohmann::json to_json(const PtpInstance& inst);

// Inverse of to_json(PtpInstance); validates shape, hex payload, and length.
PtpInstance ptp_instance_from_json(const nlohmann::json& j);

}  // namespace tricount
