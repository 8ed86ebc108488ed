#pragma once

#include "igraph.hpp"
#include "influence.hpp"
#include "network.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace crn {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "crn-inject/1";

enum class AnalysisClass { Fixed, Sns, Union, Weak };

struct AnalyzeRequest {
    AnalysisClass cls = AnalysisClass::Sns;
    std::optional<InfluenceSpec> influence;  // sns, weak
    std::optional<InfluenceSpec> lower;      // union
    std::optional<InfluenceSpec> upper;
    std::optional<KineticOrder> order;       // fixed
    uint64_t seed = 1;                       // counterexample search
};

// Each builder returns a full report object: schema, command, network
// summary and the command's own sections. Output depends only on the input.
Json network_summary(const Network& net);
Json analyze_report(const Network& net, const AnalyzeRequest& req);
Json restrict_report(const Network& net, const InfluenceSpec& i, bool strict);
Json pmatrix_report(const Network& net, const InfluenceSpec& i, bool strict = false);
Json dsr_report(const Network& net, const InfluenceSpec& i);
Json igraph_report(const InteractionGraph& g, const Partition* p);
Json oracle_report(const Network& net, const InfluenceSpec& i, int samples, uint64_t seed);

// Human-readable rendering of any of the reports above.
std::string render_text(const Json& report);

}  // namespace crn
