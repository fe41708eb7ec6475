#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "sigmatree/ball.hpp"
#include "sigmatree/classifier.hpp"
#include "sigmatree/lifting.hpp"
#include "sigmatree/oracle.hpp"
#include "sigmatree/ptp.hpp"
#include "sigmatree/witness.hpp"

namespace sigmatree {

using Json = nlohmann::ordered_json;

const char* tool_version();

Json to_json(const ValidationReport& r);
Json to_json(const Ptp& ptp, const LocalProperties& lp);
Json to_json(const ApplicabilityReport& a);
Json to_json(const Ptp& ptp, const MarkedSet& m);
Json to_json(const Ptp& ptp, const CleanSet& c);
Json to_json(const Ptp& ptp, const Classification& c);
Json to_json(const Ptp& ptp, const std::vector<OracleRun>& runs);
Json to_json(const WitnessSearch& ws);
Json to_json(const MappedBallPair& pair, const LiftTree& t);

/// Degree statistics of interior vertices (depth < radius, expanded).
Json degree_summary(const Ptp& ptp, const MappedBallPair& pair);

/// The common report skeleton: every key present, optional sections null.
/// `input` names the document (file path or corpus name).
Json base_report(const std::string& input, const Ptp& ptp, const Verdict& verdict, const ValidationReport& validation);

/// Report for a document that failed validation.
Json invalid_report(const std::string& input, const ValidationReport& r);

/// Serialized report text, newline-terminated.
std::string dump(const Json& j);

}  // namespace sigmatree
