#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <utility>

#include "kodbundle/plan.hpp"
#include "kodbundle/verifier.hpp"

namespace kodbundle {

// Malformed input files: carries the JSON path of the offending element.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& path);

Json quadint_to_json(const QuadInt& q);
QuadInt quadint_from_json(const Json& j, long D, const std::string& path);

Json lattice_to_json(const Lattice2& L);
Lattice2 lattice_from_json(const Json& j, long D, const std::string& path);

Json curve_to_json(const CurveModel& c);
CurveModel curve_from_json(const Json& j, long D, const std::string& path);

Json instance_to_json(const ChernInstance& inst);
// strict = true re-validates every module-level invariant (instance files);
// strict = false only requires structural well-formedness (plan payloads,
// whose semantics the verifier re-checks)
ChernInstance instance_from_json(const Json& j, bool strict, const std::string& path = "$");

Json plan_to_json(const ConstructionPlan& plan, const ChernInstance& inst);
std::pair<ConstructionPlan, ChernInstance> plan_from_json(const Json& j);

Json report_to_json(const VerificationReport& rep);

std::string dump_deterministic(const Json& j);

}  // namespace kodbundle
