#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bipromethee/bicapacity.hpp"
#include "bipromethee/choquet.hpp"
#include "bipromethee/elicitation.hpp"
#include "bipromethee/model.hpp"
#include "bipromethee/ror.hpp"

namespace bipromethee::io {

using nlohmann::json;

// All parsers throw ValidationError (or ConfigError from model validation)
// on malformed input.

DecisionProblem problem_from_json(const json& j);
json problem_to_json(const DecisionProblem& problem);

/// Header row holds criterion ids after a leading id column; each further row
/// is an alternative id followed by its evaluations. Criteria metadata comes
/// from `criteria`: either an array of criterion objects or {"criteria": [...]}.
DecisionProblem problem_from_csv(const std::string& csv_text, const json& criteria);

TwoAdditiveBicapacity bicapacity_from_json(const json& j);
json bicapacity_to_json(const TwoAdditiveBicapacity& b);

std::vector<double> weights_from_json(const json& j, const DecisionProblem& problem);

PreferenceStatement statement_from_json(const json& j, const DecisionProblem& problem);
json statement_to_json(const PreferenceStatement& s, const DecisionProblem& problem);
std::vector<PreferenceStatement> statements_from_json(const json& j, const DecisionProblem& problem);
json statements_to_json(const std::vector<PreferenceStatement>& s, const DecisionProblem& problem);

json flows_to_json(const std::vector<FlowTriple>& flows, const DecisionProblem& problem);
std::vector<FlowTriple> flows_from_json(const json& j, const DecisionProblem& problem);

/// PROMETHEE II groups plus the PROMETHEE I symbol matrix.
json ranking_to_json(const std::vector<FlowTriple>& flows, const DecisionProblem& problem);

json elicitation_to_json(const ElicitationResult& r, const std::vector<PreferenceStatement>& statements,
                         const DecisionProblem& problem);

/// Matrix key such as "necessary_local".
std::string matrix_key(RelationKind kind, ExploitationLevel level);

json snapshot_to_json(const RorSnapshot& s, const DecisionProblem& problem);
/// Restores iteration, statements and cells; per-cell LP diagnostics are not kept.
RorSnapshot snapshot_from_json(const json& j, const DecisionProblem& problem);

std::string read_file(const std::string& path);
json read_json_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace bipromethee::io
