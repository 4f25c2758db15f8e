#pragma once

#include <string>

#include "ctx/contextuality.hpp"
#include "ctx/games.hpp"
#include "ctx/hom.hpp"

#include "../../vendor/json.hpp"

namespace ctx {

// insertion-ordered so serialized output is byte-deterministic
using Json = nlohmann::ordered_json;

// Throws ParseError on unreadable files or malformed JSON.
Json load_json_file(const std::string& path);

// A model/procedure "scenario" field may be inline or a path relative to
// `base_dir` (the directory of the referring file).
Scenario scenario_from_json(const Json& j, const std::string& base_dir);
Json scenario_to_json(const Scenario& scenario);

Json assignment_to_json(const Assignment& a);
Assignment assignment_from_json(const Json& j);

// `fallback` supplies the scenario when the JSON omits the field (models
// nested inside a realizability query).
EmpiricalModel empirical_model_from_json(const Json& j, const std::string& base_dir,
                                         const Scenario* fallback = nullptr);
Json empirical_model_to_json(const EmpiricalModel& model);

PossibilisticModel possibilistic_model_from_json(const Json& j, const std::string& base_dir);
Json possibilistic_model_to_json(const PossibilisticModel& model);

// distributions with "support" entries are possibilistic, "weights" empirical
bool is_possibilistic_model_json(const Json& j);

ProbabilisticProcedure procedure_from_json(const Json& j, const std::string& base_dir);
Json procedure_to_json(const ProbabilisticProcedure& f);

PossibilisticPredicate predicate_from_json(const Json& j, const std::string& base_dir);
Json predicate_to_json(const PossibilisticPredicate& predicate);

RealizabilityQuery realizability_query_from_json(const Json& j, const std::string& base_dir);

Json hierarchy_report_to_json(const HierarchyReport& report);

}  // namespace ctx
