#include "ctx/json_io.hpp"

#include <fstream>

namespace ctx {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    fail(ErrorCode::ParseError, std::string("missing field '") + name + "'");
  return j.at(name);
}

std::string string_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string()) fail(ErrorCode::ParseError, std::string("field '") + name + "' not a string");
  return v.get<std::string>();
}

MeasurementSet set_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "measurement set is not an array");
  MeasurementSet out;
  for (const auto& v : j) {
    if (!v.is_string()) fail(ErrorCode::ParseError, "measurement id is not a string");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string join_path(const std::string& base_dir, const std::string& path) {
  if (path.empty() || path.front() == '/' || base_dir.empty()) return path;
  return base_dir + "/" + path;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, "malformed JSON in '" + path + "': " + e.what());
  }
}

Scenario scenario_from_json(const Json& j, const std::string& base_dir) {
  if (j.is_string())
    return scenario_from_json(load_json_file(join_path(base_dir, j.get<std::string>())),
                              base_dir);
  std::vector<std::pair<MeasurementId, std::vector<std::string>>> measurements;
  for (const auto& m : field(j, "measurements")) {
    std::vector<std::string> outcomes;
    for (const auto& o : field(m, "outcomes")) {
      if (!o.is_string()) fail(ErrorCode::ParseError, "outcome is not a string");
      outcomes.push_back(o.get<std::string>());
    }
    measurements.emplace_back(string_field(m, "id"), std::move(outcomes));
  }
  std::vector<MeasurementSet> contexts;
  for (const auto& c : field(j, "maximal_contexts")) contexts.push_back(set_from_json(c));
  return make_scenario(measurements, contexts);
}

Json scenario_to_json(const Scenario& scenario) {
  Json j;
  j["measurements"] = Json::array();
  for (const auto& id : scenario.measurements) {
    Json m;
    m["id"] = id;
    m["outcomes"] = scenario.outcomes_of(id);
    j["measurements"].push_back(std::move(m));
  }
  j["maximal_contexts"] = Json::array();
  for (const auto& facet : scenario.facets) j["maximal_contexts"].push_back(facet);
  return j;
}

Json assignment_to_json(const Assignment& a) {
  Json j = Json::object();
  for (const auto& [id, o] : a.entries) j[id] = o;
  return j;
}

Assignment assignment_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "assignment is not an object");
  std::vector<std::pair<MeasurementId, std::string>> entries;
  for (const auto& [id, o] : j.items()) {
    if (!o.is_string()) fail(ErrorCode::ParseError, "assignment outcome is not a string");
    entries.emplace_back(id, o.get<std::string>());
  }
  return Assignment(std::move(entries));
}

EmpiricalModel empirical_model_from_json(const Json& j, const std::string& base_dir,
                                         const Scenario* fallback) {
  Scenario scenario = j.contains("scenario") ? scenario_from_json(j.at("scenario"), base_dir)
                      : fallback             ? *fallback
                                             : (fail(ErrorCode::ParseError, "missing field 'scenario'"),
                                 Scenario{});
  std::map<MeasurementSet, ContextDistribution> dists;
  for (const auto& d : field(j, "distributions")) {
    ContextDistribution dist;
    dist.context = normalize_set(set_from_json(field(d, "context")));
    for (const auto& w : field(d, "weights"))
      dist.weights[assignment_from_json(field(w, "assignment"))] +=
          parse_rational(string_field(w, "p"));
    dists[dist.context] = std::move(dist);
  }
  return make_empirical_model(scenario, std::move(dists));
}

Json empirical_model_to_json(const EmpiricalModel& model) {
  Json j;
  j["scenario"] = scenario_to_json(model.scenario);
  j["distributions"] = Json::array();
  for (const auto& [context, dist] : model.dists) {
    Json d;
    d["context"] = context;
    d["weights"] = Json::array();
    for (const auto& [a, p] : dist.weights) {
      Json w;
      w["assignment"] = assignment_to_json(a);
      w["p"] = to_string(p);
      d["weights"].push_back(std::move(w));
    }
    j["distributions"].push_back(std::move(d));
  }
  return j;
}

PossibilisticModel possibilistic_model_from_json(const Json& j, const std::string& base_dir) {
  Scenario scenario = scenario_from_json(field(j, "scenario"), base_dir);
  std::map<MeasurementSet, std::set<Assignment>> supports;
  for (const auto& d : field(j, "distributions")) {
    MeasurementSet context = normalize_set(set_from_json(field(d, "context")));
    std::set<Assignment> support;
    for (const auto& a : field(d, "support")) support.insert(assignment_from_json(a));
    supports[context] = std::move(support);
  }
  return make_possibilistic_model(scenario, std::move(supports));
}

Json possibilistic_model_to_json(const PossibilisticModel& model) {
  Json j;
  j["scenario"] = scenario_to_json(model.scenario);
  j["distributions"] = Json::array();
  for (const auto& [context, support] : model.supports) {
    Json d;
    d["context"] = context;
    d["support"] = Json::array();
    for (const auto& a : support) d["support"].push_back(assignment_to_json(a));
    j["distributions"].push_back(std::move(d));
  }
  return j;
}

bool is_possibilistic_model_json(const Json& j) {
  const Json& dists = field(j, "distributions");
  return !dists.empty() && dists.front().is_object() && dists.front().contains("support");
}

ProbabilisticProcedure procedure_from_json(const Json& j, const std::string& base_dir) {
  Scenario source = scenario_from_json(field(j, "source"), base_dir);
  Scenario target = scenario_from_json(field(j, "target"), base_dir);
  std::vector<std::pair<Rational, DeterministicProcedure>> mixture;
  for (const auto& component : field(j, "mixture")) {
    std::map<MeasurementId, MeasurementSet> pi;
    for (const auto& [x, u] : field(component, "pi").items()) pi[x] = set_from_json(u);
    std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
    for (const auto& [x, rows] : field(component, "alpha").items()) {
      if (!rows.is_array()) fail(ErrorCode::ParseError, "alpha rows are not an array");
      for (const auto& row : rows)
        alpha[x][assignment_from_json(field(row, "in"))] = string_field(row, "out");
    }
    mixture.emplace_back(
        parse_rational(string_field(component, "weight")),
        make_deterministic_procedure(source, target, std::move(pi), std::move(alpha)));
  }
  return make_probabilistic_procedure(std::move(mixture));
}

Json procedure_to_json(const ProbabilisticProcedure& f) {
  Json j;
  j["source"] = scenario_to_json(f.source());
  j["target"] = scenario_to_json(f.target());
  j["mixture"] = Json::array();
  for (const auto& [w, g] : f.mixture) {
    Json component;
    component["weight"] = to_string(w);
    component["pi"] = Json::object();
    for (const auto& [x, u] : g.pi) component["pi"][x] = u;
    component["alpha"] = Json::object();
    for (const auto& [x, table] : g.alpha) {
      Json rows = Json::array();
      for (const auto& [in, out] : table) {
        Json row;
        row["in"] = assignment_to_json(in);
        row["out"] = out;
        rows.push_back(std::move(row));
      }
      component["alpha"][x] = std::move(rows);
    }
    j["mixture"].push_back(std::move(component));
  }
  return j;
}

PossibilisticPredicate predicate_from_json(const Json& j, const std::string& base_dir) {
  Scenario scenario = scenario_from_json(field(j, "scenario"), base_dir);
  std::vector<PredicateComponent> components;
  for (const auto& c : field(j, "components")) {
    PredicateComponent comp;
    comp.context = set_from_json(field(c, "context"));
    for (const auto& a : field(c, "accept")) comp.accept.insert(assignment_from_json(a));
    components.push_back(std::move(comp));
  }
  return make_predicate(scenario, std::move(components));
}

Json predicate_to_json(const PossibilisticPredicate& predicate) {
  Json j;
  j["scenario"] = scenario_to_json(predicate.scenario);
  j["components"] = Json::array();
  for (const auto& comp : predicate.components) {
    Json c;
    c["context"] = comp.context;
    c["accept"] = Json::array();
    for (const auto& a : comp.accept) c["accept"].push_back(assignment_to_json(a));
    j["components"].push_back(std::move(c));
  }
  return j;
}

RealizabilityQuery realizability_query_from_json(const Json& j, const std::string& base_dir) {
  RealizabilityQuery query;
  query.source = scenario_from_json(field(j, "source"), base_dir);
  query.target = scenario_from_json(field(j, "target"), base_dir);
  for (const auto& entry : field(j, "F")) {
    Assignment a = assignment_from_json(field(entry, "assignment"));
    query.F[a] = empirical_model_from_json(field(entry, "model"), base_dir, &query.target);
  }
  return query;
}

Json hierarchy_report_to_json(const HierarchyReport& report) {
  auto verdict = [](bool contextual) { return contextual ? "contextual" : "noncontextual"; };
  Json j;
  j["probabilistic"] = verdict(report.probabilistically_contextual);
  j["logical"] = verdict(report.logically_contextual);
  j["strong"] = verdict(report.strongly_contextual);
  if (report.noncontextual_witness) {
    Json witness = Json::array();
    for (const auto& [a, p] : *report.noncontextual_witness) {
      Json w;
      w["assignment"] = assignment_to_json(a);
      w["p"] = to_string(p);
      witness.push_back(std::move(w));
    }
    j["noncontextual_witness"] = std::move(witness);
  }
  if (report.logical_witness) {
    Json w;
    w["context"] = report.logical_witness->facet;
    w["assignment"] = assignment_to_json(report.logical_witness->assignment);
    j["logical_witness"] = std::move(w);
  }
  return j;
}

}  // namespace ctx
