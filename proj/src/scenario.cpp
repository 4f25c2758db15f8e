#include "ctx/scenario.hpp"

#include <set>

namespace ctx {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownMeasurement: return "UnknownMeasurement";
    case ErrorCode::UnknownMeasurementInContext: return "UnknownMeasurementInContext";
    case ErrorCode::EmptyOutcomeSet: return "EmptyOutcomeSet";
    case ErrorCode::DuplicateMeasurementId: return "DuplicateMeasurementId";
    case ErrorCode::UncoveredMeasurement: return "UncoveredMeasurement";
    case ErrorCode::InvalidArity: return "InvalidArity";
    case ErrorCode::NotAContext: return "NotAContext";
    case ErrorCode::NotSubdomain: return "NotSubdomain";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::IncompatibleMarginals: return "IncompatibleMarginals";
    case ErrorCode::MissingFacet: return "MissingFacet";
    case ErrorCode::ScenarioMismatch: return "ScenarioMismatch";
    case ErrorCode::NotGlobal: return "NotGlobal";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::CodomainViolation: return "CodomainViolation";
    case ErrorCode::NotDichotomic: return "NotDichotomic";
    case ErrorCode::MalformedSystem: return "MalformedSystem";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "UnknownError";
}

MeasurementSet normalize_set(MeasurementSet ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool is_subset(const MeasurementSet& a, const MeasurementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

MeasurementSet set_union(const MeasurementSet& a, const MeasurementSet& b) {
  MeasurementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

MeasurementSet set_intersection(const MeasurementSet& a, const MeasurementSet& b) {
  MeasurementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

MeasurementSet set_difference(const MeasurementSet& a, const MeasurementSet& b) {
  MeasurementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string describe_set(const MeasurementSet& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += ids[i];
  }
  return out + "}";
}

Assignment::Assignment(std::vector<std::pair<MeasurementId, std::string>> raw)
    : entries(std::move(raw)) {
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].first == entries[i - 1].first)
      fail(ErrorCode::DuplicateMeasurementId, "duplicate key '" + entries[i].first + "' in assignment");
  }
}

MeasurementSet Assignment::domain() const {
  MeasurementSet out;
  out.reserve(entries.size());
  for (const auto& [id, _] : entries) out.push_back(id);
  return out;
}

bool Assignment::has(const MeasurementId& id) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), id,
                             [](const auto& e, const MeasurementId& k) { return e.first < k; });
  return it != entries.end() && it->first == id;
}

const std::string& Assignment::at(const MeasurementId& id) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), id,
                             [](const auto& e, const MeasurementId& k) { return e.first < k; });
  if (it == entries.end() || it->first != id)
    fail(ErrorCode::UnknownMeasurement, "assignment has no entry for '" + id + "'");
  return it->second;
}

bool Scenario::has_measurement(const MeasurementId& id) const {
  return std::binary_search(measurements.begin(), measurements.end(), id);
}

const std::vector<std::string>& Scenario::outcomes_of(const MeasurementId& id) const {
  auto it = outcomes.find(id);
  if (it == outcomes.end())
    fail(ErrorCode::UnknownMeasurement, "no measurement '" + id + "'");
  return it->second;
}

int Scenario::outcome_index(const MeasurementId& id, const std::string& outcome) const {
  const auto& os = outcomes_of(id);
  auto it = std::find(os.begin(), os.end(), outcome);
  if (it == os.end())
    fail(ErrorCode::CodomainViolation, "'" + outcome + "' is not an outcome of '" + id + "'");
  return static_cast<int>(it - os.begin());
}

Scenario make_scenario(
    const std::vector<std::pair<MeasurementId, std::vector<std::string>>>& measurements,
    const std::vector<MeasurementSet>& maximal_contexts) {
  Scenario s;
  for (const auto& [id, os] : measurements) {
    if (id.empty()) fail(ErrorCode::DuplicateMeasurementId, "empty measurement id");
    if (os.empty()) fail(ErrorCode::EmptyOutcomeSet, "measurement '" + id + "' has no outcomes");
    std::set<std::string> seen(os.begin(), os.end());
    if (seen.size() != os.size())
      fail(ErrorCode::EmptyOutcomeSet, "duplicate outcome label for '" + id + "'");
    if (!s.outcomes.emplace(id, os).second)
      fail(ErrorCode::DuplicateMeasurementId, "duplicate measurement id '" + id + "'");
    s.measurements.push_back(id);
  }
  s.measurements = normalize_set(s.measurements);

  std::vector<MeasurementSet> faces;
  for (const auto& raw : maximal_contexts) {
    MeasurementSet face = normalize_set(raw);
    for (const auto& id : face)
      if (!s.has_measurement(id))
        fail(ErrorCode::UnknownMeasurementInContext,
             "context " + describe_set(face) + " mentions unknown measurement '" + id + "'");
    faces.push_back(std::move(face));
  }
  // antichain storage: drop subsumed faces, keep sorted order, dedupe
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  for (const auto& face : faces) {
    bool subsumed = false;
    for (const auto& other : faces)
      if (face != other && is_subset(face, other)) { subsumed = true; break; }
    if (!subsumed) s.facets.push_back(face);
  }
  if (s.facets.empty()) s.facets.push_back({});  // Zero, or empty input

  for (const auto& id : s.measurements) {
    bool covered = false;
    for (const auto& face : s.facets)
      if (std::binary_search(face.begin(), face.end(), id)) { covered = true; break; }
    if (!covered)
      fail(ErrorCode::UncoveredMeasurement, "measurement '" + id + "' is in no maximal context");
  }
  return s;
}

Scenario zero_scenario() { return make_scenario({}, {{}}); }

Scenario dice_scenario(int n) {
  if (n < 1) fail(ErrorCode::InvalidArity, "dice scenario needs n >= 1");
  std::vector<std::string> outcomes;
  for (int i = 0; i < n; ++i) outcomes.push_back(std::to_string(i));
  return make_scenario({{"*", outcomes}}, {{"*"}});
}

bool is_context(const Scenario& scenario, const MeasurementSet& ids) {
  MeasurementSet u = normalize_set(ids);
  for (const auto& id : u)
    if (!scenario.has_measurement(id))
      fail(ErrorCode::UnknownMeasurement, "no measurement '" + id + "'");
  for (const auto& face : scenario.facets)
    if (is_subset(u, face)) return true;
  return false;
}

std::uint64_t assignment_count(const Scenario& scenario, const MeasurementSet& ids,
                               std::uint64_t budget) {
  std::uint64_t count = 1;
  for (const auto& id : ids) {
    std::uint64_t k = scenario.outcomes_of(id).size();
    if (count > budget / k)
      fail(ErrorCode::BudgetExceeded,
           "|Ev(" + describe_set(ids) + ")| exceeds budget " + std::to_string(budget));
    count *= k;
  }
  return count;
}

void for_each_assignment(const Scenario& scenario, const MeasurementSet& ids,
                         const std::function<bool(const Assignment&)>& fn) {
  MeasurementSet u = normalize_set(ids);
  std::vector<const std::vector<std::string>*> outcome_lists;
  for (const auto& id : u) outcome_lists.push_back(&scenario.outcomes_of(id));

  std::vector<std::size_t> odometer(u.size(), 0);
  Assignment a;
  a.entries.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) a.entries[i].first = u[i];
  while (true) {
    for (std::size_t i = 0; i < u.size(); ++i)
      a.entries[i].second = (*outcome_lists[i])[odometer[i]];
    if (!fn(a)) return;
    // advance: last measurement varies fastest
    std::size_t i = u.size();
    while (i > 0) {
      --i;
      if (++odometer[i] < outcome_lists[i]->size()) break;
      odometer[i] = 0;
      if (i == 0) return;
    }
    if (u.empty()) return;
  }
}

std::vector<Assignment> enumerate_assignments(const Scenario& scenario,
                                              const MeasurementSet& ids) {
  std::vector<Assignment> out;
  for_each_assignment(scenario, ids, [&](const Assignment& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

Assignment assignment_at(const Scenario& scenario, const MeasurementSet& ids,
                         std::uint64_t index) {
  MeasurementSet u = normalize_set(ids);
  std::vector<std::pair<MeasurementId, std::string>> entries(u.size());
  // last measurement varies fastest
  for (std::size_t i = u.size(); i > 0;) {
    --i;
    const auto& os = scenario.outcomes_of(u[i]);
    entries[i] = {u[i], os[index % os.size()]};
    index /= os.size();
  }
  if (index != 0) fail(ErrorCode::InternalError, "assignment index out of range");
  Assignment a;
  a.entries = std::move(entries);
  return a;
}

Assignment restrict_assignment(const Assignment& assignment, const MeasurementSet& subdomain) {
  MeasurementSet v = normalize_set(subdomain);
  Assignment out;
  out.entries.reserve(v.size());
  for (const auto& id : v) {
    if (!assignment.has(id))
      fail(ErrorCode::NotSubdomain, "'" + id + "' not in assignment domain");
    out.entries.emplace_back(id, assignment.at(id));
  }
  return out;
}

Scenario restrict_scenario(const Scenario& scenario, const MeasurementSet& sigma) {
  MeasurementSet u = normalize_set(sigma);
  if (!is_context(scenario, u))
    fail(ErrorCode::NotAContext, describe_set(u) + " is not a context");
  std::vector<std::pair<MeasurementId, std::vector<std::string>>> ms;
  for (const auto& id : u) ms.emplace_back(id, scenario.outcomes_of(id));
  return make_scenario(ms, {u});
}

}  // namespace ctx
