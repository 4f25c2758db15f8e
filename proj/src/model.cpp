#include "ctx/model.hpp"

namespace ctx {

Rational ContextDistribution::weight_of(const Assignment& a) const {
  auto it = weights.find(a);
  return it == weights.end() ? Rational(0) : it->second;
}

ContextDistribution marginalize(const ContextDistribution& dist, const MeasurementSet& sub) {
  MeasurementSet tau = normalize_set(sub);
  if (!is_subset(tau, dist.context))
    fail(ErrorCode::NotSubdomain,
         describe_set(tau) + " is not a sub-context of " + describe_set(dist.context));
  ContextDistribution out;
  out.context = tau;
  for (const auto& [a, w] : dist.weights) out.weights[restrict_assignment(a, tau)] += w;
  return out;
}

std::set<Assignment> restrict_support(const std::set<Assignment>& support,
                                      const MeasurementSet& sub) {
  std::set<Assignment> out;
  for (const auto& a : support) out.insert(restrict_assignment(a, sub));
  return out;
}

namespace {

void check_facet_keys(const Scenario& scenario, const auto& per_facet) {
  for (const auto& facet : scenario.facets)
    if (!per_facet.count(facet))
      fail(ErrorCode::MissingFacet, "no data for facet " + describe_set(facet));
  for (const auto& [key, _] : per_facet)
    if (std::find(scenario.facets.begin(), scenario.facets.end(), key) == scenario.facets.end())
      fail(ErrorCode::MissingFacet, describe_set(key) + " is not a facet of the scenario");
}

void check_assignment_shape(const Scenario& scenario, const MeasurementSet& facet,
                            const Assignment& a) {
  if (a.domain() != facet)
    fail(ErrorCode::ScenarioMismatch, "assignment domain is not " + describe_set(facet));
  for (const auto& [id, outcome] : a.entries) scenario.outcome_index(id, outcome);
}

}  // namespace

EmpiricalModel make_empirical_model(const Scenario& scenario,
                                    std::map<MeasurementSet, ContextDistribution> dists) {
  check_facet_keys(scenario, dists);
  EmpiricalModel model;
  model.scenario = scenario;
  for (auto& [facet, dist] : dists) {
    ContextDistribution clean;
    clean.context = facet;
    Rational total(0);
    for (const auto& [a, w] : dist.weights) {
      check_assignment_shape(scenario, facet, a);
      if (w < 0)
        fail(ErrorCode::NegativeWeight,
             "negative weight " + to_string(w) + " on facet " + describe_set(facet));
      if (w == 0) continue;
      clean.weights[a] = w;
      total += w;
    }
    if (total != 1)
      fail(ErrorCode::NotNormalized,
           "facet " + describe_set(facet) + " sums to " + to_string(total));
    model.dists[facet] = std::move(clean);
  }
  // pairwise compatibility on full intersections
  for (auto it = model.dists.begin(); it != model.dists.end(); ++it)
    for (auto jt = std::next(it); jt != model.dists.end(); ++jt) {
      MeasurementSet common = set_intersection(it->first, jt->first);
      if (marginalize(it->second, common) != marginalize(jt->second, common))
        fail(ErrorCode::IncompatibleMarginals,
             "facets " + describe_set(it->first) + " and " + describe_set(jt->first) +
                 " disagree on " + describe_set(common));
    }
  return model;
}

PossibilisticModel make_possibilistic_model(
    const Scenario& scenario, std::map<MeasurementSet, std::set<Assignment>> supports) {
  check_facet_keys(scenario, supports);
  PossibilisticModel model;
  model.scenario = scenario;
  for (auto& [facet, support] : supports) {
    if (support.empty())
      fail(ErrorCode::EmptySupport, "empty support on facet " + describe_set(facet));
    for (const auto& a : support) check_assignment_shape(scenario, facet, a);
    model.supports[facet] = std::move(support);
  }
  for (auto it = model.supports.begin(); it != model.supports.end(); ++it)
    for (auto jt = std::next(it); jt != model.supports.end(); ++jt) {
      MeasurementSet common = set_intersection(it->first, jt->first);
      if (restrict_support(it->second, common) != restrict_support(jt->second, common))
        fail(ErrorCode::IncompatibleMarginals,
             "supports of " + describe_set(it->first) + " and " + describe_set(jt->first) +
                 " disagree on " + describe_set(common));
    }
  return model;
}

ContextDistribution marginal(const EmpiricalModel& model, const MeasurementSet& tau) {
  MeasurementSet t = normalize_set(tau);
  if (!is_context(model.scenario, t))
    fail(ErrorCode::NotAContext, describe_set(t) + " is not a context");
  for (const auto& [facet, dist] : model.dists)
    if (is_subset(t, facet)) return marginalize(dist, t);
  fail(ErrorCode::InternalError, "context not under any facet");
}

std::set<Assignment> marginal_support(const PossibilisticModel& model, const MeasurementSet& tau) {
  MeasurementSet t = normalize_set(tau);
  if (!is_context(model.scenario, t))
    fail(ErrorCode::NotAContext, describe_set(t) + " is not a context");
  for (const auto& [facet, support] : model.supports)
    if (is_subset(t, facet)) return restrict_support(support, t);
  fail(ErrorCode::InternalError, "context not under any facet");
}

EmpiricalModel deterministic_model(const Scenario& scenario, const Assignment& global) {
  if (global.domain() != scenario.measurements)
    fail(ErrorCode::NotGlobal, "assignment does not cover all measurements");
  std::map<MeasurementSet, ContextDistribution> dists;
  for (const auto& facet : scenario.facets) {
    ContextDistribution d;
    d.context = facet;
    d.weights[restrict_assignment(global, facet)] = 1;
    dists[facet] = std::move(d);
  }
  return make_empirical_model(scenario, std::move(dists));
}

EmpiricalModel convex_combine(const std::vector<std::pair<Rational, EmpiricalModel>>& mixture) {
  if (mixture.empty()) fail(ErrorCode::NotNormalized, "empty mixture");
  const Scenario& scenario = mixture.front().second.scenario;
  Rational total(0);
  std::map<MeasurementSet, ContextDistribution> dists;
  for (const auto& facet : scenario.facets) dists[facet].context = facet;
  for (const auto& [w, model] : mixture) {
    if (model.scenario != scenario)
      fail(ErrorCode::ScenarioMismatch, "mixture components on different scenarios");
    if (w < 0) fail(ErrorCode::NegativeWeight, "negative mixture weight " + to_string(w));
    total += w;
    for (const auto& [facet, dist] : model.dists)
      for (const auto& [a, p] : dist.weights) dists[facet].weights[a] += w * p;
  }
  if (total != 1)
    fail(ErrorCode::NotNormalized, "mixture weights sum to " + to_string(total));
  return make_empirical_model(scenario, std::move(dists));
}

PossibilisticModel possibilistic_collapse(const EmpiricalModel& model) {
  std::map<MeasurementSet, std::set<Assignment>> supports;
  for (const auto& [facet, dist] : model.dists)
    for (const auto& [a, w] : dist.weights)
      if (w > 0) supports[facet].insert(a);
  return make_possibilistic_model(model.scenario, std::move(supports));
}

PossibilisticModel possibilistic_join(const std::vector<PossibilisticModel>& models) {
  if (models.empty()) fail(ErrorCode::EmptySupport, "empty join");
  const Scenario& scenario = models.front().scenario;
  std::map<MeasurementSet, std::set<Assignment>> supports;
  for (const auto& model : models) {
    if (model.scenario != scenario)
      fail(ErrorCode::ScenarioMismatch, "join components on different scenarios");
    for (const auto& [facet, support] : model.supports)
      supports[facet].insert(support.begin(), support.end());
  }
  return make_possibilistic_model(scenario, std::move(supports));
}

bool possibilistic_leq(const PossibilisticModel& d, const PossibilisticModel& e) {
  if (d.scenario != e.scenario)
    fail(ErrorCode::ScenarioMismatch, "comparing models on different scenarios");
  for (const auto& [facet, support] : d.supports) {
    const auto& larger = e.supports.at(facet);
    if (!std::includes(larger.begin(), larger.end(), support.begin(), support.end()))
      return false;
  }
  return true;
}

}  // namespace ctx
