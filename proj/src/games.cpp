#include "ctx/games.hpp"

#include <omp.h>

namespace ctx {

namespace {

const MeasurementId kDie = "*";

void require_dichotomic_target(const Scenario& target) {
  if (target.measurements != MeasurementSet{kDie} || target.outcomes_of(kDie).size() != 2)
    fail(ErrorCode::NotDichotomic, "experiment target is not dice(2)");
}

}  // namespace

Experiment make_experiment(ProbabilisticProcedure procedure) {
  const Scenario& t = procedure.target();
  if (t.measurements != MeasurementSet{kDie} ||
      t != dice_scenario(static_cast<int>(t.outcomes_of(kDie).size())))
    fail(ErrorCode::ScenarioMismatch, "experiment target is not a dice scenario");
  return Experiment{std::move(procedure)};
}

DeterministicProcedure indicator_procedure(const Scenario& scenario,
                                           const MeasurementSet& context,
                                           const std::set<Assignment>& accept) {
  MeasurementSet sigma = normalize_set(context);
  for (const auto& a : accept)
    if (a.domain() != sigma)
      fail(ErrorCode::NotSubdomain, "accept element not on domain " + describe_set(sigma));
  std::map<Assignment, std::string> table;
  for_each_assignment(scenario, sigma, [&](const Assignment& a) {
    table[a] = accept.count(a) ? "1" : "0";
    return true;
  });
  return make_deterministic_procedure(scenario, dice_scenario(2), {{kDie, sigma}},
                                      {{kDie, std::move(table)}});
}

PossibilisticPredicate make_predicate(const Scenario& scenario,
                                      std::vector<PredicateComponent> components) {
  if (components.empty()) fail(ErrorCode::EmptySupport, "predicate has no components");
  for (auto& comp : components) {
    comp.context = normalize_set(comp.context);
    if (!is_context(scenario, comp.context))
      fail(ErrorCode::NotAContext, describe_set(comp.context) + " is not a context");
    std::set<Assignment> checked;
    for (const auto& a : comp.accept) {
      if (a.domain() != comp.context)
        fail(ErrorCode::NotSubdomain,
             "accept element not on domain " + describe_set(comp.context));
      for (const auto& [id, o] : a.entries) scenario.outcome_index(id, o);
      checked.insert(a);
    }
    comp.accept = std::move(checked);
  }
  return PossibilisticPredicate{scenario, std::move(components)};
}

Rational model_value(const Experiment& experiment, const EmpiricalModel& model) {
  require_dichotomic_target(experiment.target());
  EmpiricalModel pushed = pushforward(experiment.procedure, model);
  Assignment win{{{kDie, "1"}}};
  return pushed.dists.at({kDie}).weight_of(win);
}

ClassicalValue classical_value(const Experiment& experiment, std::uint64_t budget,
                               bool parallel) {
  require_dichotomic_target(experiment.target());
  const Scenario& s = experiment.source();
  std::uint64_t total = assignment_count(s, s.measurements, budget);

  // value at a deterministic strategy: total weight of accepting components
  auto value_at = [&](const Assignment& g) {
    Rational v(0);
    for (const auto& [w, f] : experiment.procedure.mixture)
      if (f.alpha.at(kDie).at(restrict_assignment(g, f.pi.at(kDie))) == "1") v += w;
    return v;
  };

  std::uint64_t best_index = 0;
  Rational best = value_at(assignment_at(s, s.measurements, 0));
  if (parallel) {
    int threads = omp_get_max_threads();
    std::vector<std::pair<Rational, std::uint64_t>> local(threads, {best, 0});
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 1; i < static_cast<std::int64_t>(total); ++i) {
      Rational v = value_at(assignment_at(s, s.measurements, static_cast<std::uint64_t>(i)));
      auto& b = local[omp_get_thread_num()];
      if (v > b.first) b = {v, static_cast<std::uint64_t>(i)};
    }
    for (const auto& [v, i] : local)
      if (v > best || (v == best && i < best_index)) { best = v; best_index = i; }
  } else {
    for (std::uint64_t i = 1; i < total; ++i) {
      Rational v = value_at(assignment_at(s, s.measurements, i));
      if (v > best) { best = v; best_index = i; }
    }
  }
  return ClassicalValue{best, assignment_at(s, s.measurements, best_index)};
}

bool satisfies(const PossibilisticModel& model, const PossibilisticPredicate& predicate) {
  if (model.scenario != predicate.scenario)
    fail(ErrorCode::ScenarioMismatch, "model and predicate scenarios differ");
  for (const auto& comp : predicate.components) {
    for (const auto& t : marginal_support(model, comp.context))
      if (!comp.accept.count(t)) return false;
  }
  return true;
}

bool satisfies(const EmpiricalModel& model, const PossibilisticPredicate& predicate) {
  return satisfies(possibilistic_collapse(model), predicate);
}

PossibilisticPredicate predicate_from_model(const PossibilisticModel& model) {
  std::vector<PredicateComponent> components;
  for (const auto& [facet, support] : model.supports)
    components.push_back({facet, support});
  return PossibilisticPredicate{model.scenario, std::move(components)};
}

std::optional<PossibilisticModel> canonical_model_of_predicate(
    const PossibilisticPredicate& predicate, std::uint64_t budget) {
  const Scenario& s = predicate.scenario;
  assignment_count(s, s.measurements, budget);

  // per-facet candidates: assignments passing every applicable accept set
  std::map<MeasurementSet, std::set<Assignment>> cands;
  for (const auto& facet : s.facets) {
    std::set<Assignment> c;
    for_each_assignment(s, facet, [&](const Assignment& t) {
      for (const auto& comp : predicate.components)
        if (is_subset(comp.context, facet) &&
            !comp.accept.count(restrict_assignment(t, comp.context)))
          return true;
      c.insert(t);
      return true;
    });
    if (c.empty()) return std::nullopt;
    cands[facet] = std::move(c);
  }

  // arc consistency: drop assignments with no compatible partner elsewhere
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [facet, c] : cands) {
      for (const auto& [other, oc] : cands) {
        if (other == facet) continue;
        MeasurementSet common = set_intersection(facet, other);
        if (common.empty()) continue;
        for (auto it = c.begin(); it != c.end();) {
          Assignment r = restrict_assignment(*it, common);
          bool matched = false;
          for (const auto& u : oc)
            if (restrict_assignment(u, common) == r) { matched = true; break; }
          if (matched) ++it;
          else { it = c.erase(it); changed = true; }
        }
        if (c.empty()) return std::nullopt;
      }
    }
  }

  PossibilisticModel model = make_possibilistic_model(s, std::move(cands));
  if (!satisfies(model, predicate))
    fail(ErrorCode::InternalError, "pruned model fails its own predicate");

  // the result must dominate every satisfying deterministic model
  for_each_assignment(s, s.measurements, [&](const Assignment& g) {
    for (const auto& comp : predicate.components)
      if (!comp.accept.count(restrict_assignment(g, comp.context))) return true;
    for (const auto& [facet, support] : model.supports)
      if (!support.count(restrict_assignment(g, facet)))
        fail(ErrorCode::InternalError, "pruned model misses a satisfying assignment");
    return true;
  });
  return model;
}

bool predicate_leq(const PossibilisticPredicate& g, const PossibilisticPredicate& h,
                   std::uint64_t budget) {
  if (g.scenario != h.scenario)
    fail(ErrorCode::ScenarioMismatch, "predicates live on different scenarios");
  auto canonical = canonical_model_of_predicate(g, budget);
  if (!canonical) return true;
  return satisfies(*canonical, h);
}

PossibilisticPredicate ks_predicate(const Scenario& scenario) {
  for (const auto& id : scenario.measurements) {
    const auto& outcomes = scenario.outcomes_of(id);
    if (outcomes.size() != 2 ||
        std::count(outcomes.begin(), outcomes.end(), "0") != 1 ||
        std::count(outcomes.begin(), outcomes.end(), "1") != 1)
      fail(ErrorCode::NotDichotomic,
           "measurement '" + id + "' does not have outcomes 0/1");
  }
  std::vector<PredicateComponent> components;
  for (const auto& facet : scenario.facets) {
    PredicateComponent comp;
    comp.context = facet;
    for_each_assignment(scenario, facet, [&](const Assignment& t) {
      int ones = 0;
      for (const auto& [_, o] : t.entries) ones += o == "1";
      if (ones == 1) comp.accept.insert(t);
      return true;
    });
    components.push_back(std::move(comp));
  }
  return make_predicate(scenario, std::move(components));
}

}  // namespace ctx
