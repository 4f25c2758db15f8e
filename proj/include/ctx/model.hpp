#pragma once

#include <map>
#include <set>
#include <vector>

#include "ctx/rational.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

// Exact distribution over Ev(context), stored sparsely: absent assignments
// have weight zero.
struct ContextDistribution {
  MeasurementSet context;
  std::map<Assignment, Rational> weights;

  Rational weight_of(const Assignment& a) const;
  bool operator==(const ContextDistribution&) const = default;
};

struct EmpiricalModel {
  Scenario scenario;
  std::map<MeasurementSet, ContextDistribution> dists;  // one per facet

  bool operator==(const EmpiricalModel&) const = default;
};

struct PossibilisticModel {
  Scenario scenario;
  std::map<MeasurementSet, std::set<Assignment>> supports;  // one per facet, non-empty

  bool operator==(const PossibilisticModel&) const = default;
};

// Marginalizes a distribution on a context to a sub-context.
ContextDistribution marginalize(const ContextDistribution& dist, const MeasurementSet& sub);

// Restriction of a support set, elementwise.
std::set<Assignment> restrict_support(const std::set<Assignment>& support,
                                      const MeasurementSet& sub);

// Validates normalization, outcome membership, and pairwise facet
// compatibility (exact rational equality of marginals on intersections).
EmpiricalModel make_empirical_model(const Scenario& scenario,
                                    std::map<MeasurementSet, ContextDistribution> dists);

PossibilisticModel make_possibilistic_model(const Scenario& scenario,
                                            std::map<MeasurementSet, std::set<Assignment>> supports);

// Distribution of the model at any context tau (via a facet containing it).
ContextDistribution marginal(const EmpiricalModel& model, const MeasurementSet& tau);

// Support of a possibilistic model at any context tau.
std::set<Assignment> marginal_support(const PossibilisticModel& model, const MeasurementSet& tau);

// The delta model of a global assignment.
EmpiricalModel deterministic_model(const Scenario& scenario, const Assignment& global);

EmpiricalModel convex_combine(const std::vector<std::pair<Rational, EmpiricalModel>>& mixture);

PossibilisticModel possibilistic_collapse(const EmpiricalModel& model);

PossibilisticModel possibilistic_join(const std::vector<PossibilisticModel>& models);

bool possibilistic_leq(const PossibilisticModel& d, const PossibilisticModel& e);

}  // namespace ctx
