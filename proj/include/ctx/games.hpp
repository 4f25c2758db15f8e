#pragma once

#include <optional>

#include "ctx/procedure.hpp"

namespace ctx {

// A probabilistic procedure into dice(n); for n = 2 this is a game whose
// winning event is the outcome "1".
struct Experiment {
  ProbabilisticProcedure procedure;

  const Scenario& source() const { return procedure.source(); }
  const Scenario& target() const { return procedure.target(); }
};

struct PredicateComponent {
  MeasurementSet context;
  std::set<Assignment> accept;

  bool operator==(const PredicateComponent&) const = default;
};

// Boolean mixture of deterministic predicates (context, accept set).
struct PossibilisticPredicate {
  Scenario scenario;
  std::vector<PredicateComponent> components;

  bool operator==(const PossibilisticPredicate&) const = default;
};

Experiment make_experiment(ProbabilisticProcedure procedure);

// The deterministic predicate (context, accept) as a procedure into dice(2):
// outcome "1" exactly on the accept set.
DeterministicProcedure indicator_procedure(const Scenario& scenario,
                                           const MeasurementSet& context,
                                           const std::set<Assignment>& accept);

PossibilisticPredicate make_predicate(const Scenario& scenario,
                                      std::vector<PredicateComponent> components);

// Winning probability of a dichotomic experiment on a model.
Rational model_value(const Experiment& experiment, const EmpiricalModel& model);

struct ClassicalValue {
  Rational value;
  Assignment strategy;  // lexicographically first maximizer
};

// Max over deterministic strategies; OpenMP-parallel over global assignments
// unless `parallel` is cleared. The serial path is the reference oracle.
ClassicalValue classical_value(const Experiment& experiment,
                               std::uint64_t budget = kDefaultBudget, bool parallel = true);

bool satisfies(const PossibilisticModel& model, const PossibilisticPredicate& predicate);
// collapses first
bool satisfies(const EmpiricalModel& model, const PossibilisticPredicate& predicate);

// g(e): one component per facet with accept = the model's support there.
PossibilisticPredicate predicate_from_model(const PossibilisticModel& model);

// The greatest satisfying possibilistic model, by arc-consistency pruning of
// per-facet candidate sets; nullopt when the predicate is unsatisfiable.
std::optional<PossibilisticModel> canonical_model_of_predicate(
    const PossibilisticPredicate& predicate, std::uint64_t budget = kDefaultBudget);

// g <= h iff every model satisfying g satisfies h.
bool predicate_leq(const PossibilisticPredicate& g, const PossibilisticPredicate& h,
                   std::uint64_t budget = kDefaultBudget);

// Accepts per facet exactly the assignments taking value "1" once.
PossibilisticPredicate ks_predicate(const Scenario& scenario);

}  // namespace ctx
