#pragma once

#include "ctx/games.hpp"

namespace ctx {

// An outcome of [S,T] at a target measurement x: a subset U of the source
// measurements together with a total table Ev_S(U) -> O_{T,x}.
struct HomOutcome {
  MeasurementSet subset;
  std::map<Assignment, std::string> table;

  bool operator==(const HomOutcome&) const = default;
};

// Canonical label "U=a,b|table=00>0;01>1;...": rows in assignment enumeration
// order, inputs as concatenated outcome labels over U.
std::string hom_outcome_label(const Scenario& source, const HomOutcome& outcome);

constexpr std::uint64_t kDefaultHomCeiling = 1'000'000;

// [S,T]: measurements and contexts of T, outcomes the HomOutcome values,
// with the predicate g_{S,T} accepting families whose subsets union to a
// context of S.
struct HomScenario {
  Scenario source;
  Scenario target;
  Scenario base;
  PossibilisticPredicate predicate;
  std::map<MeasurementId, std::vector<HomOutcome>> outcome_values;  // label order

  const HomOutcome& decode(const MeasurementId& x, const std::string& label) const;

 private:
  std::map<MeasurementId, std::map<std::string, std::size_t>> label_index_;
  friend HomScenario hom_scenario(const Scenario&, const Scenario&, std::uint64_t,
                                  std::uint64_t);
};

HomScenario hom_scenario(const Scenario& source, const Scenario& target,
                         std::uint64_t outcome_ceiling = kDefaultHomCeiling,
                         std::uint64_t budget = kDefaultBudget);

// The bijection between deterministic procedures S -> T and global
// assignments of [S,T] whose delta model satisfies g_{S,T}.
Assignment procedure_to_assignment(const HomScenario& hom, const DeterministicProcedure& f);
// Raises NotSimplicial exactly when delta_s violates g_{S,T}.
DeterministicProcedure assignment_to_procedure(const HomScenario& hom, const Assignment& s);

// Sum of r_i delta_{s_i}; re-verified to satisfy g_{S,T} and be non-contextual.
EmpiricalModel procedure_to_model(const HomScenario& hom, const ProbabilisticProcedure& f,
                                  std::uint64_t budget = kDefaultBudget);

// F tabulated on the global assignments of the source, per Theorem 4.7's
// reduction of convex functions EMP(S) -> EMP(T) to their values at Ev(X_S).
struct RealizabilityQuery {
  Scenario source;
  Scenario target;
  std::map<Assignment, EmpiricalModel> F;
};

struct RealizabilityResult {
  bool realizable = false;
  std::optional<ProbabilisticProcedure> witness;
};

// Exact LP over canonical deterministic procedures; a returned witness is
// re-verified by pushforward on every delta_s.
RealizabilityResult realizable(const RealizabilityQuery& query,
                               std::uint64_t budget = kDefaultBudget);

// A model is contextual iff no procedure Zero -> S realizes it.
bool contextual_via_realizability(const EmpiricalModel& model,
                                  std::uint64_t budget = kDefaultBudget);

// A scenario with a satisfiable structure predicate, stored with the
// canonical possibilistic model inducing it.
struct ScenarioWithPredicate {
  Scenario scenario;
  PossibilisticPredicate predicate;
  PossibilisticModel canonical;
};

ScenarioWithPredicate make_scenario_with_predicate(const Scenario& scenario,
                                                   const PossibilisticPredicate& predicate,
                                                   std::uint64_t budget = kDefaultBudget);

// predicate accepting everything, facet by facet
ScenarioWithPredicate with_trivial_predicate(const Scenario& scenario,
                                             std::uint64_t budget = kDefaultBudget);

struct DecoratedHom {
  HomScenario hom;
  ScenarioWithPredicate decorated;
};

// [<S,g>,<T,h>]: g_{S,T} strengthened so that source-support assignments are
// mapped into target supports.
DecoratedHom hom_with_predicates(const ScenarioWithPredicate& src,
                                 const ScenarioWithPredicate& tgt,
                                 std::uint64_t outcome_ceiling = kDefaultHomCeiling,
                                 std::uint64_t budget = kDefaultBudget);

// f is a morphism <S,g> -> <T,h> iff it pushes g's canonical model below h's.
bool is_predicate_morphism(const DeterministicProcedure& f, const ScenarioWithPredicate& src,
                           const ScenarioWithPredicate& tgt);

// closed-category structure maps (Theorem 5.9 constructions)
DeterministicProcedure unit_iso_i(const Scenario& s,
                                  std::uint64_t ceiling = kDefaultHomCeiling);
DeterministicProcedure identity_name_j(const Scenario& s,
                                       std::uint64_t ceiling = kDefaultHomCeiling);
DeterministicProcedure composition_L(const Scenario& p, const Scenario& s, const Scenario& t,
                                     std::uint64_t ceiling = kDefaultHomCeiling);
// [id,f]: [P,S] -> [P,T] for f: S -> T
DeterministicProcedure hom_post(const Scenario& p, const DeterministicProcedure& f,
                                std::uint64_t ceiling = kDefaultHomCeiling);
// [f,id]: [T,P] -> [S,P] for f: S -> T
DeterministicProcedure hom_pre(const DeterministicProcedure& f, const Scenario& p,
                               std::uint64_t ceiling = kDefaultHomCeiling);

DeterministicProcedure name(const HomScenario& hom, const DeterministicProcedure& f);
DeterministicProcedure unname(const HomScenario& hom, const DeterministicProcedure& named);

}  // namespace ctx
