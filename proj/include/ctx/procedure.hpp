#pragma once

#include <cstdint>
#include <functional>

#include "ctx/contextuality.hpp"
#include "ctx/model.hpp"

namespace ctx {

// A pair (pi, alpha): pi assigns each target measurement a context of the
// source; alpha translates joint source outcomes to target outcomes via
// explicit lookup tables.
struct DeterministicProcedure {
  Scenario source;
  Scenario target;
  std::map<MeasurementId, MeasurementSet> pi;
  std::map<MeasurementId, std::map<Assignment, std::string>> alpha;

  bool operator==(const DeterministicProcedure&) const = default;

  // union of pi over a set of target measurements
  MeasurementSet pi_of(const MeasurementSet& sigma) const;

  // alpha_sigma: s must live on a superset of pi_of(sigma)
  Assignment translate(const MeasurementSet& sigma, const Assignment& s) const;
};

// Orders by (pi, alpha); endpoints are assumed equal.
bool procedure_less(const DeterministicProcedure& a, const DeterministicProcedure& b);

struct ProbabilisticProcedure {
  // strictly positive weights summing to 1, shared endpoints
  std::vector<std::pair<Rational, DeterministicProcedure>> mixture;

  const Scenario& source() const { return mixture.front().second.source; }
  const Scenario& target() const { return mixture.front().second.target; }

  bool operator==(const ProbabilisticProcedure&) const = default;
};

struct PossibilisticProcedure {
  std::vector<DeterministicProcedure> components;  // non-empty, shared endpoints

  const Scenario& source() const { return components.front().source; }
  const Scenario& target() const { return components.front().target; }
};

DeterministicProcedure make_deterministic_procedure(
    const Scenario& source, const Scenario& target,
    std::map<MeasurementId, MeasurementSet> pi,
    std::map<MeasurementId, std::map<Assignment, std::string>> alpha);

DeterministicProcedure identity_procedure(const Scenario& scenario);

ProbabilisticProcedure make_probabilistic_procedure(
    std::vector<std::pair<Rational, DeterministicProcedure>> mixture);

ProbabilisticProcedure as_probabilistic(const DeterministicProcedure& f);

// EMP(f): pushes each facet distribution forward along alpha.
EmpiricalModel pushforward(const DeterministicProcedure& f, const EmpiricalModel& model);
EmpiricalModel pushforward(const ProbabilisticProcedure& f, const EmpiricalModel& model);

// EMP_B(f): image of supports, union over components.
PossibilisticModel pushforward(const DeterministicProcedure& f, const PossibilisticModel& model);
PossibilisticModel pushforward(const PossibilisticProcedure& f, const PossibilisticModel& model);

// f after g: for g: S -> T and f: T -> U, compose(f, g): S -> U.
DeterministicProcedure compose(const DeterministicProcedure& f, const DeterministicProcedure& g);
// bilinear extension to mixtures
ProbabilisticProcedure compose(const ProbabilisticProcedure& f, const ProbabilisticProcedure& g);

// All contexts of the scenario, ordered by (size, lexicographic).
std::vector<MeasurementSet> enumerate_contexts(const Scenario& scenario);

// The measurements of `domain` the table genuinely depends on. The table must
// be total on Ev(domain).
MeasurementSet essential_measurements(const Scenario& scenario, const MeasurementSet& domain,
                                      const std::map<Assignment, std::string>& table);

// Least U such that a total table on Ev(X_S) factors through Ev(U).
MeasurementSet least_subset(const Scenario& source,
                            const std::map<Assignment, std::string>& table,
                            std::uint64_t budget = kDefaultBudget);

// Shrinks each pi(x) to the least subset its alpha table depends on.
DeterministicProcedure canonicalize(const DeterministicProcedure& f);
// Also deduplicates components, merging weights; components sorted.
ProbabilisticProcedure canonicalize(const ProbabilisticProcedure& f);

enum class SimulationMode { Probabilistic, Possibilistic, Weak };

bool is_simulation(const ProbabilisticProcedure& f, const EmpiricalModel& e,
                   const EmpiricalModel& d);
bool is_simulation(const PossibilisticProcedure& f, const PossibilisticModel& e,
                   const PossibilisticModel& d, SimulationMode mode);

// Streams deterministic procedures source -> target in canonical order.
// With canonical_only, only least-subset representatives are emitted.
// Returns the number of procedures emitted.
std::uint64_t for_each_deterministic_procedure(
    const Scenario& source, const Scenario& target, bool canonical_only,
    std::uint64_t budget, const std::function<bool(const DeterministicProcedure&)>& fn);

std::uint64_t count_deterministic_procedures(const Scenario& source, const Scenario& target,
                                             bool canonical_only,
                                             std::uint64_t budget = kDefaultBudget);

std::vector<DeterministicProcedure> enumerate_deterministic_procedures(
    const Scenario& source, const Scenario& target, bool canonical_only,
    std::uint64_t budget = kDefaultBudget);

}  // namespace ctx
