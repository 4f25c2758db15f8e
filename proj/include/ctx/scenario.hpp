#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ctx/error.hpp"

namespace ctx {

// Measurement ids and measurement sets are kept sorted lexicographically;
// this is the canonical iteration order everywhere.
using MeasurementId = std::string;
using MeasurementSet = std::vector<MeasurementId>;

MeasurementSet normalize_set(MeasurementSet ids);
bool is_subset(const MeasurementSet& a, const MeasurementSet& b);
MeasurementSet set_union(const MeasurementSet& a, const MeasurementSet& b);
MeasurementSet set_intersection(const MeasurementSet& a, const MeasurementSet& b);
MeasurementSet set_difference(const MeasurementSet& a, const MeasurementSet& b);

// A partial assignment of outcomes: an element of Ev(U) where U is the domain.
struct Assignment {
  // sorted by measurement id; keys are exactly the domain
  std::vector<std::pair<MeasurementId, std::string>> entries;

  Assignment() = default;
  explicit Assignment(std::vector<std::pair<MeasurementId, std::string>> raw);
  Assignment(std::initializer_list<std::pair<MeasurementId, std::string>> raw)
      : Assignment(std::vector<std::pair<MeasurementId, std::string>>(raw)) {}

  MeasurementSet domain() const;
  bool has(const MeasurementId& id) const;
  const std::string& at(const MeasurementId& id) const;

  auto operator<=>(const Assignment&) const = default;
};

struct Scenario {
  MeasurementSet measurements;                                   // sorted
  std::map<MeasurementId, std::vector<std::string>> outcomes;    // declared order kept
  std::vector<MeasurementSet> facets;                            // antichain, sorted

  bool operator==(const Scenario&) const = default;

  bool has_measurement(const MeasurementId& id) const;
  const std::vector<std::string>& outcomes_of(const MeasurementId& id) const;
  int outcome_index(const MeasurementId& id, const std::string& outcome) const;
};

// Validates and canonicalizes raw scenario data. Facets subsumed by a larger
// facet are dropped silently.
Scenario make_scenario(
    const std::vector<std::pair<MeasurementId, std::vector<std::string>>>& measurements,
    const std::vector<MeasurementSet>& maximal_contexts);

// The scenario with no measurements and the single face {}.
Scenario zero_scenario();

// One measurement "*" with outcomes "0".."n-1".
Scenario dice_scenario(int n);

bool is_context(const Scenario& scenario, const MeasurementSet& ids);

// Number of assignments in Ev(U); throws BudgetExceeded when above `budget`.
std::uint64_t assignment_count(const Scenario& scenario, const MeasurementSet& ids,
                               std::uint64_t budget);

// All of Ev(U) in lexicographic order by (measurement id, outcome index).
std::vector<Assignment> enumerate_assignments(const Scenario& scenario,
                                              const MeasurementSet& ids);

// Streaming variant of the above; stops early when fn returns false.
void for_each_assignment(const Scenario& scenario, const MeasurementSet& ids,
                         const std::function<bool(const Assignment&)>& fn);

// The assignment at position `index` in enumeration order.
Assignment assignment_at(const Scenario& scenario, const MeasurementSet& ids,
                         std::uint64_t index);

Assignment restrict_assignment(const Assignment& assignment, const MeasurementSet& subdomain);

// The scenario T|_sigma: measurements sigma, inherited outcomes, single facet.
Scenario restrict_scenario(const Scenario& scenario, const MeasurementSet& sigma);

std::string describe_set(const MeasurementSet& ids);

}  // namespace ctx
