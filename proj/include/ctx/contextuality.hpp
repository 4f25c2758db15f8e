#pragma once

#include <cstdint>
#include <optional>

#include "ctx/model.hpp"

namespace ctx {

// Enumeration ceiling on |Ev(X_S)|; exceeding it raises BudgetExceeded.
constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

// Global assignments consistent with a possibilistic model's supports.
struct GlobalSupport {
  Scenario scenario;
  std::set<Assignment> assignments;
};

struct NonContextualityResult {
  bool noncontextual = false;
  std::map<Assignment, Rational> weights;  // distribution over global assignments
};

// Lexicographically first (facet, support element) with no global extension.
struct LogicalWitness {
  MeasurementSet facet;
  Assignment assignment;
};

struct HierarchyReport {
  bool probabilistically_contextual = false;
  bool logically_contextual = false;
  bool strongly_contextual = false;
  std::optional<std::map<Assignment, Rational>> noncontextual_witness;
  std::optional<LogicalWitness> logical_witness;
};

// LP over d(s) >= 0 for global assignments s: marginals must reproduce the
// model exactly. The returned weights, when present, do so by construction.
NonContextualityResult is_noncontextual(const EmpiricalModel& model,
                                        std::uint64_t budget = kDefaultBudget);

// Backtracking search with per-facet pruning.
GlobalSupport global_support(const PossibilisticModel& model,
                             std::uint64_t budget = kDefaultBudget);

// Filter over all of Ev(X_S); the independent oracle for global_support.
// OpenMP-parallel when `parallel` is set; results are merged deterministically.
GlobalSupport global_support_bruteforce(const PossibilisticModel& model,
                                        std::uint64_t budget = kDefaultBudget,
                                        bool parallel = false);

HierarchyReport classify(const EmpiricalModel& model, std::uint64_t budget = kDefaultBudget);

// Signed weights summing to 1 whose deterministic mixture equals the model;
// verified by substitution before returning.
std::map<Assignment, Rational> affine_decomposition(const EmpiricalModel& model,
                                                    std::uint64_t budget = kDefaultBudget);

}  // namespace ctx
