#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctx/rational.hpp"

namespace ctx {

// Equality-form system: callers add slacks themselves if they need
// inequalities. Variables listed in `nonneg` are constrained >= 0; the rest
// are free.
struct LinearSystem {
  std::vector<std::string> variables;  // ordered, unique
  struct Equality {
    std::map<std::string, Rational> coeffs;
    Rational rhs;
  };
  std::vector<Equality> equalities;
  std::set<std::string> nonneg;
};

using SolutionPoint = std::map<std::string, Rational>;

// Exact phase-I simplex with Bland's anti-cycling rule. Returns a point
// satisfying every equality and sign constraint exactly, or nullopt when the
// system is infeasible. Deterministic given input order.
std::optional<SolutionPoint> solve_feasibility(const LinearSystem& system);

// Exact Gaussian elimination, sign constraints ignored. Free variables are
// set to 0. Returns nullopt when the equalities are inconsistent.
std::optional<SolutionPoint> solve_linear_system(const LinearSystem& system);

}  // namespace ctx
