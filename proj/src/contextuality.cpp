#include "ctx/contextuality.hpp"

#include <omp.h>

#include <sstream>

#include "ctx/exactlp.hpp"

namespace ctx {

namespace {

std::string facet_assignment_key(const MeasurementSet& facet, const Assignment& t) {
  std::ostringstream key;
  key << describe_set(facet) << "=";
  for (const auto& [id, o] : t.entries) key << id << ":" << o << ";";
  return key.str();
}

// One variable per global assignment (canonical order); one equality per
// (facet, local assignment) forcing the marginal to match the model.
LinearSystem marginal_system(const EmpiricalModel& model, std::vector<Assignment>& globals,
                             std::uint64_t budget) {
  const Scenario& s = model.scenario;
  assignment_count(s, s.measurements, budget);
  globals = enumerate_assignments(s, s.measurements);

  LinearSystem sys;
  std::map<std::string, std::size_t> eq_index;
  for (const auto& facet : s.facets) {
    for (const auto& t : enumerate_assignments(s, facet)) {
      eq_index[facet_assignment_key(facet, t)] = sys.equalities.size();
      sys.equalities.push_back({{}, model.dists.at(facet).weight_of(t)});
    }
  }
  for (std::size_t i = 0; i < globals.size(); ++i) {
    std::string var = "w" + std::to_string(i);
    sys.variables.push_back(var);
    for (const auto& facet : s.facets) {
      Assignment t = restrict_assignment(globals[i], facet);
      sys.equalities[eq_index.at(facet_assignment_key(facet, t))].coeffs[var] += 1;
    }
  }
  return sys;
}

bool consistent_with_supports(const PossibilisticModel& model, const Assignment& partial) {
  MeasurementSet dom = partial.domain();
  for (const auto& [facet, support] : model.supports) {
    MeasurementSet common = set_intersection(facet, dom);
    if (common.empty()) continue;
    Assignment fixed_part = restrict_assignment(partial, common);
    bool extendable = false;
    for (const auto& u : support)
      if (restrict_assignment(u, common) == fixed_part) { extendable = true; break; }
    if (!extendable) return false;
  }
  return true;
}

}  // namespace

NonContextualityResult is_noncontextual(const EmpiricalModel& model, std::uint64_t budget) {
  std::vector<Assignment> globals;
  LinearSystem sys = marginal_system(model, globals, budget);
  for (const auto& v : sys.variables) sys.nonneg.insert(v);
  auto point = solve_feasibility(sys);
  NonContextualityResult result;
  if (!point) return result;
  result.noncontextual = true;
  for (std::size_t i = 0; i < globals.size(); ++i) {
    const Rational& w = point->at("w" + std::to_string(i));
    if (w != 0) result.weights[globals[i]] = w;
  }
  return result;
}

GlobalSupport global_support(const PossibilisticModel& model, std::uint64_t budget) {
  const Scenario& s = model.scenario;
  assignment_count(s, s.measurements, budget);

  GlobalSupport out;
  out.scenario = s;

  // depth-first over measurements in canonical order; a partial assignment is
  // pruned as soon as some facet's support cannot extend it
  std::vector<std::pair<MeasurementId, std::string>> stack;
  const std::size_t n = s.measurements.size();
  std::function<void(std::size_t)> recurse = [&](std::size_t depth) {
    Assignment partial;
    partial.entries = stack;
    if (!consistent_with_supports(model, partial)) return;
    if (depth == n) {
      out.assignments.insert(partial);
      return;
    }
    const MeasurementId& id = s.measurements[depth];
    for (const auto& outcome : s.outcomes_of(id)) {
      stack.emplace_back(id, outcome);
      recurse(depth + 1);
      stack.pop_back();
    }
  };
  recurse(0);
  return out;
}

GlobalSupport global_support_bruteforce(const PossibilisticModel& model, std::uint64_t budget,
                                        bool parallel) {
  const Scenario& s = model.scenario;
  std::uint64_t total = assignment_count(s, s.measurements, budget);

  GlobalSupport out;
  out.scenario = s;
  if (parallel) {
    int threads = omp_get_max_threads();
    std::vector<std::vector<Assignment>> hits(threads);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
      Assignment g = assignment_at(s, s.measurements, static_cast<std::uint64_t>(i));
      if (consistent_with_supports(model, g))
        hits[omp_get_thread_num()].push_back(g);
    }
    for (const auto& part : hits) out.assignments.insert(part.begin(), part.end());
  } else {
    for (std::uint64_t i = 0; i < total; ++i) {
      Assignment g = assignment_at(s, s.measurements, i);
      if (consistent_with_supports(model, g)) out.assignments.insert(g);
    }
  }
  return out;
}

HierarchyReport classify(const EmpiricalModel& model, std::uint64_t budget) {
  HierarchyReport report;
  PossibilisticModel collapse = possibilistic_collapse(model);
  GlobalSupport support = global_support(collapse, budget);

  report.strongly_contextual = support.assignments.empty();

  // logical: some support element with no extension in the global support
  for (const auto& [facet, local_support] : collapse.supports) {
    std::set<Assignment> covered;
    for (const auto& g : support.assignments) covered.insert(restrict_assignment(g, facet));
    for (const auto& t : local_support) {
      if (!covered.count(t)) {
        report.logically_contextual = true;
        if (!report.logical_witness) report.logical_witness = LogicalWitness{facet, t};
        break;
      }
    }
    if (report.logical_witness) break;
  }

  if (report.logically_contextual) {
    report.probabilistically_contextual = true;
  } else {
    NonContextualityResult nc = is_noncontextual(model, budget);
    report.probabilistically_contextual = !nc.noncontextual;
    if (nc.noncontextual) report.noncontextual_witness = nc.weights;
  }
  return report;
}

std::map<Assignment, Rational> affine_decomposition(const EmpiricalModel& model,
                                                    std::uint64_t budget) {
  std::vector<Assignment> globals;
  LinearSystem sys = marginal_system(model, globals, budget);
  auto point = solve_linear_system(sys);
  if (!point)
    fail(ErrorCode::InternalError, "affine decomposition system unsolvable");

  std::map<Assignment, Rational> weights;
  Rational total(0);
  for (std::size_t i = 0; i < globals.size(); ++i) {
    const Rational& w = point->at("w" + std::to_string(i));
    total += w;
    if (w != 0) weights[globals[i]] = w;
  }
  if (total != 1)
    fail(ErrorCode::InternalError, "affine weights sum to " + to_string(total));

  // substitution check: the signed mixture must reproduce every facet exactly
  for (const auto& [facet, dist] : model.dists) {
    std::map<Assignment, Rational> mixed;
    for (const auto& [g, w] : weights) mixed[restrict_assignment(g, facet)] += w;
    for (const auto& t : enumerate_assignments(model.scenario, facet)) {
      Rational got = mixed.count(t) ? mixed.at(t) : Rational(0);
      if (got != dist.weight_of(t))
        fail(ErrorCode::InternalError, "affine decomposition fails substitution check");
    }
  }
  return weights;
}

}  // namespace ctx
