#include "ctx/procedure.hpp"

#include <set>
#include <tuple>

namespace ctx {

MeasurementSet DeterministicProcedure::pi_of(const MeasurementSet& sigma) const {
  MeasurementSet out;
  for (const auto& x : sigma) out = set_union(out, pi.at(x));
  return out;
}

Assignment DeterministicProcedure::translate(const MeasurementSet& sigma,
                                             const Assignment& s) const {
  std::vector<std::pair<MeasurementId, std::string>> entries;
  entries.reserve(sigma.size());
  for (const auto& x : sigma)
    entries.emplace_back(x, alpha.at(x).at(restrict_assignment(s, pi.at(x))));
  Assignment t;
  t.entries = std::move(entries);  // sigma sorted, so entries are sorted
  return t;
}

bool procedure_less(const DeterministicProcedure& a, const DeterministicProcedure& b) {
  return std::tie(a.pi, a.alpha) < std::tie(b.pi, b.alpha);
}

DeterministicProcedure make_deterministic_procedure(
    const Scenario& source, const Scenario& target,
    std::map<MeasurementId, MeasurementSet> pi,
    std::map<MeasurementId, std::map<Assignment, std::string>> alpha) {
  DeterministicProcedure f;
  f.source = source;
  f.target = target;

  for (const auto& x : target.measurements) {
    auto it = pi.find(x);
    if (it == pi.end())
      fail(ErrorCode::IncompleteTable, "no pi entry for target measurement '" + x + "'");
    MeasurementSet u = normalize_set(it->second);
    for (const auto& id : u)
      if (!source.has_measurement(id))
        fail(ErrorCode::UnknownMeasurement, "pi(" + x + ") mentions unknown '" + id + "'");
    f.pi[x] = u;
  }
  for (const auto& [x, _] : pi)
    if (!target.has_measurement(x))
      fail(ErrorCode::UnknownMeasurement, "pi defined on unknown measurement '" + x + "'");

  // simpliciality over the facets of the target suffices: unions are
  // monotone and the source complex is downward closed
  for (const auto& facet : target.facets) {
    MeasurementSet image = f.pi_of(facet);
    if (!is_context(source, image))
      fail(ErrorCode::NotSimplicial, "pi maps facet " + describe_set(facet) +
                                         " to non-context " + describe_set(image));
  }

  for (const auto& x : target.measurements) {
    auto it = alpha.find(x);
    if (it == alpha.end())
      fail(ErrorCode::IncompleteTable, "no alpha table for '" + x + "'");
    const auto& u = f.pi[x];
    const auto& codomain = target.outcomes_of(x);
    std::uint64_t expected = 1;
    for (const auto& id : u) expected *= source.outcomes_of(id).size();
    if (it->second.size() != expected)
      fail(ErrorCode::IncompleteTable,
           "alpha table for '" + x + "' has " + std::to_string(it->second.size()) +
               " rows, expected " + std::to_string(expected));
    // equal sizes + every event present means the keys are exactly Ev(u)
    for_each_assignment(source, u, [&](const Assignment& a) {
      if (!it->second.count(a))
        fail(ErrorCode::IncompleteTable,
             "alpha table for '" + x + "' is not total on " + describe_set(u));
      return true;
    });
    for (const auto& [in, out] : it->second)
      if (std::find(codomain.begin(), codomain.end(), out) == codomain.end())
        fail(ErrorCode::CodomainViolation,
             "'" + out + "' is not an outcome of target measurement '" + x + "'");
    f.alpha[x] = it->second;
  }
  return f;
}

DeterministicProcedure identity_procedure(const Scenario& scenario) {
  std::map<MeasurementId, MeasurementSet> pi;
  std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
  for (const auto& x : scenario.measurements) {
    pi[x] = {x};
    for (const auto& o : scenario.outcomes_of(x))
      alpha[x][Assignment{{{x, o}}}] = o;
  }
  return make_deterministic_procedure(scenario, scenario, std::move(pi), std::move(alpha));
}

ProbabilisticProcedure make_probabilistic_procedure(
    std::vector<std::pair<Rational, DeterministicProcedure>> mixture) {
  if (mixture.empty()) fail(ErrorCode::NotNormalized, "empty mixture");
  Rational total(0);
  for (const auto& [w, f] : mixture) {
    if (w <= 0)
      fail(ErrorCode::NegativeWeight, "mixture weight " + to_string(w) + " is not positive");
    total += w;
    if (f.source != mixture.front().second.source || f.target != mixture.front().second.target)
      fail(ErrorCode::ScenarioMismatch, "mixture components have different endpoints");
  }
  if (total != 1)
    fail(ErrorCode::NotNormalized, "mixture weights sum to " + to_string(total));
  ProbabilisticProcedure p;
  p.mixture = std::move(mixture);
  return p;
}

ProbabilisticProcedure as_probabilistic(const DeterministicProcedure& f) {
  return make_probabilistic_procedure({{Rational(1), f}});
}

EmpiricalModel pushforward(const DeterministicProcedure& f, const EmpiricalModel& model) {
  if (model.scenario != f.source)
    fail(ErrorCode::ScenarioMismatch, "model does not live on the procedure's source");
  std::map<MeasurementSet, ContextDistribution> dists;
  for (const auto& facet : f.target.facets) {
    ContextDistribution out;
    out.context = facet;
    ContextDistribution in = marginal(model, f.pi_of(facet));
    for (const auto& [s, w] : in.weights) out.weights[f.translate(facet, s)] += w;
    dists[facet] = std::move(out);
  }
  return make_empirical_model(f.target, std::move(dists));
}

EmpiricalModel pushforward(const ProbabilisticProcedure& f, const EmpiricalModel& model) {
  std::vector<std::pair<Rational, EmpiricalModel>> parts;
  parts.reserve(f.mixture.size());
  for (const auto& [w, g] : f.mixture) parts.emplace_back(w, pushforward(g, model));
  return convex_combine(parts);
}

PossibilisticModel pushforward(const DeterministicProcedure& f, const PossibilisticModel& model) {
  if (model.scenario != f.source)
    fail(ErrorCode::ScenarioMismatch, "model does not live on the procedure's source");
  std::map<MeasurementSet, std::set<Assignment>> supports;
  for (const auto& facet : f.target.facets) {
    auto in = marginal_support(model, f.pi_of(facet));
    for (const auto& s : in) supports[facet].insert(f.translate(facet, s));
  }
  return make_possibilistic_model(f.target, std::move(supports));
}

PossibilisticModel pushforward(const PossibilisticProcedure& f, const PossibilisticModel& model) {
  std::vector<PossibilisticModel> parts;
  parts.reserve(f.components.size());
  for (const auto& g : f.components) parts.push_back(pushforward(g, model));
  return possibilistic_join(parts);
}

DeterministicProcedure compose(const DeterministicProcedure& f, const DeterministicProcedure& g) {
  if (g.target != f.source)
    fail(ErrorCode::ScenarioMismatch, "composition endpoints do not match");
  std::map<MeasurementId, MeasurementSet> pi;
  std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
  for (const auto& v : f.target.measurements) {
    const MeasurementSet& mid = f.pi.at(v);
    MeasurementSet u = g.pi_of(mid);
    pi[v] = u;
    std::map<Assignment, std::string> table;
    for_each_assignment(g.source, u, [&](const Assignment& s) {
      table[s] = f.alpha.at(v).at(g.translate(mid, s));
      return true;
    });
    alpha[v] = std::move(table);
  }
  return make_deterministic_procedure(g.source, f.target, std::move(pi), std::move(alpha));
}

ProbabilisticProcedure compose(const ProbabilisticProcedure& f, const ProbabilisticProcedure& g) {
  std::vector<std::pair<Rational, DeterministicProcedure>> mixture;
  for (const auto& [r, fi] : f.mixture)
    for (const auto& [s, gj] : g.mixture)
      mixture.emplace_back(r * s, compose(fi, gj));
  return canonicalize(make_probabilistic_procedure(std::move(mixture)));
}

std::vector<MeasurementSet> enumerate_contexts(const Scenario& scenario) {
  std::set<MeasurementSet> seen;
  for (const auto& facet : scenario.facets) {
    const std::size_t n = facet.size();
    if (n > 24) fail(ErrorCode::BudgetExceeded, "facet too large to enumerate contexts");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      MeasurementSet u;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::uint64_t{1} << i)) u.push_back(facet[i]);
      seen.insert(std::move(u));
    }
  }
  std::vector<MeasurementSet> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const MeasurementSet& a, const MeasurementSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

MeasurementSet essential_measurements(const Scenario& scenario, const MeasurementSet& domain,
                                      const std::map<Assignment, std::string>& table) {
  MeasurementSet u = normalize_set(domain);
  std::vector<std::size_t> sizes;
  std::size_t total = 1;
  for (const auto& id : u) {
    sizes.push_back(scenario.outcomes_of(id).size());
    total *= sizes.back();
  }
  // values in enumeration order (last measurement varies fastest)
  std::vector<const std::string*> values;
  values.reserve(total);
  for_each_assignment(scenario, u, [&](const Assignment& a) {
    auto it = table.find(a);
    if (it == table.end())
      fail(ErrorCode::IncompleteTable, "table not total on " + describe_set(u));
    values.push_back(&it->second);
    return true;
  });

  MeasurementSet essential;
  std::size_t stride = total;
  for (std::size_t i = 0; i < u.size(); ++i) {
    stride /= sizes[i];
    bool depends = false;
    for (std::size_t idx = 0; idx < total && !depends; ++idx) {
      if ((idx / stride) % sizes[i] != 0) continue;
      for (std::size_t d = 1; d < sizes[i]; ++d)
        if (*values[idx] != *values[idx + d * stride]) { depends = true; break; }
    }
    if (depends) essential.push_back(u[i]);
  }
  return essential;
}

MeasurementSet least_subset(const Scenario& source,
                            const std::map<Assignment, std::string>& table,
                            std::uint64_t budget) {
  assignment_count(source, source.measurements, budget);
  return essential_measurements(source, source.measurements, table);
}

DeterministicProcedure canonicalize(const DeterministicProcedure& f) {
  DeterministicProcedure out;
  out.source = f.source;
  out.target = f.target;
  for (const auto& x : f.target.measurements) {
    const MeasurementSet& u = f.pi.at(x);
    MeasurementSet e = essential_measurements(f.source, u, f.alpha.at(x));
    out.pi[x] = e;
    std::map<Assignment, std::string> table;
    for (const auto& [in, o] : f.alpha.at(x)) table[restrict_assignment(in, e)] = o;
    out.alpha[x] = std::move(table);
  }
  return out;
}

ProbabilisticProcedure canonicalize(const ProbabilisticProcedure& f) {
  std::map<DeterministicProcedure, Rational,
           bool (*)(const DeterministicProcedure&, const DeterministicProcedure&)>
      merged(procedure_less);
  for (const auto& [w, g] : f.mixture) merged[canonicalize(g)] += w;
  std::vector<std::pair<Rational, DeterministicProcedure>> mixture;
  for (const auto& [g, w] : merged) mixture.emplace_back(w, g);
  return make_probabilistic_procedure(std::move(mixture));
}

bool is_simulation(const ProbabilisticProcedure& f, const EmpiricalModel& e,
                   const EmpiricalModel& d) {
  if (d.scenario != f.target())
    fail(ErrorCode::ScenarioMismatch, "target model does not live on the procedure's target");
  return pushforward(f, e) == d;
}

bool is_simulation(const PossibilisticProcedure& f, const PossibilisticModel& e,
                   const PossibilisticModel& d, SimulationMode mode) {
  if (d.scenario != f.target())
    fail(ErrorCode::ScenarioMismatch, "target model does not live on the procedure's target");
  PossibilisticModel pushed = pushforward(f, e);
  if (mode == SimulationMode::Weak) return possibilistic_leq(pushed, d);
  return pushed == d;
}

namespace {

struct MeasurementOption {
  MeasurementSet context;
  std::map<Assignment, std::string> table;
};

std::vector<MeasurementOption> options_for(const Scenario& source, const Scenario& target,
                                           const MeasurementId& x, bool canonical_only,
                                           std::uint64_t budget) {
  std::vector<MeasurementOption> options;
  const auto& codomain = target.outcomes_of(x);
  const std::uint64_t k = codomain.size();
  for (const auto& u : enumerate_contexts(source)) {
    std::vector<Assignment> rows = enumerate_assignments(source, u);
    std::uint64_t tables = 1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (tables > budget / k)
        fail(ErrorCode::BudgetExceeded, "table space for pi(" + x + ")=" + describe_set(u) +
                                            " exceeds budget " + std::to_string(budget));
      tables *= k;
    }
    // first row most significant: tables come out in lexicographic row order
    for (std::uint64_t t = 0; t < tables; ++t) {
      std::map<Assignment, std::string> table;
      std::uint64_t rem = t;
      for (std::size_t r = rows.size(); r > 0; --r) {
        table[rows[r - 1]] = codomain[rem % k];
        rem /= k;
      }
      if (canonical_only && essential_measurements(source, u, table) != u) continue;
      options.push_back({u, std::move(table)});
    }
  }
  return options;
}

}  // namespace

std::uint64_t for_each_deterministic_procedure(
    const Scenario& source, const Scenario& target, bool canonical_only,
    std::uint64_t budget, const std::function<bool(const DeterministicProcedure&)>& fn) {
  std::vector<std::vector<MeasurementOption>> options;
  std::uint64_t raw = 1;
  for (const auto& x : target.measurements) {
    options.push_back(options_for(source, target, x, canonical_only, budget));
    if (options.back().empty()) return 0;
    if (raw > budget / options.back().size())
      fail(ErrorCode::BudgetExceeded, "procedure space exceeds budget " + std::to_string(budget));
    raw *= options.back().size();
  }

  const std::size_t n = target.measurements.size();
  std::vector<std::size_t> odometer(n, 0);
  std::uint64_t emitted = 0;
  bool stop = false;
  while (!stop) {
    // facet-wise simpliciality of the combined choice
    bool simplicial = true;
    for (const auto& facet : target.facets) {
      MeasurementSet image;
      for (const auto& x : facet) {
        std::size_t xi = std::lower_bound(target.measurements.begin(),
                                          target.measurements.end(), x) -
                         target.measurements.begin();
        image = set_union(image, options[xi][odometer[xi]].context);
      }
      if (!is_context(source, image)) { simplicial = false; break; }
    }
    if (simplicial) {
      DeterministicProcedure f;
      f.source = source;
      f.target = target;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& opt = options[i][odometer[i]];
        f.pi[target.measurements[i]] = opt.context;
        f.alpha[target.measurements[i]] = opt.table;
      }
      ++emitted;
      if (!fn(f)) return emitted;
    }
    // advance, last measurement fastest
    std::size_t i = n;
    stop = true;
    while (i > 0) {
      --i;
      if (++odometer[i] < options[i].size()) { stop = false; break; }
      odometer[i] = 0;
    }
    if (n == 0) break;  // Zero target: the single empty procedure
  }
  return emitted;
}

std::uint64_t count_deterministic_procedures(const Scenario& source, const Scenario& target,
                                             bool canonical_only, std::uint64_t budget) {
  return for_each_deterministic_procedure(source, target, canonical_only, budget,
                                          [](const DeterministicProcedure&) { return true; });
}

std::vector<DeterministicProcedure> enumerate_deterministic_procedures(
    const Scenario& source, const Scenario& target, bool canonical_only,
    std::uint64_t budget) {
  std::vector<DeterministicProcedure> out;
  for_each_deterministic_procedure(source, target, canonical_only, budget,
                                   [&](const DeterministicProcedure& f) {
                                     out.push_back(f);
                                     return true;
                                   });
  return out;
}

}  // namespace ctx
