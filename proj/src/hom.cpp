#include "ctx/hom.hpp"

#include <sstream>

#include "ctx/exactlp.hpp"

namespace ctx {

std::string hom_outcome_label(const Scenario& source, const HomOutcome& outcome) {
  std::ostringstream label;
  label << "U=";
  for (std::size_t i = 0; i < outcome.subset.size(); ++i) {
    if (i) label << ",";
    label << outcome.subset[i];
  }
  label << "|table=";
  bool first = true;
  for_each_assignment(source, outcome.subset, [&](const Assignment& a) {
    if (!first) label << ";";
    first = false;
    for (const auto& [_, o] : a.entries) label << o;
    label << ">" << outcome.table.at(a);
    return true;
  });
  return label.str();
}

const HomOutcome& HomScenario::decode(const MeasurementId& x, const std::string& label) const {
  auto mx = label_index_.find(x);
  if (mx == label_index_.end())
    fail(ErrorCode::UnknownMeasurement, "no hom measurement '" + x + "'");
  auto it = mx->second.find(label);
  if (it == mx->second.end())
    fail(ErrorCode::ParseError, "unknown hom outcome label '" + label + "'");
  return outcome_values.at(x)[it->second];
}

HomScenario hom_scenario(const Scenario& source, const Scenario& target,
                         std::uint64_t outcome_ceiling, std::uint64_t budget) {
  const std::size_t n = source.measurements.size();
  if (n > 24) fail(ErrorCode::BudgetExceeded, "source too large for subset enumeration");

  // all subsets of X_S by (size, lex)
  std::vector<MeasurementSet> subsets;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    MeasurementSet u;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) u.push_back(source.measurements[i]);
    subsets.push_back(std::move(u));
  }
  std::sort(subsets.begin(), subsets.end(), [](const MeasurementSet& a, const MeasurementSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  HomScenario hom;
  hom.source = source;
  hom.target = target;

  std::vector<std::pair<MeasurementId, std::vector<std::string>>> measurements;
  for (const auto& x : target.measurements) {
    const auto& codomain = target.outcomes_of(x);
    const std::uint64_t k = codomain.size();
    std::vector<HomOutcome> values;
    std::vector<std::string> labels;
    for (const auto& u : subsets) {
      std::vector<Assignment> rows = enumerate_assignments(source, u);
      std::uint64_t tables = 1;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (tables > outcome_ceiling / k)
          fail(ErrorCode::BudgetExceeded,
               "outcome set of [S,T] at '" + x + "' exceeds ceiling");
        tables *= k;
      }
      if (values.size() + tables > outcome_ceiling)
        fail(ErrorCode::BudgetExceeded, "outcome set of [S,T] at '" + x + "' exceeds ceiling");
      for (std::uint64_t t = 0; t < tables; ++t) {
        HomOutcome o;
        o.subset = u;
        std::uint64_t rem = t;
        for (std::size_t r = rows.size(); r > 0; --r) {
          o.table[rows[r - 1]] = codomain[rem % k];
          rem /= k;
        }
        labels.push_back(hom_outcome_label(source, o));
        values.push_back(std::move(o));
      }
    }
    for (std::size_t i = 0; i < labels.size(); ++i) hom.label_index_[x][labels[i]] = i;
    hom.outcome_values[x] = std::move(values);
    measurements.emplace_back(x, std::move(labels));
  }
  hom.base = make_scenario(measurements, target.facets);

  // g_{S,T}: a family is allowed when its subsets union to a context of S
  hom.predicate.scenario = hom.base;
  for (const auto& facet : hom.base.facets) {
    PredicateComponent comp;
    comp.context = facet;
    assignment_count(hom.base, facet, budget);
    for_each_assignment(hom.base, facet, [&](const Assignment& a) {
      MeasurementSet used;
      for (const auto& [x, label] : a.entries)
        used = set_union(used, hom.decode(x, label).subset);
      if (is_context(source, used)) comp.accept.insert(a);
      return true;
    });
    hom.predicate.components.push_back(std::move(comp));
  }
  return hom;
}

Assignment procedure_to_assignment(const HomScenario& hom, const DeterministicProcedure& f) {
  if (f.source != hom.source || f.target != hom.target)
    fail(ErrorCode::ScenarioMismatch, "procedure endpoints do not match the hom scenario");
  std::vector<std::pair<MeasurementId, std::string>> entries;
  for (const auto& x : hom.target.measurements) {
    std::string label = hom_outcome_label(hom.source, {f.pi.at(x), f.alpha.at(x)});
    hom.decode(x, label);  // must exist
    entries.emplace_back(x, std::move(label));
  }
  Assignment s;
  s.entries = std::move(entries);
  return s;
}

DeterministicProcedure assignment_to_procedure(const HomScenario& hom, const Assignment& s) {
  if (s.domain() != hom.base.measurements)
    fail(ErrorCode::NotGlobal, "not a global assignment of the hom scenario");
  std::map<MeasurementId, MeasurementSet> pi;
  std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
  for (const auto& [x, label] : s.entries) {
    const HomOutcome& o = hom.decode(x, label);
    pi[x] = o.subset;
    alpha[x] = o.table;
  }
  return make_deterministic_procedure(hom.source, hom.target, std::move(pi), std::move(alpha));
}

EmpiricalModel procedure_to_model(const HomScenario& hom, const ProbabilisticProcedure& f,
                                  std::uint64_t budget) {
  std::vector<std::pair<Rational, EmpiricalModel>> parts;
  for (const auto& [w, g] : f.mixture)
    parts.emplace_back(w, deterministic_model(hom.base, procedure_to_assignment(hom, g)));
  EmpiricalModel model = convex_combine(parts);
  if (!satisfies(model, hom.predicate))
    fail(ErrorCode::InternalError, "procedure model violates the hom predicate");
  if (!is_noncontextual(model, budget).noncontextual)
    fail(ErrorCode::InternalError, "procedure model is contextual");
  return model;
}

RealizabilityResult realizable(const RealizabilityQuery& query, std::uint64_t budget) {
  const Scenario& s = query.source;
  const Scenario& t = query.target;
  assignment_count(s, s.measurements, budget);
  std::vector<Assignment> globals = enumerate_assignments(s, s.measurements);
  if (query.F.size() != globals.size())
    fail(ErrorCode::IncompleteTable, "F is not total on the global assignments");
  for (const auto& g : globals) {
    auto it = query.F.find(g);
    if (it == query.F.end())
      fail(ErrorCode::IncompleteTable, "F missing a global assignment");
    if (it->second.scenario != t)
      fail(ErrorCode::ScenarioMismatch, "F value does not live on the target");
  }

  std::vector<DeterministicProcedure> procs =
      enumerate_deterministic_procedures(s, t, /*canonical_only=*/true, budget);

  LinearSystem sys;
  std::map<std::string, std::size_t> row_index;
  LinearSystem::Equality normalization;
  normalization.rhs = 1;
  for (std::size_t gi = 0; gi < globals.size(); ++gi) {
    for (const auto& facet : t.facets) {
      const ContextDistribution& dist = query.F.at(globals[gi]).dists.at(facet);
      for (const auto& out : enumerate_assignments(t, facet)) {
        std::ostringstream key;
        key << gi << "|" << describe_set(facet) << "|";
        for (const auto& [id, o] : out.entries) key << id << ":" << o << ";";
        row_index[key.str()] = sys.equalities.size();
        sys.equalities.push_back({{}, dist.weight_of(out)});
      }
    }
  }
  for (std::size_t fi = 0; fi < procs.size(); ++fi) {
    std::string var = "f" + std::to_string(fi);
    sys.variables.push_back(var);
    sys.nonneg.insert(var);
    normalization.coeffs[var] = 1;
    for (std::size_t gi = 0; gi < globals.size(); ++gi) {
      for (const auto& facet : t.facets) {
        Assignment out = procs[fi].translate(facet, globals[gi]);
        std::ostringstream key;
        key << gi << "|" << describe_set(facet) << "|";
        for (const auto& [id, o] : out.entries) key << id << ":" << o << ";";
        sys.equalities[row_index.at(key.str())].coeffs[var] += 1;
      }
    }
  }
  sys.equalities.push_back(std::move(normalization));
  if (procs.empty()) return {};

  auto point = solve_feasibility(sys);
  if (!point) return {};

  std::vector<std::pair<Rational, DeterministicProcedure>> mixture;
  for (std::size_t fi = 0; fi < procs.size(); ++fi) {
    const Rational& w = point->at("f" + std::to_string(fi));
    if (w != 0) mixture.emplace_back(w, procs[fi]);
  }
  RealizabilityResult result;
  result.realizable = true;
  result.witness = make_probabilistic_procedure(std::move(mixture));
  for (const auto& g : globals)
    if (pushforward(*result.witness, deterministic_model(s, g)) != query.F.at(g))
      fail(ErrorCode::InternalError, "realizability witness fails verification");
  return result;
}

bool contextual_via_realizability(const EmpiricalModel& model, std::uint64_t budget) {
  RealizabilityQuery query;
  query.source = zero_scenario();
  query.target = model.scenario;
  query.F[Assignment{}] = model;
  return !realizable(query, budget).realizable;
}

ScenarioWithPredicate make_scenario_with_predicate(const Scenario& scenario,
                                                   const PossibilisticPredicate& predicate,
                                                   std::uint64_t budget) {
  if (predicate.scenario != scenario)
    fail(ErrorCode::ScenarioMismatch, "predicate does not live on the scenario");
  auto canonical = canonical_model_of_predicate(predicate, budget);
  if (!canonical)
    fail(ErrorCode::EmptySupport, "structure predicate is unsatisfiable");
  return ScenarioWithPredicate{scenario, predicate, std::move(*canonical)};
}

ScenarioWithPredicate with_trivial_predicate(const Scenario& scenario, std::uint64_t budget) {
  std::vector<PredicateComponent> components;
  for (const auto& facet : scenario.facets) {
    PredicateComponent comp;
    comp.context = facet;
    assignment_count(scenario, facet, budget);
    for_each_assignment(scenario, facet, [&](const Assignment& a) {
      comp.accept.insert(a);
      return true;
    });
    components.push_back(std::move(comp));
  }
  return make_scenario_with_predicate(scenario,
                                      PossibilisticPredicate{scenario, std::move(components)},
                                      budget);
}

DecoratedHom hom_with_predicates(const ScenarioWithPredicate& src,
                                 const ScenarioWithPredicate& tgt,
                                 std::uint64_t outcome_ceiling, std::uint64_t budget) {
  HomScenario hom = hom_scenario(src.scenario, tgt.scenario, outcome_ceiling, budget);

  // strengthen g_{S,T}: families must map source-support assignments into
  // target supports
  PossibilisticPredicate predicate;
  predicate.scenario = hom.base;
  for (const auto& comp : hom.predicate.components) {
    PredicateComponent strengthened;
    strengthened.context = comp.context;
    const std::set<Assignment>& target_support = tgt.canonical.supports.at(comp.context);
    for (const auto& a : comp.accept) {
      MeasurementSet used;
      for (const auto& [x, label] : a.entries)
        used = set_union(used, hom.decode(x, label).subset);
      bool ok = true;
      for (const auto& s : marginal_support(src.canonical, used)) {
        std::vector<std::pair<MeasurementId, std::string>> entries;
        for (const auto& [x, label] : a.entries) {
          const HomOutcome& o = hom.decode(x, label);
          entries.emplace_back(x, o.table.at(restrict_assignment(s, o.subset)));
        }
        Assignment mapped;
        mapped.entries = std::move(entries);
        if (!target_support.count(mapped)) { ok = false; break; }
      }
      if (ok) strengthened.accept.insert(a);
    }
    predicate.components.push_back(std::move(strengthened));
  }

  DecoratedHom out{std::move(hom), make_scenario_with_predicate(predicate.scenario, predicate, budget)};
  return out;
}

bool is_predicate_morphism(const DeterministicProcedure& f, const ScenarioWithPredicate& src,
                           const ScenarioWithPredicate& tgt) {
  if (f.source != src.scenario || f.target != tgt.scenario)
    fail(ErrorCode::ScenarioMismatch, "procedure endpoints do not match the predicates");
  return possibilistic_leq(pushforward(f, src.canonical), tgt.canonical);
}

DeterministicProcedure unit_iso_i(const Scenario& s, std::uint64_t ceiling) {
  HomScenario hom = hom_scenario(zero_scenario(), s, ceiling);
  std::map<MeasurementId, MeasurementSet> pi;
  std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
  for (const auto& x : s.measurements) {
    pi[x] = {x};
    for (const auto& o : s.outcomes_of(x)) {
      HomOutcome constant{{}, {{Assignment{}, o}}};
      alpha[x][Assignment{{{x, o}}}] = hom_outcome_label(hom.source, constant);
    }
  }
  return make_deterministic_procedure(s, hom.base, std::move(pi), std::move(alpha));
}

DeterministicProcedure identity_name_j(const Scenario& s, std::uint64_t ceiling) {
  HomScenario hom = hom_scenario(s, s, ceiling);
  std::map<MeasurementId, MeasurementSet> pi;
  std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
  for (const auto& x : s.measurements) {
    pi[x] = {};
    HomOutcome id_outcome;
    id_outcome.subset = {x};
    for (const auto& o : s.outcomes_of(x)) id_outcome.table[Assignment{{{x, o}}}] = o;
    alpha[x][Assignment{}] = hom_outcome_label(s, id_outcome);
  }
  return make_deterministic_procedure(zero_scenario(), hom.base, std::move(pi),
                                      std::move(alpha));
}

DeterministicProcedure composition_L(const Scenario& p, const Scenario& s, const Scenario& t,
                                     std::uint64_t ceiling) {
  HomScenario hom_st = hom_scenario(s, t, ceiling);
  HomScenario hom_ps = hom_scenario(p, s, ceiling);
  HomScenario hom_pt = hom_scenario(p, t, ceiling);
  HomScenario outer = hom_scenario(hom_ps.base, hom_pt.base, ceiling);

  std::map<MeasurementId, MeasurementSet> pi;
  std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
  for (const auto& x : t.measurements) {
    pi[x] = {x};
    for (const HomOutcome& uk : hom_st.outcome_values.at(x)) {
      // lift <U,k> to <U,k~>: compose each family over U with k
      HomOutcome lifted;
      lifted.subset = uk.subset;
      for_each_assignment(hom_ps.base, uk.subset, [&](const Assignment& family) {
        HomOutcome composed;
        std::vector<std::pair<MeasurementId, const HomOutcome*>> parts;
        for (const auto& [y, label] : family.entries) {
          const HomOutcome& m = hom_ps.decode(y, label);
          composed.subset = set_union(composed.subset, m.subset);
          parts.emplace_back(y, &m);
        }
        for_each_assignment(p, composed.subset, [&](const Assignment& sp) {
          std::vector<std::pair<MeasurementId, std::string>> mid;
          for (const auto& [y, m] : parts)
            mid.emplace_back(y, m->table.at(restrict_assignment(sp, m->subset)));
          Assignment middle;
          middle.entries = std::move(mid);
          composed.table[sp] = uk.table.at(middle);
          return true;
        });
        lifted.table[family] = hom_outcome_label(p, composed);
        return true;
      });
      alpha[x][Assignment{{{x, hom_outcome_label(s, uk)}}}] =
          hom_outcome_label(hom_ps.base, lifted);
    }
  }
  return make_deterministic_procedure(hom_st.base, outer.base, std::move(pi),
                                      std::move(alpha));
}

DeterministicProcedure hom_post(const Scenario& p, const DeterministicProcedure& f,
                                std::uint64_t ceiling) {
  HomScenario hom_ps = hom_scenario(p, f.source, ceiling);
  HomScenario hom_pt = hom_scenario(p, f.target, ceiling);

  std::map<MeasurementId, MeasurementSet> pi;
  std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
  for (const auto& x : f.target.measurements) {
    const MeasurementSet& u = f.pi.at(x);
    pi[x] = u;
    for_each_assignment(hom_ps.base, u, [&](const Assignment& family) {
      HomOutcome composed;
      std::vector<std::pair<MeasurementId, const HomOutcome*>> parts;
      for (const auto& [y, label] : family.entries) {
        const HomOutcome& k = hom_ps.decode(y, label);
        composed.subset = set_union(composed.subset, k.subset);
        parts.emplace_back(y, &k);
      }
      for_each_assignment(p, composed.subset, [&](const Assignment& sp) {
        std::vector<std::pair<MeasurementId, std::string>> mid;
        for (const auto& [y, k] : parts)
          mid.emplace_back(y, k->table.at(restrict_assignment(sp, k->subset)));
        Assignment middle;
        middle.entries = std::move(mid);
        composed.table[sp] = f.alpha.at(x).at(middle);
        return true;
      });
      alpha[x][family] = hom_outcome_label(p, composed);
      return true;
    });
  }
  return make_deterministic_procedure(hom_ps.base, hom_pt.base, std::move(pi),
                                      std::move(alpha));
}

DeterministicProcedure hom_pre(const DeterministicProcedure& f, const Scenario& p,
                               std::uint64_t ceiling) {
  HomScenario hom_tp = hom_scenario(f.target, p, ceiling);
  HomScenario hom_sp = hom_scenario(f.source, p, ceiling);

  std::map<MeasurementId, MeasurementSet> pi;
  std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
  for (const auto& x : p.measurements) {
    pi[x] = {x};
    for (const HomOutcome& uk : hom_tp.outcome_values.at(x)) {
      HomOutcome pulled;
      pulled.subset = f.pi_of(uk.subset);
      for_each_assignment(f.source, pulled.subset, [&](const Assignment& sv) {
        pulled.table[sv] = uk.table.at(f.translate(uk.subset, sv));
        return true;
      });
      alpha[x][Assignment{{{x, hom_outcome_label(f.target, uk)}}}] =
          hom_outcome_label(f.source, pulled);
    }
  }
  return make_deterministic_procedure(hom_tp.base, hom_sp.base, std::move(pi),
                                      std::move(alpha));
}

DeterministicProcedure name(const HomScenario& hom, const DeterministicProcedure& f) {
  if (f.source != hom.source || f.target != hom.target)
    fail(ErrorCode::ScenarioMismatch, "procedure endpoints do not match the hom scenario");
  std::map<MeasurementId, MeasurementSet> pi;
  std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
  for (const auto& x : hom.target.measurements) {
    pi[x] = {};
    alpha[x][Assignment{}] = hom_outcome_label(hom.source, {f.pi.at(x), f.alpha.at(x)});
  }
  return make_deterministic_procedure(zero_scenario(), hom.base, std::move(pi),
                                      std::move(alpha));
}

DeterministicProcedure unname(const HomScenario& hom, const DeterministicProcedure& named) {
  if (named.source != zero_scenario() || named.target != hom.base)
    fail(ErrorCode::ScenarioMismatch, "not a procedure from Zero into the hom scenario");
  std::vector<std::pair<MeasurementId, std::string>> entries;
  for (const auto& x : hom.base.measurements)
    entries.emplace_back(x, named.alpha.at(x).at(restrict_assignment(Assignment{}, named.pi.at(x))));
  Assignment s;
  s.entries = std::move(entries);
  return assignment_to_procedure(hom, s);
}

}  // namespace ctx
