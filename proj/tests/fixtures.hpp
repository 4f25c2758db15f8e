#pragma once

// The paper's running examples, shared across the test suites.

#include "ctx/games.hpp"
#include "ctx/hom.hpp"

namespace fixtures {

using namespace ctx;

inline Scenario triangle() {
  return make_scenario({{"grub", {"yes", "no"}}, {"pint", {"yes", "no"}}, {"wine", {"yes", "no"}}},
                       {{"grub", "pint"}, {"grub", "wine"}, {"pint", "wine"}});
}

inline Scenario square() {
  return make_scenario({{"EvilG", {"grain", "grape"}},
                        {"GeorgieB", {"grain", "grape"}},
                        {"JohnnyB", {"grain", "grape"}},
                        {"SammyA", {"grain", "grape"}}},
                       {{"GeorgieB", "SammyA"},
                        {"EvilG", "SammyA"},
                        {"GeorgieB", "JohnnyB"},
                        {"EvilG", "JohnnyB"}});
}

// triangle with outcomes relabelled 0/1, for the Kochen-Specker predicate
inline Scenario triangle01() {
  return make_scenario({{"grub", {"0", "1"}}, {"pint", {"0", "1"}}, {"wine", {"0", "1"}}},
                       {{"grub", "pint"}, {"grub", "wine"}, {"pint", "wine"}});
}

inline ContextDistribution pair_dist(
    const MeasurementId& a, const MeasurementId& b,
    const std::vector<std::tuple<std::string, std::string, Rational>>& rows) {
  ContextDistribution d;
  d.context = normalize_set({a, b});
  for (const auto& [oa, ob, p] : rows) d.weights[Assignment({{a, oa}, {b, ob}})] += p;
  return d;
}

// wine iff grub, pint iff grub, but never pint and wine together
inline EmpiricalModel triangle_model() {
  Rational h(1, 2);
  std::map<MeasurementSet, ContextDistribution> dists;
  for (auto d : {pair_dist("pint", "wine", {{"yes", "no", h}, {"no", "yes", h}}),
                 pair_dist("grub", "wine", {{"yes", "yes", h}, {"no", "no", h}}),
                 pair_dist("grub", "pint", {{"yes", "yes", h}, {"no", "no", h}})})
    dists[d.context] = d;
  return make_empirical_model(triangle(), std::move(dists));
}

// correlated everywhere except the {SammyA, EvilG} context
inline EmpiricalModel pr_model() {
  Rational h(1, 2);
  std::map<MeasurementSet, ContextDistribution> dists;
  for (auto d :
       {pair_dist("SammyA", "EvilG", {{"grape", "grain", h}, {"grain", "grape", h}}),
        pair_dist("SammyA", "GeorgieB", {{"grape", "grape", h}, {"grain", "grain", h}}),
        pair_dist("JohnnyB", "EvilG", {{"grape", "grape", h}, {"grain", "grain", h}}),
        pair_dist("JohnnyB", "GeorgieB", {{"grape", "grape", h}, {"grain", "grain", h}})})
    dists[d.context] = d;
  return make_empirical_model(square(), std::move(dists));
}

// the CHSH model relabelled onto the square: X_A -> JohnnyB, Y_A -> SammyA,
// X_B -> GeorgieB, Y_B -> EvilG, 0 -> grain, 1 -> grape
inline EmpiricalModel chsh_model() {
  Rational h(1, 2), lo(1, 8), hi(3, 8);
  std::map<MeasurementSet, ContextDistribution> dists;
  for (auto d : {pair_dist("JohnnyB", "GeorgieB", {{"grain", "grain", h}, {"grape", "grape", h}}),
                 pair_dist("JohnnyB", "EvilG",
                           {{"grain", "grain", hi},
                            {"grain", "grape", lo},
                            {"grape", "grain", lo},
                            {"grape", "grape", hi}}),
                 pair_dist("SammyA", "GeorgieB",
                           {{"grain", "grain", hi},
                            {"grain", "grape", lo},
                            {"grape", "grain", lo},
                            {"grape", "grape", hi}}),
                 pair_dist("SammyA", "EvilG",
                           {{"grain", "grain", lo},
                            {"grain", "grape", hi},
                            {"grape", "grain", hi},
                            {"grape", "grape", lo}})})
    dists[d.context] = d;
  return make_empirical_model(square(), std::move(dists));
}

// anti-coordination on {SammyA, EvilG}, coordination on the other contexts
inline Experiment chsh_game() {
  Scenario sq = square();
  auto corr = [&](const MeasurementId& a, const MeasurementId& b) {
    return indicator_procedure(sq, {a, b},
                               {Assignment({{a, "grain"}, {b, "grain"}}),
                                Assignment({{a, "grape"}, {b, "grape"}})});
  };
  Rational q(1, 4);
  std::vector<std::pair<Rational, DeterministicProcedure>> mixture;
  mixture.emplace_back(
      q, indicator_procedure(sq, {"SammyA", "EvilG"},
                             {Assignment({{"SammyA", "grain"}, {"EvilG", "grape"}}),
                              Assignment({{"SammyA", "grape"}, {"EvilG", "grain"}})}));
  mixture.emplace_back(q, corr("SammyA", "GeorgieB"));
  mixture.emplace_back(q, corr("JohnnyB", "EvilG"));
  mixture.emplace_back(q, corr("JohnnyB", "GeorgieB"));
  return make_experiment(make_probabilistic_procedure(std::move(mixture)));
}

// every party queries the triangle and sends yes to grain, no to grape
inline DeterministicProcedure square_from_triangle() {
  std::map<MeasurementId, MeasurementSet> pi = {{"SammyA", {"pint"}},
                                                {"EvilG", {"wine"}},
                                                {"GeorgieB", {"grub"}},
                                                {"JohnnyB", {"grub"}}};
  std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
  for (const auto& [x, u] : pi) {
    const MeasurementId& q = u[0];
    alpha[x][Assignment({{q, "yes"}})] = "grain";
    alpha[x][Assignment({{q, "no"}})] = "grape";
  }
  return make_deterministic_procedure(triangle(), square(), std::move(pi), std::move(alpha));
}

}  // namespace fixtures
