#include "doctest.h"
#include "fixtures.hpp"

using namespace ctx;

namespace {

std::uint64_t satisfying_assignment_count(const HomScenario& hom) {
  std::uint64_t n = 0;
  for_each_assignment(hom.base, hom.base.measurements, [&](const Assignment& s) {
    if (satisfies(possibilistic_collapse(deterministic_model(hom.base, s)), hom.predicate)) ++n;
    return true;
  });
  return n;
}

}  // namespace

TEST_CASE("hom outcome labels are canonical and decodable") {
  Scenario d2 = dice_scenario(2);
  HomScenario hom = hom_scenario(d2, d2);
  REQUIRE(hom.outcome_values.at("*").size() == 6);
  CHECK(hom.base.outcomes_of("*").size() == 6);

  // labels enumerate by (|U|, U, table odometer)
  const auto& values = hom.outcome_values.at("*");
  CHECK(values[0].subset == MeasurementSet{});
  CHECK(values[1].subset == MeasurementSet{});
  CHECK(values[2].subset == MeasurementSet{"*"});
  for (const auto& o : values) {
    std::string label = hom_outcome_label(d2, o);
    CHECK(hom.decode("*", label) == o);
  }
  HomOutcome identity_table{{"*"},
                            {{Assignment({{"*", "0"}}), "0"}, {Assignment({{"*", "1"}}), "1"}}};
  CHECK(hom_outcome_label(d2, identity_table) == "U=*|table=0>0;1>1");
  CHECK(hom_outcome_label(d2, values[0]) == "U=|table=>0");
}

TEST_CASE("hom scenario sizes match the subset-table census") {
  Scenario d2 = dice_scenario(2);
  Scenario t = fixtures::triangle();
  Scenario z = zero_scenario();

  // triangle -> d2 per measurement: 2 + 3*4 + 3*16 + 256 = 318 tables
  HomScenario td = hom_scenario(t, d2);
  CHECK(td.base.outcomes_of("*").size() == 318);

  HomScenario zd = hom_scenario(z, fixtures::square());
  for (const auto& x : zd.base.measurements) CHECK(zd.base.outcomes_of(x).size() == 2);

  SUBCASE("the outcome ceiling is enforced") {
    CHECK_THROWS_AS(hom_scenario(t, d2, 100), Error);
  }
}

TEST_CASE("procedures biject with predicate-satisfying global assignments") {
  struct Case {
    Scenario source, target;
    std::uint64_t expected;
  };
  std::vector<Case> cases = {{dice_scenario(2), dice_scenario(2), 6},
                             {fixtures::triangle(), dice_scenario(2), 62},
                             {zero_scenario(), fixtures::square(), 16}};
  for (const auto& c : cases) {
    CAPTURE(c.expected);
    HomScenario hom = hom_scenario(c.source, c.target);
    CHECK(satisfying_assignment_count(hom) == c.expected);
    CHECK(count_deterministic_procedures(c.source, c.target, false) == c.expected);

    std::set<Assignment> images;
    for_each_deterministic_procedure(
        c.source, c.target, false, kDefaultBudget, [&](const DeterministicProcedure& f) {
          Assignment s = procedure_to_assignment(hom, f);
          CHECK(assignment_to_procedure(hom, s) == f);
          images.insert(s);
          return true;
        });
    CHECK(images.size() == c.expected);
  }
}

TEST_CASE("non-simplicial families are rejected by the bijection") {
  Scenario t = fixtures::triangle();
  HomScenario hom = hom_scenario(t, dice_scenario(2));
  // pick the outcome whose subset is all three measurements: not a context
  const auto& values = hom.outcome_values.at("*");
  auto full = std::find_if(values.begin(), values.end(), [&](const HomOutcome& o) {
    return o.subset == t.measurements;
  });
  REQUIRE(full != values.end());
  Assignment bad({{"*", hom_outcome_label(t, *full)}});
  try {
    assignment_to_procedure(hom, bad);
    FAIL("expected NotSimplicial");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSimplicial);
  }
}

TEST_CASE("mixtures of procedures induce noncontextual hom models") {
  Scenario t = fixtures::triangle();
  HomScenario hom = hom_scenario(t, dice_scenario(2));
  auto anti = [&](const MeasurementId& a, const MeasurementId& b) {
    return indicator_procedure(t, {a, b},
                               {Assignment({{a, "yes"}, {b, "no"}}),
                                Assignment({{a, "no"}, {b, "yes"}})});
  };
  ProbabilisticProcedure f = make_probabilistic_procedure(
      {{Rational(1, 2), anti("pint", "wine")}, {Rational(1, 2), anti("grub", "wine")}});
  EmpiricalModel m = procedure_to_model(hom, f);
  CHECK(m.scenario == hom.base);
  CHECK(satisfies(m, hom.predicate));
  CHECK(is_noncontextual(m).noncontextual);
}

TEST_CASE("realizability of tabulated convex maps") {
  Scenario sq = fixtures::square();
  Scenario z = zero_scenario();

  SUBCASE("a constant noncontextual model is realizable from Zero") {
    EmpiricalModel mix = convex_combine(
        {{Rational(1, 2),
          deterministic_model(sq, Assignment({{"EvilG", "grain"},
                                              {"GeorgieB", "grain"},
                                              {"JohnnyB", "grain"},
                                              {"SammyA", "grain"}}))},
         {Rational(1, 2),
          deterministic_model(sq, Assignment({{"EvilG", "grape"},
                                              {"GeorgieB", "grape"},
                                              {"JohnnyB", "grape"},
                                              {"SammyA", "grape"}}))}});
    RealizabilityQuery q{z, sq, {{Assignment{}, mix}}};
    RealizabilityResult r = realizable(q);
    REQUIRE(r.realizable);
    REQUIRE(r.witness.has_value());
    CHECK(pushforward(*r.witness, deterministic_model(z, Assignment{})) == mix);
  }
  SUBCASE("the PR model is not realizable from Zero") {
    RealizabilityQuery q{z, sq, {{Assignment{}, fixtures::pr_model()}}};
    RealizabilityResult r = realizable(q);
    CHECK(!r.realizable);
    CHECK(!r.witness.has_value());
  }
  SUBCASE("tabulating an actual procedure is always realizable") {
    ProbabilisticProcedure f = fixtures::chsh_game().procedure;
    RealizabilityQuery q;
    q.source = sq;
    q.target = f.target();
    for (const auto& s : enumerate_assignments(sq, sq.measurements))
      q.F.emplace(s, pushforward(f, deterministic_model(sq, s)));
    RealizabilityResult r = realizable(q);
    REQUIRE(r.realizable);
    REQUIRE(r.witness.has_value());
    for (const auto& [s, expected] : q.F)
      CHECK(pushforward(*r.witness, deterministic_model(sq, s)) == expected);
  }
}

TEST_CASE("contextuality via realizability matches the LP classification") {
  CHECK(contextual_via_realizability(fixtures::pr_model()));
  CHECK(contextual_via_realizability(fixtures::chsh_model()));
  Scenario sq = fixtures::square();
  EmpiricalModel nc = convex_combine(
      {{Rational(1, 4),
        deterministic_model(sq, Assignment({{"EvilG", "grain"},
                                            {"GeorgieB", "grape"},
                                            {"JohnnyB", "grain"},
                                            {"SammyA", "grape"}}))},
       {Rational(3, 4),
        deterministic_model(sq, Assignment({{"EvilG", "grape"},
                                            {"GeorgieB", "grape"},
                                            {"JohnnyB", "grape"},
                                            {"SammyA", "grain"}}))}});
  CHECK(!contextual_via_realizability(nc));
  CHECK(is_noncontextual(nc).noncontextual);
}

TEST_CASE("scenarios with predicates and their morphisms") {
  Scenario t01 = fixtures::triangle01();
  ScenarioWithPredicate ks = make_scenario_with_predicate(t01, ks_predicate(t01));
  CHECK(ks.canonical == *canonical_model_of_predicate(ks.predicate));

  ScenarioWithPredicate trivial = with_trivial_predicate(fixtures::triangle());
  for (const auto& [facet, support] : trivial.canonical.supports)
    CHECK(support.size() == 4);

  DeterministicProcedure id = identity_procedure(t01);
  CHECK(is_predicate_morphism(id, ks, ks));
  CHECK(is_predicate_morphism(id, ks, with_trivial_predicate(t01)));
  CHECK(!is_predicate_morphism(id, with_trivial_predicate(t01), ks));

  SUBCASE("decorated homs strengthen the base predicate") {
    Scenario d2 = dice_scenario(2);
    DecoratedHom dh = hom_with_predicates(with_trivial_predicate(d2), with_trivial_predicate(d2));
    // with trivial predicates this is just [d2, d2]
    HomScenario plain = hom_scenario(d2, d2);
    CHECK(dh.hom.base == plain.base);
    CHECK(satisfying_assignment_count(dh.hom) == 6);
  }
}

TEST_CASE("name and unname realize the closure bijection") {
  Scenario t = fixtures::triangle();
  Scenario sq = fixtures::square();
  HomScenario hom = hom_scenario(t, sq);

  DeterministicProcedure f = fixtures::square_from_triangle();
  DeterministicProcedure named = name(hom, f);
  CHECK(named.source == zero_scenario());
  CHECK(named.target == hom.base);
  CHECK(unname(hom, named) == f);

  SUBCASE("round trip over every procedure d2 -> d2") {
    Scenario d2 = dice_scenario(2);
    HomScenario hd = hom_scenario(d2, d2);
    for_each_deterministic_procedure(
        d2, d2, false, kDefaultBudget, [&](const DeterministicProcedure& g) {
          CHECK(unname(hd, name(hd, g)) == g);
          return true;
        });
  }
}

TEST_CASE("closed-structure maps have the right endpoints") {
  Scenario d2 = dice_scenario(2);
  Scenario t = fixtures::triangle();

  DeterministicProcedure i = unit_iso_i(d2);
  CHECK(i.source == d2);
  CHECK(i.target == hom_scenario(zero_scenario(), d2).base);

  DeterministicProcedure j = identity_name_j(t);
  CHECK(j.source == zero_scenario());
  CHECK(j.target == hom_scenario(t, t).base);
  CHECK(unname(hom_scenario(t, t), j) == identity_procedure(t));

  DeterministicProcedure L = composition_L(d2, d2, d2);
  HomScenario inner = hom_scenario(d2, d2);
  CHECK(L.source == inner.base);
  CHECK(L.target == hom_scenario(inner.base, inner.base).base);

  DeterministicProcedure swap = make_deterministic_procedure(
      d2, d2, {{"*", {"*"}}},
      {{"*", {{Assignment({{"*", "0"}}), "1"}, {Assignment({{"*", "1"}}), "0"}}}});
  DeterministicProcedure post = hom_post(d2, swap);
  CHECK(post.source == inner.base);
  CHECK(post.target == inner.base);
  DeterministicProcedure pre = hom_pre(swap, d2);
  CHECK(pre.source == inner.base);
  CHECK(pre.target == inner.base);

  SUBCASE("hom_post and hom_pre act correctly on names") {
    for_each_deterministic_procedure(
        d2, d2, false, kDefaultBudget, [&](const DeterministicProcedure& g) {
          // [id, swap] sends the name of g to the name of swap . g
          DeterministicProcedure moved = compose(post, name(inner, g));
          CHECK(unname(inner, moved) == compose(swap, g));
          // [swap, id] sends the name of g to the name of g . swap
          DeterministicProcedure pulled = compose(pre, name(inner, g));
          CHECK(unname(inner, pulled) == compose(g, swap));
          return true;
        });
  }
}
