#include <random>

#include "doctest.h"
#include "fixtures.hpp"

#include "ctx/contextuality.hpp"

using namespace ctx;

namespace {

constexpr int kCases = 1000;

struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}

  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  static Rational frac(int num, int den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  bool coin() { return below(2) == 0; }

  // strictly between 0 and 1
  Rational open_ratio() {
    int den = below(14) + 2;
    return frac(below(den - 1) + 1, den);
  }

  Scenario scenario() {
    switch (below(5)) {
      case 0: return fixtures::triangle();
      case 1: return fixtures::square();
      case 2: return dice_scenario(2);
      case 3: return dice_scenario(3);
      default:
        return make_scenario(
            {{"a", {"0", "1"}}, {"b", {"0", "1"}}, {"c", {"0", "1"}}},
            {{"a", "b"}, {"b", "c"}});
    }
  }

  Assignment global(const Scenario& s) {
    auto n = assignment_count(s, s.measurements, kDefaultBudget);
    return assignment_at(s, s.measurements, below(static_cast<int>(n)));
  }

  EmpiricalModel delta_mixture(const Scenario& s) {
    int k = below(4) + 1;
    std::vector<int> parts(k);
    int total = 0;
    for (auto& p : parts) total += p = below(7) + 1;
    std::vector<std::pair<Rational, EmpiricalModel>> mix;
    for (int p : parts) mix.emplace_back(frac(p, total), deterministic_model(s, global(s)));
    return convex_combine(mix);
  }

  // delta mixtures, PR-type boxes, and noisy interpolations
  EmpiricalModel model(const Scenario& s) {
    EmpiricalModel base = delta_mixture(s);
    if (s == fixtures::square() && coin()) {
      Rational lambda = open_ratio();
      return convex_combine({{lambda, fixtures::pr_model()}, {1 - lambda, base}});
    }
    if (s == fixtures::triangle() && coin()) {
      Rational lambda = open_ratio();
      return convex_combine({{lambda, fixtures::triangle_model()}, {1 - lambda, base}});
    }
    return base;
  }

  std::map<Assignment, std::string> table(const Scenario& s, const MeasurementSet& domain,
                                          const std::vector<std::string>& outcomes) {
    std::map<Assignment, std::string> out;
    for (const auto& a : enumerate_assignments(s, domain))
      out[a] = outcomes[below(static_cast<int>(outcomes.size()))];
    return out;
  }

  DeterministicProcedure procedure(const Scenario& s, const Scenario& t) {
    auto contexts = enumerate_contexts(s);
    for (int attempt = 0; attempt < 30; ++attempt) {
      std::map<MeasurementId, MeasurementSet> pi;
      std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
      for (const auto& x : t.measurements) {
        pi[x] = contexts[below(static_cast<int>(contexts.size()))];
        alpha[x] = table(s, pi[x], t.outcomes_of(x));
      }
      try {
        return make_deterministic_procedure(s, t, std::move(pi), std::move(alpha));
      } catch (const Error&) {
        // facet unions were not simplicial; try again
      }
    }
    // constant procedures always exist
    std::map<MeasurementId, MeasurementSet> pi;
    std::map<MeasurementId, std::map<Assignment, std::string>> alpha;
    for (const auto& x : t.measurements) {
      pi[x] = {};
      const auto& os = t.outcomes_of(x);
      alpha[x][Assignment{}] = os[below(static_cast<int>(os.size()))];
    }
    return make_deterministic_procedure(s, t, std::move(pi), std::move(alpha));
  }

  ProbabilisticProcedure mixture(const Scenario& s, const Scenario& t) {
    int k = below(3) + 1;
    std::vector<int> parts(k);
    int total = 0;
    for (auto& p : parts) total += p = below(5) + 1;
    std::vector<std::pair<Rational, DeterministicProcedure>> mix;
    for (int p : parts) mix.emplace_back(frac(p, total), procedure(s, t));
    return make_probabilistic_procedure(std::move(mix));
  }
};

// re-derive no-signalling from scratch instead of trusting the constructor
void check_no_signalling(const EmpiricalModel& e) {
  for (const auto& [facet, dist] : e.dists) {
    Rational total(0);
    for (const auto& [a, p] : dist.weights) {
      REQUIRE(p >= 0);
      total += p;
    }
    REQUIRE(total == 1);
  }
  for (auto i = e.dists.begin(); i != e.dists.end(); ++i)
    for (auto j = std::next(i); j != e.dists.end(); ++j) {
      MeasurementSet shared = set_intersection(i->first, j->first);
      ContextDistribution a = marginalize(i->second, shared);
      ContextDistribution b = marginalize(j->second, shared);
      for (const auto& t : enumerate_assignments(e.scenario, shared))
        REQUIRE(a.weight_of(t) == b.weight_of(t));
    }
}

}  // namespace

TEST_CASE("accepted models satisfy no-signalling") {
  Gen gen(101);
  for (int i = 0; i < kCases; ++i) {
    Scenario s = gen.scenario();
    check_no_signalling(gen.model(s));
  }
}

TEST_CASE("the contextuality hierarchy is monotone with sound witnesses") {
  Gen gen(202);
  for (int i = 0; i < kCases; ++i) {
    Scenario s = gen.scenario();
    EmpiricalModel e = gen.model(s);
    HierarchyReport h = classify(e);
    if (h.strongly_contextual) REQUIRE(h.logically_contextual);
    if (h.logically_contextual) REQUIRE(h.probabilistically_contextual);

    PossibilisticModel collapsed = possibilistic_collapse(e);
    GlobalSupport support = global_support(collapsed);
    REQUIRE(support.assignments == global_support_bruteforce(collapsed).assignments);
    REQUIRE(h.strongly_contextual == support.assignments.empty());

    if (h.noncontextual_witness) {
      REQUIRE(!h.probabilistically_contextual);
      Rational total(0);
      for (const auto& [g, w] : *h.noncontextual_witness) {
        REQUIRE(w >= 0);
        total += w;
      }
      REQUIRE(total == 1);
      for (const auto& [facet, dist] : e.dists)
        for (const auto& t : enumerate_assignments(s, facet)) {
          Rational sum(0);
          for (const auto& [g, w] : *h.noncontextual_witness)
            if (restrict_assignment(g, facet) == t) sum += w;
          REQUIRE(sum == dist.weight_of(t));
        }
    }
  }
}

TEST_CASE("pushforward is convex and affine in the model") {
  Gen gen(303);
  for (int i = 0; i < kCases; ++i) {
    Scenario s = gen.scenario();
    Scenario t = gen.coin() ? dice_scenario(2) : dice_scenario(3);
    ProbabilisticProcedure f = gen.mixture(s, t);
    EmpiricalModel e1 = gen.model(s);
    EmpiricalModel e2 = gen.model(s);
    Rational lambda = gen.open_ratio();
    EmpiricalModel pushed_mix =
        pushforward(f, convex_combine({{lambda, e1}, {1 - lambda, e2}}));
    EmpiricalModel mixed_push = convex_combine(
        {{lambda, pushforward(f, e1)}, {1 - lambda, pushforward(f, e2)}});
    REQUIRE(pushed_mix == mixed_push);
  }
}

TEST_CASE("pushforward is functorial") {
  Gen gen(404);
  for (int i = 0; i < kCases; ++i) {
    Scenario s = gen.scenario();
    Scenario t = gen.scenario();
    Scenario u = gen.coin() ? dice_scenario(2) : dice_scenario(3);
    DeterministicProcedure f = gen.procedure(s, t);
    DeterministicProcedure g = gen.procedure(t, u);
    EmpiricalModel e = gen.model(s);

    REQUIRE(pushforward(compose(g, f), e) == pushforward(g, pushforward(f, e)));
    REQUIRE(compose(f, identity_procedure(s)) == f);
    REQUIRE(compose(identity_procedure(t), f) == f);
  }
}

TEST_CASE("possibilistic collapse is natural in the model") {
  Gen gen(505);
  for (int i = 0; i < kCases; ++i) {
    Scenario s = gen.scenario();
    Scenario t = gen.coin() ? dice_scenario(2) : gen.scenario();
    ProbabilisticProcedure f = gen.mixture(s, t);
    EmpiricalModel e = gen.model(s);

    PossibilisticProcedure boolean;
    for (const auto& [w, component] : f.mixture) boolean.components.push_back(component);
    REQUIRE(possibilistic_collapse(pushforward(f, e)) ==
            pushforward(boolean, possibilistic_collapse(e)));
  }
}

TEST_CASE("essential measurement sets are minimal and pi_of respects unions") {
  Gen gen(606);
  for (int i = 0; i < kCases; ++i) {
    Scenario s = gen.scenario();
    auto contexts = enumerate_contexts(s);
    MeasurementSet domain = contexts[gen.below(static_cast<int>(contexts.size()))];
    // build a table that only looks at a random sub-context
    MeasurementSet hidden;
    for (const auto& id : domain)
      if (gen.coin()) hidden.push_back(id);
    std::map<Assignment, std::string> inner = gen.table(s, hidden, {"L", "R"});
    std::map<Assignment, std::string> table;
    for (const auto& a : enumerate_assignments(s, domain))
      table[a] = inner.at(restrict_assignment(a, hidden));

    MeasurementSet essential = essential_measurements(s, domain, table);
    REQUIRE(is_subset(essential, hidden));
    // the table factors through the essential set
    for (const auto& a : enumerate_assignments(s, domain))
      for (const auto& b : enumerate_assignments(s, domain))
        if (restrict_assignment(a, essential) == restrict_assignment(b, essential))
          REQUIRE(table.at(a) == table.at(b));
    // and through no proper subset of it
    for (const auto& dropped : essential) {
      MeasurementSet smaller = set_difference(essential, {dropped});
      bool factors = true;
      for (const auto& a : enumerate_assignments(s, domain))
        for (const auto& b : enumerate_assignments(s, domain))
          if (restrict_assignment(a, smaller) == restrict_assignment(b, smaller) &&
              table.at(a) != table.at(b))
            factors = false;
      REQUIRE(!factors);
    }

    // the union law for the pre-processing relation of a procedure
    Scenario t = gen.scenario();
    DeterministicProcedure f = gen.procedure(s, t);
    const MeasurementSet& facet = t.facets[gen.below(static_cast<int>(t.facets.size()))];
    MeasurementSet sigma, tau;
    for (const auto& id : facet) {
      if (gen.coin()) sigma.push_back(id);
      if (gen.coin()) tau.push_back(id);
    }
    REQUIRE(f.pi_of(set_union(sigma, tau)) == set_union(f.pi_of(sigma), f.pi_of(tau)));
  }
}

TEST_CASE("predicate_leq is a preorder compatible with joins") {
  Gen gen(707);
  for (int i = 0; i < kCases; ++i) {
    Scenario s = gen.scenario();
    PossibilisticModel d1 = possibilistic_collapse(gen.model(s));
    PossibilisticModel d2 = possibilistic_collapse(gen.model(s));
    PossibilisticModel d3 = possibilistic_collapse(gen.model(s));

    PossibilisticPredicate g1 = predicate_from_model(d1);
    PossibilisticPredicate g12 = predicate_from_model(possibilistic_join({d1, d2}));
    PossibilisticPredicate g123 = predicate_from_model(possibilistic_join({d1, d2, d3}));

    REQUIRE(predicate_leq(g1, g1));
    REQUIRE(predicate_leq(g1, g12));
    REQUIRE(predicate_leq(g12, g123));
    REQUIRE(predicate_leq(g1, g123));  // transitivity instance
    if (!predicate_leq(g12, g1)) REQUIRE(!possibilistic_leq(possibilistic_join({d1, d2}), d1));
  }
}
