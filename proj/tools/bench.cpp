// Compares the serial reference paths against the OpenMP kernels on an
// n-cycle instance large enough for the difference to be visible.

#include <chrono>
#include <cstdio>

#include "ctx/games.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

ctx::Scenario cycle_scenario(int n) {
  std::vector<std::pair<ctx::MeasurementId, std::vector<std::string>>> measurements;
  std::vector<ctx::MeasurementSet> facets;
  auto name = [](int i) { return "m" + std::string(i < 10 ? "0" : "") + std::to_string(i); };
  for (int i = 0; i < n; ++i) measurements.emplace_back(name(i), std::vector<std::string>{"0", "1"});
  for (int i = 0; i < n; ++i) facets.push_back({name(i), name((i + 1) % n)});
  return ctx::make_scenario(measurements, facets);
}

}  // namespace

int main() {
  const int n = 21;
  const std::uint64_t budget = std::uint64_t{1} << 22;
  ctx::Scenario ring = cycle_scenario(n);

  // anti-correlated supports on every edge of an odd cycle: no global section
  std::map<ctx::MeasurementSet, std::set<ctx::Assignment>> supports;
  for (const auto& facet : ring.facets) {
    supports[facet] = {ctx::Assignment{{{facet[0], "0"}, {facet[1], "1"}}},
                       ctx::Assignment{{{facet[0], "1"}, {facet[1], "0"}}}};
  }
  ctx::PossibilisticModel model = ctx::make_possibilistic_model(ring, std::move(supports));

  auto t0 = clock_type::now();
  ctx::GlobalSupport serial = ctx::global_support_bruteforce(model, budget, false);
  double serial_support = seconds_since(t0);
  t0 = clock_type::now();
  ctx::GlobalSupport parallel = ctx::global_support_bruteforce(model, budget, true);
  double parallel_support = seconds_since(t0);
  if (serial.assignments != parallel.assignments) {
    std::puts("global_support_bruteforce: MISMATCH");
    return 1;
  }

  // ring parity game: uniform mixture of per-edge anti-correlation checks
  std::vector<std::pair<ctx::Rational, ctx::DeterministicProcedure>> mixture;
  ctx::Rational weight(1, n);
  for (const auto& facet : ring.facets) {
    std::set<ctx::Assignment> accept = {
        ctx::Assignment{{{facet[0], "0"}, {facet[1], "1"}}},
        ctx::Assignment{{{facet[0], "1"}, {facet[1], "0"}}}};
    mixture.emplace_back(weight, ctx::indicator_procedure(ring, facet, accept));
  }
  ctx::Experiment game = ctx::make_experiment(ctx::make_probabilistic_procedure(mixture));

  t0 = clock_type::now();
  ctx::ClassicalValue serial_value = ctx::classical_value(game, budget, false);
  double serial_game = seconds_since(t0);
  t0 = clock_type::now();
  ctx::ClassicalValue parallel_value = ctx::classical_value(game, budget, true);
  double parallel_game = seconds_since(t0);
  if (serial_value.value != parallel_value.value ||
      serial_value.strategy != parallel_value.strategy) {
    std::puts("classical_value: MISMATCH");
    return 1;
  }

  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial", "openmp", "speedup");
  std::printf("%-28s %9.3fs %9.3fs %7.2fx\n", "global_support_bruteforce", serial_support,
              parallel_support, serial_support / parallel_support);
  std::printf("%-28s %9.3fs %9.3fs %7.2fx\n", "classical_value", serial_game, parallel_game,
              serial_game / parallel_game);
  std::printf("classical value of the %d-ring parity game: %s\n", n,
              ctx::to_string(serial_value.value).c_str());
  return 0;
}
