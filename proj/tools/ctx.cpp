#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ctx/json_io.hpp"

#include "../vendor/CLI11.hpp"

namespace {

using ctx::Json;

std::string dir_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string() : path.substr(0, slash);
}

std::string content_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ctx::fail(ctx::ErrorCode::ParseError, "cannot open '" + path + "'");
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << std::setfill('0') << std::setw(16) << h;
  return hex.str();
}

struct Command {
  std::string name;
  std::vector<std::string> inputs;
  std::string output;
  std::uint64_t budget = ctx::kDefaultBudget;

  int emit(Json result, int exit_code) const {
    Json report;
    report["command"] = name;
    report["inputs"] = Json::array();
    for (const auto& path : inputs) {
      Json in;
      in["path"] = path;
      in["hash"] = content_hash(path);
      report["inputs"].push_back(std::move(in));
    }
    report["result"] = std::move(result);
    report["exit_code"] = exit_code;
    std::string text = report.dump(2) + "\n";
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output, std::ios::binary);
      if (!out) ctx::fail(ctx::ErrorCode::ParseError, "cannot write '" + output + "'");
      out << text;
    }
    return exit_code;
  }
};

int cmd_check(const Command& cmd) {
  ctx::EmpiricalModel model =
      ctx::empirical_model_from_json(ctx::load_json_file(cmd.inputs[0]), dir_of(cmd.inputs[0]));
  ctx::HierarchyReport report = ctx::classify(model, cmd.budget);
  return cmd.emit(ctx::hierarchy_report_to_json(report), 0);
}

int cmd_push(const Command& cmd) {
  ctx::ProbabilisticProcedure f =
      ctx::procedure_from_json(ctx::load_json_file(cmd.inputs[0]), dir_of(cmd.inputs[0]));
  ctx::EmpiricalModel model =
      ctx::empirical_model_from_json(ctx::load_json_file(cmd.inputs[1]), dir_of(cmd.inputs[1]));
  return cmd.emit(ctx::empirical_model_to_json(ctx::pushforward(f, model)), 0);
}

ctx::PossibilisticModel load_possibilistic(const std::string& path) {
  Json j = ctx::load_json_file(path);
  if (ctx::is_possibilistic_model_json(j))
    return ctx::possibilistic_model_from_json(j, dir_of(path));
  return ctx::possibilistic_collapse(ctx::empirical_model_from_json(j, dir_of(path)));
}

int cmd_verify_sim(const Command& cmd, const std::string& mode) {
  ctx::ProbabilisticProcedure f =
      ctx::procedure_from_json(ctx::load_json_file(cmd.inputs[0]), dir_of(cmd.inputs[0]));
  bool holds;
  if (mode == "probabilistic") {
    ctx::EmpiricalModel from =
        ctx::empirical_model_from_json(ctx::load_json_file(cmd.inputs[1]), dir_of(cmd.inputs[1]));
    ctx::EmpiricalModel to =
        ctx::empirical_model_from_json(ctx::load_json_file(cmd.inputs[2]), dir_of(cmd.inputs[2]));
    holds = ctx::is_simulation(f, from, to);
  } else {
    ctx::PossibilisticProcedure g;
    for (const auto& [w, component] : f.mixture) g.components.push_back(component);
    ctx::SimulationMode sim = mode == "weak" ? ctx::SimulationMode::Weak
                                             : ctx::SimulationMode::Possibilistic;
    holds = ctx::is_simulation(g, load_possibilistic(cmd.inputs[1]),
                               load_possibilistic(cmd.inputs[2]), sim);
  }
  Json result;
  result["mode"] = mode;
  result["holds"] = holds;
  return cmd.emit(std::move(result), holds ? 0 : 1);
}

int cmd_game_value(const Command& cmd) {
  ctx::Experiment game = ctx::make_experiment(
      ctx::procedure_from_json(ctx::load_json_file(cmd.inputs[0]), dir_of(cmd.inputs[0])));
  Json result;
  if (cmd.inputs.size() > 1) {
    ctx::EmpiricalModel model =
        ctx::empirical_model_from_json(ctx::load_json_file(cmd.inputs[1]), dir_of(cmd.inputs[1]));
    result["value"] = ctx::to_string(ctx::model_value(game, model));
  } else {
    ctx::ClassicalValue classical = ctx::classical_value(game, cmd.budget);
    result["value"] = ctx::to_string(classical.value);
    result["strategy"] = ctx::assignment_to_json(classical.strategy);
  }
  return cmd.emit(std::move(result), 0);
}

int cmd_realizable(const Command& cmd) {
  ctx::RealizabilityQuery query =
      ctx::realizability_query_from_json(ctx::load_json_file(cmd.inputs[0]), dir_of(cmd.inputs[0]));
  ctx::RealizabilityResult verdict = ctx::realizable(query, cmd.budget);
  Json result;
  result["verdict"] = verdict.realizable ? "realizable" : "not_realizable";
  if (verdict.witness) result["witness"] = ctx::procedure_to_json(*verdict.witness);
  return cmd.emit(std::move(result), verdict.realizable ? 0 : 1);
}

int cmd_hom(const Command& cmd) {
  ctx::Scenario source =
      ctx::scenario_from_json(ctx::load_json_file(cmd.inputs[0]), dir_of(cmd.inputs[0]));
  ctx::Scenario target =
      ctx::scenario_from_json(ctx::load_json_file(cmd.inputs[1]), dir_of(cmd.inputs[1]));
  ctx::HomScenario hom = ctx::hom_scenario(source, target, ctx::kDefaultHomCeiling, cmd.budget);
  Json result;
  result["scenario"] = ctx::scenario_to_json(hom.base);
  result["predicate"] = ctx::predicate_to_json(hom.predicate);
  return cmd.emit(std::move(result), 0);
}

int cmd_ks(const Command& cmd) {
  ctx::Scenario scenario =
      ctx::scenario_from_json(ctx::load_json_file(cmd.inputs[0]), dir_of(cmd.inputs[0]));
  return cmd.emit(ctx::predicate_to_json(ctx::ks_predicate(scenario)), 0);
}

int cmd_canonical_predicate(const Command& cmd) {
  ctx::PossibilisticPredicate predicate =
      ctx::predicate_from_json(ctx::load_json_file(cmd.inputs[0]), dir_of(cmd.inputs[0]));
  auto model = ctx::canonical_model_of_predicate(predicate, cmd.budget);
  Json result;
  if (model) {
    result["verdict"] = "satisfiable";
    result["model"] = ctx::possibilistic_model_to_json(*model);
  } else {
    result["verdict"] = "unsatisfiable";
  }
  return cmd.emit(std::move(result), model ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contextuality analyses over scenario/model/procedure JSON files"};
  app.require_subcommand(1);

  Command cmd;
  std::string mode = "probabilistic";
  std::string model_file;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--budget", cmd.budget, "enumeration ceiling");
    sub->add_option("--output", cmd.output, "write the report to a file instead of stdout");
  };
  auto add_inputs = [&](CLI::App* sub, std::initializer_list<const char*> names) {
    cmd.inputs.clear();
    for (const char* n : names) {
      // positional values land in `cmd.inputs` in declaration order
      sub->add_option_function<std::string>(
             n, [&](const std::string& v) { cmd.inputs.push_back(v); })
          ->required();
    }
    add_common(sub);
  };

  auto* check = app.add_subcommand("check", "classify a model in the contextuality hierarchy");
  add_inputs(check, {"model"});
  auto* push = app.add_subcommand("push", "push a model forward along a procedure");
  add_inputs(push, {"procedure", "model"});
  auto* verify = app.add_subcommand("verify-sim", "check that a procedure simulates a model");
  add_inputs(verify, {"procedure", "from", "to"});
  verify->add_option("--mode", mode, "simulation notion")
      ->check(CLI::IsMember({"probabilistic", "possibilistic", "weak"}));
  auto* game = app.add_subcommand("game-value", "classical or model value of a game");
  add_inputs(game, {"game"});
  game->add_option("model", model_file, "evaluate on this model instead");
  auto* realizable = app.add_subcommand("realizable", "decide realizability of a tabulated map");
  add_inputs(realizable, {"query"});
  auto* hom = app.add_subcommand("hom", "construct the hom scenario [S,T]");
  add_inputs(hom, {"source", "target"});
  auto* ks = app.add_subcommand("ks", "the Kochen-Specker predicate of a scenario");
  add_inputs(ks, {"scenario"});
  auto* canonical =
      app.add_subcommand("canonical-predicate", "greatest model satisfying a predicate");
  add_inputs(canonical, {"predicate"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) { cmd.name = "check"; return cmd_check(cmd); }
    if (*push) { cmd.name = "push"; return cmd_push(cmd); }
    if (*verify) { cmd.name = "verify-sim"; return cmd_verify_sim(cmd, mode); }
    if (*game) {
      cmd.name = "game-value";
      if (!model_file.empty()) cmd.inputs.push_back(model_file);
      return cmd_game_value(cmd);
    }
    if (*realizable) { cmd.name = "realizable"; return cmd_realizable(cmd); }
    if (*hom) { cmd.name = "hom"; return cmd_hom(cmd); }
    if (*ks) { cmd.name = "ks"; return cmd_ks(cmd); }
    if (*canonical) { cmd.name = "canonical-predicate"; return cmd_canonical_predicate(cmd); }
  } catch (const ctx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ctx::ErrorCode::BudgetExceeded ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
