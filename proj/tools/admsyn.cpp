// Copyright 2026 The admsyn Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Each subcommand loads its inputs, calls the
// library and writes JSON to stdout or to --out.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "admsyn/arena.hpp"
#include "admsyn/domains.hpp"
#include "admsyn/error.hpp"
#include "admsyn/game_io.hpp"
#include "admsyn/oracle.hpp"
#include "admsyn/random_game.hpp"
#include "admsyn/rollout.hpp"
#include "admsyn/synthesis.hpp"
#include "admsyn/values.hpp"

namespace {

using namespace admsyn;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitCap = 3;

struct Options {
  std::string game;
  std::string tree;
  std::string out;
  std::int64_t budget = -1;
  std::string mode = "adm";
  std::string acval = "subgame";
  std::string rule = "exact";
  std::string graph_acval = "allowance";
  std::uint64_t seed = 1;
  std::size_t node_cap = kDefaultNodeCap;
  std::string dot;
  std::string json_out;
  std::string emit_strategy;
  std::string extract = "min-cval";
  std::string strategy;
  std::string env = "adversarial";
  std::string script;
  std::string transcript;
  std::size_t games = 200;
  int max_states = 8;
  std::int64_t max_budget = 8;
  bool quiet = false;
  std::string spec;
  std::string labels_out;
  std::string dfa;
  std::string labels;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_file_atomically(o.out, text);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

GameGraph need_game(const Options& o) {
  if (o.game.empty()) throw Error(ErrorCode::kInvalidSpec, "--game is required");
  return load_game(o.game);
}

// Tree from --tree, or the unrolling of --game at --budget.
TreeArena need_tree(const Options& o) {
  if (!o.tree.empty()) return tree_from_json(read_json_file(o.tree));
  if (o.budget < 0) throw Error(ErrorCode::kInvalidSpec, "--budget is required");
  return unroll(need_game(o), o.budget, o.node_cap);
}

SynthesisMode parse_mode(const std::string& s) {
  return s == "adm-win" ? SynthesisMode::kAdmissibleWinning
                        : SynthesisMode::kAdmissible;
}

std::vector<Cost> acval_for(const Options& o, const TreeArena& t,
                            const TreeValueTable& vt) {
  return tree_acval(t, vt, o.acval == "one-step" ? AcvalMethod::kOneStep
                                                 : AcvalMethod::kSubgame);
}

StrategySet synthesize_for(const Options& o, const TreeArena& t,
                           const TreeValueTable& vt) {
  const std::vector<Cost> acv = acval_for(o, t, vt);
  return synthesize(t, vt, acv, parse_mode(o.mode),
                    o.rule == "path-min" ? Rule::kPathMin : Rule::kExact);
}

ExtractPolicy extract_policy(const Options& o) {
  return o.extract == "seeded" ? ExtractPolicy::seeded(o.seed)
                               : ExtractPolicy::min_cval();
}

int cmd_validate(const Options& o) {
  const GameGraph g = need_game(o);
  std::size_t edges = 0, goals = 0;
  for (std::size_t v = 0; v < g.num_states(); ++v) {
    edges += g.successors(static_cast<StateId>(v)).size();
    goals += g.is_goal(static_cast<StateId>(v));
  }
  emit(o, dump({{"valid", true},
                {"states", g.num_states()},
                {"edges", edges},
                {"goals", goals},
                {"initial", g.initial()},
                {"max_cost", g.max_cost()}}));
  return kExitOk;
}

int cmd_values(const Options& o) {
  const GameGraph g = need_game(o);
  const ValueTable adv = value_iteration(g, ValueMode::kAdversarial);
  const ValueTable coop = value_iteration(g, ValueMode::kCooperative);
  const RegionMap regions = classify_regions(adv, coop);
  const AcvalGraphMethod m = o.graph_acval == "state-subgame"
                                 ? AcvalGraphMethod::kStateSubgame
                                 : AcvalGraphMethod::kAllowance;
  const MemorylessStrategy wc = wcoop_memoryless(g);
  json states = json::array();
  for (std::size_t i = 0; i < g.num_states(); ++i) {
    const StateId v = static_cast<StateId>(i);
    json s = {{"state", v},
              {"aval", cost_to_json(adv.value[v])},
              {"cval", cost_to_json(coop.value[v])},
              {"acval", cost_to_json(acval_graph(g, v, adv, m))},
              {"region", std::string(region_name(regions.region[v]))}};
    s["wcoop_action"] = wc.choice[v] ? json(*wc.choice[v]) : json(nullptr);
    states.push_back(s);
  }
  emit(o, dump({{"sweeps", {{"adversarial", adv.sweeps},
                            {"cooperative", coop.sweeps}}},
                {"states", states}}));
  return kExitOk;
}

int cmd_unroll(const Options& o) {
  const TreeArena t = need_tree(o);
  const TreeStats st = tree_stats(t);
  if (!o.dot.empty()) {
    const TreeValueTable vt = tree_values(t);
    write_file_atomically(o.dot, tree_to_dot(t, &vt));
  }
  if (!o.json_out.empty()) write_file_atomically(o.json_out, dump(tree_to_json(t)));
  emit(o, dump({{"budget", t.budget()},
                {"nodes", st.nodes},
                {"internal", st.internal},
                {"goal_leaves", st.goal_leaves},
                {"dead_leaves", st.dead_leaves},
                {"depth", st.depth}}));
  return kExitOk;
}

int cmd_synthesize(const Options& o) {
  const TreeArena t = need_tree(o);
  const TreeValueTable vt = tree_values(t);
  const StrategySet s = synthesize_for(o, t, vt);
  json j = strategy_set_to_json(t, s);
  j["acval"] = o.acval;
  j["seed"] = o.seed;
  if (!o.emit_strategy.empty()) {
    const TreeStrategy x = extract_strategy(t, s, extract_policy(o));
    json sj = tree_strategy_to_json(t, x);
    sj["seed"] = o.seed;
    sj["extract"] = o.extract;
    write_file_atomically(o.emit_strategy, dump(sj));
  }
  emit(o, dump(j));
  return kExitOk;
}

int cmd_oracle_check(const Options& o) {
  RandomGameOptions opt;
  opt.max_states = o.max_states;
  opt.min_states = std::min(opt.min_states, o.max_states);
  opt.max_budget = o.max_budget;
  opt.min_budget = std::min(opt.min_budget, o.max_budget);
  const Corpus corpus = oracle_corpus(o.seed, o.games, opt);
  const Rule rule = o.rule == "path-min" ? Rule::kPathMin : Rule::kExact;
  std::size_t bad_games = 0;
  std::ostringstream os;
  for (std::size_t i = 0; i < corpus.cases.size(); ++i) {
    const RandomCase& c = corpus.cases[i];
    const TreeArena t = unroll(c.game, c.budget);
    const CrossCheck r = cross_check(t, rule);
    const bool ok = r.mismatches[0] == 0 && r.mismatches[1] == 0;
    bad_games += !ok;
    if (!o.quiet || !ok) {
      os << "game " << i << " seed " << c.seed << " states "
         << c.game.num_states() << " budget " << c.budget << " nodes "
         << t.size() << " strategies " << r.strategies << " adm "
         << r.members[0] << "/" << r.oracle_members[0] << " win "
         << r.members[1] << "/" << r.oracle_members[1] << " "
         << (ok ? "agree" : "MISMATCH") << "\n";
    }
  }
  os << "seed " << o.seed << " games " << corpus.cases.size() << " generated "
     << corpus.generated << " skipped " << corpus.skipped << " mismatched "
     << bad_games << ": " << (bad_games ? "FAIL" : "PASS") << "\n";
  emit(o, os.str());
  return bad_games ? kExitMismatch : kExitOk;
}

EnvPolicy env_policy(const Options& o) {
  if (o.env == "cooperative") return EnvPolicy::cooperative();
  if (o.env == "random") return EnvPolicy::random(o.seed);
  if (o.env == "scripted") {
    std::vector<ActionId> acts;
    std::stringstream ss(o.script);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        acts.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidSpec, "bad script entry '" + tok + "'");
      }
    }
    return EnvPolicy::scripted(std::move(acts));
  }
  return EnvPolicy::adversarial();
}

int cmd_rollout(const Options& o) {
  const TreeArena t = need_tree(o);
  const TreeValueTable vt = tree_values(t);
  TreeStrategy sigma;
  if (!o.strategy.empty()) {
    sigma = tree_strategy_from_json(t, read_json_file(o.strategy));
  } else {
    sigma = extract_strategy(t, synthesize_for(o, t, vt), extract_policy(o));
  }
  const Trace tr = rollout(t, vt, sigma, env_policy(o));
  json j = trace_to_json(tr);
  j["env"] = o.env;
  j["seed"] = o.seed;
  j["budget"] = t.budget();
  if (!o.transcript.empty()) write_file_atomically(o.transcript, trace_transcript(tr));
  emit(o, dump(j));
  return kExitOk;
}

int cmd_gridworld_gen(const Options& o) {
  if (o.spec.empty()) throw Error(ErrorCode::kInvalidSpec, "--spec is required");
  const GridSpec spec = grid_spec_from_json(read_json_file(o.spec));
  const GridWorld w = build_gridworld(spec);
  json j = game_to_json(w.game);
  json cells = json::array();
  for (std::size_t v = 0; v < w.game.num_states(); ++v) {
    cells.push_back({{"state", v},
                     {"sys", {w.sys_cell[v].x, w.sys_cell[v].y}},
                     {"env", {w.env_cell[v].x, w.env_cell[v].y}},
                     {"caught", w.caught[v] != 0}});
  }
  j["cells"] = cells;
  if (!o.labels_out.empty()) {
    write_file_atomically(o.labels_out, dump({{"labels", w.labeling(spec)}}));
  }
  emit(o, dump(j));
  return kExitOk;
}

int cmd_product(const Options& o) {
  const GameGraph g = need_game(o);
  if (o.dfa.empty() || o.labels.empty())
    throw Error(ErrorCode::kInvalidSpec, "--dfa and --labels are required");
  const Dfa d = dfa_from_json(read_json_file(o.dfa));
  const json lj = read_json_file(o.labels);
  std::vector<std::string> labels;
  try {
    labels = lj.at("labels").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidSpec, e.what());
  }
  const ProductGame p = product_with_dfa(g, d, labels);
  json j = game_to_json(p.game);
  json origin = json::array();
  for (const auto& [v, q] : p.origin) origin.push_back({{"state", v}, {"dfa", q}});
  j["origin"] = origin;
  emit(o, dump(j));
  return kExitOk;
}

int cmd_export_dot(const Options& o) {
  if (!o.tree.empty() || o.budget >= 0) {
    const TreeArena t = need_tree(o);
    const TreeValueTable vt = tree_values(t);
    emit(o, tree_to_dot(t, &vt));
  } else {
    emit(o, game_to_dot(need_game(o)));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Admissible strategy synthesis for quantitative reachability games"};
  app.require_subcommand(1);
  Options o;
  int (*run)(const Options&) = nullptr;

  auto add_game = [&](CLI::App* sc) {
    sc->add_option("--game", o.game, "game JSON file");
  };
  auto add_tree = [&](CLI::App* sc) {
    add_game(sc);
    sc->add_option("--tree", o.tree, "tree JSON file instead of --game/--budget");
    sc->add_option("--budget", o.budget, "energy budget")->check(CLI::NonNegativeNumber);
    sc->add_option("--node-cap", o.node_cap, "maximum tree size");
  };
  auto add_synth = [&](CLI::App* sc) {
    sc->add_option("--mode", o.mode)->check(CLI::IsMember({"adm", "adm-win"}));
    sc->add_option("--acval", o.acval)->check(CLI::IsMember({"subgame", "one-step"}));
    sc->add_option("--rule", o.rule)->check(CLI::IsMember({"exact", "path-min"}));
    sc->add_option("--extract", o.extract, "strategy extraction policy")
        ->check(CLI::IsMember({"min-cval", "seeded"}));
  };
  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--out", o.out, "output file (default stdout)");
    sc->add_option("--seed", o.seed, "seed for every random choice");
  };

  auto* validate = app.add_subcommand("validate", "check a game file");
  add_game(validate);
  add_common(validate);
  validate->callback([&] { run = cmd_validate; });

  auto* values = app.add_subcommand("values", "per-state values and regions");
  add_game(values);
  add_common(values);
  values->add_option("--graph-acval", o.graph_acval)
      ->check(CLI::IsMember({"allowance", "state-subgame"}));
  values->callback([&] { run = cmd_values; });

  auto* unroll_cmd = app.add_subcommand("unroll", "unroll a game into a tree");
  add_tree(unroll_cmd);
  add_common(unroll_cmd);
  unroll_cmd->add_option("--dot", o.dot, "write the tree as DOT");
  unroll_cmd->add_option("--json", o.json_out, "write the tree as JSON");
  unroll_cmd->callback([&] { run = cmd_unroll; });

  auto* synth = app.add_subcommand("synthesize", "admissible strategy sets");
  add_tree(synth);
  add_synth(synth);
  add_common(synth);
  synth->add_option("--emit-strategy", o.emit_strategy,
                    "write one member of the set");
  synth->callback([&] { run = cmd_synthesize; });

  auto* oracle = app.add_subcommand("oracle-check",
                                    "compare synthesis with brute force");
  add_common(oracle);
  oracle->add_option("--games", o.games);
  oracle->add_option("--max-states", o.max_states)->check(CLI::Range(2, 64));
  oracle->add_option("--max-budget", o.max_budget)->check(CLI::Range(0, 64));
  oracle->add_option("--rule", o.rule)->check(CLI::IsMember({"exact", "path-min"}));
  oracle->add_flag("--quiet", o.quiet, "print only mismatches and the verdict");
  oracle->callback([&] { run = cmd_oracle_check; });

  auto* roll = app.add_subcommand("rollout", "play a strategy against Env");
  add_tree(roll);
  add_synth(roll);
  add_common(roll);
  roll->add_option("--strategy", o.strategy, "strategy JSON (default: extract)");
  roll->add_option("--env", o.env)
      ->check(CLI::IsMember({"adversarial", "cooperative", "random", "scripted"}));
  roll->add_option("--script", o.script, "comma-separated Env actions");
  roll->add_option("--transcript", o.transcript, "write a readable transcript");
  roll->callback([&] { run = cmd_rollout; });

  auto* grid = app.add_subcommand("gridworld", "gridworld games");
  grid->require_subcommand(1);
  auto* gen = grid->add_subcommand("gen", "build a game from a grid spec");
  gen->add_option("--spec", o.spec, "grid spec JSON")->required();
  gen->add_option("--labels-out", o.labels_out, "write the state labeling");
  add_common(gen);
  gen->callback([&] { run = cmd_gridworld_gen; });

  auto* prod = app.add_subcommand("product", "product of a game with a DFA");
  add_game(prod);
  add_common(prod);
  prod->add_option("--dfa", o.dfa, "DFA JSON");
  prod->add_option("--labels", o.labels, "labeling JSON");
  prod->callback([&] { run = cmd_product; });

  auto* dot = app.add_subcommand("export-dot", "DOT rendering of a game or tree");
  add_tree(dot);
  add_common(dot);
  dot->callback([&] { run = cmd_export_dot; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    return run(o);
  } catch (const Error& e) {
    std::cerr << "admsyn: " << e.what() << "\n";
    if (e.code() == ErrorCode::kBudgetOverflowGuard ||
        e.code() == ErrorCode::kEnumerationTooLarge) {
      return kExitCap;
    }
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "admsyn: " << e.what() << "\n";
    return kExitError;
  }
}
