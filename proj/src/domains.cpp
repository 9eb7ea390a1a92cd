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

#include "admsyn/domains.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "admsyn/error.hpp"

namespace admsyn {

namespace {

using nlohmann::json;

constexpr int kDx[] = {0, 1, 0, -1, 0};
constexpr int kDy[] = {-1, 0, 1, 0, 0};

Cell cell_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw Error(ErrorCode::kInvalidSpec, "cell must be [x, y]");
  return Cell{j[0].get<int>(), j[1].get<int>()};
}

json cell_to_json(Cell c) { return json::array({c.x, c.y}); }

// Grid states before numbering. turn is the player to move.
struct GridKey {
  Cell sys;
  Cell env;
  Player turn;
  bool sink;
  auto operator<=>(const GridKey&) const = default;
};

}  // namespace

std::vector<std::string> GridWorld::labeling(const GridSpec& spec) const {
  std::map<Cell, std::string> by_cell;
  for (const auto& [symbol, cells] : spec.labels)
    for (Cell c : cells) by_cell[c] = symbol;
  std::vector<std::string> out(game.num_states(), spec.default_label);
  for (std::size_t v = 0; v < out.size(); ++v) {
    if (caught[v]) continue;
    auto it = by_cell.find(sys_cell[v]);
    if (it != by_cell.end()) out[v] = it->second;
  }
  return out;
}

GridWorld build_gridworld(const GridSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0)
    throw Error(ErrorCode::kInvalidSpec, "grid dimensions must be positive");
  std::set<Cell> lava(spec.lava.begin(), spec.lava.end());
  auto inside = [&](Cell c) {
    return c.x >= 0 && c.y >= 0 && c.x < spec.width && c.y < spec.height;
  };
  for (Cell c : {spec.sys_start, spec.env_start})
    if (!inside(c)) throw Error(ErrorCode::kInvalidSpec, "cell out of bounds");
  if (spec.goal && !inside(*spec.goal))
    throw Error(ErrorCode::kInvalidSpec, "cell out of bounds");
  if (spec.sys_start == spec.env_start)
    throw Error(ErrorCode::kInvalidSpec, "start cells coincide");
  if (spec.goal && lava.contains(*spec.goal))
    throw Error(ErrorCode::kInvalidSpec, "goal cell is lava");
  if (lava.contains(spec.sys_start) || lava.contains(spec.env_start))
    throw Error(ErrorCode::kInvalidSpec, "start cell is lava");
  if (spec.goal && spec.env_start == *spec.goal)
    throw Error(ErrorCode::kInvalidSpec, "env may not start on the goal");

  auto free_cell = [&](Cell c) { return inside(c) && !lava.contains(c); };

  std::map<GridKey, StateId> ids;
  std::vector<GridKey> keys;
  std::deque<StateId> queue;
  auto intern = [&](const GridKey& k) {
    auto [it, fresh] = ids.emplace(k, static_cast<StateId>(keys.size()));
    if (fresh) {
      keys.push_back(k);
      queue.push_back(it->second);
    }
    return it->second;
  };

  GameSpec gs;
  intern(GridKey{spec.sys_start, spec.env_start, Player::kSys, false});
  auto is_goal = [&](const GridKey& k) { return !k.sink && spec.goal && k.sys == *spec.goal; };

  while (!queue.empty()) {
    StateId v = queue.front();
    queue.pop_front();
    GridKey k = keys[v];
    if (is_goal(k)) {
      gs.edges.push_back({v, 0, v, 0});
      continue;
    }
    if (k.sink) {
      // Sinks alternate forever; Sys pays on each of its steps.
      GridKey other{k.sys, k.env, opponent(k.turn), true};
      StateId w = intern(other);
      gs.edges.push_back({v, 0, w, k.turn == Player::kSys ? 1 : 0});
      continue;
    }
    bool sys_turn = k.turn == Player::kSys;
    bool stay = sys_turn ? spec.allow_stay : spec.env_allow_stay;
    for (ActionId a = kNorth; a <= kStay; ++a) {
      if (a == kStay && !stay) continue;
      Cell from = sys_turn ? k.sys : k.env;
      Cell to{from.x + kDx[a], from.y + kDy[a]};
      if (!free_cell(to)) continue;
      if (!sys_turn && spec.goal && to == *spec.goal) continue;
      Cell other = sys_turn ? k.env : k.sys;
      GridKey next;
      if (spec.capture && to == other) {
        next = sys_turn ? GridKey{to, k.env, Player::kEnv, true}
                        : GridKey{k.sys, to, Player::kSys, true};
      } else {
        next = sys_turn ? GridKey{to, k.env, Player::kEnv, false}
                        : GridKey{k.sys, to, Player::kSys, false};
      }
      StateId w = intern(next);
      gs.edges.push_back({v, a, w, sys_turn ? 1 : 0});
    }
  }

  GridWorld out;
  for (std::size_t v = 0; v < keys.size(); ++v) {
    gs.states.push_back(
        {static_cast<StateId>(v), keys[v].turn, is_goal(keys[v])});
    out.sys_cell.push_back(keys[v].sys);
    out.env_cell.push_back(keys[v].env);
    out.caught.push_back(keys[v].sink ? 1 : 0);
  }
  gs.initial = 0;
  try {
    out.game = build_game(gs);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBlockingState)
      throw Error(ErrorCode::kInvalidSpec,
                  std::string("a player is boxed in: ") + e.what());
    throw;
  }
  return out;
}

GridSpec grid_spec_from_json(const json& j) {
  try {
    GridSpec s;
    s.width = j.at("width").get<int>();
    s.height = j.at("height").get<int>();
    s.sys_start = cell_from_json(j.at("sys_start"));
    s.env_start = cell_from_json(j.at("env_start"));
    if (j.contains("goal") && !j["goal"].is_null())
      s.goal = cell_from_json(j["goal"]);
    if (j.contains("lava"))
      for (const auto& c : j["lava"]) s.lava.push_back(cell_from_json(c));
    s.allow_stay = j.value("allow_stay", false);
    s.env_allow_stay = j.value("env_allow_stay", true);
    std::string capture = j.value("capture", std::string("sink"));
    if (capture != "sink" && capture != "none")
      throw Error(ErrorCode::kInvalidSpec, "capture must be sink or none");
    s.capture = capture == "sink";
    if (j.contains("labels")) {
      for (const auto& [symbol, cells] : j["labels"].items()) {
        std::vector<Cell> cs;
        for (const auto& c : cells) cs.push_back(cell_from_json(c));
        s.labels.emplace_back(symbol, std::move(cs));
      }
    }
    s.default_label = j.value("default_label", std::string("none"));
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidSpec, e.what());
  }
}

json grid_spec_to_json(const GridSpec& s) {
  json j;
  j["width"] = s.width;
  j["height"] = s.height;
  j["sys_start"] = cell_to_json(s.sys_start);
  j["env_start"] = cell_to_json(s.env_start);
  if (s.goal) j["goal"] = cell_to_json(*s.goal);
  j["lava"] = json::array();
  for (Cell c : s.lava) j["lava"].push_back(cell_to_json(c));
  j["allow_stay"] = s.allow_stay;
  j["env_allow_stay"] = s.env_allow_stay;
  j["capture"] = s.capture ? "sink" : "none";
  if (!s.labels.empty()) {
    j["labels"] = json::object();
    for (const auto& [symbol, cells] : s.labels) {
      json arr = json::array();
      for (Cell c : cells) arr.push_back(cell_to_json(c));
      j["labels"][symbol] = arr;
    }
  }
  j["default_label"] = s.default_label;
  return j;
}

int Dfa::symbol_index(const std::string& symbol) const {
  auto it = std::find(alphabet.begin(), alphabet.end(), symbol);
  if (it == alphabet.end())
    throw Error(ErrorCode::kLabelOutsideAlphabet, "symbol '" + symbol + "'");
  return static_cast<int>(it - alphabet.begin());
}

int Dfa::step(int q, const std::string& symbol) const {
  return delta.at(q).at(symbol_index(symbol));
}

Dfa dfa_from_json(const json& j) {
  try {
    Dfa d;
    d.num_states = j.at("states").get<int>();
    if (d.num_states <= 0)
      throw Error(ErrorCode::kInvalidSpec, "dfa needs at least one state");
    d.initial = j.at("initial").get<int>();
    d.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    std::set<std::string> seen(d.alphabet.begin(), d.alphabet.end());
    if (seen.size() != d.alphabet.size())
      throw Error(ErrorCode::kInvalidSpec, "duplicate alphabet symbol");
    auto check_q = [&](int q) {
      if (q < 0 || q >= d.num_states)
        throw Error(ErrorCode::kInvalidSpec,
                    "dfa state " + std::to_string(q) + " out of range");
    };
    check_q(d.initial);
    d.accepting.assign(d.num_states, 0);
    for (int q : j.at("accepting").get<std::vector<int>>()) {
      check_q(q);
      d.accepting[q] = 1;
    }
    d.delta.assign(d.num_states, std::vector<int>(d.alphabet.size(), -1));
    for (const auto& t : j.at("transitions")) {
      int from = t.at("from").get<int>();
      int to = t.at("to").get<int>();
      check_q(from);
      check_q(to);
      int i = d.symbol_index(t.at("symbol").get<std::string>());
      if (d.delta[from][i] != -1)
        throw Error(ErrorCode::kInvalidSpec, "nondeterministic transition");
      d.delta[from][i] = to;
    }
    for (int q = 0; q < d.num_states; ++q)
      for (std::size_t i = 0; i < d.alphabet.size(); ++i)
        if (d.delta[q][i] == -1)
          throw Error(ErrorCode::kInvalidSpec,
                      "dfa is not total at state " + std::to_string(q) +
                          " on '" + d.alphabet[i] + "'");
    return d;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidSpec, e.what());
  }
}

ProductGame product_with_dfa(const GameGraph& g, const Dfa& d,
                             const std::vector<std::string>& labeling) {
  if (labeling.size() != g.num_states())
    throw Error(ErrorCode::kInvalidSpec, "labeling size does not match game");
  std::vector<int> sym(labeling.size());
  for (std::size_t v = 0; v < labeling.size(); ++v)
    sym[v] = d.symbol_index(labeling[v]);

  std::map<std::pair<StateId, int>, StateId> ids;
  ProductGame out;
  std::deque<StateId> queue;
  auto intern = [&](StateId v, int q) {
    auto [it, fresh] =
        ids.emplace(std::pair{v, q}, static_cast<StateId>(out.origin.size()));
    if (fresh) {
      out.origin.emplace_back(v, q);
      queue.push_back(it->second);
    }
    return it->second;
  };

  GameSpec gs;
  intern(g.initial(), d.delta[d.initial][sym[g.initial()]]);
  while (!queue.empty()) {
    StateId p = queue.front();
    queue.pop_front();
    auto [v, q] = out.origin[p];
    if (d.accepting[q]) {
      gs.edges.push_back({p, 0, p, 0});
      continue;
    }
    for (const Transition& t : g.successors(v)) {
      StateId w = intern(t.to, d.delta[q][sym[t.to]]);
      gs.edges.push_back({p, t.action, w, t.cost});
    }
  }
  for (std::size_t p = 0; p < out.origin.size(); ++p) {
    auto [v, q] = out.origin[p];
    gs.states.push_back(
        {static_cast<StateId>(p), g.owner(v), d.accepting[q] != 0});
  }
  gs.initial = 0;
  out.game = build_game(gs);
  return out;
}

}  // namespace admsyn
