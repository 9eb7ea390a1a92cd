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

#ifndef ADMSYN_DOMAINS_HPP_
#define ADMSYN_DOMAINS_HPP_

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "admsyn/game.hpp"
#include "json.hpp"

namespace admsyn {

struct Cell {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct GridSpec {
  int width = 1;
  int height = 1;
  Cell sys_start;
  Cell env_start;
  // Without a goal cell the grid has no goal states; used as a product base.
  std::optional<Cell> goal;
  std::vector<Cell> lava;
  bool allow_stay = false;      // Sys may pass
  bool env_allow_stay = true;   // Env may pass
  bool capture = true;          // co-location sends play to a losing sink
  // Symbols for the product construction, by the Sys player's cell.
  std::vector<std::pair<std::string, std::vector<Cell>>> labels;
  std::string default_label = "none";
};

// Grid actions are direction codes.
enum Move : ActionId { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3, kStay = 4 };

struct GridWorld {
  GameGraph game;
  // Per state. Sink states carry the cells of the capture that led there.
  std::vector<Cell> sys_cell;
  std::vector<Cell> env_cell;
  std::vector<std::uint8_t> caught;

  // Symbol per state from the spec's cell labels; sinks get the default.
  std::vector<std::string> labeling(const GridSpec& spec) const;
};

// States are (Sys cell, Env cell, player to move), Sys moving first, plus
// two capture sinks (one per player, to keep turns alternating). Only states
// reachable from the start are built; ids follow discovery order.
GridWorld build_gridworld(const GridSpec& spec);

GridSpec grid_spec_from_json(const nlohmann::json& j);
nlohmann::json grid_spec_to_json(const GridSpec& spec);

struct Dfa {
  int num_states = 0;
  int initial = 0;
  std::vector<std::uint8_t> accepting;
  std::vector<std::string> alphabet;
  // delta[q][i] for the i-th alphabet symbol.
  std::vector<std::vector<int>> delta;

  int symbol_index(const std::string& symbol) const;
  int step(int q, const std::string& symbol) const;
};

// {"states": n, "initial": q, "accepting": [..], "alphabet": [..],
//  "transitions": [{"from", "symbol", "to"}]}; must be total.
Dfa dfa_from_json(const nlohmann::json& j);

struct ProductGame {
  GameGraph game;
  std::vector<std::pair<StateId, int>> origin;  // (game state, dfa state)
};

// The automaton reads the label of the initial state first, then the label
// of every state entered. Goals are the product states whose automaton state
// accepts; they get a single self-loop since play stops there. The game's
// own goal flags are ignored.
ProductGame product_with_dfa(const GameGraph& g, const Dfa& d,
                             const std::vector<std::string>& labeling);

}  // namespace admsyn

#endif  // ADMSYN_DOMAINS_HPP_
