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

#ifndef ADMSYN_GAME_HPP_
#define ADMSYN_GAME_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "admsyn/cost.hpp"

namespace admsyn {

using StateId = std::int32_t;
using ActionId = std::int32_t;

enum class Player : std::uint8_t { kSys, kEnv };

inline Player opponent(Player p) {
  return p == Player::kSys ? Player::kEnv : Player::kSys;
}

struct Transition {
  ActionId action;
  StateId to;
  std::int64_t cost;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Unvalidated description of a game, as read from JSON or produced by a
// generator. build_game turns it into a GameGraph or throws.
struct GameSpec {
  struct State {
    StateId id = 0;
    Player owner = Player::kSys;
    bool goal = false;
  };
  struct Edge {
    StateId from = 0;
    ActionId action = 0;
    StateId to = 0;
    std::int64_t cost = 0;
  };
  std::vector<State> states;
  StateId initial = 0;
  std::vector<Edge> edges;
};

class GameGraph {
 public:
  std::size_t num_states() const { return owner_.size(); }
  StateId initial() const { return initial_; }
  Player owner(StateId v) const;
  bool is_goal(StateId v) const;

  // Outgoing transitions of v in ascending action order.
  std::span<const Transition> successors(StateId v) const;

  // Throws kInvalidPlay when v has no action a.
  const Transition& transition(StateId v, ActionId a) const;

  std::int64_t max_cost() const;
  GameSpec to_spec() const;

  friend bool operator==(const GameGraph&, const GameGraph&) = default;

 private:
  friend GameGraph build_game(const GameSpec& spec);

  void check(StateId v) const;

  std::vector<Player> owner_;
  std::vector<std::uint8_t> goal_;
  std::vector<std::size_t> offset_;
  std::vector<Transition> edges_;
  StateId initial_ = 0;
};

// Validates the spec. Out-edges of goal states are kept but never traversed,
// so they are exempt from the alternation and cost-sign checks.
GameGraph build_game(const GameSpec& spec);

std::vector<Transition> successors(const GameGraph& g, StateId v);

struct Play {
  std::vector<StateId> states;
  std::vector<ActionId> actions;
  // Set for a play that never reaches a goal; the recorded states are then a
  // prefix of it.
  bool non_terminating = false;
};

Cost payoff_of_play(const GameGraph& g, const Play& p);

std::string_view player_name(Player p);

}  // namespace admsyn

#endif  // ADMSYN_GAME_HPP_
