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

#include "admsyn/game.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "admsyn/error.hpp"

namespace admsyn {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAlternationViolation: return "AlternationViolation";
    case ErrorCode::kBlockingState: return "BlockingState";
    case ErrorCode::kInjectivityViolation: return "InjectivityViolation";
    case ErrorCode::kCostSignViolation: return "CostSignViolation";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kMalformedSpec: return "MalformedSpec";
    case ErrorCode::kUnknownState: return "UnknownState";
    case ErrorCode::kInvalidPlay: return "InvalidPlay";
    case ErrorCode::kInconsistentTables: return "InconsistentTables";
    case ErrorCode::kBudgetOverflowGuard: return "BudgetOverflowGuard";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kIncompleteStrategy: return "IncompleteStrategy";
    case ErrorCode::kScriptExhausted: return "ScriptExhausted";
    case ErrorCode::kBothOrNeither: return "BothOrNeither";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kLabelOutsideAlphabet: return "LabelOutsideAlphabet";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

std::string_view player_name(Player p) {
  return p == Player::kSys ? "sys" : "env";
}

namespace {

std::string state_label(StateId v) { return "state " + std::to_string(v); }

std::string edge_label(StateId v, ActionId a) {
  return "state " + std::to_string(v) + " action " + std::to_string(a);
}

}  // namespace

void GameGraph::check(StateId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= owner_.size()) {
    throw Error(ErrorCode::kUnknownState, state_label(v));
  }
}

Player GameGraph::owner(StateId v) const {
  check(v);
  return owner_[v];
}

bool GameGraph::is_goal(StateId v) const {
  check(v);
  return goal_[v] != 0;
}

std::span<const Transition> GameGraph::successors(StateId v) const {
  check(v);
  return {edges_.data() + offset_[v], edges_.data() + offset_[v + 1]};
}

const Transition& GameGraph::transition(StateId v, ActionId a) const {
  for (const Transition& t : successors(v)) {
    if (t.action == a) return t;
  }
  throw Error(ErrorCode::kInvalidPlay, "no " + edge_label(v, a));
}

std::int64_t GameGraph::max_cost() const {
  std::int64_t m = 0;
  for (const Transition& t : edges_) m = std::max(m, t.cost);
  return m;
}

GameSpec GameGraph::to_spec() const {
  GameSpec s;
  s.initial = initial_;
  for (std::size_t v = 0; v < owner_.size(); ++v) {
    s.states.push_back({static_cast<StateId>(v), owner_[v], goal_[v] != 0});
    for (const Transition& t : successors(static_cast<StateId>(v))) {
      s.edges.push_back({static_cast<StateId>(v), t.action, t.to, t.cost});
    }
  }
  return s;
}

GameGraph build_game(const GameSpec& spec) {
  const std::size_t n = spec.states.size();
  if (n == 0) throw Error(ErrorCode::kMalformedSpec, "game has no states");

  GameGraph g;
  g.owner_.assign(n, Player::kSys);
  g.goal_.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (const auto& s : spec.states) {
    if (s.id < 0 || static_cast<std::size_t>(s.id) >= n) {
      throw Error(ErrorCode::kMalformedSpec,
                  "state ids must be 0.." + std::to_string(n - 1) + ", got " +
                      std::to_string(s.id));
    }
    if (seen[s.id]) {
      throw Error(ErrorCode::kMalformedSpec,
                  "duplicate " + state_label(s.id));
    }
    seen[s.id] = true;
    g.owner_[s.id] = s.owner;
    g.goal_[s.id] = s.goal ? 1 : 0;
  }
  auto known = [n](StateId v) {
    return v >= 0 && static_cast<std::size_t>(v) < n;
  };
  if (!known(spec.initial)) {
    throw Error(ErrorCode::kDanglingReference,
                "initial " + state_label(spec.initial));
  }
  g.initial_ = spec.initial;

  std::vector<std::vector<Transition>> out(n);
  for (const auto& e : spec.edges) {
    if (!known(e.from)) {
      throw Error(ErrorCode::kDanglingReference,
                  "edge source " + state_label(e.from));
    }
    if (!known(e.to)) {
      throw Error(ErrorCode::kDanglingReference,
                  "edge target " + state_label(e.to) + " from " +
                      edge_label(e.from, e.action));
    }
    if (e.action < 0) {
      throw Error(ErrorCode::kMalformedSpec,
                  "negative action id at " + state_label(e.from));
    }
    out[e.from].push_back({e.action, e.to, e.cost});
  }

  for (std::size_t v = 0; v < n; ++v) {
    auto& ts = out[v];
    const StateId sv = static_cast<StateId>(v);
    std::sort(ts.begin(), ts.end(),
              [](const Transition& a, const Transition& b) {
                return a.action < b.action;
              });
    std::set<StateId> targets;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i > 0 && ts[i].action == ts[i - 1].action) {
        throw Error(ErrorCode::kMalformedSpec,
                    "duplicate " + edge_label(sv, ts[i].action));
      }
      if (!targets.insert(ts[i].to).second) {
        throw Error(ErrorCode::kInjectivityViolation,
                    edge_label(sv, ts[i].action) + " repeats successor " +
                        std::to_string(ts[i].to));
      }
      if (ts[i].cost < 0) {
        throw Error(ErrorCode::kCostSignViolation,
                    edge_label(sv, ts[i].action) + " has negative cost");
      }
      if (g.goal_[v]) continue;
      if (g.owner_[ts[i].to] == g.owner_[v]) {
        throw Error(ErrorCode::kAlternationViolation,
                    edge_label(sv, ts[i].action) + " stays with " +
                        std::string(player_name(g.owner_[v])));
      }
      const bool sys = g.owner_[v] == Player::kSys;
      if (sys ? ts[i].cost <= 0 : ts[i].cost != 0) {
        throw Error(ErrorCode::kCostSignViolation,
                    edge_label(sv, ts[i].action) + " has cost " +
                        std::to_string(ts[i].cost) +
                        (sys ? ", sys actions must cost > 0"
                             : ", env actions must cost 0"));
      }
    }
    if (ts.empty()) throw Error(ErrorCode::kBlockingState, state_label(sv));
  }

  g.offset_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    g.offset_[v + 1] = g.offset_[v] + out[v].size();
    g.edges_.insert(g.edges_.end(), out[v].begin(), out[v].end());
  }
  return g;
}

std::vector<Transition> successors(const GameGraph& g, StateId v) {
  auto s = g.successors(v);
  return {s.begin(), s.end()};
}

Cost payoff_of_play(const GameGraph& g, const Play& p) {
  if (p.states.empty() || p.actions.size() + 1 != p.states.size()) {
    throw Error(ErrorCode::kInvalidPlay,
                "a play needs exactly one more state than actions");
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < p.actions.size(); ++i) {
    if (g.is_goal(p.states[i])) {
      throw Error(ErrorCode::kInvalidPlay,
                  "play continues past goal " + state_label(p.states[i]));
    }
    const Transition& t = g.transition(p.states[i], p.actions[i]);
    if (t.to != p.states[i + 1]) {
      throw Error(ErrorCode::kInvalidPlay,
                  edge_label(p.states[i], p.actions[i]) + " does not lead to " +
                      state_label(p.states[i + 1]));
    }
    total += t.cost;
  }
  if (p.non_terminating) {
    if (g.is_goal(p.states.back())) {
      throw Error(ErrorCode::kInvalidPlay,
                  "non-terminating play reaches a goal");
    }
    return kInf;
  }
  if (!g.is_goal(p.states.back())) {
    throw Error(ErrorCode::kInvalidPlay,
                "finite play does not end in a goal state");
  }
  return Cost::finite(total);
}

}  // namespace admsyn
