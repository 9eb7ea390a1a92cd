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

#include "admsyn/rollout.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "admsyn/error.hpp"
#include "admsyn/game_io.hpp"
#include "admsyn/rng.hpp"

namespace admsyn {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kGoalReached: return "goal_reached";
    case Outcome::kBudgetExceeded: return "budget_exceeded";
    case Outcome::kStepLimit: return "step_limit";
  }
  return "step_limit";
}

namespace {

bool valid_choice(const TreeArena& t, const TreeStrategy& sigma, NodeId u) {
  if (u >= static_cast<NodeId>(sigma.choice.size())) return false;
  NodeId c = sigma.choice[u];
  return c != kNoNode && c >= 0 && static_cast<std::size_t>(c) < t.size() &&
         t.node(c).parent == u;
}

}  // namespace

Trace rollout(const TreeArena& t, const TreeValueTable& vt,
              const TreeStrategy& sigma, const EnvPolicy& env,
              std::size_t max_steps) {
  // Best and worst payoff of sigma below each node. Children have larger
  // ids than their parent, so one reverse scan suffices. Where sigma is
  // undefined the tree values stand in; play never goes there without
  // raising IncompleteStrategy first.
  std::vector<Cost> best(t.size()), worst(t.size());
  for (NodeId u = static_cast<NodeId>(t.size()) - 1; u >= 0; --u) {
    if (t.is_leaf(u)) {
      best[u] = worst[u] = t.payoff(u);
    } else if (t.node(u).owner == Player::kSys) {
      if (valid_choice(t, sigma, u)) {
        best[u] = best[sigma.choice[u]];
        worst[u] = worst[sigma.choice[u]];
      } else {
        best[u] = vt.cval[u];
        worst[u] = vt.aval[u];
      }
    } else {
      best[u] = kInf;
      worst[u] = Cost::finite(0);
      for (const TreeEdge& e : t.children(u)) {
        best[u] = std::min(best[u], best[e.child]);
        worst[u] = std::max(worst[u], worst[e.child]);
      }
    }
  }

  Rng rng(env.seed);
  std::size_t script_pos = 0;
  Trace tr;
  NodeId u = t.root();
  while (!t.is_leaf(u)) {
    if (tr.steps.size() >= max_steps) {
      tr.final_node = u;
      return tr;
    }
    const TreeNode& n = t.node(u);
    NodeId next = kNoNode;
    if (n.owner == Player::kSys) {
      if (!valid_choice(t, sigma, u)) {
        throw Error(ErrorCode::kIncompleteStrategy,
                    "strategy has no valid choice at node " +
                        std::to_string(u));
      }
      next = sigma.choice[u];
    } else {
      const auto kids = t.children(u);
      switch (env.kind) {
        // Lowest action wins ties.
        case EnvPolicy::Kind::kAdversarial:
          for (const TreeEdge& e : kids)
            if (next == kNoNode || worst[e.child] > worst[next]) next = e.child;
          break;
        case EnvPolicy::Kind::kCooperative:
          for (const TreeEdge& e : kids)
            if (next == kNoNode || best[e.child] < best[next]) next = e.child;
          break;
        case EnvPolicy::Kind::kRandom:
          next = kids[rng.below(kids.size())].child;
          break;
        case EnvPolicy::Kind::kScripted:
          if (script_pos >= env.script.size()) {
            throw Error(ErrorCode::kScriptExhausted,
                        "script ran out at node " + std::to_string(u));
          }
          next = t.child_by_action(u, env.script[script_pos++]);
          if (next == kNoNode) {
            throw Error(ErrorCode::kInvalidPlay,
                        "scripted action " +
                            std::to_string(env.script[script_pos - 1]) +
                            " does not exist at node " + std::to_string(u));
          }
          break;
      }
    }
    tr.steps.push_back({u, n.state, n.owner, t.node(next).via,
                        t.node(next).accumulated - n.accumulated});
    u = next;
  }
  tr.final_node = u;
  if (t.node(u).kind == NodeKind::kGoalLeaf) {
    tr.outcome = Outcome::kGoalReached;
    tr.total = t.payoff(u);
  } else {
    tr.outcome = Outcome::kBudgetExceeded;
    tr.total = kInf;
  }
  return tr;
}

nlohmann::json trace_to_json(const Trace& tr) {
  nlohmann::json steps = nlohmann::json::array();
  for (const TraceStep& s : tr.steps) {
    steps.push_back({{"node", s.node},
                     {"state", s.state},
                     {"actor", std::string(player_name(s.actor))},
                     {"action", s.action},
                     {"cost", s.cost}});
  }
  return {{"steps", steps},
          {"outcome", std::string(outcome_name(tr.outcome))},
          {"total", cost_to_json(tr.total)},
          {"final_node", tr.final_node}};
}

std::string trace_transcript(const Trace& tr) {
  std::ostringstream os;
  for (const TraceStep& s : tr.steps) {
    os << player_name(s.actor) << " at v" << s.state << " (node " << s.node
       << ") plays " << s.action << ", cost " << s.cost << "\n";
  }
  os << outcome_name(tr.outcome) << ", total " << tr.total << "\n";
  return os.str();
}

}  // namespace admsyn
