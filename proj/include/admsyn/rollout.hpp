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

#ifndef ADMSYN_ROLLOUT_HPP_
#define ADMSYN_ROLLOUT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "admsyn/arena.hpp"
#include "admsyn/synthesis.hpp"
#include "json.hpp"

namespace admsyn {

struct TraceStep {
  NodeId node;
  StateId state;
  Player actor;
  ActionId action;
  std::int64_t cost;
};

enum class Outcome { kGoalReached, kBudgetExceeded, kStepLimit };

struct Trace {
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::kStepLimit;
  // Payoff of the goal leaf; infinite for the other outcomes.
  Cost total = kInf;
  NodeId final_node = kNoNode;
};

struct EnvPolicy {
  enum class Kind { kAdversarial, kCooperative, kRandom, kScripted };
  Kind kind = Kind::kAdversarial;
  std::uint64_t seed = 0;
  std::vector<ActionId> script;

  static EnvPolicy adversarial() { return {Kind::kAdversarial, 0, {}}; }
  static EnvPolicy cooperative() { return {Kind::kCooperative, 0, {}}; }
  static EnvPolicy random(std::uint64_t seed) { return {Kind::kRandom, seed, {}}; }
  static EnvPolicy scripted(std::vector<ActionId> actions) {
    return {Kind::kScripted, 0, std::move(actions)};
  }
};

inline constexpr std::size_t kDefaultMaxSteps = 1'000'000;

// Adversarial Env steers toward sigma's worst outcome below each node and
// cooperative Env toward its best, so both respond to sigma rather than to
// the optimal Sys play. `vt` only fills nodes sigma leaves undefined. Random
// play draws uniformly among children with Rng (mt19937_64 plus rejection
// sampling), one draw per Env decision.
Trace rollout(const TreeArena& t, const TreeValueTable& vt,
              const TreeStrategy& sigma, const EnvPolicy& env,
              std::size_t max_steps = kDefaultMaxSteps);

std::string_view outcome_name(Outcome o);
nlohmann::json trace_to_json(const Trace& tr);
std::string trace_transcript(const Trace& tr);

}  // namespace admsyn

#endif  // ADMSYN_ROLLOUT_HPP_
