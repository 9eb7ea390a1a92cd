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

#ifndef ADMSYN_VALUES_HPP_
#define ADMSYN_VALUES_HPP_

#include <optional>
#include <span>
#include <vector>

#include "admsyn/cost.hpp"
#include "admsyn/game.hpp"

namespace admsyn {

enum class ValueMode { kAdversarial, kCooperative };

// Result of one value iteration. `witness` holds the optimizing action per
// non-goal state: argmin at Sys states, and at Env states argmax in
// adversarial mode or argmin in cooperative mode. Ties go to the lowest id.
struct ValueTable {
  ValueMode mode = ValueMode::kAdversarial;
  std::vector<Cost> value;
  std::vector<std::optional<ActionId>> witness;
  std::size_t sweeps = 0;
};

ValueTable value_iteration(const GameGraph& g, ValueMode mode);

// Same iteration restricted to the states flagged in `active`; edges leaving
// the active set count as infinitely expensive.
ValueTable value_iteration(const GameGraph& g, ValueMode mode,
                           std::span<const std::uint8_t> active);

// One extra Bellman sweep over a converged table. Used by tests to check
// that the fixed point is stable.
std::vector<Cost> bellman_sweep(const GameGraph& g, ValueMode mode,
                                std::span<const Cost> value);

enum class Region { kWin, kPending, kLose };

struct RegionMap {
  std::vector<Region> region;
  int sval(StateId v) const;
};

RegionMap classify_regions(const ValueTable& adv, const ValueTable& coop);

std::string_view region_name(Region r);

enum class AcvalGraphMethod {
  // Least cooperative value over strategies whose worst case from v stays
  // within aval(v). Tracks the remaining allowance, so an expensive edge into
  // a cheap state is ruled out.
  kAllowance,
  // Cooperative value inside the subgame of states with aval <= aval(v).
  // Ignores edge costs when pruning, so it can undercut kAllowance on
  // weighted graphs. The two agree on tree arenas.
  kStateSubgame,
};

Cost acval_graph(const GameGraph& g, StateId v, const ValueTable& adv,
                 AcvalGraphMethod method = AcvalGraphMethod::kAllowance);

struct MemorylessStrategy {
  // One entry per state; set for non-goal Sys states only.
  std::vector<std::optional<ActionId>> choice;
};

// In the winning region, keeps only worst-case optimal actions
// (cost + aval(successor) <= aval(v)) and among those picks the cooperative
// optimum of the restricted game. Elsewhere picks the cooperative witness.
MemorylessStrategy wcoop_memoryless(const GameGraph& g);

}  // namespace admsyn

#endif  // ADMSYN_VALUES_HPP_
