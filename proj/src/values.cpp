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

#include "admsyn/values.hpp"

#include <functional>

#include "admsyn/error.hpp"

namespace admsyn {

namespace {

using EdgeFilter = std::function<bool(StateId, const Transition&)>;

struct Update {
  Cost value;
  std::optional<ActionId> witness;
};

Update bellman(const GameGraph& g, ValueMode mode, StateId v,
               std::span<const Cost> value, const EdgeFilter& keep) {
  const bool maximize =
      mode == ValueMode::kAdversarial && g.owner(v) == Player::kEnv;
  Update best{maximize ? Cost::finite(0) : kInf, std::nullopt};
  for (const Transition& t : g.successors(v)) {
    const Cost c =
        (!keep || keep(v, t)) ? Cost::finite(t.cost) + value[t.to] : kInf;
    const bool better =
        !best.witness || (maximize ? c > best.value : c < best.value);
    if (better) best = {c, t.action};
  }
  return best;
}

ValueTable iterate(const GameGraph& g, ValueMode mode, const EdgeFilter& keep,
                   std::span<const std::uint8_t> active) {
  const std::size_t n = g.num_states();
  ValueTable t;
  t.mode = mode;
  t.value.assign(n, kInf);
  t.witness.assign(n, std::nullopt);
  for (std::size_t v = 0; v < n; ++v) {
    if (g.is_goal(static_cast<StateId>(v))) t.value[v] = Cost::finite(0);
  }
  // Jacobi sweeps from the all-infinite start; each sweep reads only the
  // previous table and the loop stops at exact equality.
  std::vector<Cost> next = t.value;
  for (;;) {
    ++t.sweeps;
    for (std::size_t i = 0; i < n; ++i) {
      const StateId v = static_cast<StateId>(i);
      if (g.is_goal(v) || (!active.empty() && !active[v])) continue;
      const Update u = bellman(g, mode, v, t.value, keep);
      next[v] = u.value;
      t.witness[v] = u.witness;
    }
    if (next == t.value) break;
    t.value = next;
  }
  return t;
}

}  // namespace

std::vector<Cost> bellman_sweep(const GameGraph& g, ValueMode mode,
                                std::span<const Cost> value) {
  std::vector<Cost> next(value.begin(), value.end());
  for (std::size_t i = 0; i < g.num_states(); ++i) {
    const StateId v = static_cast<StateId>(i);
    if (!g.is_goal(v)) next[v] = bellman(g, mode, v, value, nullptr).value;
  }
  return next;
}

ValueTable value_iteration(const GameGraph& g, ValueMode mode) {
  return iterate(g, mode, nullptr, {});
}

ValueTable value_iteration(const GameGraph& g, ValueMode mode,
                           std::span<const std::uint8_t> active) {
  if (active.empty()) return iterate(g, mode, nullptr, {});
  return iterate(
      g, mode,
      [active](StateId, const Transition& t) { return active[t.to] != 0; },
      active);
}

int RegionMap::sval(StateId v) const {
  switch (region.at(v)) {
    case Region::kWin: return 1;
    case Region::kPending: return 0;
    case Region::kLose: return -1;
  }
  return -1;
}

std::string_view region_name(Region r) {
  switch (r) {
    case Region::kWin: return "win";
    case Region::kPending: return "pending";
    case Region::kLose: return "lose";
  }
  return "lose";
}

RegionMap classify_regions(const ValueTable& adv, const ValueTable& coop) {
  if (adv.value.size() != coop.value.size()) {
    throw Error(ErrorCode::kInconsistentTables, "tables differ in size");
  }
  RegionMap m;
  m.region.reserve(adv.value.size());
  for (std::size_t v = 0; v < adv.value.size(); ++v) {
    if (coop.value[v] > adv.value[v]) {
      throw Error(ErrorCode::kInconsistentTables,
                  "cval > aval at state " + std::to_string(v));
    }
    if (adv.value[v].is_finite()) {
      m.region.push_back(Region::kWin);
    } else if (coop.value[v].is_finite()) {
      m.region.push_back(Region::kPending);
    } else {
      m.region.push_back(Region::kLose);
    }
  }
  return m;
}

namespace {

Cost acval_state_subgame(const GameGraph& g, StateId v,
                         const ValueTable& adv) {
  std::vector<std::uint8_t> active(g.num_states(), 0);
  for (std::size_t u = 0; u < g.num_states(); ++u) {
    active[u] = (adv.value[u] <= adv.value[v] ||
                 g.is_goal(static_cast<StateId>(u)))
                    ? 1
                    : 0;
  }
  return value_iteration(g, ValueMode::kCooperative, active).value[v];
}

// best[r][u] is the least cooperative cost from u among strategies whose
// worst case from u is at most r. Sys moves lower r by their cost, Env moves
// keep it, so the levels can be filled in increasing r.
Cost acval_allowance(const GameGraph& g, StateId v, const ValueTable& adv) {
  const std::int64_t top = adv.value[v].value();
  const std::size_t n = g.num_states();
  std::vector<std::vector<Cost>> best(top + 1, std::vector<Cost>(n, kInf));
  for (std::int64_t r = 0; r <= top; ++r) {
    auto& level = best[r];
    for (int pass = 0; pass < 2; ++pass) {
      const Player who = pass == 0 ? Player::kSys : Player::kEnv;
      for (std::size_t i = 0; i < n; ++i) {
        const StateId u = static_cast<StateId>(i);
        if (g.is_goal(u)) {
          level[u] = Cost::finite(0);
          continue;
        }
        if (g.owner(u) != who || adv.value[u] > Cost::finite(r)) continue;
        Cost b = kInf;
        for (const Transition& t : g.successors(u)) {
          const std::int64_t rest = r - t.cost;
          if (rest < 0 || adv.value[t.to] > Cost::finite(rest)) continue;
          b = std::min(b, Cost::finite(t.cost) + best[rest][t.to]);
        }
        level[u] = b;
      }
    }
  }
  return best[top][v];
}

}  // namespace

Cost acval_graph(const GameGraph& g, StateId v, const ValueTable& adv,
                 AcvalGraphMethod method) {
  if (g.is_goal(v)) return Cost::finite(0);
  if (adv.value.at(v).is_infinite()) {
    // No constraint binds: this is the plain cooperative value.
    return value_iteration(g, ValueMode::kCooperative).value[v];
  }
  return method == AcvalGraphMethod::kAllowance
             ? acval_allowance(g, v, adv)
             : acval_state_subgame(g, v, adv);
}

MemorylessStrategy wcoop_memoryless(const GameGraph& g) {
  const ValueTable adv = value_iteration(g, ValueMode::kAdversarial);
  const ValueTable restricted = iterate(
      g, ValueMode::kCooperative,
      [&](StateId v, const Transition& t) {
        if (g.owner(v) != Player::kSys || adv.value[v].is_infinite()) {
          return true;
        }
        return Cost::finite(t.cost) + adv.value[t.to] <= adv.value[v];
      },
      {});
  MemorylessStrategy s;
  s.choice.assign(g.num_states(), std::nullopt);
  for (std::size_t i = 0; i < g.num_states(); ++i) {
    const StateId v = static_cast<StateId>(i);
    if (g.owner(v) == Player::kSys && !g.is_goal(v)) {
      s.choice[v] = restricted.witness[v];
    }
  }
  return s;
}

}  // namespace admsyn
