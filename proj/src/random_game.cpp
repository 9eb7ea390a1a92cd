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

#include "admsyn/random_game.hpp"

#include <algorithm>

#include "admsyn/arena.hpp"
#include "admsyn/error.hpp"
#include "admsyn/oracle.hpp"
#include "admsyn/rng.hpp"

namespace admsyn {

RandomCase random_case(std::uint64_t seed, const RandomGameOptions& opt) {
  Rng rng(seed);
  const int n = static_cast<int>(rng.between(std::max(2, opt.min_states),
                                             std::max(2, opt.max_states)));
  GameSpec spec;
  for (int v = 0; v < n; ++v) {
    spec.states.push_back(
        {v, rng.below(2) == 0 ? Player::kSys : Player::kEnv, false});
  }
  auto count_owner = [&](Player p) {
    return std::count_if(spec.states.begin(), spec.states.end(),
                         [p](const GameSpec::State& s) { return s.owner == p; });
  };
  if (count_owner(Player::kSys) == 0) spec.states[0].owner = Player::kSys;
  if (count_owner(Player::kEnv) == 0) spec.states[n - 1].owner = Player::kEnv;

  const int goals = static_cast<int>(
      rng.between(1, std::max(1, std::min(opt.max_goals, n - 1))));
  for (int i = 0; i < goals; ++i) spec.states[rng.below(n)].goal = true;

  std::vector<StateId> starts;
  for (const auto& s : spec.states) {
    if (!s.goal) starts.push_back(s.id);
  }
  spec.initial = starts.empty() ? 0 : starts[rng.below(starts.size())];

  for (const auto& s : spec.states) {
    if (s.goal) {
      spec.edges.push_back({s.id, 0, s.id, s.owner == Player::kSys ? 1 : 0});
      continue;
    }
    std::vector<StateId> targets;
    for (const auto& o : spec.states) {
      if (o.owner != s.owner) targets.push_back(o.id);
    }
    const int deg = static_cast<int>(rng.between(
        1, std::min<std::int64_t>(opt.max_out_degree, targets.size())));
    for (int a = 0; a < deg; ++a) {
      const std::size_t j = a + rng.below(targets.size() - a);
      std::swap(targets[a], targets[j]);
      const std::int64_t cost =
          s.owner == Player::kSys ? rng.between(1, opt.max_cost) : 0;
      spec.edges.push_back({s.id, a, targets[a], cost});
    }
  }
  RandomCase c;
  c.game = build_game(spec);
  c.budget = rng.between(opt.min_budget, opt.max_budget);
  c.seed = seed;
  return c;
}

Corpus oracle_corpus(std::uint64_t seed, std::size_t count,
                     const RandomGameOptions& opt,
                     const CorpusLimits& limits) {
  Corpus corpus;
  Rng seeds(seed);
  while (corpus.cases.size() < count) {
    RandomCase c = random_case(seeds.next(), opt);
    ++corpus.generated;
    try {
      const TreeArena t = unroll(c.game, c.budget, limits.max_nodes);
      if (count_canonical_strategies(t, limits.max_strategies) >
          limits.max_strategies) {
        ++corpus.skipped;
        continue;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBudgetOverflowGuard) throw;
      ++corpus.skipped;
      continue;
    }
    corpus.cases.push_back(std::move(c));
  }
  return corpus;
}

}  // namespace admsyn
