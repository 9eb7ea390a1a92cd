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

#ifndef ADMSYN_RANDOM_GAME_HPP_
#define ADMSYN_RANDOM_GAME_HPP_

#include <cstdint>
#include <vector>

#include "admsyn/game.hpp"

namespace admsyn {

struct RandomGameOptions {
  int min_states = 2;
  int max_states = 8;
  std::int64_t max_cost = 3;
  int max_out_degree = 3;
  int max_goals = 2;
  std::int64_t min_budget = 1;
  std::int64_t max_budget = 8;
};

struct RandomCase {
  GameGraph game;
  std::int64_t budget = 0;
  std::uint64_t seed = 0;
};

// A valid alternating game: random owners, one or two goals with a
// self-loop, and 1..max_out_degree distinct successors of the other player
// at every other state. Deterministic in the seed.
RandomCase random_case(std::uint64_t seed, const RandomGameOptions& opt = {});

struct CorpusLimits {
  std::size_t max_nodes = 4000;
  std::size_t max_strategies = 400;
};

struct Corpus {
  std::vector<RandomCase> cases;
  std::size_t generated = 0;
  std::size_t skipped = 0;
};

// Draws cases until `count` of them fit the brute-force limits.
Corpus oracle_corpus(std::uint64_t seed, std::size_t count,
                     const RandomGameOptions& opt = {},
                     const CorpusLimits& limits = {});

}  // namespace admsyn

#endif  // ADMSYN_RANDOM_GAME_HPP_
