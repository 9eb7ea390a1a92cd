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

#ifndef ADMSYN_ORACLE_HPP_
#define ADMSYN_ORACLE_HPP_

#include <array>
#include <cstddef>
#include <vector>

#include "admsyn/arena.hpp"
#include "admsyn/synthesis.hpp"

namespace admsyn {

// A strategy vector fixes a child at every internal node of one player,
// reachable or not. Same layout as TreeStrategy.
using StrategyVector = TreeStrategy;

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// Every vector, in lexicographic order of (node id, action id) with the
// smallest node id varying slowest.
std::vector<StrategyVector> enumerate_strategies(
    const TreeArena& t, Player owner,
    std::size_t cap = kDefaultEnumerationCap);

// Number of Sys strategies that differ on reachable nodes; saturates at
// `limit`.
std::size_t count_canonical_strategies(const TreeArena& t, std::size_t limit);

// One Sys vector per class of strategies with the same reachable choices;
// unreachable nodes take their first child.
std::vector<StrategyVector> enumerate_canonical_strategies(
    const TreeArena& t, std::size_t cap = kDefaultEnumerationCap);

StrategyVector canonicalize(const TreeArena& t, const StrategyVector& sigma);

struct PlayOutcome {
  NodeId leaf;
  Cost payoff;
};

PlayOutcome play_of(const TreeArena& t, const StrategyVector& sigma,
                    const StrategyVector& tau);

// Dominance by enumeration: payoff(σ′, τ) <= payoff(σ, τ) for every τ and < for
// some. Only Env nodes reachable under σ′ or σ are varied; no other choice
// can affect either play.
bool weakly_dominates(const TreeArena& t, const StrategyVector& better,
                      const StrategyVector& worse,
                      std::size_t cap = kDefaultEnumerationCap);

// Cooperative and adversarial outcome of a strategy from every node, by
// direct recursion over the tree. Independent of tree_values.
struct StrategyOutcomes {
  std::vector<Cost> best;
  std::vector<Cost> worst;
};
StrategyOutcomes strategy_outcomes(const TreeArena& t,
                                   const StrategyVector& sigma);

// Same relation as weakly_dominates, decided by walking the two strategies
// together: until they part, Env choices are shared; after they part, the
// two plays live in disjoint subtrees and can be steered independently.
bool dominates_fast(const TreeArena& t, const StrategyVector& better,
                    const StrategyOutcomes& better_out,
                    const StrategyVector& worse,
                    const StrategyOutcomes& worse_out);

// Min-max values of every node, by plain recursion.
std::vector<Cost> minimax_values(const TreeArena& t);

// Canonical vectors that no other strategy weakly dominates. The winning
// variant also requires every reachable node with finite adversarial value
// to be won whatever Env does.
std::vector<StrategyVector> brute_force_admissible(
    const TreeArena& t, SynthesisMode mode,
    std::size_t cap = kDefaultEnumerationCap);

// Same as brute_force_admissible, but returns one flag per vector of
// `candidates` (which should be the full canonical enumeration).
std::vector<bool> brute_force_flags(const TreeArena& t, SynthesisMode mode,
                                    const std::vector<StrategyVector>& candidates);

enum class ComplementLabel { kSatisfiesAdmissible, kSatisfiesDominated };

// Evaluates, over the Sys nodes σ reaches, the admissibility condition
// (cVal(h,σ) < aVal(h), or aVal(h) = aVal(h,σ) = cVal(h,σ) = acVal(h)) and
// the dominated condition (cVal(h,σ) >= aVal(h) and aVal(h,σ) > aVal(h), or
// aVal(h) = aVal(h,σ) = cVal(h,σ) with acVal(h) < aVal(h)). Throws
// kBothOrNeither unless exactly one of "all nodes pass" and "some node is
// dominated" holds.
ComplementLabel check_complement(const TreeArena& t, const TreeValueTable& vt,
                                 const StrategyVector& sigma);

// Synthesized membership against the brute-force flags for every canonical
// Sys strategy of t, in both modes (index 0 admissible, 1 winning).
struct CrossCheck {
  std::size_t strategies = 0;
  std::array<std::size_t, 2> members{};
  std::array<std::size_t, 2> oracle_members{};
  std::array<std::size_t, 2> mismatches{};
  std::array<bool, 2> all_admissible{};
  std::array<bool, 2> extraction_ok{};
  std::size_t both_or_neither = 0;
  std::size_t complement_disagrees = 0;  // label vs brute-force admissibility
};

CrossCheck cross_check(const TreeArena& t, Rule rule = Rule::kExact,
                       std::size_t cap = kDefaultEnumerationCap);

}  // namespace admsyn

#endif  // ADMSYN_ORACLE_HPP_
