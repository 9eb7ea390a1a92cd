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

#ifndef ADMSYN_SYNTHESIS_HPP_
#define ADMSYN_SYNTHESIS_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "admsyn/arena.hpp"
#include "admsyn/profile.hpp"
#include "admsyn/values.hpp"
#include "json.hpp"

namespace admsyn {

enum class SynthesisMode { kAdmissible, kAdmissibleWinning };

enum class Rule {
  // Exact characterization of non-dominated strategies. Default.
  kExact,
  // The path-minimum test: a child is kept if its cooperative value beats
  // every adversarial value on the path, or if the node's aval, the child's
  // aval and cval, and the node's acval all coincide. Kept for comparison; it
  // admits some dominated strategies and rejects some admissible ones.
  kPathMin,
};

// Choices of one Sys strategy on a tree, indexed by node id. kNoNode where no
// choice is made.
struct TreeStrategy {
  std::vector<NodeId> choice;
};

class StrategySet {
 public:
  SynthesisMode mode() const { return mode_; }
  Rule rule() const { return rule_; }
  bool all_admissible() const { return all_admissible_; }
  std::int64_t budget() const { return budget_; }

  // True for Sys nodes that can be reached by allowed choices.
  bool recorded(NodeId u) const { return recorded_.at(u) != 0; }
  std::span<const NodeId> allowed(NodeId u) const {
    return {allowed_.data() + offset_.at(u), allowed_.data() + offset_.at(u + 1)};
  }
  std::vector<NodeId> recorded_nodes() const;

 private:
  friend StrategySet synthesize(const TreeArena&, const TreeValueTable&,
                                std::span<const Cost>, SynthesisMode, Rule);
  friend bool is_member(const TreeArena&, const StrategySet&,
                        const TreeStrategy&);
  friend struct Extractor;

  bool ok(const TreeArena& t, NodeId h, NodeId c, int cr, int ar) const;
  int rank(Cost x) const;

  SynthesisMode mode_ = SynthesisMode::kAdmissible;
  Rule rule_ = Rule::kExact;
  bool all_admissible_ = false;
  std::int64_t budget_ = 0;
  std::vector<std::uint8_t> recorded_;
  std::vector<std::size_t> offset_;
  std::vector<NodeId> allowed_;

  // Tree data kept for membership tests and extraction.
  std::vector<Cost> cval_;
  std::vector<Cost> values_;  // sorted distinct payoffs; ranks index this
  std::vector<int> aval_rank_;
  std::vector<std::uint8_t> tight_;
  std::vector<std::uint8_t> in_win_;
  // Per node: outcome profiles that some admissible strategy realizes from
  // that node while being reachable. Exact rule only.
  std::vector<ProfileSet> need_;
};

// `acv` is only consulted by the path-minimum rule.
StrategySet synthesize(const TreeArena& t, const TreeValueTable& vt,
                       std::span<const Cost> acv, SynthesisMode mode,
                       Rule rule = Rule::kExact);

StrategySet synthesize_admissible(const TreeArena& t, const TreeValueTable& vt,
                                  std::span<const Cost> acv,
                                  Rule rule = Rule::kExact);

StrategySet synthesize_admissible_winning(const TreeArena& t,
                                          const TreeValueTable& vt,
                                          std::span<const Cost> acv,
                                          Rule rule = Rule::kExact);

// Throws kIncompleteStrategy when σ has no valid choice at a Sys node it can
// reach.
bool is_member(const TreeArena& t, const StrategySet& s, const TreeStrategy& sigma);

struct ExtractPolicy {
  enum class Kind { kMinCvalThenLowestId, kSeededRandom };
  Kind kind = Kind::kMinCvalThenLowestId;
  std::uint64_t seed = 0;

  static ExtractPolicy min_cval() { return {}; }
  static ExtractPolicy seeded(std::uint64_t s) {
    return {Kind::kSeededRandom, s};
  }
};

TreeStrategy extract_strategy(const TreeArena& t, const StrategySet& s,
                              ExtractPolicy policy = {});

// Nodes a strategy can reach, in preorder.
std::vector<NodeId> reachable_nodes(const TreeArena& t, const TreeStrategy& s);

// Plays a per-state choice at every Sys node of the tree. States without a
// choice use their lowest action.
TreeStrategy lift_memoryless(const TreeArena& t, const MemorylessStrategy& m);

// Picks, at every Sys node whose state appears in `next`, the child in the
// given successor state; elsewhere the lowest action.
TreeStrategy strategy_from_successors(const TreeArena& t,
                                      const std::map<StateId, StateId>& next);

nlohmann::json strategy_set_to_json(const TreeArena& t, const StrategySet& s);
nlohmann::json tree_strategy_to_json(const TreeArena& t, const TreeStrategy& s);
TreeStrategy tree_strategy_from_json(const TreeArena& t, const nlohmann::json& j);

}  // namespace admsyn

#endif  // ADMSYN_SYNTHESIS_HPP_
