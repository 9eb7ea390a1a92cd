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

#ifndef ADMSYN_ARENA_HPP_
#define ADMSYN_ARENA_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "admsyn/cost.hpp"
#include "admsyn/game.hpp"
#include "json.hpp"

namespace admsyn {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;
inline constexpr StateId kNoState = -1;

enum class NodeKind : std::uint8_t { kInternal, kGoalLeaf, kDeadLeaf };

struct TreeNode {
  StateId state = kNoState;
  std::int64_t accumulated = 0;
  Player owner = Player::kSys;
  NodeKind kind = NodeKind::kInternal;
  NodeId parent = kNoNode;
  // Action taken at the parent to reach this node.
  ActionId via = -1;
};

struct TreeEdge {
  ActionId action;
  NodeId child;
};

// A finite tree of histories. Node ids follow depth-first preorder with
// children in ascending action order, so every child has a larger id than
// its parent and a reverse scan visits children first.
class TreeArena {
 public:
  class Builder;

  NodeId root() const { return 0; }
  std::size_t size() const { return nodes_.size(); }
  std::int64_t budget() const { return budget_; }

  const TreeNode& node(NodeId u) const { return nodes_.at(u); }
  std::span<const TreeEdge> children(NodeId u) const {
    return {edges_.data() + offset_[u], edges_.data() + offset_[u + 1]};
  }
  bool is_leaf(NodeId u) const { return nodes_[u].kind != NodeKind::kInternal; }

  // GoalLeaf: accumulated cost. DeadLeaf: infinity.
  Cost payoff(NodeId leaf) const;

  // Child reached from u by action a, or kNoNode.
  NodeId child_by_action(NodeId u, ActionId a) const;

  // Node ids from the root down to u.
  std::vector<NodeId> path_to(NodeId u) const;

 private:
  friend TreeArena unroll(const GameGraph&, std::int64_t, std::size_t);

  void index_children();

  std::vector<TreeNode> nodes_;
  std::vector<std::size_t> offset_;
  std::vector<TreeEdge> edges_;
  std::int64_t budget_ = 0;
};

// Assembles an arbitrary tree, e.g. one drawn by hand. Nodes may be added in
// any order as long as a parent exists before its children; build()
// renumbers them into preorder.
class TreeArena::Builder {
 public:
  explicit Builder(std::int64_t budget) : budget_(budget) {}

  NodeId add_root(Player owner, StateId state = kNoState);
  NodeId add_internal(NodeId parent, ActionId action, Player owner,
                      StateId state = kNoState);
  NodeId add_goal_leaf(NodeId parent, ActionId action, std::int64_t payoff,
                       StateId state = kNoState);
  NodeId add_dead_leaf(NodeId parent, ActionId action,
                       StateId state = kNoState);

  // Also returns, through `renumbered`, the final id of every added node.
  // Internal and dead nodes default to 0 and budget + 1; unrolled trees
  // record the true running cost, which JSON round trips keep.
  void set_accumulated(NodeId u, std::int64_t accumulated);
  TreeArena build(std::vector<NodeId>* renumbered = nullptr) const;

 private:
  NodeId add(NodeId parent, ActionId action, TreeNode n);

  std::int64_t budget_;
  std::vector<TreeNode> nodes_;
};

inline constexpr std::size_t kDefaultNodeCap = 10'000'000;

TreeArena unroll(const GameGraph& g, std::int64_t budget,
                 std::size_t node_cap = kDefaultNodeCap);

struct TreeValueTable {
  std::vector<Cost> aval;
  std::vector<Cost> cval;
  // Subgame adversarial-cooperative value.
  std::vector<Cost> acval;
  std::vector<std::uint8_t> in_win;
  // Children chosen by the extreme policies: adversarial (argmin at Sys,
  // argmax at Env) and cooperative (argmin everywhere). kNoNode at leaves.
  std::vector<NodeId> adv_witness;
  std::vector<NodeId> coop_witness;
};

TreeValueTable tree_values(const TreeArena& t);

enum class AcvalMethod { kOneStep, kSubgame };

std::vector<Cost> tree_acval(const TreeArena& t, const TreeValueTable& vt,
                             AcvalMethod method);

struct TreeStats {
  std::size_t nodes = 0;
  std::size_t internal = 0;
  std::size_t goal_leaves = 0;
  std::size_t dead_leaves = 0;
  std::size_t depth = 0;
};

TreeStats tree_stats(const TreeArena& t);

nlohmann::json tree_to_json(const TreeArena& t);
TreeArena tree_from_json(const nlohmann::json& j);
std::string tree_to_dot(const TreeArena& t, const TreeValueTable* vt = nullptr);

std::string_view node_kind_name(NodeKind k);

}  // namespace admsyn

#endif  // ADMSYN_ARENA_HPP_
