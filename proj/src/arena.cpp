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

#include "admsyn/arena.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "admsyn/error.hpp"

namespace admsyn {

std::string_view node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::kInternal: return "internal";
    case NodeKind::kGoalLeaf: return "goal";
    case NodeKind::kDeadLeaf: return "dead";
  }
  return "internal";
}

Cost TreeArena::payoff(NodeId leaf) const {
  const TreeNode& n = nodes_.at(leaf);
  switch (n.kind) {
    case NodeKind::kGoalLeaf: return Cost::finite(n.accumulated);
    case NodeKind::kDeadLeaf: return kInf;
    case NodeKind::kInternal: break;
  }
  throw Error(ErrorCode::kInvalidPlay,
              "node " + std::to_string(leaf) + " is not a leaf");
}

NodeId TreeArena::child_by_action(NodeId u, ActionId a) const {
  for (const TreeEdge& e : children(u)) {
    if (e.action == a) return e.child;
  }
  return kNoNode;
}

std::vector<NodeId> TreeArena::path_to(NodeId u) const {
  std::vector<NodeId> path;
  for (NodeId x = u; x != kNoNode; x = nodes_.at(x).parent) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

void TreeArena::index_children() {
  const std::size_t n = nodes_.size();
  offset_.assign(n + 1, 0);
  for (std::size_t u = 1; u < n; ++u) ++offset_[nodes_[u].parent + 1];
  for (std::size_t u = 0; u < n; ++u) offset_[u + 1] += offset_[u];
  edges_.assign(n == 0 ? 0 : n - 1, TreeEdge{0, 0});
  std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
  // Ids are preorder, so scanning in id order lists siblings in action order.
  for (std::size_t u = 1; u < n; ++u) {
    edges_[fill[nodes_[u].parent]++] = {nodes_[u].via, static_cast<NodeId>(u)};
  }
}

TreeArena unroll(const GameGraph& g, std::int64_t budget,
                 std::size_t node_cap) {
  if (budget < 0) throw Error(ErrorCode::kMalformedSpec, "negative budget");
  TreeArena t;
  t.budget_ = budget;

  auto classify = [&](StateId s, std::int64_t acc) {
    if (g.is_goal(s) && acc <= budget) return NodeKind::kGoalLeaf;
    if (acc > budget) return NodeKind::kDeadLeaf;
    return NodeKind::kInternal;
  };

  const StateId s0 = g.initial();
  t.nodes_.push_back({s0, 0, g.owner(s0), classify(s0, 0), kNoNode, -1});

  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  if (t.nodes_[0].kind == NodeKind::kInternal) stack.push_back({0, 0});
  while (!stack.empty()) {
    const NodeId u = stack.back().node;
    const TreeNode parent = t.nodes_[u];
    const auto succ = g.successors(parent.state);
    if (stack.back().next == succ.size()) {
      stack.pop_back();
      continue;
    }
    const Transition& tr = succ[stack.back().next++];
    if (t.nodes_.size() >= node_cap) {
      throw Error(ErrorCode::kBudgetOverflowGuard,
                  "unrolling with budget " + std::to_string(budget) +
                      " exceeds the cap of " + std::to_string(node_cap) +
                      " nodes");
    }
    const std::int64_t acc = parent.accumulated + tr.cost;
    const NodeId id = static_cast<NodeId>(t.nodes_.size());
    t.nodes_.push_back(
        {tr.to, acc, g.owner(tr.to), classify(tr.to, acc), u, tr.action});
    if (t.nodes_.back().kind == NodeKind::kInternal) stack.push_back({id, 0});
  }
  t.index_children();
  return t;
}

NodeId TreeArena::Builder::add(NodeId parent, ActionId action, TreeNode n) {
  if (parent != kNoNode) {
    if (parent < 0 || static_cast<std::size_t>(parent) >= nodes_.size()) {
      throw Error(ErrorCode::kDanglingReference,
                  "unknown parent node " + std::to_string(parent));
    }
    if (nodes_[parent].kind != NodeKind::kInternal) {
      throw Error(ErrorCode::kMalformedSpec,
                  "leaf " + std::to_string(parent) + " cannot have children");
    }
  } else if (!nodes_.empty()) {
    throw Error(ErrorCode::kMalformedSpec, "tree already has a root");
  }
  n.parent = parent;
  n.via = action;
  nodes_.push_back(n);
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId TreeArena::Builder::add_root(Player owner, StateId state) {
  return add(kNoNode, -1, {state, 0, owner, NodeKind::kInternal});
}

NodeId TreeArena::Builder::add_internal(NodeId parent, ActionId action,
                                        Player owner, StateId state) {
  return add(parent, action, {state, 0, owner, NodeKind::kInternal});
}

NodeId TreeArena::Builder::add_goal_leaf(NodeId parent, ActionId action,
                                         std::int64_t payoff, StateId state) {
  const Player owner = parent == kNoNode
                           ? Player::kSys
                           : opponent(nodes_.at(parent).owner);
  return add(parent, action, {state, payoff, owner, NodeKind::kGoalLeaf});
}

NodeId TreeArena::Builder::add_dead_leaf(NodeId parent, ActionId action,
                                         StateId state) {
  const Player owner = parent == kNoNode
                           ? Player::kSys
                           : opponent(nodes_.at(parent).owner);
  return add(parent, action,
             {state, budget_ + 1, owner, NodeKind::kDeadLeaf});
}

void TreeArena::Builder::set_accumulated(NodeId u, std::int64_t accumulated) {
  nodes_.at(u).accumulated = accumulated;
}

TreeArena TreeArena::Builder::build(std::vector<NodeId>* renumbered) const {
  if (nodes_.empty()) throw Error(ErrorCode::kMalformedSpec, "empty tree");
  const std::size_t n = nodes_.size();
  std::vector<std::vector<NodeId>> kids(n);
  for (std::size_t u = 1; u < n; ++u) kids[nodes_[u].parent].push_back(u);
  for (std::size_t u = 0; u < n; ++u) {
    auto& k = kids[u];
    std::stable_sort(k.begin(), k.end(), [&](NodeId a, NodeId b) {
      return nodes_[a].via < nodes_[b].via;
    });
    for (std::size_t i = 1; i < k.size(); ++i) {
      if (nodes_[k[i]].via == nodes_[k[i - 1]].via) {
        throw Error(ErrorCode::kMalformedSpec,
                    "node " + std::to_string(u) + " repeats action " +
                        std::to_string(nodes_[k[i]].via));
      }
    }
    if (nodes_[u].kind == NodeKind::kInternal && k.empty()) {
      throw Error(ErrorCode::kBlockingState,
                  "internal node " + std::to_string(u) + " has no children");
    }
    if (nodes_[u].kind == NodeKind::kGoalLeaf &&
        (nodes_[u].accumulated < 0 || nodes_[u].accumulated > budget_)) {
      throw Error(ErrorCode::kMalformedSpec,
                  "goal leaf " + std::to_string(u) + " pays outside [0, " +
                      std::to_string(budget_) + "]");
    }
  }

  std::vector<NodeId> new_id(n, kNoNode);
  TreeArena t;
  t.budget_ = budget_;
  std::vector<NodeId> stack{0};
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    new_id[u] = static_cast<NodeId>(t.nodes_.size());
    TreeNode copy = nodes_[u];
    if (copy.parent != kNoNode) copy.parent = new_id[copy.parent];
    t.nodes_.push_back(copy);
    for (auto it = kids[u].rbegin(); it != kids[u].rend(); ++it) {
      stack.push_back(*it);
    }
  }
  t.index_children();
  if (renumbered) *renumbered = std::move(new_id);
  return t;
}

TreeValueTable tree_values(const TreeArena& t) {
  const std::size_t n = t.size();
  TreeValueTable vt;
  vt.aval.assign(n, kInf);
  vt.cval.assign(n, kInf);
  vt.in_win.assign(n, 0);
  vt.adv_witness.assign(n, kNoNode);
  vt.coop_witness.assign(n, kNoNode);
  for (std::size_t i = n; i-- > 0;) {
    const NodeId u = static_cast<NodeId>(i);
    if (t.is_leaf(u)) {
      vt.aval[u] = vt.cval[u] = t.payoff(u);
    } else {
      const bool sys = t.node(u).owner == Player::kSys;
      NodeId adv = kNoNode;
      NodeId coop = kNoNode;
      for (const TreeEdge& e : t.children(u)) {
        const NodeId c = e.child;
        if (adv == kNoNode ||
            (sys ? vt.aval[c] < vt.aval[adv] : vt.aval[c] > vt.aval[adv])) {
          adv = c;
        }
        if (coop == kNoNode || vt.cval[c] < vt.cval[coop]) coop = c;
      }
      vt.aval[u] = vt.aval[adv];
      vt.cval[u] = vt.cval[coop];
      vt.adv_witness[u] = adv;
      vt.coop_witness[u] = coop;
    }
    vt.in_win[u] = vt.aval[u].is_finite() ? 1 : 0;
  }
  vt.acval = tree_acval(t, vt, AcvalMethod::kSubgame);
  return vt;
}

namespace {

// The cooperative value of a node when play is confined to descendants whose
// adversarial value is at most a threshold, as a step function of that
// threshold. Entry (x, v) means "value v for thresholds from x up to the next
// entry". The first entry sits at the node's own aval; below it the node is
// excluded.
using StepFn = std::vector<std::pair<Cost, Cost>>;

Cost eval_at(const StepFn& f, Cost x) {
  auto it = std::upper_bound(
      f.begin(), f.end(), x,
      [](Cost v, const std::pair<Cost, Cost>& p) { return v < p.first; });
  return std::prev(it)->second;
}

}  // namespace

std::vector<Cost> tree_acval(const TreeArena& t, const TreeValueTable& vt,
                             AcvalMethod method) {
  const std::size_t n = t.size();
  std::vector<Cost> out(n, kInf);
  if (method == AcvalMethod::kOneStep) {
    for (std::size_t i = 0; i < n; ++i) {
      const NodeId u = static_cast<NodeId>(i);
      if (t.is_leaf(u)) {
        out[u] = t.payoff(u);
        continue;
      }
      for (const TreeEdge& e : t.children(u)) {
        if (vt.aval[e.child] <= vt.aval[u]) {
          out[u] = std::min(out[u], vt.cval[e.child]);
        }
      }
    }
    return out;
  }

  std::vector<StepFn> fn(n);
  std::vector<Cost> points;
  for (std::size_t i = n; i-- > 0;) {
    const NodeId u = static_cast<NodeId>(i);
    if (t.is_leaf(u)) {
      const Cost p = t.payoff(u);
      fn[u] = {{p, p}};
      out[u] = p;
      continue;
    }
    const Cost start = vt.aval[u];
    points.clear();
    for (const TreeEdge& e : t.children(u)) {
      for (const auto& [x, v] : fn[e.child]) {
        if (x >= start) points.push_back(x);
      }
    }
    points.push_back(start);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    StepFn f;
    for (Cost x : points) {
      Cost v = kInf;
      for (const TreeEdge& e : t.children(u)) {
        const StepFn& g = fn[e.child];
        if (g.front().first <= x) v = std::min(v, eval_at(g, x));
      }
      if (f.empty() || f.back().second != v) f.emplace_back(x, v);
    }
    for (const TreeEdge& e : t.children(u)) StepFn().swap(fn[e.child]);
    out[u] = f.front().second;
    fn[u] = std::move(f);
  }
  return out;
}

TreeStats tree_stats(const TreeArena& t) {
  TreeStats s;
  s.nodes = t.size();
  std::vector<std::size_t> depth(t.size(), 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const NodeId u = static_cast<NodeId>(i);
    const TreeNode& n = t.node(u);
    if (n.parent != kNoNode) depth[u] = depth[n.parent] + 1;
    s.depth = std::max(s.depth, depth[u]);
    switch (n.kind) {
      case NodeKind::kInternal: ++s.internal; break;
      case NodeKind::kGoalLeaf: ++s.goal_leaves; break;
      case NodeKind::kDeadLeaf: ++s.dead_leaves; break;
    }
  }
  return s;
}

nlohmann::json tree_to_json(const TreeArena& t) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const TreeNode& n = t.node(static_cast<NodeId>(i));
    nlohmann::json j = {{"id", i},
                        {"state", n.state},
                        {"accumulated", n.accumulated},
                        {"owner", std::string(player_name(n.owner))},
                        {"kind", std::string(node_kind_name(n.kind))}};
    if (n.parent == kNoNode) {
      j["parent"] = nullptr;
    } else {
      j["parent"] = n.parent;
      j["action"] = n.via;
    }
    nodes.push_back(std::move(j));
  }
  return {{"budget", t.budget()}, {"root", t.root()}, {"nodes", nodes}};
}

TreeArena tree_from_json(const nlohmann::json& j) {
  try {
    TreeArena::Builder b(j.at("budget").get<std::int64_t>());
    std::vector<NodeId> local;  // json id -> builder id
    auto lookup = [&](std::int64_t id) {
      if (id < 0 || static_cast<std::size_t>(id) >= local.size() ||
          local[id] == kNoNode) {
        throw Error(ErrorCode::kDanglingReference,
                    "node parent " + std::to_string(id) +
                        " must be listed before its children");
      }
      return local[id];
    };
    for (const auto& n : j.at("nodes")) {
      const std::int64_t id = n.at("id").get<std::int64_t>();
      if (id < 0) throw Error(ErrorCode::kMalformedSpec, "negative node id");
      if (static_cast<std::size_t>(id) >= local.size()) {
        local.resize(id + 1, kNoNode);
      }
      const StateId state = n.value("state", kNoState);
      const std::string kind = n.value("kind", std::string("internal"));
      const std::string owner_s = n.value("owner", std::string("sys"));
      if (owner_s != "sys" && owner_s != "env") {
        throw Error(ErrorCode::kMalformedSpec, "bad owner " + owner_s);
      }
      const Player owner = owner_s == "sys" ? Player::kSys : Player::kEnv;
      NodeId made;
      if (n.contains("parent") && !n.at("parent").is_null()) {
        const NodeId parent = lookup(n.at("parent").get<std::int64_t>());
        const ActionId a = n.at("action").get<ActionId>();
        if (kind == "goal") {
          made = b.add_goal_leaf(parent, a, n.at("accumulated"), state);
        } else if (kind == "dead") {
          made = b.add_dead_leaf(parent, a, state);
        } else if (kind == "internal") {
          made = b.add_internal(parent, a, owner, state);
        } else {
          throw Error(ErrorCode::kMalformedSpec, "bad node kind " + kind);
        }
      } else {
        if (kind != "internal") {
          throw Error(ErrorCode::kMalformedSpec, "root must be internal");
        }
        made = b.add_root(owner, state);
      }
      if (kind != "goal" && n.contains("accumulated")) {
        b.set_accumulated(made, n.at("accumulated").get<std::int64_t>());
      }
      local[id] = made;
    }
    return b.build();
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kMalformedSpec, ex.what());
  }
}

std::string tree_to_dot(const TreeArena& t, const TreeValueTable* vt) {
  std::ostringstream os;
  os << "digraph tree {\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    const NodeId u = static_cast<NodeId>(i);
    const TreeNode& n = t.node(u);
    os << "  n" << u << " [label=\"v" << n.state << "@" << n.accumulated;
    if (vt) os << "\\n(" << vt->cval[u] << ", " << vt->aval[u] << ")";
    os << "\", shape="
       << (n.kind == NodeKind::kGoalLeaf
               ? "doublecircle"
               : (n.owner == Player::kSys ? "circle" : "box"));
    if (n.kind == NodeKind::kDeadLeaf) os << ", style=dashed";
    os << "];\n";
    if (n.parent != kNoNode) {
      os << "  n" << n.parent << " -> n" << u << " [label=\"" << n.via
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace admsyn
