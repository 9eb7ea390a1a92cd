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

#include "admsyn/synthesis.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "admsyn/error.hpp"
#include "admsyn/rng.hpp"

namespace admsyn {

std::vector<NodeId> StrategySet::recorded_nodes() const {
  std::vector<NodeId> out;
  for (std::size_t u = 0; u < recorded_.size(); ++u) {
    if (recorded_[u]) out.push_back(static_cast<NodeId>(u));
  }
  return out;
}

int StrategySet::rank(Cost x) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), x);
  return static_cast<int>(it - values_.begin());
}

// Whether choosing child c at Sys node h, where the rest of the strategy
// yields outcome pair (cr, ar) from c, leaves no improving deviation at h.
// A deviation to c' can realize any outcome of a continuation below c'. If
// cr < ar, σ loses to the deviation exactly when some continuation of c'
// guarantees at most cr, i.e. aval(c') <= cr. If cr == ar == x, σ always pays
// x and is beaten by a c' that either guarantees less than x or guarantees x
// while sometimes paying less, which is the case aval(c') == x with a
// subgame acval below x.
bool StrategySet::ok(const TreeArena& t, NodeId h, NodeId c, int cr,
                     int ar) const {
  const int inf = static_cast<int>(values_.size()) - 1;
  if (mode_ == SynthesisMode::kAdmissibleWinning && in_win_[h] && ar == inf) {
    return false;
  }
  for (const TreeEdge& e : t.children(h)) {
    if (e.child == c) continue;
    const int r = aval_rank_[e.child];
    if (cr < ar) {
      if (r <= cr) return false;
    } else if (r < cr || (r == cr && !tight_[e.child])) {
      return false;
    }
  }
  return true;
}

namespace {

using Pair = std::pair<int, int>;

Pair join(Pair x, Pair y) {
  return {std::min(x.first, y.first), std::max(x.second, y.second)};
}

std::vector<Pair> pairs_of(const ProfileSet& s) {
  std::vector<Pair> out;
  s.for_each([&](int c, int a) { out.emplace_back(c, a); });
  return out;
}

void path_min_rule(const TreeArena& t, const TreeValueTable& vt,
                   std::span<const Cost> acv, bool winning,
                   std::vector<std::uint8_t>& recorded,
                   std::vector<std::uint8_t>& kept) {
  struct Frame {
    NodeId u;
    Cost path_min;
  };
  std::vector<Frame> stack{{t.root(), vt.aval[t.root()]}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (t.is_leaf(f.u)) continue;
    const bool sys = t.node(f.u).owner == Player::kSys;
    if (sys) recorded[f.u] = 1;
    const auto kids = t.children(f.u);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      const NodeId c = it->child;
      bool keep = true;
      if (sys) {
        const bool scoop = vt.cval[c] < f.path_min &&
                           (!winning || !vt.in_win[f.u] || vt.in_win[c]);
        const bool wcoop = vt.aval[f.u] == vt.aval[c] &&
                           vt.aval[c] == vt.cval[c] && vt.cval[c] == acv[f.u];
        keep = scoop || wcoop;
        kept[c] = keep ? 1 : 0;
      }
      if (keep) stack.push_back({c, std::min(f.path_min, vt.aval[c])});
    }
  }
}

}  // namespace

StrategySet synthesize(const TreeArena& t, const TreeValueTable& vt,
                       std::span<const Cost> acv, SynthesisMode mode,
                       Rule rule) {
  const std::size_t n = t.size();
  StrategySet s;
  s.mode_ = mode;
  s.rule_ = rule;
  s.budget_ = t.budget();
  s.cval_ = vt.cval;
  s.recorded_.assign(n, 0);
  s.offset_.assign(n + 1, 0);
  s.all_admissible_ = vt.cval[t.root()].is_infinite();
  if (s.all_admissible_) return s;

  const bool winning = mode == SynthesisMode::kAdmissibleWinning;
  std::vector<std::uint8_t> kept(n, 0);

  if (rule == Rule::kPathMin) {
    if (acv.size() != n) {
      throw Error(ErrorCode::kInconsistentTables,
                  "acval table does not match the tree");
    }
    path_min_rule(t, vt, acv, winning, s.recorded_, kept);
  } else {
    s.values_.push_back(kInf);
    for (std::size_t u = 0; u < n; ++u) {
      if (t.is_leaf(static_cast<NodeId>(u))) {
        s.values_.push_back(t.payoff(static_cast<NodeId>(u)));
      }
    }
    std::sort(s.values_.begin(), s.values_.end());
    s.values_.erase(std::unique(s.values_.begin(), s.values_.end()),
                    s.values_.end());
    const int k = static_cast<int>(s.values_.size());
    s.aval_rank_.resize(n);
    s.tight_.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
      s.aval_rank_[u] = s.rank(vt.aval[u]);
      s.tight_[u] = vt.acval[u] == vt.aval[u] ? 1 : 0;
    }
    s.in_win_ = vt.in_win;

    // Bottom-up: outcome pairs realizable from each node by continuations
    // that pass the local test at every Sys node below it.
    std::vector<ProfileSet>& prof = s.need_;
    prof.assign(n, ProfileSet(k));
    for (std::size_t i = n; i-- > 0;) {
      const NodeId u = static_cast<NodeId>(i);
      if (t.is_leaf(u)) {
        const int r = s.rank(t.payoff(u));
        prof[u].insert(r, r);
        continue;
      }
      const auto kids = t.children(u);
      if (t.node(u).owner == Player::kSys) {
        for (const TreeEdge& e : kids) {
          prof[e.child].for_each([&](int cr, int ar) {
            if (s.ok(t, u, e.child, cr, ar)) prof[u].insert(cr, ar);
          });
        }
      } else {
        ProfileSet acc = prof[kids[0].child];
        for (std::size_t j = 1; j < kids.size(); ++j) {
          acc = ProfileSet::combine(acc, prof[kids[j].child]);
        }
        prof[u] = std::move(acc);
      }
    }

    // Top-down: keep only the pairs that a complete admissible strategy
    // realizes at each node. The table is rewritten in place; a node's
    // bottom-up set is last read when its parent is processed.
    for (std::size_t i = 0; i < n; ++i) {
      const NodeId u = static_cast<NodeId>(i);
      if (t.is_leaf(u)) continue;
      const auto kids = t.children(u);
      if (prof[u].empty()) {
        for (const TreeEdge& e : kids) prof[e.child].clear();
        continue;
      }
      if (t.node(u).owner == Player::kSys) {
        for (const TreeEdge& e : kids) {
          ProfileSet keep(k);
          prof[e.child].for_each([&](int cr, int ar) {
            if (prof[u].contains(cr, ar) && s.ok(t, u, e.child, cr, ar)) {
              keep.insert(cr, ar);
            }
          });
          prof[e.child] = std::move(keep);
        }
        continue;
      }
      const std::size_t m = kids.size();
      std::vector<ProfileSet> prefix(m), suffix(m);
      for (std::size_t j = 0; j < m; ++j) {
        prefix[j] = j == 0 ? prof[kids[0].child]
                           : ProfileSet::combine(prefix[j - 1],
                                                 prof[kids[j].child]);
      }
      for (std::size_t j = m; j-- > 0;) {
        suffix[j] = j + 1 == m ? prof[kids[j].child]
                               : ProfileSet::combine(prof[kids[j].child],
                                                     suffix[j + 1]);
      }
      std::vector<ProfileSet> next(m, ProfileSet(k));
      for (std::size_t j = 0; j < m; ++j) {
        std::optional<ProfileSet> others;
        if (j > 0) others = prefix[j - 1];
        if (j + 1 < m) {
          others = others ? ProfileSet::combine(*others, suffix[j + 1])
                          : suffix[j + 1];
        }
        const std::vector<Pair> rest =
            others ? pairs_of(*others) : std::vector<Pair>{};
        prof[kids[j].child].for_each([&](int cr, int ar) {
          bool fits = false;
          if (!others) {
            fits = prof[u].contains(cr, ar);
          } else {
            for (const Pair& o : rest) {
              const Pair p = join({cr, ar}, o);
              if (prof[u].contains(p.first, p.second)) {
                fits = true;
                break;
              }
            }
          }
          if (fits) next[j].insert(cr, ar);
        });
      }
      for (std::size_t j = 0; j < m; ++j) {
        prof[kids[j].child] = std::move(next[j]);
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      const NodeId u = static_cast<NodeId>(i);
      if (t.is_leaf(u) || t.node(u).owner != Player::kSys) continue;
      if (prof[u].empty()) continue;
      s.recorded_[u] = 1;
      for (const TreeEdge& e : t.children(u)) {
        kept[e.child] = prof[e.child].empty() ? 0 : 1;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const NodeId u = static_cast<NodeId>(i);
    s.offset_[u + 1] = s.offset_[u];
    if (!s.recorded_[u]) continue;
    for (const TreeEdge& e : t.children(u)) {
      if (kept[e.child]) {
        s.allowed_.push_back(e.child);
        ++s.offset_[u + 1];
      }
    }
  }
  return s;
}

StrategySet synthesize_admissible(const TreeArena& t, const TreeValueTable& vt,
                                  std::span<const Cost> acv, Rule rule) {
  return synthesize(t, vt, acv, SynthesisMode::kAdmissible, rule);
}

StrategySet synthesize_admissible_winning(const TreeArena& t,
                                          const TreeValueTable& vt,
                                          std::span<const Cost> acv,
                                          Rule rule) {
  return synthesize(t, vt, acv, SynthesisMode::kAdmissibleWinning, rule);
}

std::vector<NodeId> reachable_nodes(const TreeArena& t,
                                    const TreeStrategy& s) {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{t.root()};
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    out.push_back(u);
    if (t.is_leaf(u)) continue;
    const auto kids = t.children(u);
    if (t.node(u).owner == Player::kSys) {
      const NodeId c = static_cast<std::size_t>(u) < s.choice.size()
                           ? s.choice[u]
                           : kNoNode;
      const bool valid =
          c != kNoNode && static_cast<std::size_t>(c) < t.size() &&
          t.node(c).parent == u;
      if (!valid) {
        throw Error(ErrorCode::kIncompleteStrategy,
                    "no valid choice at reachable node " + std::to_string(u));
      }
      stack.push_back(c);
    } else {
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
        stack.push_back(it->child);
      }
    }
  }
  return out;
}

bool is_member(const TreeArena& t, const StrategySet& s,
               const TreeStrategy& sigma) {
  const std::vector<NodeId> reach = reachable_nodes(t, sigma);
  if (s.all_admissible_) return true;
  for (NodeId u : reach) {
    if (t.is_leaf(u) || t.node(u).owner != Player::kSys) continue;
    if (!s.recorded_[u]) return false;
    const auto allowed = s.allowed(u);
    if (std::find(allowed.begin(), allowed.end(), sigma.choice[u]) ==
        allowed.end()) {
      return false;
    }
  }
  if (s.rule_ == Rule::kPathMin) return true;

  // The allowed sets are only a projection of the admissible set; check the
  // local condition at every reachable Sys node against σ's own outcomes.
  std::vector<Pair> outcome(t.size(), {0, 0});
  for (auto it = reach.rbegin(); it != reach.rend(); ++it) {
    const NodeId u = *it;
    if (t.is_leaf(u)) {
      const int r = s.rank(t.payoff(u));
      outcome[u] = {r, r};
    } else if (t.node(u).owner == Player::kSys) {
      const NodeId c = sigma.choice[u];
      if (!s.ok(t, u, c, outcome[c].first, outcome[c].second)) return false;
      outcome[u] = outcome[c];
    } else {
      const auto kids = t.children(u);
      outcome[u] = outcome[kids[0].child];
      for (const TreeEdge& e : kids) outcome[u] = join(outcome[u], outcome[e.child]);
    }
  }
  return true;
}

struct Extractor {
  const TreeArena& t;
  const StrategySet& s;
  ExtractPolicy policy;
  Rng rng;
  TreeStrategy out;

  Extractor(const TreeArena& tree, const StrategySet& set, ExtractPolicy p)
      : t(tree), s(set), policy(p), rng(p.seed) {
    out.choice.assign(t.size(), kNoNode);
  }

  bool random() const {
    return policy.kind == ExtractPolicy::Kind::kSeededRandom;
  }

  NodeId pick(const std::vector<NodeId>& options) {
    if (options.empty()) {
      throw Error(ErrorCode::kInconsistentTables, "empty allowed set");
    }
    if (random()) return options[rng.below(options.size())];
    NodeId best = options.front();
    for (NodeId c : options) {
      if (s.cval_[c] < s.cval_[best]) best = c;
    }
    return best;
  }

  // Walks the reachable part, choosing from `allowed_or_all` at Sys nodes.
  void walk(bool all_children) {
    std::vector<NodeId> stack{t.root()};
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      if (t.is_leaf(u)) continue;
      const auto kids = t.children(u);
      if (t.node(u).owner == Player::kSys) {
        std::vector<NodeId> options;
        if (all_children) {
          for (const TreeEdge& e : kids) options.push_back(e.child);
        } else {
          const auto a = s.allowed(u);
          options.assign(a.begin(), a.end());
        }
        out.choice[u] = pick(options);
        stack.push_back(out.choice[u]);
      } else {
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
          stack.push_back(it->child);
        }
      }
    }
  }

  template <class T>
  const T& choose(const std::vector<T>& options) {
    if (options.empty()) {
      throw Error(ErrorCode::kInconsistentTables, "no realizable outcome");
    }
    return random() ? options[rng.below(options.size())] : options.front();
  }

  // Fixes an outcome pair for the whole strategy at the root and pushes it
  // down: Sys nodes pick a child whose admissible outcomes include the
  // target, Env nodes split it into one pair per child.
  void exact() {
    const auto& need = s.need_;
    std::vector<std::pair<NodeId, Pair>> stack;
    stack.emplace_back(t.root(), choose(pairs_of(need[t.root()])));
    while (!stack.empty()) {
      const auto [u, target] = stack.back();
      stack.pop_back();
      if (t.is_leaf(u)) continue;
      const auto kids = t.children(u);
      if (t.node(u).owner == Player::kSys) {
        std::vector<NodeId> options;
        for (const TreeEdge& e : kids) {
          if (need[e.child].contains(target.first, target.second)) {
            options.push_back(e.child);
          }
        }
        const NodeId c = pick(options);
        out.choice[u] = c;
        stack.emplace_back(c, target);
        continue;
      }
      const std::size_t m = kids.size();
      std::vector<ProfileSet> suffix(m);
      for (std::size_t j = m; j-- > 0;) {
        suffix[j] = j + 1 == m ? need[kids[j].child]
                               : ProfileSet::combine(need[kids[j].child],
                                                     suffix[j + 1]);
      }
      std::optional<Pair> acc;
      std::vector<std::pair<NodeId, Pair>> parts;
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<Pair> options;
        const std::vector<Pair> rest =
            j + 1 < m ? pairs_of(suffix[j + 1]) : std::vector<Pair>{};
        need[kids[j].child].for_each([&](int cr, int ar) {
          const Pair here = acc ? join(*acc, {cr, ar}) : Pair{cr, ar};
          bool fits = j + 1 == m && here == target;
          for (const Pair& r : rest) {
            if (fits) break;
            fits = join(here, r) == target;
          }
          if (fits) options.emplace_back(cr, ar);
        });
        const Pair q = choose(options);
        acc = acc ? join(*acc, q) : q;
        parts.emplace_back(kids[j].child, q);
      }
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        stack.push_back(*it);
      }
    }
  }
};

TreeStrategy extract_strategy(const TreeArena& t, const StrategySet& s,
                              ExtractPolicy policy) {
  Extractor x(t, s, policy);
  if (s.all_admissible()) {
    x.walk(true);
  } else if (s.rule() == Rule::kPathMin) {
    x.walk(false);
  } else {
    x.exact();
  }
  return std::move(x.out);
}

TreeStrategy lift_memoryless(const TreeArena& t, const MemorylessStrategy& m) {
  TreeStrategy s;
  s.choice.assign(t.size(), kNoNode);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const NodeId u = static_cast<NodeId>(i);
    if (t.is_leaf(u) || t.node(u).owner != Player::kSys) continue;
    const auto kids = t.children(u);
    NodeId c = kids[0].child;
    const StateId v = t.node(u).state;
    if (v >= 0 && static_cast<std::size_t>(v) < m.choice.size() &&
        m.choice[v]) {
      const NodeId by_action = t.child_by_action(u, *m.choice[v]);
      if (by_action != kNoNode) c = by_action;
    }
    s.choice[u] = c;
  }
  return s;
}

TreeStrategy strategy_from_successors(const TreeArena& t,
                                      const std::map<StateId, StateId>& next) {
  TreeStrategy s;
  s.choice.assign(t.size(), kNoNode);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const NodeId u = static_cast<NodeId>(i);
    if (t.is_leaf(u) || t.node(u).owner != Player::kSys) continue;
    const auto kids = t.children(u);
    s.choice[u] = kids[0].child;
    auto it = next.find(t.node(u).state);
    if (it == next.end()) continue;
    for (const TreeEdge& e : kids) {
      if (t.node(e.child).state == it->second) s.choice[u] = e.child;
    }
  }
  return s;
}

nlohmann::json strategy_set_to_json(const TreeArena& t, const StrategySet& s) {
  nlohmann::json nodes = nlohmann::json::array();
  nlohmann::json transducer = nlohmann::json::array();
  for (NodeId h : s.recorded_nodes()) {
    nlohmann::json allowed = nlohmann::json::array();
    nlohmann::json actions = nlohmann::json::array();
    for (NodeId c : s.allowed(h)) {
      allowed.push_back(c);
      actions.push_back(t.node(c).via);
    }
    const TreeNode& n = t.node(h);
    nodes.push_back({{"node", h},
                     {"state", n.state},
                     {"accumulated", n.accumulated},
                     {"allowed", allowed}});
    transducer.push_back({{"memory_state", n.parent},
                          {"input", n.parent == kNoNode ? -1 : n.via},
                          {"node", h},
                          {"output", actions}});
  }
  return {{"mode", s.mode() == SynthesisMode::kAdmissible ? "adm" : "adm-win"},
          {"rule", s.rule() == Rule::kExact ? "exact" : "path-min"},
          {"budget", s.budget()},
          {"all_admissible", s.all_admissible()},
          {"nodes", nodes},
          {"transducer", transducer}};
}

nlohmann::json tree_strategy_to_json(const TreeArena& t,
                                     const TreeStrategy& s) {
  nlohmann::json choices = nlohmann::json::array();
  for (std::size_t u = 0; u < s.choice.size(); ++u) {
    if (s.choice[u] == kNoNode) continue;
    choices.push_back({{"node", u},
                       {"child", s.choice[u]},
                       {"action", t.node(s.choice[u]).via}});
  }
  return {{"budget", t.budget()}, {"choices", choices}};
}

TreeStrategy tree_strategy_from_json(const TreeArena& t,
                                     const nlohmann::json& j) {
  try {
    if (j.contains("successors")) {
      std::map<StateId, StateId> next;
      for (const auto& [k, v] : j.at("successors").items()) {
        next[std::stoi(k)] = v.get<StateId>();
      }
      return strategy_from_successors(t, next);
    }
    TreeStrategy s;
    s.choice.assign(t.size(), kNoNode);
    for (const auto& c : j.at("choices")) {
      const NodeId u = c.at("node").get<NodeId>();
      if (u < 0 || static_cast<std::size_t>(u) >= t.size()) {
        throw Error(ErrorCode::kDanglingReference,
                    "strategy names unknown node " + std::to_string(u));
      }
      s.choice[u] = c.contains("child")
                        ? c.at("child").get<NodeId>()
                        : t.child_by_action(u, c.at("action").get<ActionId>());
    }
    return s;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kMalformedSpec, ex.what());
  }
}

}  // namespace admsyn
