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

#include "admsyn/oracle.hpp"

#include <algorithm>
#include <utility>

#include "admsyn/error.hpp"

namespace admsyn {

namespace {

std::vector<NodeId> decision_nodes(const TreeArena& t, Player owner) {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const NodeId u = static_cast<NodeId>(i);
    if (!t.is_leaf(u) && t.node(u).owner == owner) out.push_back(u);
  }
  return out;
}

void too_large(std::size_t cap) {
  throw Error(ErrorCode::kEnumerationTooLarge,
              "more than " + std::to_string(cap) + " strategies");
}

// Odometer over the given nodes; the first node varies slowest.
template <class F>
void for_each_assignment(const TreeArena& t, const std::vector<NodeId>& nodes,
                         StrategyVector base, std::size_t cap, F&& f) {
  std::size_t count = 1;
  for (NodeId u : nodes) {
    count *= t.children(u).size();
    if (count > cap) too_large(cap);
  }
  std::vector<std::size_t> digit(nodes.size(), 0);
  for (NodeId u : nodes) base.choice[u] = t.children(u)[0].child;
  for (;;) {
    f(base);
    std::size_t i = nodes.size();
    while (i > 0) {
      --i;
      const auto kids = t.children(nodes[i]);
      if (++digit[i] < kids.size()) {
        base.choice[nodes[i]] = kids[digit[i]].child;
        break;
      }
      digit[i] = 0;
      base.choice[nodes[i]] = kids[0].child;
      if (i == 0) return;
    }
    if (nodes.empty()) return;
  }
}

}  // namespace

std::vector<StrategyVector> enumerate_strategies(const TreeArena& t,
                                                 Player owner,
                                                 std::size_t cap) {
  std::vector<StrategyVector> out;
  StrategyVector base;
  base.choice.assign(t.size(), kNoNode);
  for_each_assignment(t, decision_nodes(t, owner), base, cap,
                      [&](const StrategyVector& s) { out.push_back(s); });
  return out;
}

std::size_t count_canonical_strategies(const TreeArena& t, std::size_t limit) {
  std::vector<std::size_t> count(t.size(), 1);
  auto sat = [limit](std::size_t x) { return std::min(x, limit + 1); };
  for (std::size_t i = t.size(); i-- > 0;) {
    const NodeId u = static_cast<NodeId>(i);
    if (t.is_leaf(u)) continue;
    const bool sys = t.node(u).owner == Player::kSys;
    std::size_t c = sys ? 0 : 1;
    for (const TreeEdge& e : t.children(u)) {
      c = sys ? sat(c + count[e.child])
              : sat(static_cast<std::size_t>(
                    std::min<unsigned long long>(
                        static_cast<unsigned long long>(c) * count[e.child],
                        limit + 1)));
    }
    count[u] = c;
  }
  return count[t.root()];
}

std::vector<StrategyVector> enumerate_canonical_strategies(const TreeArena& t,
                                                           std::size_t cap) {
  if (count_canonical_strategies(t, cap) > cap) too_large(cap);
  using Assign = std::vector<std::pair<NodeId, NodeId>>;
  // Choices inside each subtree, built bottom-up.
  std::vector<std::vector<Assign>> sub(t.size());
  for (std::size_t i = t.size(); i-- > 0;) {
    const NodeId u = static_cast<NodeId>(i);
    auto& here = sub[u];
    if (t.is_leaf(u)) {
      here.emplace_back();
      continue;
    }
    if (t.node(u).owner == Player::kSys) {
      for (const TreeEdge& e : t.children(u)) {
        for (const Assign& a : sub[e.child]) {
          Assign b{{u, e.child}};
          b.insert(b.end(), a.begin(), a.end());
          here.push_back(std::move(b));
        }
      }
    } else {
      here.emplace_back();
      for (const TreeEdge& e : t.children(u)) {
        std::vector<Assign> next;
        for (const Assign& x : here) {
          for (const Assign& y : sub[e.child]) {
            Assign z = x;
            z.insert(z.end(), y.begin(), y.end());
            next.push_back(std::move(z));
          }
        }
        here = std::move(next);
      }
    }
    for (const TreeEdge& e : t.children(u)) {
      std::vector<Assign>().swap(sub[e.child]);
    }
  }
  StrategyVector base;
  base.choice.assign(t.size(), kNoNode);
  for (NodeId u : decision_nodes(t, Player::kSys)) {
    base.choice[u] = t.children(u)[0].child;
  }
  std::vector<StrategyVector> out;
  out.reserve(sub[t.root()].size());
  for (const Assign& a : sub[t.root()]) {
    StrategyVector s = base;
    for (const auto& [u, c] : a) s.choice[u] = c;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const StrategyVector& a, const StrategyVector& b) {
              return a.choice < b.choice;
            });
  return out;
}

StrategyVector canonicalize(const TreeArena& t, const StrategyVector& sigma) {
  StrategyVector out;
  out.choice.assign(t.size(), kNoNode);
  for (NodeId u : decision_nodes(t, Player::kSys)) {
    out.choice[u] = t.children(u)[0].child;
  }
  for (NodeId u : reachable_nodes(t, sigma)) {
    if (!t.is_leaf(u) && t.node(u).owner == Player::kSys) {
      out.choice[u] = sigma.choice[u];
    }
  }
  return out;
}

PlayOutcome play_of(const TreeArena& t, const StrategyVector& sigma,
                    const StrategyVector& tau) {
  NodeId u = t.root();
  while (!t.is_leaf(u)) {
    const StrategyVector& who =
        t.node(u).owner == Player::kSys ? sigma : tau;
    const NodeId c = who.choice.at(u);
    if (c == kNoNode || t.node(c).parent != u) {
      throw Error(ErrorCode::kIncompleteStrategy,
                  "no valid choice at node " + std::to_string(u));
    }
    u = c;
  }
  return {u, t.payoff(u)};
}

bool weakly_dominates(const TreeArena& t, const StrategyVector& better,
                      const StrategyVector& worse, std::size_t cap) {
  std::vector<std::uint8_t> seen(t.size(), 0);
  for (const StrategyVector* s : {&better, &worse}) {
    for (NodeId u : reachable_nodes(t, *s)) seen[u] = 1;
  }
  std::vector<NodeId> env;
  for (NodeId u : decision_nodes(t, Player::kEnv)) {
    if (seen[u]) env.push_back(u);
  }
  StrategyVector tau;
  tau.choice.assign(t.size(), kNoNode);
  bool never_worse = true;
  bool sometimes_better = false;
  for_each_assignment(t, env, tau, cap, [&](const StrategyVector& x) {
    const Cost a = play_of(t, better, x).payoff;
    const Cost b = play_of(t, worse, x).payoff;
    if (a > b) never_worse = false;
    if (a < b) sometimes_better = true;
  });
  return never_worse && sometimes_better;
}

StrategyOutcomes strategy_outcomes(const TreeArena& t,
                                   const StrategyVector& sigma) {
  StrategyOutcomes o;
  o.best.assign(t.size(), kInf);
  o.worst.assign(t.size(), kInf);
  for (std::size_t i = t.size(); i-- > 0;) {
    const NodeId u = static_cast<NodeId>(i);
    if (t.is_leaf(u)) {
      o.best[u] = o.worst[u] = t.payoff(u);
    } else if (t.node(u).owner == Player::kSys) {
      const NodeId c = sigma.choice[u];
      if (c == kNoNode) continue;
      o.best[u] = o.best[c];
      o.worst[u] = o.worst[c];
    } else {
      o.worst[u] = Cost::finite(0);
      for (const TreeEdge& e : t.children(u)) {
        o.best[u] = std::min(o.best[u], o.best[e.child]);
        o.worst[u] = std::max(o.worst[u], o.worst[e.child]);
      }
    }
  }
  return o;
}

bool dominates_fast(const TreeArena& t, const StrategyVector& better,
                    const StrategyOutcomes& bo, const StrategyVector& worse,
                    const StrategyOutcomes& wo) {
  bool sometimes_better = false;
  std::vector<NodeId> stack{t.root()};
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    if (t.is_leaf(u)) continue;
    if (t.node(u).owner == Player::kEnv) {
      for (const TreeEdge& e : t.children(u)) stack.push_back(e.child);
      continue;
    }
    const NodeId a = better.choice[u];
    const NodeId b = worse.choice[u];
    if (a == b) {
      stack.push_back(a);
      continue;
    }
    // From here Env can pair any outcome of one side with any of the other.
    if (bo.worst[a] > wo.best[b]) return false;
    if (bo.best[a] < wo.worst[b]) sometimes_better = true;
  }
  return sometimes_better;
}

std::vector<Cost> minimax_values(const TreeArena& t) {
  std::vector<Cost> v(t.size(), kInf);
  for (std::size_t i = t.size(); i-- > 0;) {
    const NodeId u = static_cast<NodeId>(i);
    if (t.is_leaf(u)) {
      v[u] = t.payoff(u);
      continue;
    }
    const bool sys = t.node(u).owner == Player::kSys;
    Cost x = sys ? kInf : Cost::finite(0);
    for (const TreeEdge& e : t.children(u)) {
      x = sys ? std::min(x, v[e.child]) : std::max(x, v[e.child]);
    }
    v[u] = x;
  }
  return v;
}

std::vector<bool> brute_force_flags(
    const TreeArena& t, SynthesisMode mode,
    const std::vector<StrategyVector>& candidates) {
  const std::size_t n = candidates.size();
  std::vector<StrategyOutcomes> out;
  out.reserve(n);
  for (const auto& s : candidates) out.push_back(strategy_outcomes(t, s));
  std::vector<bool> flags(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n && flags[i]; ++j) {
      if (j != i && dominates_fast(t, candidates[j], out[j], candidates[i],
                                   out[i])) {
        flags[i] = false;
      }
    }
  }
  if (mode == SynthesisMode::kAdmissibleWinning) {
    const std::vector<Cost> aval = minimax_values(t);
    for (std::size_t i = 0; i < n; ++i) {
      if (!flags[i]) continue;
      for (NodeId u : reachable_nodes(t, candidates[i])) {
        if (aval[u].is_finite() && out[i].worst[u].is_infinite()) {
          flags[i] = false;
          break;
        }
      }
    }
  }
  return flags;
}

std::vector<StrategyVector> brute_force_admissible(const TreeArena& t,
                                                   SynthesisMode mode,
                                                   std::size_t cap) {
  std::vector<StrategyVector> all = enumerate_canonical_strategies(t, cap);
  const std::vector<bool> flags = brute_force_flags(t, mode, all);
  std::vector<StrategyVector> keep;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (flags[i]) keep.push_back(std::move(all[i]));
  }
  return keep;
}

ComplementLabel check_complement(const TreeArena& t, const TreeValueTable& vt,
                                 const StrategyVector& sigma) {
  const StrategyOutcomes o = strategy_outcomes(t, sigma);
  bool all_pass = true;
  bool some_dominated = false;
  for (NodeId h : reachable_nodes(t, sigma)) {
    if (t.is_leaf(h) || t.node(h).owner != Player::kSys) continue;
    const Cost a = vt.aval[h];
    const Cost ac = vt.acval[h];
    const Cost cs = o.best[h];
    const Cost as = o.worst[h];
    const bool pass = cs < a || (a == as && as == cs && cs == ac);
    const bool dominated =
        (cs >= a && as > a) || (a == as && as == cs && ac < a);
    all_pass = all_pass && pass;
    some_dominated = some_dominated || dominated;
  }
  if (all_pass == some_dominated) {
    throw Error(ErrorCode::kBothOrNeither,
                all_pass ? "strategy passes and fails the conditions"
                         : "strategy satisfies neither condition");
  }
  return all_pass ? ComplementLabel::kSatisfiesAdmissible
                  : ComplementLabel::kSatisfiesDominated;
}

CrossCheck cross_check(const TreeArena& t, Rule rule, std::size_t cap) {
  CrossCheck r;
  const TreeValueTable vt = tree_values(t);
  const std::vector<StrategyVector> all = enumerate_canonical_strategies(t, cap);
  r.strategies = all.size();
  for (int m = 0; m < 2; ++m) {
    const SynthesisMode mode =
        m ? SynthesisMode::kAdmissibleWinning : SynthesisMode::kAdmissible;
    const std::vector<bool> flags = brute_force_flags(t, mode, all);
    const StrategySet s = synthesize(t, vt, vt.acval, mode, rule);
    r.all_admissible[m] = s.all_admissible();
    for (std::size_t i = 0; i < all.size(); ++i) {
      const bool in = is_member(t, s, all[i]);
      r.members[m] += in;
      r.oracle_members[m] += flags[i];
      r.mismatches[m] += in != flags[i];
      if (m == 0) {
        try {
          const bool adm = check_complement(t, vt, all[i]) ==
                           ComplementLabel::kSatisfiesAdmissible;
          r.complement_disagrees += adm != flags[i];
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kBothOrNeither) throw;
          ++r.both_or_neither;
        }
      }
    }
    try {
      r.extraction_ok[m] = is_member(t, s, extract_strategy(t, s));
    } catch (const Error& e) {
      // The literal rule can leave a reachable node with nothing allowed.
      if (e.code() != ErrorCode::kInconsistentTables) throw;
      r.extraction_ok[m] = false;
    }
  }
  return r;
}

}  // namespace admsyn
