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

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "admsyn/arena.hpp"
#include "admsyn/error.hpp"
#include "admsyn/oracle.hpp"
#include "admsyn/random_game.hpp"
#include "admsyn/rng.hpp"
#include "admsyn/synthesis.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace admsyn;
using namespace admsyn::testing;

namespace {

Cost F(std::int64_t v) { return Cost::finite(v); }

// Env strategy picking, per game state, the child for the given successor.
TreeStrategy env_strategy(const TreeArena& t,
                          const std::map<StateId, StateId>& next) {
  TreeStrategy s;
  s.choice.assign(t.size(), kNoNode);
  for (NodeId u = 0; u < static_cast<NodeId>(t.size()); ++u) {
    if (t.is_leaf(u) || t.node(u).owner != Player::kEnv) continue;
    s.choice[u] = t.children(u)[0].child;
    auto it = next.find(t.node(u).state);
    if (it == next.end()) continue;
    for (const TreeEdge& e : t.children(u))
      if (t.node(e.child).state == it->second) s.choice[u] = e.child;
  }
  return s;
}

std::size_t choice_product(const TreeArena& t, Player p) {
  std::size_t n = 1;
  for (NodeId u = 0; u < static_cast<NodeId>(t.size()); ++u)
    if (!t.is_leaf(u) && t.node(u).owner == p) n *= t.children(u).size();
  return n;
}

// Random explicit tree with payoffs in the leaves.
TreeArena random_tree(std::uint64_t seed) {
  Rng r(seed);
  TreeArena::Builder b(9);
  Player root = r.below(4) ? Player::kSys : Player::kEnv;
  std::function<void(NodeId, Player, int)> grow = [&](NodeId u, Player p,
                                                      int depth) {
    const int k = 1 + static_cast<int>(r.below(3));
    for (int a = 0; a < k; ++a) {
      if (depth >= 3 || r.below(10) < 4) {
        if (r.below(6) == 0) {
          b.add_dead_leaf(u, a);
        } else {
          b.add_goal_leaf(u, a, r.between(0, 9));
        }
      } else {
        grow(b.add_internal(u, a, opponent(p)), opponent(p), depth + 1);
      }
    }
  };
  grow(b.add_root(root), root, 0);
  return b.build();
}

std::vector<std::vector<NodeId>> as_sorted_vectors(
    const std::vector<StrategyVector>& v) {
  std::vector<std::vector<NodeId>> out;
  for (const auto& s : v) out.push_back(s.choice);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("strategy counts follow the product formula") {
  TreeArena b1 = unroll(fig1b(), 1);
  CHECK(enumerate_strategies(b1, Player::kSys).size() ==
        choice_product(b1, Player::kSys));
  CHECK(enumerate_strategies(b1, Player::kEnv).size() ==
        choice_product(b1, Player::kEnv));

  TreeArena f2 = unroll(fig2(), 12);
  const std::size_t env = choice_product(f2, Player::kEnv);
  REQUIRE(env <= kDefaultEnumerationCap);
  CHECK(enumerate_strategies(f2, Player::kEnv).size() == env);

  TreeArena::Builder b(5);
  NodeId r = b.add_root(Player::kSys);
  b.add_goal_leaf(r, 0, 1);
  b.add_goal_leaf(r, 1, 2);
  TreeArena no_env = b.build();
  CHECK(enumerate_strategies(no_env, Player::kEnv).size() == 1);
  CHECK(enumerate_strategies(no_env, Player::kSys).size() == 2);
}

TEST_CASE("enumeration cap") {
  TreeArena t = unroll(fig1b(), 6);
  try {
    enumerate_strategies(t, Player::kSys, 10);
    FAIL("expected a cap error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEnumerationTooLarge);
  }
}

TEST_CASE("canonical enumeration equals canonicalized full enumeration") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    TreeArena t = random_tree(seed);
    if (choice_product(t, Player::kSys) > 5000) continue;
    std::set<std::vector<NodeId>> seen;
    for (const auto& s : enumerate_strategies(t, Player::kSys))
      seen.insert(canonicalize(t, s).choice);
    auto canon = as_sorted_vectors(enumerate_canonical_strategies(t));
    CHECK(canon == std::vector<std::vector<NodeId>>(seen.begin(), seen.end()));
    CHECK(count_canonical_strategies(t, 1'000'000) == canon.size());
  }
}

TEST_CASE("fig2 plays against fixed Env strategies") {
  TreeArena t = unroll(fig2(), 12);
  TreeStrategy s2 = strategy_from_successors(t, kSigma2);
  CHECK(play_of(t, s2, env_strategy(t, {{7, 9}})).payoff == F(3));
  CHECK(play_of(t, s2, env_strategy(t, {{7, 8}})).payoff == F(10));

  TreeArena::Builder b(5);
  NodeId r = b.add_root(Player::kSys);
  NodeId leaf = b.add_goal_leaf(r, 0, 2);
  NodeId e = b.add_internal(r, 1, Player::kEnv);
  b.add_goal_leaf(e, 0, 1);
  b.add_goal_leaf(e, 1, 4);
  std::vector<NodeId> ids;
  TreeArena small = b.build(&ids);
  TreeStrategy straight{{ids[leaf], kNoNode, kNoNode, kNoNode, kNoNode}};
  for (const auto& tau : enumerate_strategies(small, Player::kEnv))
    CHECK(play_of(small, straight, tau).leaf == ids[leaf]);
}

TEST_CASE("fig2 dominance") {
  TreeArena t = unroll(fig2(), 12);
  TreeStrategy s1 = strategy_from_successors(t, kSigma1);
  TreeStrategy s2 = strategy_from_successors(t, kSigma2);
  TreeStrategy s3 = strategy_from_successors(t, kSigma3);
  CHECK(weakly_dominates(t, s2, s1));
  CHECK(!weakly_dominates(t, s1, s2));
  CHECK(!weakly_dominates(t, s2, s3));
  CHECK(!weakly_dominates(t, s3, s2));
  CHECK(!weakly_dominates(t, s2, s2));

  auto adm = as_sorted_vectors(brute_force_admissible(t, SynthesisMode::kAdmissible));
  auto has = [&](const TreeStrategy& s) {
    return std::binary_search(adm.begin(), adm.end(), canonicalize(t, s).choice);
  };
  CHECK(has(s2));
  CHECK(has(s3));
  CHECK(!has(s1));

  TreeValueTable vt = tree_values(t);
  CHECK(check_complement(t, vt, s1) == ComplementLabel::kSatisfiesDominated);
  CHECK(check_complement(t, vt, s2) == ComplementLabel::kSatisfiesAdmissible);
}

TEST_CASE("fig1b both first moves are admissible") {
  TreeArena t = unroll(fig1b(), 3);
  std::set<NodeId> first;
  for (const auto& s : brute_force_admissible(t, SynthesisMode::kAdmissible))
    first.insert(s.choice[0]);
  CHECK(first.size() == 2);
}

TEST_CASE("literal and fast dominance agree") {
  std::size_t compared = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    TreeArena t = random_tree(seed);
    if (count_canonical_strategies(t, 40) > 40) continue;
    if (choice_product(t, Player::kEnv) > 200) continue;
    auto all = enumerate_canonical_strategies(t);
    std::vector<StrategyOutcomes> out;
    for (const auto& s : all) out.push_back(strategy_outcomes(t, s));
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        CHECK(weakly_dominates(t, all[i], all[j]) ==
              dominates_fast(t, all[i], out[i], all[j], out[j]));
        ++compared;
      }
    }
  }
  CHECK(compared > 500);
}

TEST_CASE("dominance is a strict partial order") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    TreeArena t = random_tree(seed);
    if (count_canonical_strategies(t, 30) > 30) continue;
    auto all = enumerate_canonical_strategies(t);
    std::vector<StrategyOutcomes> out;
    for (const auto& s : all) out.push_back(strategy_outcomes(t, s));
    const std::size_t n = all.size();
    std::vector<std::vector<bool>> d(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i][j] = dominates_fast(t, all[i], out[i], all[j], out[j]);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(!d[i][i]);
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][j]) CHECK(!d[j][i]);
        for (std::size_t k = 0; k < n; ++k)
          if (d[i][j] && d[j][k]) CHECK(d[i][k]);
      }
    }
  }
}

TEST_CASE("minimax equals min over Sys of max over Env plays") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    TreeArena t = random_tree(seed);
    if (choice_product(t, Player::kSys) > 300) continue;
    if (choice_product(t, Player::kEnv) > 300) continue;
    auto envs = enumerate_strategies(t, Player::kEnv);
    Cost best = kInf;
    for (const auto& s : enumerate_strategies(t, Player::kSys)) {
      Cost worst = F(0);
      for (const auto& tau : envs) worst = std::max(worst, play_of(t, s, tau).payoff);
      best = std::min(best, worst);
    }
    CHECK(minimax_values(t)[0] == best);
  }
}

TEST_CASE("the random corpus is reproducible") {
  Corpus a = oracle_corpus(5, 10);
  Corpus b = oracle_corpus(5, 10);
  REQUIRE(a.cases.size() == 10);
  CHECK(a.generated == b.generated);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(a.cases[i].game == b.cases[i].game);
    CHECK(a.cases[i].budget == b.cases[i].budget);
    CHECK(a.cases[i].game.num_states() <= 8);
    CHECK(a.cases[i].budget >= 1);
    CHECK(a.cases[i].budget <= 8);
  }
  Rng r(42), s(42);
  for (int i = 0; i < 100; ++i) CHECK(r.next() == s.next());
  Rng q(7);
  for (int i = 0; i < 1000; ++i) {
    auto x = q.between(1, 3);
    CHECK(x >= 1);
    CHECK(x <= 3);
  }
}

TEST_CASE("cross check on a few corpus games") {
  Corpus c = oracle_corpus(11, 15);
  for (const RandomCase& rc : c.cases) {
    CrossCheck r = cross_check(unroll(rc.game, rc.budget));
    CHECK(r.mismatches[0] == 0);
    CHECK(r.mismatches[1] == 0);
    CHECK(r.both_or_neither == 0);
    CHECK(r.complement_disagrees == 0);
    CHECK(r.extraction_ok[0]);
    CHECK(r.extraction_ok[1]);
  }
}
