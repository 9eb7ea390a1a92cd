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

#include <vector>

#include "admsyn/arena.hpp"
#include "admsyn/error.hpp"
#include "admsyn/oracle.hpp"
#include "admsyn/random_game.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace admsyn;
using namespace admsyn::testing;

namespace {

Cost F(std::int64_t v) { return Cost::finite(v); }

}  // namespace

TEST_CASE("fig1b unrolled at budget 1") {
  TreeArena t = unroll(fig1b(), 1);
  CHECK(t.size() == 10);
  TreeStats st = tree_stats(t);
  CHECK(st.goal_leaves == 2);
  CHECK(st.dead_leaves == 3);
  CHECK(st.depth == 3);
  CHECK(t.node(0).state == 0);
  REQUIRE(t.children(0).size() == 2);
  NodeId v1 = node_at(t, {0, 1});
  NodeId v3 = node_at(t, {0, 3});
  REQUIRE(v1 != kNoNode);
  REQUIRE(v3 != kNoNode);
  CHECK(t.node(v1).accumulated == 1);
  CHECK(t.node(node_at(t, {0, 1, 2})).kind == NodeKind::kGoalLeaf);
  CHECK(t.payoff(node_at(t, {0, 3, 2})) == F(1));
  // Any further Sys move from v0 or v4 blows the budget.
  NodeId again = node_at(t, {0, 1, 0});
  REQUIRE(again != kNoNode);
  for (const TreeEdge& e : t.children(again))
    CHECK(t.node(e.child).kind == NodeKind::kDeadLeaf);
}

TEST_CASE("initial goal unrolls to a single leaf") {
  GameSpec s;
  s.states = {{0, Player::kSys, true}, {1, Player::kEnv, false}};
  s.edges = {{0, 0, 1, 1}, {1, 0, 0, 0}};
  TreeArena t = unroll(build_game(s), 5);
  CHECK(t.size() == 1);
  CHECK(t.node(0).kind == NodeKind::kGoalLeaf);
  CHECK(t.payoff(0) == F(0));
}

TEST_CASE("fig2 tree leaf reached via v2") {
  TreeArena t = unroll(fig2(), 12);
  NodeId leaf = node_at(t, {0, 2, 6});
  REQUIRE(leaf != kNoNode);
  CHECK(t.node(leaf).kind == NodeKind::kGoalLeaf);
  CHECK(t.node(leaf).accumulated == 1);
  CHECK(t.path_to(leaf) == std::vector<NodeId>{0, t.node(leaf).parent, leaf});
}

TEST_CASE("preorder numbering puts children after parents") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomCase c = random_case(seed);
    TreeArena t = unroll(c.game, c.budget);
    for (NodeId u = 1; u < static_cast<NodeId>(t.size()); ++u)
      CHECK(t.node(u).parent < u);
  }
}

TEST_CASE("node cap") {
  CHECK_THROWS_AS(unroll(fig1b(), 50, 100), Error);
  try {
    unroll(fig1b(), 50, 100);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudgetOverflowGuard);
  }
}

TEST_CASE("fig4 annotated values") {
  TreeArena t = fig4();
  TreeValueTable vt = tree_values(t);
  struct Want {
    std::initializer_list<StateId> path;
    Cost cval, aval;
  };
  const Want want[] = {
      {{0}, F(2), kInf},
      {{0, 1}, F(2), kInf},
      {{0, 2}, F(2), kInf},
      {{0, 10}, kInf, kInf},
      {{0, 1, 3}, F(2), F(4)},
      {{0, 2, 4}, F(2), F(9)},
      {{0, 1, 3, 5}, F(3), F(4)},
      {{0, 1, 3, 6}, F(2), F(9)},
      {{0, 1, 3, 6, 7}, F(2), F(9)},
      {{0, 1, 3, 6, 7, 8}, F(2), F(9)},
      {{0, 1, 3, 6, 7, 9}, F(5), F(10)},
  };
  for (const Want& w : want) {
    NodeId u = node_at(t, w.path);
    REQUIRE(u != kNoNode);
    CAPTURE(u);
    CHECK(vt.cval[u] == w.cval);
    CHECK(vt.aval[u] == w.aval);
  }
}

TEST_CASE("leaf base case") {
  TreeArena::Builder b(10);
  NodeId r = b.add_root(Player::kEnv);
  b.add_goal_leaf(r, 0, 5);
  TreeArena t = b.build();
  TreeValueTable vt = tree_values(t);
  CHECK(vt.aval[1] == F(5));
  CHECK(vt.cval[1] == F(5));
  CHECK(vt.aval[0] == F(5));
  CHECK(tree_acval(t, vt, AcvalMethod::kOneStep)[0] == F(5));
}

TEST_CASE("tree acval") {
  TreeArena t = fig4();
  TreeValueTable vt = tree_values(t);
  NodeId v7 = node_at(t, {0, 1, 3, 6, 7});
  CHECK(tree_acval(t, vt, AcvalMethod::kOneStep)[v7] == F(2));
  CHECK(tree_acval(t, vt, AcvalMethod::kSubgame)[v7] == F(2));

  TreeArena t2 = unroll(fig2(), 12);
  TreeValueTable vt2 = tree_values(t2);
  NodeId v4 = node_at(t2, {0, 1, 4});
  REQUIRE(v4 != kNoNode);
  CHECK(t2.node(v4).accumulated == 1);
  CHECK(tree_acval(t2, vt2, AcvalMethod::kOneStep)[v4] == F(3));
  CHECK(tree_acval(t2, vt2, AcvalMethod::kSubgame)[v4] == F(3));
  CHECK(vt2.acval[0] == F(3));
}

TEST_CASE("tree values match the independent minimax") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    RandomCase c = random_case(seed);
    TreeArena t = unroll(c.game, c.budget);
    CHECK(tree_values(t).aval == minimax_values(t));
  }
}

TEST_CASE("larger budgets never worsen the root values") {
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    RandomCase c = random_case(seed);
    Cost prev_a = kInf, prev_c = kInf;
    for (std::int64_t b = 0; b <= 8; ++b) {
      TreeValueTable vt = tree_values(unroll(c.game, b));
      CHECK(vt.aval[0] <= prev_a);
      CHECK(vt.cval[0] <= prev_c);
      prev_a = vt.aval[0];
      prev_c = vt.cval[0];
    }
  }
}

TEST_CASE("tree json round trip") {
  TreeArena t = unroll(fig2(), 12);
  TreeArena back = tree_from_json(tree_to_json(t));
  REQUIRE(back.size() == t.size());
  for (NodeId u = 0; u < static_cast<NodeId>(t.size()); ++u) {
    CHECK(back.node(u).state == t.node(u).state);
    CHECK(back.node(u).parent == t.node(u).parent);
    CHECK(back.node(u).kind == t.node(u).kind);
    CHECK(back.node(u).accumulated == t.node(u).accumulated);
  }
  CHECK(tree_to_json(back) == tree_to_json(t));
  CHECK(tree_to_dot(t).find("digraph") != std::string::npos);
}
