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
#include <vector>

#include "admsyn/arena.hpp"
#include "admsyn/error.hpp"
#include "admsyn/oracle.hpp"
#include "admsyn/random_game.hpp"
#include "admsyn/synthesis.hpp"
#include "admsyn/values.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace admsyn;
using namespace admsyn::testing;

namespace {

struct Solved {
  TreeArena t;
  TreeValueTable vt;
  StrategySet adm;
  StrategySet win;
};

Solved solve(TreeArena t, Rule rule = Rule::kExact) {
  TreeValueTable vt = tree_values(t);
  StrategySet adm = synthesize_admissible(t, vt, vt.acval, rule);
  StrategySet win = synthesize_admissible_winning(t, vt, vt.acval, rule);
  return {std::move(t), std::move(vt), std::move(adm), std::move(win)};
}

bool allows(const StrategySet& s, NodeId h, NodeId c) {
  auto a = s.allowed(h);
  return std::find(a.begin(), a.end(), c) != a.end();
}

}  // namespace

TEST_CASE("fig2 membership") {
  Solved s = solve(unroll(fig2(), 12));
  TreeStrategy s1 = strategy_from_successors(s.t, kSigma1);
  TreeStrategy s2 = strategy_from_successors(s.t, kSigma2);
  TreeStrategy s3 = strategy_from_successors(s.t, kSigma3);
  CHECK(!is_member(s.t, s.adm, s1));
  CHECK(!is_member(s.t, s.win, s1));
  CHECK(is_member(s.t, s.adm, s2));
  CHECK(is_member(s.t, s.win, s2));
  CHECK(is_member(s.t, s.adm, s3));
  CHECK(!is_member(s.t, s.win, s3));
}

TEST_CASE("fig2 allowed sets") {
  Solved s = solve(unroll(fig2(), 12));
  NodeId v1 = node_at(s.t, {0, 1});
  NodeId v2 = node_at(s.t, {0, 2});
  NodeId v4 = node_at(s.t, {0, 1, 4});
  CHECK(allows(s.win, 0, v1));
  CHECK(!allows(s.win, 0, v2));
  CHECK(s.win.allowed(0).size() == 1);
  CHECK(allows(s.adm, 0, v1));
  CHECK(allows(s.adm, 0, v2));
  CHECK(allows(s.adm, v4, node_at(s.t, {0, 1, 4, 7})));
  CHECK(!allows(s.adm, v4, node_at(s.t, {0, 1, 4, 5})));
}

TEST_CASE("budget below the cooperative value admits everything") {
  Solved s = solve(unroll(fig2(), 0));
  CHECK(s.adm.all_admissible());
  CHECK(s.win.all_admissible());
}

TEST_CASE("fig4 history dependence") {
  Solved s = solve(fig4());
  NodeId v7_via_v4 = node_at(s.t, {0, 2, 4, 6, 7});
  NodeId v7_via_v3 = node_at(s.t, {0, 1, 3, 6, 7});
  REQUIRE(v7_via_v4 != kNoNode);
  REQUIRE(v7_via_v3 != kNoNode);
  NodeId v9_a = node_at(s.t, {0, 2, 4, 6, 7, 9});
  NodeId v9_b = node_at(s.t, {0, 1, 3, 6, 7, 9});
  CHECK(allows(s.adm, v7_via_v4, v9_a));
  CHECK(!allows(s.adm, v7_via_v3, v9_b));
  // The literal rule shows the same asymmetry here.
  Solved p = solve(fig4(), Rule::kPathMin);
  CHECK(allows(p.adm, v7_via_v4, v9_a));
  CHECK(!allows(p.adm, v7_via_v3, v9_b));
}

TEST_CASE("fig1b has no winning region so both sets coincide") {
  Solved s = solve(unroll(fig1b(), 4));
  CHECK(s.vt.aval[0].is_infinite());
  for (const TreeStrategy& x : enumerate_canonical_strategies(s.t))
    CHECK(is_member(s.t, s.adm, x) == is_member(s.t, s.win, x));
  // Both moves out of v0 stay admissible.
  CHECK(s.adm.allowed(0).size() == 2);
}

TEST_CASE("goal root") {
  TreeArena t = [] {
    GameSpec s;
    s.states = {{0, Player::kSys, true}, {1, Player::kEnv, false}};
    s.edges = {{0, 0, 1, 1}, {1, 0, 0, 0}};
    return unroll(build_game(s), 3);
  }();
  Solved s = solve(std::move(t));
  CHECK(s.win.recorded_nodes().empty());
  CHECK(is_member(s.t, s.win, TreeStrategy{{kNoNode}}));
}

TEST_CASE("extraction") {
  Solved s = solve(unroll(fig2(), 12));
  TreeStrategy a = extract_strategy(s.t, s.adm);
  CHECK(a.choice[0] == node_at(s.t, {0, 2}));
  TreeStrategy w = extract_strategy(s.t, s.win);
  CHECK(w.choice[0] == node_at(s.t, {0, 1}));
  CHECK(is_member(s.t, s.adm, a));
  CHECK(is_member(s.t, s.win, w));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(is_member(s.t, s.adm,
                    extract_strategy(s.t, s.adm, ExtractPolicy::seeded(seed))));
    CHECK(is_member(s.t, s.win,
                    extract_strategy(s.t, s.win, ExtractPolicy::seeded(seed))));
  }
}

TEST_CASE("incomplete strategies are reported") {
  Solved s = solve(unroll(fig2(), 12));
  TreeStrategy partial;
  partial.choice.assign(s.t.size(), kNoNode);
  CHECK_THROWS_AS(is_member(s.t, s.adm, partial), Error);
}

TEST_CASE("forced choices give a single strategy") {
  TreeArena::Builder b(10);
  NodeId r = b.add_root(Player::kSys);
  NodeId e = b.add_internal(r, 0, Player::kEnv);
  b.add_goal_leaf(e, 0, 3);
  NodeId s2 = b.add_internal(e, 1, Player::kSys);
  b.add_goal_leaf(s2, 0, 4);
  Solved s = solve(b.build());
  auto all = enumerate_canonical_strategies(s.t);
  REQUIRE(all.size() == 1);
  CHECK(is_member(s.t, s.adm, all[0]));
  CHECK(is_member(s.t, s.win, all[0]));
  CHECK(check_complement(s.t, s.vt, all[0]) ==
        ComplementLabel::kSatisfiesAdmissible);
}

TEST_CASE("the literal path-min rule misclassifies this tree") {
  // r -> {leaf 3, Env e}; e -> {d1, d2}; di -> {leaf 4, Env{2, 5}}.
  TreeArena::Builder b(10);
  NodeId r = b.add_root(Player::kSys);
  b.add_goal_leaf(r, 0, 3);
  NodeId e = b.add_internal(r, 1, Player::kEnv);
  NodeId d[2];
  for (int i = 0; i < 2; ++i) {
    d[i] = b.add_internal(e, i, Player::kSys);
    b.add_goal_leaf(d[i], 0, 4);
    NodeId x = b.add_internal(d[i], 1, Player::kEnv);
    b.add_goal_leaf(x, 0, 2);
    b.add_goal_leaf(x, 1, 5);
  }
  std::vector<NodeId> ids;
  TreeArena t = b.build(&ids);
  Solved exact = solve(t);
  Solved literal = solve(t, Rule::kPathMin);

  auto all = enumerate_canonical_strategies(t);
  auto flags = brute_force_flags(t, SynthesisMode::kAdmissible, all);
  std::size_t exact_bad = 0, literal_bad = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    exact_bad += is_member(t, exact.adm, all[i]) != flags[i];
    literal_bad += is_member(t, literal.adm, all[i]) != flags[i];
  }
  CHECK(exact_bad == 0);
  CHECK(literal_bad > 0);

  // e -> d1 -> 4 and d2 -> 4 is dominated by taking the leaf 3 at r.
  TreeStrategy both_safe;
  both_safe.choice.assign(t.size(), kNoNode);
  both_safe.choice[0] = t.children(0)[1].child;
  for (NodeId di : d) both_safe.choice[ids[di]] = t.children(ids[di])[0].child;
  CHECK(!is_member(t, exact.adm, both_safe));
  CHECK(is_member(t, literal.adm, both_safe));
}

TEST_CASE("larger budgets keep the admissible-winning set nonempty") {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    RandomCase c = random_case(seed);
    for (std::int64_t bud = 0; bud <= 8; ++bud) {
      TreeArena t = unroll(c.game, bud);
      TreeValueTable vt = tree_values(t);
      StrategySet w = synthesize_admissible_winning(t, vt, vt.acval);
      CHECK(is_member(t, w, extract_strategy(t, w)));
    }
  }
}

TEST_CASE("strategy json round trip") {
  Solved s = solve(unroll(fig2(), 12));
  TreeStrategy w = extract_strategy(s.t, s.win);
  TreeStrategy back =
      tree_strategy_from_json(s.t, tree_strategy_to_json(s.t, w));
  for (NodeId u : reachable_nodes(s.t, w)) CHECK(back.choice[u] == w.choice[u]);
  nlohmann::json j = strategy_set_to_json(s.t, s.win);
  CHECK(j["all_admissible"] == false);
  CHECK(j["nodes"][0]["allowed"] == nlohmann::json::array({node_at(s.t, {0, 1})}));
  TreeStrategy by_succ = tree_strategy_from_json(
      s.t, nlohmann::json{{"successors", {{"0", 1}, {"4", 7}}}});
  CHECK(is_member(s.t, s.win, by_succ));
}

TEST_CASE("an admissible-winning strategy may pay more than the root aval") {
  // root -> {leaf 5, Env{1, 7}}: the Env branch has the lower cooperative
  // value and stays within budget, so both children are allowed.
  TreeArena::Builder b(10);
  NodeId r = b.add_root(Player::kSys);
  b.add_goal_leaf(r, 0, 5);
  NodeId e = b.add_internal(r, 1, Player::kEnv);
  b.add_goal_leaf(e, 0, 1);
  b.add_goal_leaf(e, 1, 7);
  Solved s = solve(b.build());
  CHECK(s.vt.aval[0] == Cost::finite(5));
  CHECK(s.win.allowed(0).size() == 2);
  auto all = enumerate_canonical_strategies(s.t);
  auto flags = brute_force_flags(s.t, SynthesisMode::kAdmissibleWinning, all);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(flags[i]);
  TreeStrategy risky = extract_strategy(s.t, s.win);
  CHECK(risky.choice[0] == s.t.children(0)[1].child);
  CHECK(strategy_outcomes(s.t, risky).worst[0] == Cost::finite(7));
}
