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

#ifndef ADMSYN_TESTS_FIXTURES_HPP_
#define ADMSYN_TESTS_FIXTURES_HPP_

#include <initializer_list>
#include <map>
#include <string>

#include "admsyn/arena.hpp"
#include "admsyn/game.hpp"
#include "admsyn/game_io.hpp"
#include "admsyn/synthesis.hpp"

namespace admsyn::testing {

inline std::string data_path(const std::string& name) {
  return std::string(ADMSYN_DATA_DIR) + "/" + name;
}

inline GameGraph fig2() { return load_game(data_path("fig2.json")); }
inline GameGraph fig1b() { return load_game(data_path("fig1b.json")); }
inline TreeArena fig4() {
  return tree_from_json(read_json_file(data_path("fig4_tree.json")));
}

// Follows children whose state matches each entry after the root's.
inline NodeId node_at(const TreeArena& t, std::initializer_list<StateId> path) {
  NodeId u = t.root();
  auto it = path.begin();
  if (it == path.end() || t.node(u).state != *it) return kNoNode;
  for (++it; it != path.end(); ++it) {
    NodeId next = kNoNode;
    for (const TreeEdge& e : t.children(u)) {
      if (t.node(e.child).state == *it) {
        next = e.child;
        break;
      }
    }
    if (next == kNoNode) return kNoNode;
    u = next;
  }
  return u;
}

// Three fig2 strategies as successor maps.
inline const std::map<StateId, StateId> kSigma1{{0, 1}, {4, 5}};
inline const std::map<StateId, StateId> kSigma2{{0, 1}, {4, 7}};
inline const std::map<StateId, StateId> kSigma3{{0, 2}, {3, 2}};

}  // namespace admsyn::testing

#endif  // ADMSYN_TESTS_FIXTURES_HPP_
