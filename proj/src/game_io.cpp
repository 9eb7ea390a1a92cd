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

#include "admsyn/game_io.hpp"

#include <fstream>
#include <sstream>

#include "admsyn/error.hpp"

namespace admsyn {

json cost_to_json(Cost c) {
  if (c.is_infinite()) return "inf";
  return c.value();
}

Cost cost_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return kInf;
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return Cost::finite(j.get<std::int64_t>());
  }
  throw Error(ErrorCode::kMalformedSpec, "bad cost " + j.dump());
}

namespace {

Player parse_owner(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "sys") return Player::kSys;
  if (s == "env") return Player::kEnv;
  throw Error(ErrorCode::kMalformedSpec, "owner must be sys or env, got " + s);
}

}  // namespace

GameSpec game_spec_from_json(const json& j) {
  GameSpec spec;
  try {
    for (const json& s : j.at("states")) {
      spec.states.push_back({s.at("id").get<StateId>(),
                             parse_owner(s.at("owner")),
                             s.value("goal", false)});
    }
    spec.initial = j.at("initial").get<StateId>();
    for (const json& e : j.at("edges")) {
      spec.edges.push_back({e.at("from").get<StateId>(),
                            e.at("action").get<ActionId>(),
                            e.at("to").get<StateId>(),
                            e.at("cost").get<std::int64_t>()});
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kMalformedSpec, ex.what());
  }
  return spec;
}

json game_to_json(const GameGraph& g) {
  const GameSpec s = g.to_spec();
  json states = json::array();
  for (const auto& st : s.states) {
    states.push_back({{"id", st.id},
                      {"owner", std::string(player_name(st.owner))},
                      {"goal", st.goal}});
  }
  json edges = json::array();
  for (const auto& e : s.edges) {
    edges.push_back(
        {{"from", e.from}, {"action", e.action}, {"to", e.to}, {"cost", e.cost}});
  }
  return {{"states", states}, {"initial", s.initial}, {"edges", edges}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kMalformedSpec, path.string() + ": " + ex.what());
  }
}

GameGraph load_game(const std::filesystem::path& path) {
  return build_game(game_spec_from_json(read_json_file(path)));
}

void write_file_atomically(const std::filesystem::path& path,
                           const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorCode::kIo, "short write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot rename into " + path.string() + ": " +
                                    ec.message());
  }
}

std::string game_to_dot(const GameGraph& g) {
  std::ostringstream os;
  os << "digraph game {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < g.num_states(); ++i) {
    const StateId v = static_cast<StateId>(i);
    const bool sys = g.owner(v) == Player::kSys;
    os << "  v" << v << " [label=\"v" << v << "\", shape="
       << (sys ? (g.is_goal(v) ? "doublecircle" : "circle") : "box");
    if (!sys && g.is_goal(v)) os << ", peripheries=2";
    os << "];\n";
  }
  os << "  init [shape=point];\n  init -> v" << g.initial() << ";\n";
  for (std::size_t i = 0; i < g.num_states(); ++i) {
    const StateId v = static_cast<StateId>(i);
    for (const Transition& t : g.successors(v)) {
      os << "  v" << v << " -> v" << t.to << " [label=\"" << t.action << ":"
         << t.cost << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace admsyn
