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

#ifndef ADMSYN_GAME_IO_HPP_
#define ADMSYN_GAME_IO_HPP_

#include <filesystem>
#include <string>

#include "admsyn/cost.hpp"
#include "admsyn/game.hpp"
#include "json.hpp"

namespace admsyn {

using json = nlohmann::json;

// Costs serialize as integers, infinity as the string "inf".
json cost_to_json(Cost c);
Cost cost_from_json(const json& j);

// Schema: {"states":[{"id","owner":"sys"|"env","goal"}], "initial",
//          "edges":[{"from","action","to","cost"}]}
GameSpec game_spec_from_json(const json& j);
json game_to_json(const GameGraph& g);

json read_json_file(const std::filesystem::path& path);
GameGraph load_game(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomically(const std::filesystem::path& path,
                           const std::string& content);

std::string game_to_dot(const GameGraph& g);

}  // namespace admsyn

#endif  // ADMSYN_GAME_IO_HPP_
