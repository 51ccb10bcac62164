// Copyright 2026 The ttpa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Internal JSON helpers shared by the serialization code. Not installed.

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "ttpa/circuit.hpp"
#include "ttpa/error.hpp"

namespace ttpa::detail {

using json = nlohmann::json;

json circuit_to_value(const Circuit& c);
Circuit circuit_from_value(const json& j);

inline json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

/// Reads a required field, mapping nlohmann type errors to kParse.
template <typename T>
T field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ErrorCode::kParse, std::string(what) + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse,
         std::string(what) + ": field '" + key + "': " + e.what());
  }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback, const char* what) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return field<T>(j, key, what);
}

}  // namespace ttpa::detail
