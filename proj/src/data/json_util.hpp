#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "core/error.hpp"

namespace progss {

using nlohmann::json;

// Fail-fast schema discipline: every object we parse declares its full key
// set; anything else is a Validation error naming the offending key.
inline void require_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!j.is_object())
    fail(ErrorCode::Validation, where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) { known = true; break; }
    if (!known)
      fail(ErrorCode::Validation, where + ": unknown key \"" + it.key() + "\"");
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::Validation, std::string("bad value for \"") + key + "\": " + e.what());
  }
}

template <typename T>
T get_req(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key))
    fail(ErrorCode::Validation, where + ": missing key \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::Validation, where + ": bad value for \"" + key + "\": " + e.what());
  }
}

json parse_json_text(const std::string& text, const std::string& where);
json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);  // write-then-rename
std::string load_text_file(const std::string& path);

}  // namespace progss
