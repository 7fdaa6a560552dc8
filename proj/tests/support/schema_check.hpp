#pragma once

// Minimal JSON Schema (draft-07 subset) validator for the checked-in report
// schema. Supported keywords: type, enum, required, properties,
// additionalProperties (boolean), items, minItems, minimum, minLength.
// Any other keyword is reported as an error rather than silently ignored.

#include <algorithm>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace finsler::testing {

namespace detail {

inline bool has_type(const nlohmann::json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
  if (t == "number") return v.is_number();
  return false;
}

inline void validate(const nlohmann::json& v, const nlohmann::json& schema, const std::string& path,
                     std::vector<std::string>& errors) {
  for (const auto& [key, _] : schema.items()) {
    static const std::vector<std::string> known = {"$schema", "title",   "type",     "enum",    "required",
                                                   "properties", "additionalProperties", "items", "minItems",
                                                   "minimum",    "minLength"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      errors.push_back(path + ": unsupported schema keyword '" + key + "'");
    }
  }
  if (auto it = schema.find("type"); it != schema.end()) {
    bool ok = false;
    if (it->is_array()) {
      for (const auto& t : *it) ok = ok || has_type(v, t.get<std::string>());
    } else {
      ok = has_type(v, it->get<std::string>());
    }
    if (!ok) {
      errors.push_back(path + ": expected type " + it->dump() + ", got " + v.type_name());
      return;
    }
  }
  if (auto it = schema.find("enum"); it != schema.end()) {
    if (std::find(it->begin(), it->end(), v) == it->end()) errors.push_back(path + ": value not in enum");
  }
  if (v.is_number()) {
    if (auto it = schema.find("minimum"); it != schema.end() && v.get<double>() < it->get<double>()) {
      errors.push_back(path + ": below minimum");
    }
  }
  if (v.is_string()) {
    if (auto it = schema.find("minLength"); it != schema.end() && v.get<std::string>().size() < it->get<std::size_t>()) {
      errors.push_back(path + ": string too short");
    }
  }
  if (v.is_object()) {
    if (auto it = schema.find("required"); it != schema.end()) {
      for (const auto& k : *it) {
        if (!v.contains(k.get<std::string>())) errors.push_back(path + ": missing '" + k.get<std::string>() + "'");
      }
    }
    const auto props = schema.find("properties");
    const bool closed = schema.value("additionalProperties", true) == false;
    for (const auto& [key, child] : v.items()) {
      if (props != schema.end() && props->contains(key)) {
        validate(child, (*props)[key], path + "." + key, errors);
      } else if (closed) {
        errors.push_back(path + ": unexpected property '" + key + "'");
      }
    }
  }
  if (v.is_array()) {
    if (auto it = schema.find("minItems"); it != schema.end() && v.size() < it->get<std::size_t>()) {
      errors.push_back(path + ": too few items");
    }
    if (auto it = schema.find("items"); it != schema.end()) {
      for (std::size_t i = 0; i < v.size(); ++i) validate(v[i], *it, path + "[" + std::to_string(i) + "]", errors);
    }
  }
}

}  // namespace detail

/// Empty when `value` conforms to `schema`.
inline std::vector<std::string> schema_errors(const nlohmann::json& value, const nlohmann::json& schema) {
  std::vector<std::string> errors;
  detail::validate(value, schema, "$", errors);
  return errors;
}

}  // namespace finsler::testing
