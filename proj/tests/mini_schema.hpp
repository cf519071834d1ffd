#pragma once

// Just-enough JSON Schema validation for the shipped schemas: type,
// required, properties, additionalProperties (bool or schema), items,
// enum, and same-directory $ref.

#include <json.hpp>

#include <fstream>
#include <string>

namespace mini_schema {

using Json = nlohmann::json;

inline Json load(const std::string& dir, const std::string& name) {
  std::ifstream in(dir + "/" + name);
  if (!in) throw std::runtime_error("cannot open schema " + name);
  Json j;
  in >> j;
  return j;
}

inline bool validate(const Json& schema, const Json& value, const std::string& dir,
                     std::string& err) {
  if (schema.contains("$ref"))
    return validate(load(dir, schema["$ref"].get<std::string>()), value, dir, err);

  if (schema.contains("enum")) {
    for (const auto& v : schema["enum"])
      if (v == value) return true;
    err = "value " + value.dump() + " not in enum";
    return false;
  }

  if (schema.contains("type")) {
    const std::string type = schema["type"].get<std::string>();
    const bool ok = (type == "object" && value.is_object()) ||
                    (type == "array" && value.is_array()) ||
                    (type == "string" && value.is_string()) ||
                    (type == "integer" && value.is_number_integer()) ||
                    (type == "number" && value.is_number()) ||
                    (type == "boolean" && value.is_boolean());
    if (!ok) {
      err = "expected " + type + ", got " + value.dump().substr(0, 80);
      return false;
    }
  }

  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) {
          err = "missing required key " + key.get<std::string>();
          return false;
        }
      }
    }
    const Json props = schema.value("properties", Json::object());
    for (const auto& [key, sub] : value.items()) {
      if (props.contains(key)) {
        if (!validate(props[key], sub, dir, err)) {
          err = key + ": " + err;
          return false;
        }
      } else if (schema.contains("additionalProperties")) {
        const Json& ap = schema["additionalProperties"];
        if (ap.is_boolean()) {
          if (!ap.get<bool>()) {
            err = "unexpected key " + key;
            return false;
          }
        } else if (!validate(ap, sub, dir, err)) {
          err = key + ": " + err;
          return false;
        }
      }
    }
  }

  if (value.is_array() && schema.contains("items")) {
    for (const auto& item : value)
      if (!validate(schema["items"], item, dir, err)) return false;
  }
  return true;
}

inline bool validate_file(const std::string& dir, const std::string& schema_name,
                          const Json& value, std::string& err) {
  return validate(load(dir, schema_name), value, dir, err);
}

}  // namespace mini_schema
