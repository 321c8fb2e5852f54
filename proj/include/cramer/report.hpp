#pragma once

#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cramer/errors.hpp"

namespace cramer {

/// One named verification check with an optional witness payload
/// (typically the failing point) serialized as JSON.
struct CheckResult {
    std::string name;
    bool pass = false;
    nlohmann::json witness;
};

/// Machine-readable verification report. Assembly order is the order
/// checks were added; serialization carries no timestamps so identical
/// configurations produce identical bytes.
struct Report {
    std::string suite;
    nlohmann::json config;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void add(std::string name, bool pass, nlohmann::json witness = nullptr) {
        checks.push_back({std::move(name), pass, std::move(witness)});
    }

    /// Runs a check body, converting exceptions into a failed check with
    /// the message as witness.
    template <typename Fn>
    void run(const std::string& name, Fn&& body) {
        try {
            body(*this);
        } catch (const std::exception& e) {
            add(name, false, nlohmann::json{{"error", e.what()}});
        }
    }

    nlohmann::json to_json() const {
        nlohmann::json doc;
        doc["suite"] = suite;
        doc["config"] = config;
        nlohmann::json list = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json item;
            item["name"] = c.name;
            item["status"] = c.pass ? "pass" : "fail";
            item["witness"] = c.witness;
            list.push_back(std::move(item));
        }
        doc["checks"] = std::move(list);
        doc["all_pass"] = all_pass();
        return doc;
    }
};

/// Validates a JSON value against the schema subset used by the shipped
/// schemas: type, properties, required, items, enum, pattern, and
/// minItems. Returns human-readable violations; empty means valid.
inline void validate_schema_node(const nlohmann::json& value, const nlohmann::json& schema,
                                 const std::string& path, std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const std::string type = schema.at("type").get<std::string>();
        bool ok = (type == "object" && value.is_object()) ||
                  (type == "array" && value.is_array()) ||
                  (type == "string" && value.is_string()) ||
                  (type == "integer" && value.is_number_integer()) ||
                  (type == "number" && value.is_number()) ||
                  (type == "boolean" && value.is_boolean()) ||
                  (type == "null" && value.is_null());
        if (!ok) {
            errors.push_back(path + ": expected " + type);
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& allowed : schema.at("enum")) ok = ok || allowed == value;
        if (!ok) errors.push_back(path + ": value not in enum");
    }
    if (schema.contains("pattern") && value.is_string()) {
        const std::regex re(schema.at("pattern").get<std::string>());
        if (!std::regex_match(value.get<std::string>(), re))
            errors.push_back(path + ": pattern mismatch");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema.at("required"))
                if (!value.contains(key.get<std::string>()))
                    errors.push_back(path + ": missing required key '" + key.get<std::string>() + "'");
        if (schema.contains("properties"))
            for (auto it = schema.at("properties").begin(); it != schema.at("properties").end(); ++it)
                if (value.contains(it.key()))
                    validate_schema_node(value.at(it.key()), it.value(), path + "/" + it.key(),
                                         errors);
    }
    if (value.is_array() && schema.contains("items")) {
        if (schema.contains("minItems") &&
            value.size() < schema.at("minItems").get<std::size_t>())
            errors.push_back(path + ": fewer than minItems entries");
        std::size_t idx = 0;
        for (const auto& element : value)
            validate_schema_node(element, schema.at("items"), path + "[" + std::to_string(idx++) + "]",
                                 errors);
    }
}

inline std::vector<std::string> validate_against_schema(const nlohmann::json& value,
                                                        const nlohmann::json& schema) {
    std::vector<std::string> errors;
    validate_schema_node(value, schema, "$", errors);
    return errors;
}

} // namespace cramer
