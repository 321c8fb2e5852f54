#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "cramer/errors.hpp"
#include "cramer/variety.hpp"

namespace cramer {

/// JSON form of an ideal: ring data plus one labeled generator per entry,
/// each term as an exact coefficient string with its exponent vector in
/// table order. Terms are listed leading-first in the canonical order, so
/// the export is byte-stable.
inline nlohmann::json ideal_to_json(const CramerIdeal& ideal) {
    nlohmann::json doc;
    doc["r"] = ideal.r;
    doc["s"] = ideal.s;
    doc["omega_mode"] = to_string(ideal.mode);
    nlohmann::json vars = nlohmann::json::array();
    for (std::size_t k = 0; k < ideal.table->size(); ++k) vars.push_back(ideal.table->name(k));
    doc["variables"] = vars;

    nlohmann::json gens = nlohmann::json::array();
    for (const auto& [label, gen] : ideal.generators) {
        nlohmann::json g;
        g["label"] = label.text();
        if (label.kind == GeneratorLabel::Kind::bilinear) {
            g["kind"] = "bilinear";
            g["row"] = label.i;
            g["col"] = label.j;
        } else {
            g["kind"] = "minor_match";
            g["subset"] = label.subset;
            g["sign_exponent"] = label.sign_exponent;
        }
        nlohmann::json terms = nlohmann::json::array();
        for (auto it = gen.terms().rbegin(); it != gen.terms().rend(); ++it) {
            nlohmann::json term;
            term["coeff"] = it->second.str();
            term["exponents"] = it->first;
            terms.push_back(std::move(term));
        }
        g["terms"] = std::move(terms);
        gens.push_back(std::move(g));
    }
    doc["generators"] = std::move(gens);
    return doc;
}

/// Macaulay2 input: a rational polynomial ring and the ideal.
inline std::string ideal_to_m2(const CramerIdeal& ideal) {
    std::ostringstream os;
    os << "R = QQ[";
    for (std::size_t k = 0; k < ideal.table->size(); ++k)
        os << (k ? ", " : "") << ideal.table->name(k);
    os << "];\n";
    os << "I = ideal(\n";
    for (std::size_t g = 0; g < ideal.generators.size(); ++g) {
        os << "  " << ideal.generators[g].second.str();
        os << (g + 1 < ideal.generators.size() ? ",\n" : "\n");
    }
    os << ");\n";
    return os.str();
}

/// Singular input: characteristic-zero ring, degree order, and the ideal.
inline std::string ideal_to_singular(const CramerIdeal& ideal) {
    std::ostringstream os;
    os << "ring R = 0, (";
    for (std::size_t k = 0; k < ideal.table->size(); ++k)
        os << (k ? ", " : "") << ideal.table->name(k);
    os << "), dp;\n";
    os << "ideal I =\n";
    for (std::size_t g = 0; g < ideal.generators.size(); ++g) {
        os << "  " << ideal.generators[g].second.str();
        os << (g + 1 < ideal.generators.size() ? ",\n" : ";\n");
    }
    return os.str();
}

inline std::string render_ideal(const CramerIdeal& ideal, const std::string& format) {
    if (format == "json") return ideal_to_json(ideal).dump(2) + "\n";
    if (format == "m2") return ideal_to_m2(ideal);
    if (format == "singular") return ideal_to_singular(ideal);
    throw ConfigError("render_ideal: unknown format '" + format + "'");
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << content;
    if (!out) throw ConfigError("write failed: " + path);
}

} // namespace cramer
