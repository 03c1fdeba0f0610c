// Copyright 2026 The qabench Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#ifndef QABENCH_INSTANCE_IO_HPP_INCLUDED
#define QABENCH_INSTANCE_IO_HPP_INCLUDED

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qabench/ising.hpp"

namespace qabench {

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kInstanceFormat = "ising-v1";

/**
 * ising-v1 document:
 *   { "format": "ising-v1", "n": int, "linear": [[i, h]...],
 *     "quadratic": [[i, j, J]...], "metadata": {...} }
 * An optional "offset" number is written only when nonzero.
 */
inline nlohmann::json to_json(const IsingModel& model) {
    nlohmann::json doc;
    doc["format"] = kInstanceFormat;
    doc["n"] = model.size();
    auto linear = nlohmann::json::array();
    for (const auto& f : model.fields()) linear.push_back({f.i, f.value});
    auto quadratic = nlohmann::json::array();
    for (const auto& c : model.couplings()) quadratic.push_back({c.i, c.j, c.value});
    doc["linear"] = std::move(linear);
    doc["quadratic"] = std::move(quadratic);
    if (model.offset() != 0.0) doc["offset"] = model.offset();
    doc["metadata"] = model.metadata();
    return doc;
}

namespace detail {

inline std::uint64_t site_index(const nlohmann::json& v, const std::string& where, std::size_t n) {
    if (!v.is_number_integer()) throw ParseError(where + ": index must be an integer");
    const auto raw = v.get<std::int64_t>();
    if (raw < 0 || static_cast<std::uint64_t>(raw) >= n) {
        throw ParseError(where + ": index " + std::to_string(raw) + " out of range [0, " +
                         std::to_string(n) + ")");
    }
    return static_cast<std::uint64_t>(raw);
}

inline double coefficient(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError(where + ": coefficient must be a number");
    return v.get<double>();
}

}  // namespace detail

inline IsingModel from_json(const nlohmann::json& doc, const std::string& source = "instance") {
    if (!doc.is_object()) throw ParseError(source + ": top level must be an object");
    if (!doc.contains("format") || !doc["format"].is_string())
        throw ParseError(source + ": missing \"format\"");
    if (doc["format"] != kInstanceFormat) {
        throw ParseError(source + ": unsupported format \"" + doc["format"].get<std::string>() +
                         "\" (expected " + kInstanceFormat + ")");
    }
    if (!doc.contains("n") || !doc["n"].is_number_unsigned())
        throw ParseError(source + ": \"n\" must be a non-negative integer");
    const auto n = doc["n"].get<std::size_t>();

    std::vector<Field> fields;
    if (doc.contains("linear")) {
        const auto& linear = doc["linear"];
        if (!linear.is_array()) throw ParseError(source + ": \"linear\" must be an array");
        for (std::size_t k = 0; k < linear.size(); ++k) {
            const std::string where = source + ": linear[" + std::to_string(k) + "]";
            const auto& e = linear[k];
            if (!e.is_array() || e.size() != 2) throw ParseError(where + ": expected [i, h]");
            fields.push_back({static_cast<Site>(detail::site_index(e[0], where, n)),
                              detail::coefficient(e[1], where)});
        }
    }
    std::vector<Coupling> couplings;
    if (doc.contains("quadratic")) {
        const auto& quadratic = doc["quadratic"];
        if (!quadratic.is_array()) throw ParseError(source + ": \"quadratic\" must be an array");
        for (std::size_t k = 0; k < quadratic.size(); ++k) {
            const std::string where = source + ": quadratic[" + std::to_string(k) + "]";
            const auto& e = quadratic[k];
            if (!e.is_array() || e.size() != 3) throw ParseError(where + ": expected [i, j, J]");
            couplings.push_back({static_cast<Site>(detail::site_index(e[0], where, n)),
                                 static_cast<Site>(detail::site_index(e[1], where, n)),
                                 detail::coefficient(e[2], where)});
        }
    }
    double offset = 0.0;
    if (doc.contains("offset")) offset = detail::coefficient(doc["offset"], source + ": offset");
    auto metadata = doc.value("metadata", nlohmann::json::object());
    if (!metadata.is_object()) throw ParseError(source + ": \"metadata\" must be an object");
    try {
        return IsingModel(n, std::move(couplings), std::move(fields), std::move(metadata), offset);
    } catch (const InputError& e) {
        throw ParseError(source + ": " + e.what());
    }
}

inline void write_instance(const IsingModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << to_json(model).dump() << '\n';
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
    return parse_json_text(read_text_file(path), path.string());
}

inline IsingModel parse_instance(const std::string& text, const std::string& source = "instance") {
    return from_json(parse_json_text(text, source), source);
}

inline IsingModel read_instance(const std::filesystem::path& path) {
    return from_json(read_json_file(path), path.string());
}

/// Instance name: metadata "name" when present, file stem otherwise.
inline std::string instance_name(const IsingModel& model, const std::filesystem::path& path) {
    if (auto it = model.metadata().find("name");
        it != model.metadata().end() && it->is_string())
        return it->get<std::string>();
    return path.stem().string();
}

}  // namespace qabench

#endif  // QABENCH_INSTANCE_IO_HPP_INCLUDED
