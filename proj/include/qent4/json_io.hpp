// json_io.hpp
// The state-document JSON format shared by the CLI and the tests:
//   {"format": "amplitudes" | "magic", "data": [[re, im], ...]}
// with 16 entries (amplitude order 8a+4b+2c+d) or 4 entries (magic
// coefficients z0..z3).

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qent4/states.hpp"

namespace qent4 {

struct state_document_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct state_document {
    std::string format;  // "amplitudes" or "magic"
    std::vector<cplx> data;
};

inline state_document parse_state_document(const nlohmann::json& j) {
    state_document doc;
    if (!j.is_object() || !j.contains("format") || !j.contains("data"))
        throw state_document_error("state document needs 'format' and 'data' fields");
    if (!j["format"].is_string())
        throw state_document_error("'format' must be a string");
    doc.format = j["format"].get<std::string>();
    if (doc.format != "amplitudes" && doc.format != "magic")
        throw state_document_error("'format' must be 'amplitudes' or 'magic'");
    if (!j["data"].is_array())
        throw state_document_error("'data' must be an array of [re, im] pairs");
    for (const auto& e : j["data"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw state_document_error("'data' entries must be [re, im] number pairs");
        doc.data.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    const std::size_t want = doc.format == "amplitudes" ? 16 : 4;
    if (doc.data.size() != want)
        throw state_document_error("'data' must hold " + std::to_string(want) +
                                   " entries for format '" + doc.format + "'");
    return doc;
}

inline state_document parse_state_document(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw state_document_error(std::string("invalid JSON: ") + e.what());
    }
    return parse_state_document(j);
}

// Raw (unnormalized) state held by a document; norm policy is the caller's.
inline pure_state4 document_state(const state_document& doc) {
    if (doc.format == "amplitudes") {
        pure_state4 s;
        for (int i = 0; i < 16; ++i) s.amp[i] = doc.data[i];
        return s;
    }
    magic_coeffs z;
    for (int j = 0; j < 4; ++j) z.z[j] = doc.data[j];
    return from_magic(z);
}

inline nlohmann::json make_state_document(const pure_state4& s) {
    nlohmann::json data = nlohmann::json::array();
    for (const cplx& v : s.amp) data.push_back({v.real(), v.imag()});
    return {{"format", "amplitudes"}, {"data", data}};
}

inline nlohmann::json make_magic_document(const magic_coeffs& z) {
    nlohmann::json data = nlohmann::json::array();
    for (const cplx& v : z.z) data.push_back({v.real(), v.imag()});
    return {{"format", "magic"}, {"data", data}};
}

}  // namespace qent4
