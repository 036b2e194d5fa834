#pragma once

// Channel-spec parsing and report serialization for the CLI.
// Spec file: JSON object with either "T" (3x3 row-major) or "diag"
// ([a,b,c]), a shift "b" ([bx,by,bz]) and an optional "name".

#include <optional>
#include <string>

#include <json.hpp>

#include "capacity.hpp"
#include "channel.hpp"
#include "detection.hpp"
#include "errors.hpp"
#include "ordering.hpp"

namespace qubitline {

struct ChannelSpec {
    AffineChannel channel;
    std::string name;
};

namespace detail {

inline Vec3 parse_vec3(const nlohmann::json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_number())
        throw parse_error("field '" + key + "' must be an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace detail

inline ChannelSpec parse_channel_spec(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("channel spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw parse_error("channel spec must be a JSON object");

    ChannelSpec spec;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw parse_error("field 'name' must be a string");
        spec.name = j["name"].get<std::string>();
    }
    const bool has_t = j.contains("T"), has_diag = j.contains("diag");
    if (has_t == has_diag)
        throw parse_error("channel spec needs exactly one of 'T' (3x3) or 'diag' ([a,b,c])");
    if (has_diag) {
        spec.channel.t = Mat3::diagonal(detail::parse_vec3(j["diag"], "diag"));
    } else {
        const auto& t = j["T"];
        if (!t.is_array() || t.size() != 3) throw parse_error("field 'T' must be a 3x3 array");
        for (std::size_t r = 0; r < 3; ++r) {
            Vec3 row = detail::parse_vec3(t[r], "T[" + std::to_string(r) + "]");
            spec.channel.t(r, 0) = row.x;
            spec.channel.t(r, 1) = row.y;
            spec.channel.t(r, 2) = row.z;
        }
    }
    if (!j.contains("b")) throw parse_error("channel spec is missing shift vector 'b'");
    spec.channel.b = detail::parse_vec3(j["b"], "b");
    return spec;
}

/// A file for `order` may also hold a bare classical channel
/// {"p11": x, "p00": y}.
inline std::optional<TransitionPoint> try_parse_transition_point(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        return std::nullopt;
    }
    if (!j.is_object() || !j.contains("p11") || !j.contains("p00")) return std::nullopt;
    if (!j["p11"].is_number() || !j["p00"].is_number())
        throw parse_error("'p11'/'p00' must be numbers");
    return TransitionPoint{j["p11"].get<double>(), j["p00"].get<double>()};
}

inline nlohmann::json to_json(Vec3 v) { return nlohmann::json::array({v.x, v.y, v.z}); }

inline nlohmann::json to_json(const Mat3& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < 3; ++r)
        rows.push_back(nlohmann::json::array({m(r, 0), m(r, 1), m(r, 2)}));
    return rows;
}

inline nlohmann::json to_json(TransitionPoint p) {
    return {{"p11", p.p11}, {"p00", p.p00}};
}

inline nlohmann::json to_json(const DetectionReport& rep) {
    nlohmann::json j;
    j["pc"] = rep.pc;
    switch (rep.mode) {
        case DetectionMode::projective: j["mode"] = "projective"; break;
        case DetectionMode::trivial_identity: j["mode"] = "trivial-identity"; break;
        case DetectionMode::trivial_null: j["mode"] = "trivial-null"; break;
    }
    if (rep.axis) j["axis"] = to_json(*rep.axis);
    j["d"] = to_json(rep.d);
    j["inputs"] = nlohmann::json::array({to_json(rep.inputs.first), to_json(rep.inputs.second)});
    j["point"] = to_json(rep.point);
    j["degenerate"] = rep.degenerate;
    return j;
}

inline nlohmann::json to_json(const CapacityReport& rep) {
    nlohmann::json j;
    j["c_bin"] = rep.c_bin;
    j["point"] = to_json(rep.point);
    j["prior_p1"] = rep.prior_p1;
    j["r"] = rep.r;
    j["axis"] = to_json(rep.axis);
    j["inputs"] = nlohmann::json::array({to_json(rep.inputs.first), to_json(rep.inputs.second)});
    j["k_at_opt"] = rep.k_at_opt;
    j["non_unimodal"] = rep.non_unimodal;
    return j;
}

inline nlohmann::json to_json(const TransitionMatrix& m) {
    return nlohmann::json::array({nlohmann::json::array({m.m[0][0], m.m[0][1]}),
                                  nlohmann::json::array({m.m[1][0], m.m[1][1]})});
}

}  // namespace qubitline
