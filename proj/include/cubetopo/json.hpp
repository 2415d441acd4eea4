#pragma once

// JSON views of results. Torsion coefficients that fit in 64 bits are
// numbers; larger ones are decimal strings.

#include <cstdint>
#include <limits>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "cubetopo/constructions.hpp"
#include "cubetopo/cubical.hpp"
#include "cubetopo/homology.hpp"
#include "cubetopo/relations.hpp"
#include "cubetopo/verify.hpp"

namespace cubetopo {

/// Keys keep insertion order so output is stable and readable.
using Json = nlohmann::ordered_json;

inline Json to_json_value(const BigInt& n) {
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(n);
    return n.str();
}

inline Json to_json_value(const HomologyProfile& h) {
    Json torsion = Json::array();
    for (const auto& level : h.torsion) {
        Json row = Json::array();
        for (const auto& t : level) row.push_back(to_json_value(t));
        torsion.push_back(std::move(row));
    }
    return {{"coeffs", coefficients_tag(h.coeffs)}, {"betti", h.betti}, {"torsion", std::move(torsion)}};
}

inline Json to_json_value(const PropertyFlags& f) {
    Json out = Json::object();
    for (Condition c : kAllConditions) out[std::string(condition_name(c))] = f.holds(c);
    return out;
}

inline Json to_json_value(const SchaeferVerdict& v, std::span<const Relation> rels = {}) {
    Json conditions = Json::array();
    for (Condition c : v.conditions()) conditions.push_back(condition_name(c));
    Json per = Json::array();
    for (std::size_t i = 0; i < v.per_relation_flags.size(); ++i) {
        Json entry = {{"flags", to_json_value(v.per_relation_flags[i])}};
        if (i < rels.size()) {
            entry["name"] = rels[i].name();
            entry["arity"] = rels[i].arity();
        }
        per.push_back(std::move(entry));
    }
    return {{"tractable", v.tractable},
            {"witness", v.witness ? Json(condition_name(*v.witness)) : Json()},
            {"with_constants", v.with_constants},
            {"conditions", std::move(conditions)},
            {"relations", std::move(per)}};
}

inline Json to_json_value(const CheckReport& r, bool timing = true) {
    Json failures = Json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"trial", f.trial},
                            {"instance", f.instance},
                            {"expected", f.expected},
                            {"observed", f.observed}});
    Json out = {{"check", r.check},
                {"trials", r.trials},
                {"seed", r.seed},
                {"passed", r.passed()},
                {"failures", std::move(failures)}};
    if (timing) out["ms"] = r.ms;
    return out;
}

/// Variable indices are reported 1-based, matching the text formats.
inline Json to_json_value(const ReductionResult& r) {
    auto one_based = [](const std::vector<int>& v) {
        std::vector<int> out(v);
        for (auto& x : out) ++x;
        return out;
    };
    return {{"dimension", r.formula.dimension},
            {"clauses", r.formula.clauses.size()},
            {"projection_dims", one_based(r.projection_dims)},
            {"variable_map", one_based(r.variable_map)},
            {"dimacs", emit_dimacs(r.formula)}};
}

inline Json to_json_value(const VertexSet& v) {
    Json members = Json::array();
    for (Vertex u : v.members()) members.push_back(to_bitstring(u, v.dimension()));
    return {{"dimension", v.dimension()}, {"count", v.size()}, {"vertices", std::move(members)}};
}

}  // namespace cubetopo
