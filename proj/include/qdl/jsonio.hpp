#pragma once

#include "json.hpp"

#include "qdl/dickson.hpp"
#include "qdl/matrix.hpp"
#include "qdl/series.hpp"
#include "qdl/strata.hpp"
#include "qdl/unipotent.hpp"
#include "qdl/variety.hpp"

namespace qdl {

// Reports use insertion-ordered JSON so equal configurations produce
// byte-identical output.
using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

/// Elements serialize as base-p coefficient vectors, constant term first.
inline Json elem_to_json(const FieldCtx& k, Fq a) { return Json(k.coeffs(a)); }

/// Row-major array of coefficient vectors.
inline Json matrix_to_json(const MatFq& M) {
    Json rows = Json::array();
    for (uint32_t i = 0; i < M.n; ++i) {
        Json row = Json::array();
        for (uint32_t j = 0; j < M.n; ++j) row.push_back(elem_to_json(*M.k, M.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Json point_to_json(const FieldCtx& k, const std::vector<Fq>& x) {
    Json out = Json::array();
    for (Fq e : x) out.push_back(elem_to_json(k, e));
    return out;
}

inline Json perm_to_json(const PermWord& w) { return Json(w.cycles); }

inline Json dickson_to_json(const FieldCtx& k, const DicksonVector& dv) {
    Json j;
    j["n"] = dv.n;
    j["q"] = k.q();
    j["m"] = k.m();
    j["e"] = elem_to_json(k, dv.e);
    Json cs = Json::array();
    for (Fq c : dv.c) cs.push_back(elem_to_json(k, c));
    j["c"] = cs;
    return j;
}

inline Json field_to_json(const FieldCtx& k) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["spec"] = k.spec().to_string();
    j["p"] = k.p();
    j["s"] = k.s();
    j["m"] = k.m();
    j["q"] = k.q();
    j["degree"] = k.degree();
    j["size"] = k.size();
    j["modulus"] = k.modulus();
    j["modulus_string"] = k.modulus_string();
    return j;
}

inline Json census_to_json(const FieldCtx& k, VarietyKind kind, const PointOrbitReport& rep,
                           bool sign_variant) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = variety_kind_name(kind);
    j["n"] = rep.n;
    j["q"] = k.q();
    j["m"] = k.m();
    j["count"] = rep.point_count;
    j["group"] = rep.group == GroupKind::GL ? "gl" : "sl";
    j["group_order"] = rep.group_order;
    j["orbit_sizes"] = rep.orbit_sizes;
    Json viols = Json::array();
    for (const auto& v : rep.violations) {
        Json one;
        one["g"] = matrix_to_json(v.g);
        one["x"] = point_to_json(k, v.x);
        viols.push_back(one);
    }
    j["violations"] = viols;
    j["closed"] = rep.closed_under_action;
    j["scalar_action_commutes"] = rep.scalar_action_commutes;
    if (sign_variant) j["sign_variant"] = true;
    return j;
}

inline Json strata_to_json(const StrataCensus& sc) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["n"] = sc.n;
    j["q"] = sc.q;
    j["m"] = sc.m;
    j["counts"] = sc.counts;
    j["predictions"] = sc.predictions;
    j["pass"] = sc.pass;
    return j;
}

inline Json presentation_to_json(const GradedPresentation& P, uint32_t series_degree) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["ell"] = P.ell;
    j["r"] = P.r;
    Json gens = Json::array();
    for (const auto& g : P.gens) {
        Json one;
        one["name"] = g.name;
        one["degree"] = g.degree;
        if (P.motivic) one["weight"] = g.weight;
        one["kind"] = g.kind == GenKind::Polynomial ? "polynomial" : "exterior";
        gens.push_back(one);
    }
    j["generators"] = gens;
    j["series"] = presentation_series(P, series_degree).a;
    if (P.ell == 2)
        j["convention"] = "exterior-squares-vanish"; // at ell = 2 this is a choice
    return j;
}

inline Json normal_form_to_json(const FieldCtx& k, const MatFq& input, const NormalFormResult& nf) {
    Json j;
    j["input"] = matrix_to_json(input);
    Json d = Json::array();
    for (Fq e : nf.d) d.push_back(elem_to_json(k, e));
    j["d"] = d;
    j["steps"] = nf.steps;
    j["transform"] = matrix_to_json(nf.transform);
    return j;
}

} // namespace qdl
