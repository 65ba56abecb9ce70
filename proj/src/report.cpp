#include "itv/report.hpp"
#include "itv/form_literal.hpp"

#include <cstdio>

namespace itv {

namespace {

void dump(const Json& j, std::string& out) {
    switch (j.type()) {
    case Json::value_t::object: {
        out += '{';
        bool first = true;
        // nlohmann::json keeps object keys sorted
        for (const auto& [key, value] : j.items()) {
            if (!first) out += ',';
            first = false;
            out += Json(key).dump();
            out += ':';
            dump(value, out);
        }
        out += '}';
        break;
    }
    case Json::value_t::array: {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ',';
            dump(j[i], out);
        }
        out += ']';
        break;
    }
    case Json::value_t::number_float: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12e", j.get<double>());
        out += buf;
        break;
    }
    default: out += j.dump(); break;
    }
}

Vector6 vector_from_json(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != kDim) {
        throw ParseError(std::string("\"") + key + "\" must be an array of 6 numbers");
    }
    Vector6 v;
    for (int i = 0; i < kDim; ++i) {
        const auto& x = j[key][static_cast<std::size_t>(i)];
        if (!x.is_number()) throw ParseError(std::string("\"") + key + "\" must be an array of 6 numbers");
        v(i) = x.get<double>();
    }
    return v;
}

Json active_json(const ClassSignature& sig) {
    Json active = Json::array();
    for (Component c : sig.active_components()) active.push_back(std::string(component_name(c)));
    return active;
}

} // namespace

std::string canonical_dump(const Json& j) {
    std::string out;
    dump(j, out);
    return out;
}

OpsPoint ops_from_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("OPS json: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("OPS json must be an object");
    if (j.contains("plucker")) {
        if (!j["plucker"].is_string()) throw ParseError("\"plucker\" must be a form literal");
        return from_plucker(parse_form<double>(j["plucker"].get<std::string>()));
    }
    if (j.contains("v1") || j.contains("v2")) return OpsPoint::from_pair(vector_from_json(j, "v1"), vector_from_json(j, "v2"));
    throw ParseError("OPS json needs \"plucker\" or \"v1\"/\"v2\"");
}

Json ops_to_json(const OpsPoint& p) {
    Json v1 = Json::array();
    Json v2 = Json::array();
    for (int i = 0; i < kDim; ++i) {
        v1.push_back(p.v1()(i));
        v2.push_back(p.v2()(i));
    }
    return {{"plucker", to_literal(p.plucker())}, {"v1", v1}, {"v2", v2}};
}

Json moment_json(const MomentPoint& m) { return Json::array({m.x, m.y, m.z}); }

Json signature_json(const ClassSignature& sig, int rank, double residual) {
    Json norms = Json::object();
    for (Component c : kAllComponents) norms[std::string(component_name(c))] = sig.norm(c);
    return {{"norms", norms}, {"active", active_json(sig)}, {"rank", rank}, {"residual", residual}};
}

Json classify_json(const OpsPoint& p, const ConnectionTable<double>& c, const StructureTable<double>& s, double tol) {
    const auto t = intrinsic_torsion(p, c);
    const ClassSignature sig(naveira_project(t), t.norm(), tol);
    const int rank = tau_rank(t, tol);
    Json j = signature_json(sig, rank, t.residual);
    const auto mn = mn_type(p);
    const auto rho = rho_projection(p);
    j["label"] = sig.label();
    j["tau_norm"] = t.norm();
    j["kernel_dim"] = kDim - rank;
    j["mn"] = Json::array({mn.m, mn.n});
    j["h_integrable"] = frobenius_integrable_h(p, s, tol);
    j["v_integrable"] = frobenius_integrable_v(p, s, tol);
    j["j1_invariant"] = is_j1_invariant(p);
    j["rho"] = Json::array({rho.beta2, rho.beta3});
    j["moment"] = moment_json(moment_map(p));
    j["point"] = ops_to_json(p);
    return j;
}

Json family_json(const FamilySpec& f) {
    return {{"name", family_name(f)},
            {"count", f.count},
            {"seed", f.seed},
            {"grid", f.grid},
            {"random_angles", f.random_angles}};
}

Json sweep_json(const SweepReport& r) {
    Json histogram = Json::object();
    for (const auto& [label, count] : r.histogram) histogram[label] = count;
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        violations.push_back({{"index", v.index},
                              {"plucker", to_literal(v.plucker)},
                              {"observed", v.observed},
                              {"expected", v.expected}});
    }
    Json cloud = Json::array();
    Json ranks = Json::array();
    for (const auto& p : r.points) {
        cloud.push_back(moment_json(p.moment));
        ranks.push_back(p.rank);
    }
    const auto allowed = expected_superset(r.family.variant);
    Json expected = nullptr;
    if (allowed) {
        expected = Json::array();
        for (Component c : *allowed) expected.push_back(std::string(component_name(c)));
    }
    return {{"family", family_json(r.family)}, {"tol", r.tol},           {"total", r.total()},
            {"histogram", histogram},         {"expected", expected},   {"violations", violations},
            {"momentCloud", cloud},           {"ranks", ranks}};
}

} // namespace itv
