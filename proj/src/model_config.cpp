#include "xpjost/model_config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "xpjost/errors.hpp"

namespace xpjost {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError("model config: field '" + field + "': " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing");
    return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = member(obj, key, path);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

PotentialSpec parse_potential(const json& j, const std::string& path) {
    const json& fam = member(j, "family", path);
    if (!fam.is_string()) fail(path + ".family", "expected a string");
    const std::string f = fam.get<std::string>();
    PotentialSpec p;
    if (f == "step") {
        p = Step{number(j, "amplitude", path), number(j, "q_edge", path)};
    } else if (f == "exp_sum") {
        const json& terms = member(j, "terms", path);
        if (!terms.is_array()) fail(path + ".terms", "expected an array");
        ExpSum s;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string tp = path + ".terms[" + std::to_string(i) + "]";
            s.terms.push_back({number(terms[i], "coef", tp), number(terms[i], "rate", tp)});
            if (!(s.terms.back().rate > 0.0)) fail(tp + ".rate", "must be positive");
        }
        p = s;
    } else if (f == "bessel_half") {
        p = BesselHalf{number(j, "c", path), number(j, "lambda", path)};
    } else if (f == "sawtooth_zeta") {
        p = SawtoothZeta{number(j, "c", path)};
    } else if (f == "dirichlet_saw") {
        const json& mod = member(j, "modulus", path);
        if (!mod.is_number_integer()) fail(path + ".modulus", "expected an integer");
        p = DirichletSaw{number(j, "c", path), mod.get<int>()};
    } else if (f == "constant_one") {
        p = ConstantOne{};
    } else if (f == "sampled") {
        const json& vals = member(j, "values", path);
        if (!vals.is_array()) fail(path + ".values", "expected an array");
        GridPotential g{number(j, "q_max", path), {}};
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (!vals[i].is_number()) fail(path + ".values[" + std::to_string(i) + "]", "expected a number");
            g.values.push_back(vals[i].get<double>());
        }
        p = Sampled{g};
    } else {
        fail(path + ".family", "unknown family '" + f + "'");
    }
    try {
        validate(p);
    } catch (const ConfigError& e) {
        fail(path, e.what());
    }
    return p;
}

json potential_json(const PotentialSpec& p) {
    json j;
    j["family"] = family_name(p);
    if (const auto* s = std::get_if<Step>(&p)) {
        j["amplitude"] = s->amplitude;
        j["q_edge"] = s->q_edge;
    } else if (const auto* s = std::get_if<ExpSum>(&p)) {
        j["terms"] = json::array();
        for (const auto& t : s->terms) j["terms"].push_back({{"coef", t.coef}, {"rate", t.rate}});
    } else if (const auto* s = std::get_if<BesselHalf>(&p)) {
        j["c"] = s->c;
        j["lambda"] = s->lambda;
    } else if (const auto* s = std::get_if<SawtoothZeta>(&p)) {
        j["c"] = s->c;
    } else if (const auto* s = std::get_if<DirichletSaw>(&p)) {
        j["c"] = s->c;
        j["modulus"] = s->modulus;
    } else if (const auto* s = std::get_if<Sampled>(&p)) {
        j["q_max"] = s->grid.q_max;
        j["values"] = s->grid.values;
    }
    return j;
}

}  // namespace

ModelSpec parse_model(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        // The message carries "at line L, column C".
        throw ConfigError(std::string("model config: ") + e.what());
    }
    if (!j.is_object()) fail("<root>", "expected an object");
    const json& kind = member(j, "model", "<root>");
    if (!kind.is_string() || (kind != "M1" && kind != "M2")) fail("model", "expected \"M1\" or \"M2\"");

    ModelSpec m;
    m.kind = kind == "M1" ? ModelKind::M1 : ModelKind::M2;
    m.a = parse_potential(member(j, "a", "<root>"), "a");
    if (m.kind == ModelKind::M2) {
        m.b = parse_potential(member(j, "b", "<root>"), "b");
    } else if (j.contains("b") && !std::holds_alternative<ConstantOne>(parse_potential(j["b"], "b"))) {
        fail("b", "M1 models require b = constant_one");
    }
    if (j.contains("L")) {
        const json& L = j["L"];
        if (L.is_string() && L == "infinite") {
            m.L = kInfinite;
        } else if (L.is_number()) {
            m.L = L.get<double>();
            if (!(m.L > 0.0) || !std::isfinite(m.L)) fail("L", "must be positive and finite, or \"infinite\"");
        } else {
            fail("L", "expected a number or \"infinite\"");
        }
    }
    try {
        validate(m);
    } catch (const ConfigError& e) {
        fail("<root>", e.what());
    }
    return m;
}

ModelSpec load_model(const std::string& path_or_json) {
    const auto first = path_or_json.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && path_or_json[first] == '{') return parse_model(path_or_json);
    std::ifstream in(path_or_json);
    if (!in) throw ConfigError("model config: cannot open '" + path_or_json + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string model_to_json(const ModelSpec& m) {
    json j;
    j["model"] = m.kind == ModelKind::M1 ? "M1" : "M2";
    j["a"] = potential_json(m.a);
    j["b"] = potential_json(m.kind == ModelKind::M1 ? PotentialSpec{ConstantOne{}} : m.b);
    if (std::isinf(m.L))
        j["L"] = "infinite";
    else
        j["L"] = m.L;
    return j.dump();
}

}  // namespace xpjost
