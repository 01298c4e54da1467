#pragma once

// config documents (fields, towers, automorphisms, algebras) and JSON serialization

#include "hyperbolic_plane.hpp"

#include <json.hpp>

#include <fstream>
#include <map>

namespace hplane {

using json = nlohmann::ordered_json;

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const QVec& v)
{
    json a = json::array();
    for (auto& q : v)
        a.push_back(to_string(q));
    return a;
}

inline json to_json(const FieldElement& x) { return to_json(x.c); }

inline json to_json(const AlgebraElement& x)
{
    json z = json::array();
    for (auto& c : x.z)
        z.push_back(to_json(c));
    return z;
}

inline json to_json(const PlaneVector& v, const std::string& label)
{
    return {{"algebra", label}, {"x", {to_json(v.x1), to_json(v.x2)}}};
}

inline json to_json(const GroupMatrix& g, const std::string& label)
{
    return {{"algebra", label}, {"rows", {{to_json(g.a), to_json(g.b)}, {to_json(g.c), to_json(g.d)}}}};
}

inline std::string num(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

// ---- loading ----

inline QVec parse_qvec(const json& j, const std::string& where)
{
    if (!j.is_array())
        throw ParseError(where + ": expected an array of rationals");
    QVec v;
    for (auto& x : j) {
        if (x.is_string())
            v.push_back(parse_rational(x.get<std::string>()));
        else if (x.is_number_integer())
            v.push_back(Rational(x.get<long>()));
        else
            throw ParseError(where + ": coordinates must be rational strings or integers");
    }
    return v;
}

struct ConfigDoc {
    std::map<std::string, FieldPtr> fields;
    std::map<std::string, TowerMap> towers;
    std::map<std::string, Automorphism> automorphisms;
    std::map<std::string, AlgebraPtr> algebras;
    std::map<std::string, std::shared_ptr<const Involution>> involutions;
};

template <class M>
auto& lookup(M& m, const json& key, const std::string& what)
{
    if (!key.is_string())
        throw ParseError(what + " reference must be a string");
    auto it = m.find(key.get<std::string>());
    if (it == m.end())
        throw ParseError("unknown " + what + ": " + key.get<std::string>());
    return it->second;
}

inline std::string req_label(const json& j, const char* what)
{
    if (!j.is_object() || !j.contains("label") || !j["label"].is_string())
        throw ParseError(std::string(what) + " entry needs a string label");
    return j["label"].get<std::string>();
}

// shape problems raise ParseError; invalid mathematical data raises the library's own errors
inline ConfigDoc load_config(const json& doc)
{
    if (!doc.is_object())
        throw ParseError("config document must be an object");
    ConfigDoc c;
    for (auto& f : doc.value("fields", json::array())) {
        auto lab = req_label(f, "field");
        if (!f.contains("minpoly"))
            throw ParseError("field " + lab + " has no minpoly");
        c.fields[lab] = NumberField::make(lab, parse_qvec(f["minpoly"], lab));
    }
    c.fields.emplace("Q", rationals());
    for (auto& t : doc.value("towers", json::array())) {
        auto lab = req_label(t, "tower");
        auto& s = lookup(c.fields, t["source"], "field");
        auto& tg = lookup(c.fields, t["target"], "field");
        c.towers.emplace(lab, TowerMap(s, FieldElement(tg, parse_qvec(t["generator_image"], lab))));
    }
    for (auto& a : doc.value("automorphisms", json::array())) {
        auto lab = req_label(a, "automorphism");
        auto& F = lookup(c.fields, a["field"], "field");
        c.automorphisms.emplace(lab, Automorphism(FieldElement(F, parse_qvec(a["generator_image"], lab))));
    }
    for (auto& a : doc.value("algebras", json::array())) {
        auto lab = req_label(a, "algebra");
        auto& km = lookup(c.towers, a["K_map"], "tower");
        if (a.contains("L") && lookup(c.fields, a["L"], "field") != km.target)
            throw ParseError(lab + ": L does not match the target of K_map");
        auto& sg = lookup(c.automorphisms, a["sigma"], "automorphism");
        if (!a.contains("d") || !a["d"].is_number_integer())
            throw ParseError(lab + ": d must be an integer");
        auto gamma = FieldElement(km.source, parse_qvec(a["gamma"], lab + ".gamma"));
        auto A = CyclicAlgebra::make(lab, km, sg, gamma, a["d"].get<int>());
        c.algebras[lab] = A;
        if (a.contains("involution")) {
            auto& iv = a["involution"];
            std::string kind = iv.value("kind", "");
            InvolutionSpec spec;
            if (kind == "first") {
                spec.kind = InvolutionKind::First;
            } else if (kind == "second") {
                spec.kind = InvolutionKind::Second;
                spec.omega = FieldElement(A->L, parse_qvec(iv["omega"], lab + ".omega"));
                spec.conjugation = lookup(c.automorphisms, iv["conjugation"], "automorphism");
            } else {
                throw ParseError(lab + ": involution kind must be first or second");
            }
            c.involutions[lab] = std::make_shared<const Involution>(A, spec);
        }
    }
    return c;
}

inline ConfigDoc load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return load_config(doc);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace hplane
