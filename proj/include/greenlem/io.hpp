// JSON and CSV serialization of maps, measures and verification reports.
#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "greenlem/error.hpp"
#include "greenlem/measure.hpp"
#include "greenlem/projective.hpp"
#include "greenlem/verify.hpp"

namespace greenlem {

using json = nlohmann::json;

class ParseError : public Error {
  public:
    using Error::Error;
};

inline json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError("expected a number or [re, im], got " + j.dump());
}

inline Poly poly_from_json(const json& j, const char* field) {
    if (!j.is_array()) throw ParseError(std::string("map: '") + field + "' must be an array");
    Poly p;
    for (const auto& c : j) p.push_back(complex_from_json(c));
    return p;
}

/// {"numerator": [[re,im],...], "denominator": [[re,im],...]}, ascending powers.
inline RationalMap map_from_json(const json& j) {
    if (!j.is_object() || !j.contains("numerator") || !j.contains("denominator"))
        throw ParseError("map: expected an object with 'numerator' and 'denominator'");
    return RationalMap(poly_from_json(j.at("numerator"), "numerator"), poly_from_json(j.at("denominator"), "denominator"));
}

inline json map_to_json(const RationalMap& map) {
    json num = json::array(), den = json::array();
    for (const auto& c : map.numerator()) num.push_back(complex_to_json(c));
    for (const auto& c : map.denominator()) den.push_back(complex_to_json(c));
    return {{"numerator", num}, {"denominator", den}};
}

/// Accepts "a", "bi", "a+bi", "a-bi" (also "i", "-i").
inline cplx parse_complex(const std::string& text) {
    static const std::regex num(R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*)");
    static const std::regex imag(R"(\s*([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)\s*\*?\s*[ij]\s*)");
    static const std::regex both(
        R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([+-])\s*((?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)\s*\*?\s*[ij]\s*)");
    auto coef = [](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return std::stod(s);
    };
    std::smatch m;
    if (std::regex_match(text, m, num)) return {std::stod(m[1]), 0.0};
    if (std::regex_match(text, m, imag)) return {0.0, coef(m[1])};
    if (std::regex_match(text, m, both)) return {std::stod(m[1]), (m[2] == "-" ? -1.0 : 1.0) * coef(m[3])};
    throw ParseError("cannot parse complex number '" + text + "'");
}

/// "c0,c1,...,cd" -> the polynomial c0 + c1 z + ... + cd z^d.
inline RationalMap parse_poly_shorthand(const std::string& text) {
    Poly p;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) p.push_back(parse_complex(tok));
    if (p.empty()) throw ParseError("--poly: no coefficients");
    return RationalMap::polynomial(std::move(p));
}

/// "re,im" or "inf".
inline SpherePoint parse_point(const std::string& text) {
    if (text == "inf" || text == "infinity") return SpherePoint::infinity();
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return SpherePoint::affine(parse_complex(text));
        return SpherePoint::affine({std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))});
    } catch (const std::logic_error&) {
        throw ParseError("cannot parse point '" + text + "' (expected re,im or inf)");
    }
}

inline json point_to_json(const SpherePoint& p) {
    if (p.is_infinity()) return "inf";
    return complex_to_json(p.value());
}

inline SpherePoint point_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return SpherePoint::infinity();
    return SpherePoint::affine(complex_from_json(j));
}

/// {"seed": u64, "provenance": {...}, "atoms": [[re, im, w], ..., ["inf", w]]}.
inline json measure_to_json(const DiscreteMeasure& mu) {
    json atoms = json::array();
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const auto& p = mu.points[i];
        if (p.is_infinity())
            atoms.push_back(json::array({"inf", mu.weights[i]}));
        else
            atoms.push_back(json::array({p.value().real(), p.value().imag(), mu.weights[i]}));
    }
    const auto& pv = mu.provenance;
    json prov = {{"method", to_string(pv.method)}, {"base", point_to_json(pv.base)}};
    if (pv.method == SampleMethod::Tree) {
        prov["depth"] = pv.depth;
    } else {
        prov["length"] = pv.length;
        prov["burn_in"] = pv.burn_in;
    }
    return {{"seed", mu.seed}, {"provenance", prov}, {"atoms", atoms}};
}

inline DiscreteMeasure measure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("atoms")) throw ParseError("measure: expected an object with 'atoms'");
    DiscreteMeasure mu;
    mu.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("provenance")) {
        const auto& pv = j.at("provenance");
        const std::string method = pv.value("method", std::string("tree"));
        if (method != "tree" && method != "walk") throw ParseError("measure: unknown provenance method '" + method + "'");
        mu.provenance.method = method == "tree" ? SampleMethod::Tree : SampleMethod::Walk;
        mu.provenance.depth = pv.value("depth", 0);
        mu.provenance.length = pv.value("length", std::size_t{0});
        mu.provenance.burn_in = pv.value("burn_in", std::size_t{0});
        if (pv.contains("base")) mu.provenance.base = point_from_json(pv.at("base"));
    }
    for (const auto& a : j.at("atoms")) {
        if (a.is_array() && a.size() == 2 && a[0].is_string() && a[0].get<std::string>() == "inf" && a[1].is_number()) {
            mu.points.push_back(SpherePoint::infinity());
            mu.weights.push_back(a[1].get<double>());
        } else if (a.is_array() && a.size() == 3 && a[0].is_number() && a[1].is_number() && a[2].is_number()) {
            mu.points.push_back(SpherePoint::affine({a[0].get<double>(), a[1].get<double>()}));
            mu.weights.push_back(a[2].get<double>());
        } else {
            throw ParseError("measure: bad atom " + a.dump());
        }
    }
    if (mu.points.empty()) throw ParseError("measure: no atoms");
    double total = 0.0;
    for (double w : mu.weights) {
        if (!(w > 0.0)) throw ParseError("measure: weights must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ParseError("measure: weights must sum to 1");
    return mu;
}

/// re,im,weight per line; infinity as "inf,inf,weight".
inline void write_measure_csv(std::ostream& os, const DiscreteMeasure& mu) {
    char buf[96];
    os << "re,im,weight\n";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const auto& p = mu.points[i];
        if (p.is_infinity()) {
            std::snprintf(buf, sizeof buf, "inf,inf,%.17g\n", mu.weights[i]);
        } else {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.value().real(), p.value().imag(), mu.weights[i]);
        }
        os << buf;
    }
}

inline json report_to_json(const VerificationReport& r) {
    json details = json::object();
    for (const auto& [k, v] : r.details) details[k] = v;
    return {{"identity", r.identity},
            {"residual", r.residual},
            {"tolerance", r.tolerance},
            {"pass", r.pass},
            {"skipped", r.skipped},
            {"inputs",
             {{"map", r.inputs.map},
              {"seed", r.inputs.seed},
              {"sample_size", r.inputs.sample_size},
              {"depth", r.inputs.depth},
              {"probes", r.inputs.probes}}},
            {"details", details}};
}

}  // namespace greenlem
