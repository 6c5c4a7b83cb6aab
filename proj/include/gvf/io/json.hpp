#pragma once

#include "gvf/arith/value.hpp"
#include "gvf/io/element.hpp"
#include "gvf/places/place.hpp"
#include "gvf/positivity/certificate.hpp"

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace gvf {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline Json json_double(double x) {
    if (std::isfinite(x)) return x;
    return x > 0 ? "inf" : "-inf";
}

inline Json json_integer(const Integer& n) {
    if (n.fits_slong_p()) return n.get_si();
    return n.get_str();
}

inline std::string rational_text(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

inline Json json_value(const LogReal& x) {
    Json terms = Json::array();
    for (auto& [p, q] : x.terms()) terms.push_back({{"p", json_integer(p)}, {"q", rational_text(q)}});
    Json alg = nullptr;
    if (x.alg()) alg = {{"gamma", x.alg()->gamma.to_string()}, {"order", json_integer(x.alg()->order)}};
    return {{"logTerms", terms}, {"alg", alg}, {"exact", x.to_string()}, {"approx", json_double(x.approx())}};
}

// Values of F_p(t) structures are rational multiples of one degree unit.
inline Json json_value(const Rational& x) { return {{"rational", rational_text(x)}, {"approx", json_double(x.get_d())}}; }

inline Json json_value(const Interval& x) { return {{"lo", json_double(x.lo)}, {"hi", json_double(x.hi)}}; }

template <class V>
Json json_value(const Extended<V>& x) {
    if (x.finite()) return json_value(x.value);
    return {{"infinite", x.is_plus_inf() ? "+" : "-"}, {"approx", json_double(x.is_plus_inf() ? INFINITY : -INFINITY)}};
}

inline Json json_place(const Place& v) { return to_string(v); }

template <class E>
Json json_elements(const std::vector<E>& xs) {
    Json out = Json::array();
    for (auto& x : xs) out.push_back(to_string(x));
    return out;
}

// {"a": [...], "epsilon": "u/w", "coefficients": [{"s": [...], "m": int}]}
template <class E>
Json certificate_json(const std::vector<E>& a, const NegCertificate& c) {
    Json coeffs = Json::array();
    for (auto& [s, m] : c.coeffs) coeffs.push_back({{"s", s}, {"m", json_integer(m)}});
    return {{"a", json_elements(a)}, {"epsilon", rational_text(c.epsilon)}, {"coefficients", coeffs}};
}

template <class Field>
std::pair<std::vector<typename Field::Element>, NegCertificate> certificate_from_json(const Field& F, const Json& j) {
    auto need = [&](const char* k) -> const Json& {
        if (!j.is_object() || !j.contains(k)) throw ParseError(1, std::string("certificate is missing '") + k + "'");
        return j.at(k);
    };
    std::vector<typename Field::Element> a;
    for (auto& x : need("a")) {
        if (!x.is_string()) throw ParseError(1, "certificate elements must be strings");
        a.push_back(parse_element(F, x.template get<std::string>()));
    }
    NegCertificate c;
    const Json& eps = need("epsilon");
    c.epsilon = eps.is_string() ? Lexer(eps.template get<std::string>()).rational() : Rational(eps.template get<long>());
    for (auto& e : need("coefficients")) {
        if (!e.contains("s") || !e.contains("m")) throw ParseError(1, "coefficient entries need 's' and 'm'");
        Exponent s = e.at("s").template get<Exponent>();
        if (s.size() != a.size()) throw ParseError(1, "exponent vector has the wrong arity");
        for (int k : s)
            if (k < 0) throw ParseError(1, "exponents must be nonnegative");
        Integer m = e.at("m").is_string() ? Integer(e.at("m").template get<std::string>()) : Integer(e.at("m").template get<long>());
        if (m != 0) c.coeffs[s] += m;
    }
    return {a, c};
}

}  // namespace gvf
