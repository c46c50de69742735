#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/poly.hpp"

namespace pcf {

using json = nlohmann::ordered_json;

inline json coefficient_json(const mpz_class& x) { return x.get_str(); }

inline json coefficient_json(const mpq_class& x) {
    return json{{"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}};
}

/// {"var": ..., "coeffs": [...]} in ascending degree.
template <coefficient T>
json poly_json(const Poly<T>& p, const std::string& var) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(coefficient_json(c));
    return json{{"var", var}, {"coeffs", coeffs}};
}

inline mpz_class parse_integer(const json& j) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    if (!j.is_string()) throw invalid_argument_error("integer coefficient must be a decimal string");
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) != 0)
        throw invalid_argument_error("malformed integer '" + j.get<std::string>() + "'");
    return v;
}

inline mpq_class parse_rational(const json& j) {
    if (j.is_object()) {
        mpz_class den = parse_integer(j.at("den"));
        if (den <= 0) throw invalid_argument_error("rational denominator must be positive");
        mpq_class q(parse_integer(j.at("num")), den);
        q.canonicalize();
        return q;
    }
    return mpq_class(parse_integer(j));
}

inline IntPoly int_poly_from_json(const json& j) {
    std::vector<mpz_class> c;
    for (const auto& v : j.at("coeffs")) c.push_back(parse_integer(v));
    return IntPoly(std::move(c));
}

inline RatPoly rat_poly_from_json(const json& j) {
    std::vector<mpq_class> c;
    for (const auto& v : j.at("coeffs")) c.push_back(parse_rational(v));
    return RatPoly(std::move(c));
}

}  // namespace pcf
