#pragma once

#include <cctype>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/poly.hpp"

namespace pcf {

inline std::string coefficient_text(const mpz_class& x) { return x.get_str(); }
inline std::string coefficient_text(const mpq_class& x) { return x.get_str(); }
inline bool coefficient_is_atomic(const mpz_class&) { return true; }
inline bool coefficient_is_atomic(const mpq_class&) { return true; }

inline std::string power_text(const std::string& var, std::size_t deg) {
    if (deg == 0) return "";
    if (deg == 1) return var;
    return var + "^" + std::to_string(deg);
}

/// Human-readable rendering in descending degree, e.g. "c^3 + 2*c^2 + c + 1".
template <coefficient T>
std::string to_text(const Poly<T>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (is_zero(p[i])) continue;
        std::string s = coefficient_text(p[i]);
        bool negative = false;
        std::string term;
        if (coefficient_is_atomic(p[i])) {
            negative = !s.empty() && s[0] == '-';
            std::string mag = negative ? s.substr(1) : s;
            if (i > 0 && mag == "1") mag.clear();
            term = mag;
            if (i > 0) term += (mag.empty() ? "" : "*") + power_text(var, i);
        } else {
            term = "(" + s + ")";
            if (i > 0) term += "*" + power_text(var, i);
        }
        if (out.empty()) out = negative ? "-" + term : term;
        else out += (negative ? " - " : " + ") + term;
    }
    return out;
}

/**
 * Parses a polynomial literal with rational coefficients such as
 * "c^2 - 3/2", "2*c^3 + c + 1" or "-7". Implicit multiplication ("2c") is
 * accepted. Throws invalid_argument_error on malformed input.
 */
inline RatPoly parse_rat_poly(const std::string& text, const std::string& var) {
    std::size_t pos = 0;
    auto skip = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    auto fail = [&](const std::string& why) -> void {
        throw invalid_argument_error("cannot parse polynomial '" + text + "': " + why);
    };
    auto read_int = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        return text.substr(start, pos - start);
    };

    std::vector<mpq_class> coeffs;
    skip();
    if (pos == text.size()) fail("empty input");
    bool first = true;
    while (true) {
        skip();
        if (pos == text.size()) break;
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            fail("expected '+' or '-' at offset " + std::to_string(pos));
        }
        first = false;

        mpq_class coef = 1;
        bool have_number = false;
        std::string num = read_int();
        if (!num.empty()) {
            have_number = true;
            mpz_class n(num), d = 1;
            skip();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                skip();
                std::string den = read_int();
                if (den.empty()) fail("missing denominator");
                d = mpz_class(den);
                if (d == 0) fail("zero denominator");
            }
            coef = mpq_class(n, d);
            coef.canonicalize();
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip();
            }
        }
        std::size_t deg = 0;
        if (text.compare(pos, var.size(), var) == 0) {
            pos += var.size();
            deg = 1;
            skip();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip();
                std::string e = read_int();
                if (e.empty()) fail("missing exponent");
                deg = std::stoul(e);
            }
        } else if (!have_number) {
            fail("unexpected character at offset " + std::to_string(pos));
        }
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, mpq_class(0));
        coeffs[deg] += sign * coef;
        skip();
    }
    return RatPoly(std::move(coeffs));
}

}  // namespace pcf
