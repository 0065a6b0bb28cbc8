#pragma once

// Exact decimal parsing: "2e-3" becomes the rational 1/500, so threshold
// inputs stay comparable without rounding.

#include <cctype>
#include <stdexcept>
#include <string>

#include "interval.hpp"

namespace skewlyap {

inline Rational parse_decimal_rational(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (std::isdigit((unsigned char)ch)) {
            digits += ch;
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else if (ch == 'e' || ch == 'E') {
            break;
        } else if (ch == '/') {
            // plain fraction form p/q
            Rational num(s.substr(0, i));
            Rational den(s.substr(i + 1));
            Rational r = num / den;
            return r;
        } else {
            throw std::invalid_argument("parse_decimal_rational: bad literal: " + s);
        }
    }
    if (!seen_digit) throw std::invalid_argument("parse_decimal_rational: bad literal: " + s);
    long expo = 0;
    if (i < s.size()) { // at 'e'
        expo = std::stol(s.substr(i + 1));
    }
    BigInt mant(digits.empty() ? "0" : digits);
    if (neg) mant = -mant;
    long net = expo - frac_digits;
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, (unsigned long)(net < 0 ? -net : net));
    Rational r;
    if (net >= 0) {
        r = Rational(mant * p10);
    } else {
        r = Rational(mant, p10);
        r.canonicalize();
    }
    return r;
}

} // namespace skewlyap
