#pragma once

#include <gmpxx.h>

#include <string>

#include "pwldyn/errors.hpp"

namespace pwldyn {

// Exact arbitrary-precision rational, always in lowest terms with a
// positive denominator (gmp canonical form).
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "p/q" and plain decimals like "3.9" or "-0.5".
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw ParseError("bad rational literal: " + s);
        try {
            BigInt num(digits, 10);  // explicit base: no octal surprises from leading zeros
            BigInt den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
            Rational q(num, den);
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational literal: " + s);
        }
    }
    try {
        Rational q(s);
        if (q.get_den() == 0) throw ParseError("zero denominator in: " + s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + s);
    }
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline BigInt floor_rat(const Rational& q) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

inline Rational pow_rat(const Rational& base, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return out;
}

}  // namespace pwldyn
