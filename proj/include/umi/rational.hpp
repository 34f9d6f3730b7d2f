#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "umi/errors.hpp"

namespace umi {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Integer rat_floor(const Rational& q) { return floor_div(rat_num(q), rat_den(q)); }

inline Integer rat_ceil(const Rational& q) { return -rat_floor(-q); }

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// p-adic valuation of a nonzero integer.
inline long padic_val(Integer n, const Integer& p) {
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// p-adic valuation of a nonzero rational.
inline long padic_val(const Rational& q, const Integer& p) {
    return padic_val(rat_num(q) < 0 ? Integer(-rat_num(q)) : rat_num(q), p) -
           padic_val(rat_den(q), p);
}

// p^e for a (possibly negative) integer exponent, as a rational.
inline Rational rat_pow(const Integer& p, long e) {
    if (e >= 0) return Rational(int_pow(p, static_cast<unsigned long>(e)));
    return Rational(1, int_pow(p, static_cast<unsigned long>(-e)));
}

inline std::string rat_str(const Rational& q) { return q.str(); }

inline Rational rat_parse(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw ParseError("bad rational literal: " + s);
    }
}

// Extended gcd over Integer: returns g = gcd(a,b) with g = x*a + y*b.
inline Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return a < 0 ? Integer(-a) : a;
    }
    Integer x1, y1;
    Integer g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Inverse of a modulo m (m > 1, gcd(a, m) = 1).
inline Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer x, y;
    Integer g = ext_gcd(((a % m) + m) % m, m, x, y);
    if (g != 1) throw Error("mod_inverse: arguments not coprime");
    return ((x % m) + m) % m;
}

inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (Integer d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace umi
