#pragma once

#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace fitscore {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline BigInt pow10(unsigned places) {
    BigInt r = 1;
    for (unsigned i = 0; i < places; ++i)
        r *= 10;
    return r;
}

// Decimal rendering rounded half to even. Presentation only.
inline std::string render_decimal(const Rational &x, unsigned places) {
    BigInt num = boost::multiprecision::numerator(x);
    BigInt den = boost::multiprecision::denominator(x);
    bool neg = num < 0;
    if (neg)
        num = -num;
    BigInt scaled = num * pow10(places);
    BigInt q = scaled / den;
    BigInt r2 = 2 * (scaled % den);
    if (r2 > den || (r2 == den && (q % 2) != 0))
        ++q;

    std::string digits = q.str();
    if (digits.size() <= places)
        digits.insert(0, places + 1 - digits.size(), '0');
    std::string out = neg && q != 0 ? "-" : "";
    out += digits.substr(0, digits.size() - places);
    if (places)
        out += "." + digits.substr(digits.size() - places);
    return out;
}

inline double to_double(const Rational &x) { return x.convert_to<double>(); }

// Largest p such that a and b render identically at every precision 0..p.
// Returns -1 when even the rounded integer parts differ, and cap when the
// values agree at every precision up to cap.
inline int agreed_digits(const Rational &a, const Rational &b, int cap = 40) {
    if (a == b)
        return cap;
    int p = -1;
    while (p < cap && render_decimal(a, p + 1) == render_decimal(b, p + 1))
        ++p;
    return p;
}

} // namespace fitscore
