#pragma once

// Exact big-integer / big-rational arithmetic used for stacky cardinalities.
// Backed by boost::multiprecision (header-only); values are always reduced,
// denominator > 0. Serialized as "num/den" decimal strings in reports.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hitchin {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned exp) {
    BigInt r = 1;
    BigInt b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

// q^k for possibly negative k, as an exact rational.
inline BigRational q_power(long long q, long long k) {
    if (k >= 0) return BigRational(big_pow(BigInt(q), static_cast<unsigned>(k)));
    return BigRational(BigInt(1), big_pow(BigInt(q), static_cast<unsigned>(-k)));
}

inline std::string to_fraction_string(const BigRational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline BigRational parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return BigRational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("fraction with zero denominator: " + s);
    return BigRational(num, den);
}

}  // namespace hitchin
