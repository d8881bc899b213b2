#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <string>

namespace symdyn {

// Exact arithmetic used throughout: arbitrary-precision integers and the
// rationals over them. Nothing in the certificate paths touches floating point.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline Rational rat(long long num, long long den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

// Canonical "p/q" rendering (q > 0, gcd(p,q) = 1), used in all reports.
inline std::string fraction_string(const Rational& r) {
    return r.numerator().str() + "/" + r.denominator().str();
}

} // namespace symdyn
