#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace lcentropy {

// Arbitrary-precision integers and reduced rationals (denominator kept
// positive by the backend).  Everything in the certifier runs on these;
// no operation in that module introduces rounding.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational rational_pow(const Rational& base, long long exp) {
    if (exp < 0) throw std::invalid_argument("rational_pow needs a nonnegative exponent");
    Rational acc(1);
    Rational b = base;
    unsigned long long e = static_cast<unsigned long long>(exp);
    while (e > 0) {
        if (e & 1ULL) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline BigInt factorial(int n) {
    BigInt acc(1);
    for (int i = 2; i <= n; ++i) acc *= i;
    return acc;
}

/// n (n-1) ... (n-k+1)
inline BigInt falling(long long n, int k) {
    BigInt acc(1);
    for (int i = 0; i < k; ++i) acc *= BigInt(n - i);
    return acc;
}

inline int sign(const Rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

}  // namespace lcentropy
