#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "solidangle/errors.hpp"

namespace solidangle {

// Exact scalar for the integer/rational input path. All lattice-core
// operations are templated on the scalar and instantiate with either
// `double` or `Rational`.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return static_cast<double>(x); }

// Nearest integer, exact for Rational. Ties may go either way; callers
// that care (the reduction sweep) guard with a strict-decrease test.
inline long long round_nearest(double x) { return std::llround(x); }

inline long long round_nearest(const Rational& x) {
    long long q = std::llround(static_cast<double>(x));
    // The double rounding above can be off by one; fix up exactly.
    Rational best_err = abs(x - q);
    for (long long cand : {q - 1, q + 1}) {
        Rational err = abs(x - cand);
        if (err < best_err) {
            best_err = err;
            q = cand;
        }
    }
    return q;
}

// Parses an integer or a rational literal `p/q`.
inline Rational parse_rational(std::string_view token) {
    try {
        auto slash = token.find('/');
        if (slash == std::string_view::npos) {
            return Rational(BigInt(std::string(token)));
        }
        BigInt num{std::string(token.substr(0, slash))};
        BigInt den{std::string(token.substr(slash + 1))};
        if (den == 0) throw ParseError("zero denominator in '" + std::string(token) + "'");
        return Rational(num, den);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("invalid rational literal '" + std::string(token) + "'");
    }
}

}  // namespace solidangle
