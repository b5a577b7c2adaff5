#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace plf {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed textual input (CLI arguments, JSON payloads).
class ParseError : public Error {
public:
    using Error::Error;
};

// A precondition on the mathematical objects was violated.
class DomainError : public Error {
public:
    using Error::Error;
};

// Root extraction failed: the two maps have no common root on the interval.
class IncommensurableError : public Error {
public:
    using Error::Error;
};

// An internal exactness check failed after a construction step.
class VerificationError : public Error {
public:
    using Error::Error;
};

// Serialize as "num/den", always with an explicit denominator.
inline std::string rat_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_rational(const std::string& s) {
    auto bad = [&]() -> ParseError { return ParseError("bad rational: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (ns.empty() || ds.empty() || ds.find('/') != std::string::npos) throw bad();
        BigInt den(ds);
        if (den == 0) throw bad();
        return Rational(BigInt(ns), den);
    } catch (const std::exception&) {
        throw bad();
    }
}

inline bool is_power_of_two(const BigInt& n) {
    if (n <= 0) return false;
    return (n & (n - 1)) == 0;
}

// Denominator is a power of two (1 counts).
inline bool is_dyadic(const Rational& r) {
    return is_power_of_two(denominator(r));
}

// r == 2^k for some integer k (possibly negative).
inline bool is_pow2_rational(const Rational& r) {
    const BigInt num = numerator(r), den = denominator(r);
    return (num == 1 && is_power_of_two(den)) || (den == 1 && is_power_of_two(num));
}

// The exponent k with r == 2^k, when r is a power of two.
inline std::optional<long> pow2_exponent(const Rational& r) {
    if (!is_pow2_rational(r)) return std::nullopt;
    const BigInt num = numerator(r), den = denominator(r);
    if (den == 1) return static_cast<long>(boost::multiprecision::msb(num));
    return -static_cast<long>(boost::multiprecision::msb(den));
}

} // namespace plf
