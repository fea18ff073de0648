#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "pdyn/errors.hpp"

namespace pdyn {

// Exact arithmetic substrate. Int is an arbitrary-precision integer, Rat a
// canonical fraction (gcd(|num|, den) = 1, den > 0, zero is 0/1); both are
// backed by Boost.Multiprecision, which maintains exactly these invariants.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Fraction p/q with any nonzero q (the backing type insists on q > 0).
inline Rat make_rat(Int p, Int q) {
    if (q == 0) throw Error(ErrorKind::Input, "DivisionByZero", "rational with zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return Rat(p, q);
}

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int int_abs(const Int& a) { return boost::multiprecision::abs(a); }

inline Int int_pow(const Int& base, unsigned long e) {
    return boost::multiprecision::pow(base, e);
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0 && e < 0) throw Error(ErrorKind::Input, "DivisionByZero", "0^negative");
    unsigned long m = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rat r(int_pow(num(base), m), int_pow(den(base), m));
    if (e < 0) r = Rat(1) / r;
    return r;
}

inline int rat_sign(const Rat& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

// Height of a rational in lowest terms: max(|numerator|, denominator).
inline Int rat_height(const Rat& r) {
    Int n = int_abs(num(r)), d = den(r);
    return n > d ? n : d;
}

inline std::string rat_to_string(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

// Parses "p", "-p" or "p/q"; rejects anything else.
inline Rat rat_from_string(const std::string& s) {
    auto bad = [&] { throw ParseError("not a rational literal: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) bad();
        return make_rat(p, q);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat(0);  // unreachable
}

// Floor of the integer square root.
inline Int isqrt(const Int& n) { return boost::multiprecision::sqrt(n); }

// Exact integer n-th root when it exists.
inline std::optional<Int> exact_nth_root(const Int& a, unsigned n) {
    if (n == 0) return std::nullopt;
    if (a == 0) return Int(0);
    if (a < 0) {
        if (n % 2 == 0) return std::nullopt;
        auto r = exact_nth_root(-a, n);
        if (!r) return std::nullopt;
        return -*r;
    }
    if (n == 1) return a;
    if (a == 1) return Int(1);
    // Newton iteration on a floor-root estimate, then verify.
    Int lo = 1, hi = 1;
    while (int_pow(hi, n) < a) hi <<= 1;
    while (lo < hi) {
        Int mid = (lo + hi + 1) >> 1;
        if (int_pow(mid, n) <= a)
            lo = mid;
        else
            hi = mid - 1;
    }
    if (int_pow(lo, n) == a) return lo;
    return std::nullopt;
}

// Exact rational n-th root (numerator and denominator separately).
inline std::optional<Rat> exact_nth_root(const Rat& a, unsigned n) {
    auto p = exact_nth_root(num(a), n);
    if (!p) return std::nullopt;
    auto q = exact_nth_root(den(a), n);
    if (!q) return std::nullopt;
    return Rat(*p, *q);
}

inline std::optional<Int> exact_sqrt(const Int& a) {
    if (a < 0) return std::nullopt;
    Int r = isqrt(a);
    if (r * r == a) return r;
    return std::nullopt;
}

}  // namespace pdyn
