#pragma once

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "pdyn/numeric.hpp"

namespace pdyn {

// Integer factorization at desk scale: trial division for the small primes,
// Brent's variant of Pollard rho for the cofactors, Miller-Rabin for
// primality. Deterministic given the input.
using Factorization = std::map<Int, unsigned>;

inline bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    return boost::multiprecision::miller_rabin_test(n, 32);
}

namespace detail {

inline Int brent_rho(const Int& n, uint64_t c0) {
    // n composite, odd, not a perfect power of a found factor yet.
    for (uint64_t c = c0;; ++c) {
        Int x = 2, y = 2, d = 1;
        Int saved_x = x;
        uint64_t power = 1, lam = 0;
        while (d == 1) {
            if (lam == power) {
                saved_x = y;
                power <<= 1;
                lam = 0;
            }
            y = (y * y + c) % n;
            ++lam;
            Int diff = saved_x > y ? saved_x - y : y - saved_x;
            if (diff == 0) break;  // cycle without factor; retry with new c
            d = int_gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

inline void factor_into(Int n, Factorization& out) {
    if (n <= 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Int d = brent_rho(n, 1);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

// Prime factorization of |n| (n != 0). The unit is dropped.
inline Factorization factorize(Int n) {
    if (n == 0) throw Error(ErrorKind::Input, "FactorZero", "cannot factor 0");
    n = int_abs(n);
    Factorization out;
    for (Int p : {Int(2), Int(3), Int(5)}) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    // wheel over 6k+-1
    for (Int p = 7; p * p <= n && p < 100000; p += 6) {
        Int p4 = p + 4;
        for (const Int& q : {p, p4}) {
            while (n % q == 0) {
                ++out[q];
                n /= q;
            }
        }
    }
    if (n > 1) detail::factor_into(n, out);
    return out;
}

inline Int radical(const Int& n) {
    Int r = 1;
    for (auto& [p, e] : factorize(n)) r *= p;
    return r;
}

inline unsigned valuation(Int n, const Int& p) {
    unsigned v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// All positive divisors, sorted. Intended for numbers whose factorization is
// already at hand and whose divisor count is sane.
inline std::vector<Int> divisors(const Factorization& f) {
    std::vector<Int> divs{Int(1)};
    for (auto& [p, e] : f) {
        std::size_t base = divs.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace pdyn
