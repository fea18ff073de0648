#pragma once

#include "pdyn/ratmap.hpp"
#include "pdyn/unipoly.hpp"

namespace pdyn {

// Degree-r Chebyshev polynomial: the unique T_r with
// T_r((x + 1/x)/2) = (x^r + 1/x^r)/2.
struct ChebyshevPoly {
    unsigned degree;
    UniPoly poly;
};

// Exact check of the defining identity for a candidate polynomial T:
// with u = (x^2+1)/(2x), clearing (2x)^r turns the identity into
// 2 * sum_i t_i (x^2+1)^i (2x)^(r-i) == 2^r (x^(2r) + 1).
inline bool chebyshev_identity_holds(const UniPoly& T, unsigned r) {
    if (T.degree() != static_cast<long>(r)) return false;
    UniPoly xsq1 = UniPoly({Rat(1), Rat(0), Rat(1)});  // x^2 + 1
    UniPoly twox = UniPoly({Rat(0), Rat(2)});          // 2x
    UniPoly n;
    for (std::size_t i = 0; i < T.coeffs().size(); ++i) {
        if (T.coeffs()[i] == 0) continue;
        n = n + T.coeffs()[i] * (xsq1.pow(i) * twox.pow(r - i));
    }
    UniPoly rhs = UniPoly::monomial(Rat(int_pow(Int(2), r)), 2 * r) +
                  UniPoly::constant(Rat(int_pow(Int(2), r)));
    return Rat(2) * n == rhs;
}

// T_r by the recurrence T_0 = 1, T_1 = x, T_r = 2x T_(r-1) - T_(r-2),
// verified against the defining identity before returning.
inline ChebyshevPoly chebyshev(unsigned r) {
    if (r < 1) throw Error(ErrorKind::Input, "BadDegree", "chebyshev degree must be >= 1");
    UniPoly prev = UniPoly::constant(Rat(1));
    UniPoly cur = UniPoly::x();
    UniPoly twox({Rat(0), Rat(2)});
    for (unsigned k = 2; k <= r; ++k) {
        UniPoly next = twox * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    if (!chebyshev_identity_holds(cur, r))
        throw Error(ErrorKind::Internal, "ChebyshevIdentity",
                    "recurrence output failed the defining identity");
    return {r, cur};
}

inline bool verify_chebyshev_identity(unsigned r) {
    if (r < 1) throw Error(ErrorKind::Input, "BadDegree", "chebyshev degree must be >= 1");
    UniPoly prev = UniPoly::constant(Rat(1));
    UniPoly cur = UniPoly::x();
    UniPoly twox({Rat(0), Rat(2)});
    for (unsigned k = 2; k <= r; ++k) {
        UniPoly next = twox * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return chebyshev_identity_holds(cur, r);
}

inline RatMap1 chebyshev_map(unsigned r) {
    return RatMap1::from_affine(chebyshev(r).poly, UniPoly::constant(Rat(1)));
}

// x -> -T_r(x), the paper's other Chebyshev-type normal form.
inline RatMap1 negated_chebyshev_map(unsigned r) {
    return RatMap1::from_affine(-chebyshev(r).poly, UniPoly::constant(Rat(1)));
}

}  // namespace pdyn
