#pragma once

#include <functional>
#include <set>
#include <vector>

#include "pdyn/intfactor.hpp"
#include "pdyn/numeric.hpp"

namespace pdyn {

inline Int euler_phi(const Int& k) {
    if (k < 1) throw Error(ErrorKind::Input, "BadArgument", "euler_phi needs k >= 1");
    Int phi = 1;
    for (auto& [p, e] : factorize(k)) phi *= int_pow(p, e - 1) * (p - 1);
    return phi;
}

// Monomial character x_1^(r_1) ... x_n^(r_n) of the split torus.
struct MonomialCharacter {
    std::vector<long> exponents;
    Int support_gcd = 0;

    explicit MonomialCharacter(std::vector<long> r) : exponents(std::move(r)) {
        bool nonzero = false;
        for (long e : exponents) {
            if (e != 0) {
                nonzero = true;
                support_gcd = int_gcd(support_gcd, Int(e < 0 ? -e : e));
            }
        }
        if (!nonzero)
            throw InvariantViolation("monomial character must have a nonzero exponent");
    }
};

// Torsion translate V(x^r - epsilon): a character plus the order of the
// torsion element epsilon. The constraint epsilon^d = epsilon, i.e.
// ord(epsilon) | d - 1, depends on d and is validated where d enters.
struct TorusTranslate {
    MonomialCharacter character;
    Int epsilon_order;

    TorusTranslate(MonomialCharacter c, Int eps_order)
        : character(std::move(c)), epsilon_order(std::move(eps_order)) {
        if (epsilon_order < 1) throw InvariantViolation("epsilon order must be >= 1");
    }
};

inline void validate_translate_for(const TorusTranslate& W, long d) {
    if (d < 2) throw Error(ErrorKind::Input, "BadDegree", "d must be >= 2");
    if ((Int(d) - 1) % W.epsilon_order != 0)
        throw PreconditionFailed("epsilon^d = epsilon fails: ord(epsilon) = " +
                                 W.epsilon_order.str() + " does not divide d - 1 = " +
                                 std::to_string(d - 1));
}

// Orders of roots of unity of degree at most B whose order's radical
// divides the radical of d; this is the finite set M of torsion elements
// that can ever appear in d-power preimage towers.
struct TorsionOrderSet {
    std::set<Int> orders;
    long d = 0;
    Int bound_B = 0;
};

inline TorsionOrderSet bounded_degree_torsion_orders(long d, const Int& B) {
    if (d < 2) throw Error(ErrorKind::Input, "BadDegree", "d must be >= 2");
    if (B < 1) throw Error(ErrorKind::Input, "BadBound", "B must be >= 1");
    std::vector<Int> primes;
    for (auto& [p, e] : factorize(Int(d))) primes.push_back(p);
    TorsionOrderSet out;
    out.d = d;
    out.bound_B = B;
    // DFS over exponent vectors; phi is multiplicative and grows with each
    // extra prime power, so pruning on phi(k) <= B is exact
    std::function<void(std::size_t, Int, Int)> dfs = [&](std::size_t idx, Int k, Int phi) {
        if (idx == primes.size()) {
            out.orders.insert(k);
            return;
        }
        dfs(idx + 1, k, phi);  // exponent 0
        const Int& p = primes[idx];
        Int kk = k * p;
        Int ph = phi * (p - 1);
        while (ph <= B) {
            dfs(idx + 1, kk, ph);
            kk *= p;
            ph *= p;
        }
    };
    dfs(0, Int(1), Int(1));
    return out;
}

// Minimum m >= 0 with k | d^m; requires radical(k) | radical(d).
inline long power_absorption_index(const Int& k, long d) {
    if (k == 1) return 0;
    long m = 0;
    for (auto& [p, e] : factorize(k)) {
        unsigned vd = valuation(Int(d), p);
        if (vd == 0)
            throw Error(ErrorKind::Input, "BadOrder", "k has a prime outside the support of d");
        long need = (static_cast<long>(e) + vd - 1) / vd;
        m = std::max(m, need);
    }
    return m;
}

// s_1 = max over the finite torsion set of ord(lambda), where ord is the
// least m with lambda^(d^m) = 1.
inline long s1_bound(long d, const Int& B) {
    TorsionOrderSet M = bounded_degree_torsion_orders(d, B);
    long s1 = 0;
    for (const Int& k : M.orders) s1 = std::max(s1, power_absorption_index(k, d));
    return s1;
}

// Level s of the preimage tower of W under the coordinatewise d-power map
// consists of translates by epsilon * lambda with lambda^(d^s) = 1; since
// ord(epsilon) | d - 1 is coprime to d, the order of the product is
// exactly ord(epsilon) * ord(lambda). Purely order-theoretic.
inline std::vector<std::set<Int>> translate_preimage_orders(const TorusTranslate& W, long d,
                                                            long levels) {
    validate_translate_for(W, d);
    if (levels < 0) throw Error(ErrorKind::Input, "BadRange", "levels must be >= 0");
    Factorization fd = factorize(Int(d));
    std::vector<std::set<Int>> out;
    for (long s = 0; s <= levels; ++s) {
        // divisors of d^s
        Factorization fs;
        for (auto& [p, e] : fd) fs[p] = e * static_cast<unsigned>(s);
        std::set<Int> level;
        for (const Int& k : divisors(fs)) level.insert(W.epsilon_order * k);
        out.push_back(std::move(level));
    }
    return out;
}

// The level past which no new bounded-degree torsion translates appear;
// equals s1_bound(d, B). For epsilon = 1 the claim is cross-checked
// against the filtered level sets of translate_preimage_orders.
inline long torus_stabilization_level(const TorusTranslate& W, long d, const Int& B) {
    validate_translate_for(W, d);
    long s1 = s1_bound(d, B);
    if (W.epsilon_order == 1) {
        auto levels = translate_preimage_orders(W, d, s1 + 2);
        auto filtered = [&](long s) {
            std::set<Int> f;
            for (const Int& k : levels[s])
                if (euler_phi(k) <= B) f.insert(k);
            return f;
        };
        std::set<Int> at_s1 = filtered(s1);
        if (filtered(s1 + 1) != at_s1 || filtered(s1 + 2) != at_s1)
            throw Error(ErrorKind::Internal, "TorusCrossCheck",
                        "filtered levels keep growing past s1");
        if (s1 >= 1 && filtered(s1 - 1) == at_s1)
            throw Error(ErrorKind::Internal, "TorusCrossCheck",
                        "filtered levels stabilized before s1");
    }
    return s1;
}

// B from the extension-degree data (D, n) over Q: (D * 2^n)^n.
inline Int extension_degree_bound(long D, int n) {
    if (D < 2 || n < 1)
        throw Error(ErrorKind::Input, "BadArgument", "need D >= 2 and n >= 1");
    return int_pow(Int(D) * int_pow(Int(2), n), n);
}

}  // namespace pdyn
