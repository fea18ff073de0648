#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pdyn/chebyshev.hpp"
#include "pdyn/multipoly.hpp"
#include "pdyn/ratmap.hpp"
#include "pdyn/rootfind.hpp"

namespace pdyn {

// x^e as a map of P^1; negative e gives (Y^|e| : X^|e|).
inline RatMap1 power_map(long e) {
    if (e == 0) throw Error(ErrorKind::Input, "BadExponent", "power_map exponent must be nonzero");
    std::size_t d = static_cast<std::size_t>(e < 0 ? -e : e);
    if (e > 0)
        return RatMap1::make(BinForm::monomial(Rat(1), d, d), BinForm::monomial(Rat(1), 0, d));
    return RatMap1::make(BinForm::monomial(Rat(1), 0, d), BinForm::monomial(Rat(1), d, d));
}

// u o inner == outer o u as reduced rational maps.
inline bool verify_semiconjugacy(const RatMap1& u, const RatMap1& inner, const RatMap1& outer) {
    return compose(u, inner) == compose(outer, u);
}

// Partial conjugacy classifier for the exceptional normal forms x^(+-d)
// and +-T_d. Sound: a non-Unknown answer always comes with a conjugator
// that has been verified by exact composition. Unknown may simply mean the
// conjugation needs an extension field.
struct ExceptionalClass {
    enum class Kind { PowerLike, ChebyshevLike, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<Mobius> conjugator;  // sigma with sigma . f . sigma^-1 in normal form
    long exponent = 0;                 // PowerLike: +-d
    int sign = +1;                     // ChebyshevLike: + for T_d, - for -T_d
    unsigned degree = 0;               // ChebyshevLike: d
    std::string witness;               // Unknown: a short reason
};

namespace detail {

// Critical points with multiplicities, from the Jacobian form
// P_X Q_Y - P_Y Q_X of degree 2d-2.
inline BinForm wronskian_form(const RatMap1& f) {
    return f.numerator_form().derivative_x() * f.denominator_form().derivative_y() -
           f.numerator_form().derivative_y() * f.denominator_form().derivative_x();
}

inline std::optional<Rat> rational_power_scaling(const Rat& c, unsigned k) {
    // lambda with lambda^k = c
    if (k == 0) return std::nullopt;
    return exact_nth_root(c, k);
}

// Tries to read g as c * x^d or c * x^-d; returns (c, +-d).
inline std::optional<std::pair<Rat, long>> read_scaled_power(const RatMap1& g) {
    std::size_t d = g.degree();
    const BinForm &P = g.numerator_form(), &Q = g.denominator_form();
    auto is_monomial_at = [](const BinForm& F, std::size_t i) {
        for (std::size_t j = 0; j < F.coeffs().size(); ++j)
            if ((j == i) != (F.coeff(j) != 0)) return false;
        return true;
    };
    if (is_monomial_at(P, d) && is_monomial_at(Q, 0))
        return std::make_pair(P.coeff(d) / Q.coeff(0), static_cast<long>(d));
    if (is_monomial_at(P, 0) && is_monomial_at(Q, d))
        return std::make_pair(P.coeff(0) / Q.coeff(d), -static_cast<long>(d));
    return std::nullopt;
}

inline std::optional<ExceptionalClass> try_power_like(const RatMap1& f, const BinForm& wron) {
    const std::size_t d = f.degree();
    FormRoots roots = form_rational_roots(wron);
    std::vector<ProjPoint> ramified;
    unsigned found_mult = 0;
    for (auto& [r, m] : roots.affine) {
        found_mult += m;
        if (m == d - 1) ramified.push_back(ProjPoint::from_affine(r));
    }
    found_mult += roots.infinity_multiplicity;
    if (roots.infinity_multiplicity == d - 1) ramified.push_back(ProjPoint::infinity());
    // need exactly two totally ramified rational points and nothing else
    if (ramified.size() != 2 || found_mult != 2 * d - 2) return std::nullopt;
    ProjPoint p = ramified[0], q = ramified[1];
    ProjPoint fp = f.evaluate(p), fq = f.evaluate(q);
    bool fixed = (fp == p && fq == q);
    bool swapped = (fp == q && fq == p);
    if (!fixed && !swapped) return std::nullopt;

    ExceptionalClass res;
    for (int order = 0; order < 2; ++order) {
        Mobius sigma0 = order == 0 ? Mobius::sending_to_zero_infinity(p, q)
                                   : Mobius::sending_to_zero_infinity(q, p);
        RatMap1 g = conjugate(f, sigma0);
        auto scaled = read_scaled_power(g);
        if (!scaled) continue;
        auto [c, e] = *scaled;
        // scale c away over Q when possible: diag(lambda) conjugation
        // multiplies c by lambda^(1-d) for x^d and lambda^(1+d) for x^-d
        std::optional<Rat> lambda =
            e > 0 ? rational_power_scaling(c, static_cast<unsigned>(d - 1))
                  : rational_power_scaling(Rat(1) / c, static_cast<unsigned>(d + 1));
        if (!lambda) {
            res.witness = "normal form is " + rat_to_string(c) + " * x^" + std::to_string(e) +
                          " and the constant is not a suitable rational power";
            continue;
        }
        Mobius sigma = Mobius::affine_map(*lambda, Rat(0)) * sigma0;
        RatMap1 normal = conjugate(f, sigma);
        if (normal == power_map(e)) {
            res.kind = ExceptionalClass::Kind::PowerLike;
            res.conjugator = sigma;
            res.exponent = e;
            res.witness.clear();
            return res;
        }
    }
    if (!res.witness.empty()) {
        res.kind = ExceptionalClass::Kind::Unknown;
        return res;
    }
    return std::nullopt;
}

inline std::optional<ExceptionalClass> try_chebyshev_like(const RatMap1& f, const BinForm& wron) {
    const std::size_t d = f.degree();
    FormRoots roots = form_rational_roots(wron);
    std::vector<ProjPoint> candidates;
    for (auto& [r, m] : roots.affine)
        if (m == d - 1) candidates.push_back(ProjPoint::from_affine(r));
    if (roots.infinity_multiplicity == d - 1) candidates.push_back(ProjPoint::infinity());
    RatMap1 plus = chebyshev_map(static_cast<unsigned>(d));
    RatMap1 minus = negated_chebyshev_map(static_cast<unsigned>(d));
    for (const ProjPoint& r : candidates) {
        if (f.evaluate(r) != r) continue;  // must be a totally ramified fixed point
        // move r to infinity
        Mobius sigma0 = Mobius::identity();
        if (!r.is_infinity()) {
            ProjPoint other = r == ProjPoint(Int(0), Int(1)) ? ProjPoint(Int(1), Int(1))
                                                             : ProjPoint(Int(0), Int(1));
            sigma0 = Mobius::sending_to_zero_infinity(other, r);
        }
        RatMap1 g = conjugate(f, sigma0);
        if (!g.is_polynomial()) continue;
        UniPoly G = g.affine_polynomial();
        // finite critical values: rational roots of Res_x(G(x) - t, G'(x))
        MultiPoly Gx = from_unipoly(G, 2, 0);  // vars: x = 0, t = 1
        MultiPoly shifted = Gx - MultiPoly::variable(2, 1);
        MultiPoly dGx = from_unipoly(G.derivative(), 2, 0);
        MultiPoly res_t = resultant(shifted, dGx, 0);
        UniPoly rt = to_unipoly(res_t, 0);
        if (rt.is_zero()) continue;
        auto cvs = rational_roots_with_multiplicity(rt);
        // all critical values must be rational: deflating them must leave a constant
        long mult_sum = 0;
        for (auto& [v, m] : cvs) mult_sum += m;
        if (mult_sum != rt.degree()) continue;
        // forward closure of the critical values, capped at two elements
        std::set<Rat> T;
        for (auto& [v, m] : cvs) T.insert(v);
        bool grew = true;
        bool toobig = T.size() > 2;
        while (grew && !toobig) {
            grew = false;
            std::set<Rat> next = T;
            for (auto& v : T) {
                Rat img = G.eval(v);
                if (!next.count(img)) {
                    next.insert(img);
                    grew = true;
                }
            }
            T = std::move(next);
            toobig = T.size() > 2;
        }
        if (toobig || T.size() != 2) continue;
        Rat alpha = *T.begin(), beta = *std::next(T.begin());
        // affine maps sending the postcritical pair onto {1, -1}
        for (int orient = 0; orient < 2; ++orient) {
            Rat lo = orient == 0 ? Rat(-1) : Rat(1);
            Rat hi = -lo;
            // lambda(alpha) = lo, lambda(beta) = hi
            Rat s = (hi - lo) / (beta - alpha);
            Rat t = lo - s * alpha;
            Mobius lambda = Mobius::affine_map(s, t);
            Mobius sigma = lambda * sigma0;
            RatMap1 h = conjugate(f, sigma);
            if (h == plus) {
                ExceptionalClass out;
                out.kind = ExceptionalClass::Kind::ChebyshevLike;
                out.conjugator = sigma;
                out.sign = +1;
                out.degree = static_cast<unsigned>(d);
                return out;
            }
            if (h == minus) {
                ExceptionalClass out;
                out.kind = ExceptionalClass::Kind::ChebyshevLike;
                out.conjugator = sigma;
                out.sign = -1;
                out.degree = static_cast<unsigned>(d);
                return out;
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline ExceptionalClass classify_exceptional(const RatMap1& f) {
    if (f.degree() < 2)
        throw PreconditionFailed("classify_exceptional needs deg f >= 2");
    BinForm wron = detail::wronskian_form(f);
    if (wron.is_zero())
        throw Error(ErrorKind::Internal, "DegenerateWronskian", "zero Jacobian for a reduced map");
    if (auto p = detail::try_power_like(f, wron); p && p->kind == ExceptionalClass::Kind::PowerLike)
        return *p;
    if (auto c = detail::try_chebyshev_like(f, wron)) return *c;
    // re-run power attempt to surface its witness if it produced one
    if (auto p = detail::try_power_like(f, wron)) return *p;
    ExceptionalClass out;
    out.witness = "critical-point structure does not match x^(+-d) or +-T_d over Q";
    return out;
}

}  // namespace pdyn
