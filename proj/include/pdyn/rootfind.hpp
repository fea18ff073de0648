#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "pdyn/binform.hpp"
#include "pdyn/intfactor.hpp"
#include "pdyn/unipoly.hpp"

namespace pdyn {

namespace detail {

// Integer lower Newton polygon of { (i, v_p(c_i)) : c_i != 0 }; returns the
// set of integer slopes. A rational root t has v_p(t) = -s for some slope s.
inline std::set<long> newton_slopes(const std::vector<Int>& c, const Int& p) {
    std::vector<std::pair<long, long>> pts;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        pts.emplace_back(static_cast<long>(i), static_cast<long>(valuation(c[i], p)));
    }
    // lower convex hull, points already sorted by x
    std::vector<std::pair<long, long>> hull;
    for (auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep if pt is strictly above segment a-b extended
            long lhs = (b.second - a.second) * (pt.first - a.first);
            long rhs = (pt.second - a.second) * (b.first - a.first);
            if (lhs > rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    std::set<long> slopes;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        long dx = hull[i].first - hull[i - 1].first;
        long dy = hull[i].second - hull[i - 1].second;
        if (dy % dx == 0) slopes.insert(dy / dx);
    }
    return slopes;
}

// f(p/q) * q^deg as an exact integer, coefficients low-to-high.
inline Int eval_scaled(const std::vector<Int>& c, const Int& p, const Int& q) {
    Int r = 0, pp = 1;
    std::vector<Int> qpow(c.size());
    qpow[0] = 1;
    for (std::size_t i = 1; i < c.size(); ++i) qpow[i] = qpow[i - 1] * q;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) r += c[i] * pp * qpow[c.size() - 1 - i];
        pp *= p;
    }
    return r;
}

inline void verify_and_insert(const std::vector<Int>& c, const Rat& cand, std::set<Rat>& out) {
    if (eval_scaled(c, num(cand), den(cand)) == 0) out.insert(cand);
}

}  // namespace detail

// All rational roots of a nonzero polynomial, as a set. Fast paths handle
// the degrees and shapes that dominate preimage towers (linear, quadratic,
// two-term); the general path prunes rational-root candidates through
// p-adic Newton polygons so huge cofactor divisors never get enumerated.
inline std::set<Rat> rational_roots(const UniPoly& poly) {
    if (poly.is_zero()) throw ZeroPolynomial("rational_roots of zero polynomial");
    std::set<Rat> roots;
    std::vector<Int> c = poly.primitive_int();
    // strip the root at 0
    std::size_t vx = 0;
    while (vx < c.size() && c[vx] == 0) ++vx;
    if (vx > 0) {
        roots.insert(Rat(0));
        c.erase(c.begin(), c.begin() + vx);
    }
    if (c.size() <= 1) return roots;

    if (c.size() == 2) {  // linear
        roots.insert(make_rat(-c[0], c[1]));
        return roots;
    }
    if (c.size() == 3) {  // quadratic formula with exact discriminant test
        Int disc = c[1] * c[1] - 4 * c[2] * c[0];
        if (auto s = exact_sqrt(disc)) {
            roots.insert(make_rat(-c[1] + *s, 2 * c[2]));
            roots.insert(make_rat(-c[1] - *s, 2 * c[2]));
        }
        return roots;
    }

    const unsigned d = static_cast<unsigned>(c.size() - 1);
    bool two_term = true;
    for (std::size_t i = 1; i + 1 < c.size(); ++i)
        if (c[i] != 0) {
            two_term = false;
            break;
        }
    if (two_term) {  // c_d x^d + c_0 = 0  =>  x^d = -c_0/c_d
        Rat target = make_rat(-c[0], c.back());
        if (auto r = exact_nth_root(target, d)) {
            roots.insert(*r);
            if (d % 2 == 0) roots.insert(-*r);
        }
        return roots;
    }

    // General path: candidates are +-prod p^(-slope) over primes dividing
    // c_0 or c_d, one integer Newton slope per prime.
    std::vector<Int> sq;
    {
        UniPoly p2 = squarefree_part(UniPoly([&] {
            std::vector<Rat> v(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) v[i] = Rat(c[i]);
            return v;
        }()));
        sq = p2.primitive_int();
    }
    Factorization f0 = factorize(sq.front());
    Factorization fd = factorize(sq.back());
    std::map<Int, std::set<long>> choices;  // prime -> candidate valuations of t
    for (auto& [p, e] : f0) choices[p];
    for (auto& [p, e] : fd) choices[p];
    for (auto& [p, slopes] : choices) {
        for (long s : detail::newton_slopes(sq, p)) slopes.insert(-s);
        if (slopes.empty()) return roots;  // no admissible valuation: no roots
    }
    std::vector<Rat> cands{Rat(1)};
    for (auto& [p, vals] : choices) {
        std::vector<Rat> next;
        for (auto& base : cands)
            for (long v : vals) {
                Rat pv = v >= 0 ? Rat(int_pow(p, static_cast<unsigned long>(v)))
                                : Rat(1, int_pow(p, static_cast<unsigned long>(-v)));
                next.push_back(base * pv);
            }
        cands = std::move(next);
    }
    for (auto& t : cands) {
        detail::verify_and_insert(sq, t, roots);
        detail::verify_and_insert(sq, -t, roots);
    }
    return roots;
}

// Rational roots with multiplicities (computed by deflation on the input).
inline std::map<Rat, unsigned> rational_roots_with_multiplicity(const UniPoly& poly) {
    std::map<Rat, unsigned> out;
    UniPoly p = poly;
    for (const Rat& r : rational_roots(poly)) {
        UniPoly lin({-r, Rat(1)});
        unsigned m = 0;
        while (true) {
            auto [q, rem] = UniPoly::divmod(p, lin);
            if (!rem.is_zero()) break;
            p = q;
            ++m;
        }
        out[r] = m;
    }
    return out;
}

// Projective roots of a nonzero binary form: affine rational roots with
// multiplicity plus the multiplicity of the root at infinity (1:0).
struct FormRoots {
    std::map<Rat, unsigned> affine;
    unsigned infinity_multiplicity = 0;
};

inline FormRoots form_rational_roots(const BinForm& f) {
    if (f.is_zero()) throw ZeroPolynomial("roots of zero form");
    FormRoots out;
    out.infinity_multiplicity = static_cast<unsigned>(f.y_valuation());
    UniPoly dehom = f.dehomogenize();
    if (dehom.degree() >= 1) out.affine = rational_roots_with_multiplicity(dehom);
    else if (dehom.is_zero())
        throw Error(ErrorKind::Internal, "BadForm", "form with zero dehomogenization");
    return out;
}

}  // namespace pdyn
