#pragma once

#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "pdyn/binform.hpp"
#include "pdyn/budget.hpp"
#include "pdyn/projective.hpp"
#include "pdyn/rootfind.hpp"

namespace pdyn {

// A self-map of P^1 of degree d >= 1, stored as a coprime pair of integer
// binary forms (P : Q) of equal degree with content 1 and canonical sign.
class RatMap1 {
public:
    // Validating constructor: rejects non-coprime pairs.
    static RatMap1 make(const BinForm& P, const BinForm& Q) {
        check_shape(P, Q);
        BinForm g = gcd(P, Q);
        if (g.degree() >= 1)
            throw InvariantViolation("coprime forms: gcd(P, Q) has degree " +
                                     std::to_string(g.degree()));
        return RatMap1(P, Q);
    }

    // Reducing constructor: divides out the common factor first. Form
    // division happens on dehomogenizations; the common Y-power of g is
    // restored by homogenizing the quotients to degree deg F - deg g.
    static RatMap1 make_reduced(const BinForm& P, const BinForm& Q) {
        check_shape(P, Q);
        BinForm g = gcd(P, Q);
        if (g.degree() == 0) return RatMap1(P, Q);
        UniPoly gp = g.dehomogenize();
        BinForm P2 = BinForm::homogenize(UniPoly::exact_div(P.dehomogenize(), gp),
                                         P.degree() - g.degree());
        BinForm Q2 = BinForm::homogenize(UniPoly::exact_div(Q.dehomogenize(), gp),
                                         Q.degree() - g.degree());
        return RatMap1(P2, Q2);
    }

    static RatMap1 identity() {
        return RatMap1(BinForm({Rat(0), Rat(1)}), BinForm({Rat(1), Rat(0)}));
    }

    static RatMap1 from_mobius(const Mobius& m) {
        return RatMap1(BinForm({m.b(), m.a()}), BinForm({m.d(), m.c()}));
    }

    // Affine rational function p(x)/q(x), homogenized to max degree.
    static RatMap1 from_affine(const UniPoly& p, const UniPoly& q) {
        if (p.is_zero() && q.is_zero()) throw InvariantViolation("zero map");
        std::size_t d = static_cast<std::size_t>(std::max(p.degree(), q.degree()));
        if (d == 0) throw InvariantViolation("constant maps are not degree >= 1 self-maps");
        return make_reduced(BinForm::homogenize(p, d), BinForm::homogenize(q, d));
    }

    const BinForm& numerator_form() const { return P_; }
    const BinForm& denominator_form() const { return Q_; }
    std::size_t degree() const { return P_.degree(); }

    bool operator==(const RatMap1& o) const { return P_ == o.P_ && Q_ == o.Q_; }
    bool operator!=(const RatMap1& o) const { return !(*this == o); }

    ProjPoint evaluate(const ProjPoint& p) const {
        Int u = P_.eval_int(p.x(), p.y());
        Int v = Q_.eval_int(p.x(), p.y());
        return ProjPoint(u, v);  // coprimality of (P, Q) rules out (0, 0)
    }

    bool is_polynomial() const {
        // denominator a constant multiple of Y^d
        for (std::size_t i = 1; i < Q_.coeffs().size(); ++i)
            if (Q_.coeff(i) != 0) return false;
        return true;
    }

    // The affine polynomial when is_polynomial(); P(x,1)/Q(0,1).
    UniPoly affine_polynomial() const {
        if (!is_polynomial())
            throw Error(ErrorKind::Input, "NotPolynomialMap", "map has a pole off infinity");
        Rat c = Q_.coeff(0);
        return (Rat(1) / c) * P_.dehomogenize();
    }

private:
    RatMap1(BinForm P, BinForm Q) : P_(std::move(P)), Q_(std::move(Q)) {
        if (P_.degree() < 1) throw InvariantViolation("map reduces to a constant");
        normalize();
    }

    static void check_shape(const BinForm& P, const BinForm& Q) {
        if (P.degree() != Q.degree())
            throw InvariantViolation("P and Q must have equal degree");
        if (P.degree() < 1) throw InvariantViolation("map degree must be >= 1");
        if (P.is_zero() && Q.is_zero()) throw InvariantViolation("zero map");
    }

    void normalize() {
        Int l = 1;
        for (auto& c : P_.coeffs()) l = int_lcm(l, den(c));
        for (auto& c : Q_.coeffs()) l = int_lcm(l, den(c));
        Int g = 0;
        for (auto& c : P_.coeffs()) g = int_gcd(g, num(c) * (l / den(c)));
        for (auto& c : Q_.coeffs()) g = int_gcd(g, num(c) * (l / den(c)));
        Rat scale(l, g);
        // sign: first nonzero coefficient of P (scanning from X^d), else of Q
        Rat lead(0);
        for (std::size_t i = P_.coeffs().size(); i-- > 0;)
            if (P_.coeff(i) != 0) {
                lead = P_.coeff(i);
                break;
            }
        if (lead == 0)
            for (std::size_t i = Q_.coeffs().size(); i-- > 0;)
                if (Q_.coeff(i) != 0) {
                    lead = Q_.coeff(i);
                    break;
                }
        if (lead < 0) scale = -scale;
        P_ = scale * P_;
        Q_ = scale * Q_;
    }

    BinForm P_, Q_;

    friend RatMap1 compose(const RatMap1&, const RatMap1&);
};

// f o g. Coprime pairs stay coprime under composition (a common root of the
// composed forms would project to a common root of (P_f, Q_f)), so only
// content normalization is needed and deg(f o g) = deg f * deg g.
inline RatMap1 compose(const RatMap1& f, const RatMap1& g) {
    long d = static_cast<long>(f.degree()) * static_cast<long>(g.degree());
    check_monomial_budget(d + 1, "compose");
    BinForm P = f.numerator_form().compose(g.numerator_form(), g.denominator_form());
    BinForm Q = f.denominator_form().compose(g.numerator_form(), g.denominator_form());
    return RatMap1(std::move(P), std::move(Q));
}

// f^m by repeated squaring; f^0 is the identity.
inline RatMap1 iterate(const RatMap1& f, unsigned long m) {
    // overflow-safe degree precheck
    double logd = static_cast<double>(m) * std::log10(static_cast<double>(f.degree()));
    if (f.degree() >= 2 && logd > 15)
        throw DegreeOverflow("iterate: degree " + std::to_string(f.degree()) + "^" +
                             std::to_string(m) + " is astronomically over budget");
    long dm = 1;
    for (unsigned long i = 0; i < m; ++i) {
        dm *= static_cast<long>(f.degree());
        check_monomial_budget(dm + 1, "iterate");
    }
    RatMap1 r = RatMap1::identity();
    RatMap1 base = f;
    while (m) {
        if (m & 1) r = compose(r, base);
        m >>= 1;
        if (m) base = compose(base, base);
    }
    return r;
}

// All Q-rational preimages of t under f, i.e. solutions of f(x) = t.
inline std::set<ProjPoint> point_preimages(const RatMap1& f, const ProjPoint& t) {
    BinForm form = BinForm::constant(Rat(t.y())) * f.numerator_form() -
                   BinForm::constant(Rat(t.x())) * f.denominator_form();
    std::set<ProjPoint> out;
    if (form.is_zero())
        throw Error(ErrorKind::Internal, "DegenerateFiber", "fiber form vanished identically");
    FormRoots roots = form_rational_roots(form);
    for (auto& [r, mult] : roots.affine) out.insert(ProjPoint::from_affine(r));
    if (roots.infinity_multiplicity > 0) out.insert(ProjPoint::infinity());
    return out;
}

// sigma o f o sigma^{-1}; degree is preserved.
inline RatMap1 conjugate(const RatMap1& f, const Mobius& sigma) {
    RatMap1 s = RatMap1::from_mobius(sigma);
    RatMap1 si = RatMap1::from_mobius(sigma.inverse());
    return compose(s, compose(f, si));
}

}  // namespace pdyn
