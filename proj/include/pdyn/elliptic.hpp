#pragma once

#include <vector>

#include "pdyn/projective.hpp"
#include "pdyn/ratmap.hpp"
#include "pdyn/unipoly.hpp"

namespace pdyn {

// Short Weierstrass curve y^2 = x^3 + a x + b over Q, nonsingular.
class EllipticCurveQ {
public:
    EllipticCurveQ(const Rat& a, const Rat& b) : a_(a), b_(b) {
        if (discriminant() == 0)
            throw SingularCurve("y^2 = x^3 + " + rat_to_string(a) + " x + " + rat_to_string(b));
    }

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    Rat discriminant() const {
        return Rat(-16) * (Rat(4) * a_ * a_ * a_ + Rat(27) * b_ * b_);
    }
    // x^3 + a x + b
    UniPoly rhs_cubic() const { return UniPoly({b_, a_, Rat(0), Rat(1)}); }

    bool operator==(const EllipticCurveQ& o) const { return a_ == o.a_ && b_ == o.b_; }

private:
    Rat a_, b_;
};

// Affine point or the origin O at infinity.
struct ECPoint {
    bool infinity = true;
    Rat x, y;

    static ECPoint origin() { return {}; }
    static ECPoint affine(const Rat& x, const Rat& y) { return {false, x, y}; }

    bool operator==(const ECPoint& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
};

inline bool on_curve(const EllipticCurveQ& E, const ECPoint& p) {
    if (p.infinity) return true;
    return p.y * p.y == p.x * p.x * p.x + E.a() * p.x + E.b();
}

inline ECPoint ec_negate(const ECPoint& p) {
    if (p.infinity) return p;
    return ECPoint::affine(p.x, -p.y);
}

// Chord-tangent addition.
inline ECPoint ec_add(const EllipticCurveQ& E, const ECPoint& p, const ECPoint& q) {
    if (p.infinity) return q;
    if (q.infinity) return p;
    if (p.x == q.x) {
        if (p.y != q.y || p.y == 0) return ECPoint::origin();
        // doubling
        Rat lam = (Rat(3) * p.x * p.x + E.a()) / (Rat(2) * p.y);
        Rat x3 = lam * lam - Rat(2) * p.x;
        return ECPoint::affine(x3, lam * (p.x - x3) - p.y);
    }
    Rat lam = (q.y - p.y) / (q.x - p.x);
    Rat x3 = lam * lam - p.x - q.x;
    return ECPoint::affine(x3, lam * (p.x - x3) - p.y);
}

inline ECPoint ec_multiply(const EllipticCurveQ& E, const ECPoint& p, long m) {
    if (m == 0) return ECPoint::origin();
    ECPoint base = m < 0 ? ec_negate(p) : p;
    unsigned long k = m < 0 ? static_cast<unsigned long>(-m) : static_cast<unsigned long>(m);
    ECPoint acc = ECPoint::origin();
    while (k) {
        if (k & 1) acc = ec_add(E, acc, base);
        base = ec_add(E, base, base);
        k >>= 1;
    }
    return acc;
}

inline ProjPoint ec_x_coordinate(const ECPoint& p) {
    if (p.infinity) return ProjPoint::infinity();
    return ProjPoint::from_affine(p.x);
}

// Division polynomials with the y-parity split: psi_m = P_m(x) for odd m
// and psi_m = y * P_m(x) for even m, y^2 eagerly replaced by the curve
// cubic so everything lives in Q[x].
class DivisionPolys {
public:
    explicit DivisionPolys(const EllipticCurveQ& E) : E_(E), Y_(E.rhs_cubic()) {
        const Rat &a = E.a(), &b = E.b();
        tab_.resize(5);
        tab_[0] = UniPoly();
        tab_[1] = UniPoly::constant(Rat(1));
        tab_[2] = UniPoly::constant(Rat(2));
        tab_[3] = UniPoly({-(a * a), Rat(12) * b, Rat(6) * a, Rat(0), Rat(3)});
        tab_[4] = Rat(4) * UniPoly({-(Rat(8) * b * b + a * a * a), Rat(-4) * a * b,
                                    Rat(-5) * a * a, Rat(20) * b, Rat(5) * a, Rat(0), Rat(1)});
    }

    // P_m as above; m >= 0.
    const UniPoly& operator()(unsigned m) {
        while (tab_.size() <= m) {
            unsigned n = tab_.size();
            unsigned k = n / 2;
            UniPoly next;
            if (n % 2 == 1) {  // n = 2k+1
                UniPoly t1 = at(k + 2) * at(k).pow(3);
                UniPoly t2 = at(k - 1) * at(k + 1).pow(3);
                UniPoly y2 = Y_ * Y_;
                next = (k % 2 == 0) ? y2 * t1 - t2 : t1 - y2 * t2;
            } else {  // n = 2k
                UniPoly inner = at(k + 2) * at(k - 1).pow(2) - at(k - 2) * at(k + 1).pow(2);
                next = Rat(1, 2) * (at(k) * inner);
            }
            tab_.push_back(std::move(next));
        }
        return tab_[m];
    }

    const UniPoly& curve_cubic() const { return Y_; }

private:
    const UniPoly& at(unsigned m) { return (*this)(m); }

    EllipticCurveQ E_;
    UniPoly Y_;
    std::vector<UniPoly> tab_;
};

// The degree-m^2 map with f(x(P)) = x(mP), via phi_m = x psi_m^2 -
// psi_(m+1) psi_(m-1) over psi_m^2.
struct LattesMap {
    EllipticCurveQ curve;
    long multiplier;
    RatMap1 map;
};

inline LattesMap lattes_from_curve(const EllipticCurveQ& E, long m) {
    if (m == 0 || m == 1 || m == -1)
        throw Error(ErrorKind::Input, "BadMultiplier", "|m| must be >= 2");
    unsigned um = static_cast<unsigned>(m < 0 ? -m : m);  // x(mP) = x(-mP)
    check_monomial_budget(static_cast<long>(um) * um + 1, "lattes_from_curve");
    DivisionPolys psi(E);
    psi(um + 1);  // populate the table up front; later refs stay valid
    const UniPoly x = UniPoly::x();
    const UniPoly& Y = psi.curve_cubic();
    UniPoly numer, denom;
    if (um % 2 == 0) {
        // psi_m^2 = Y P_m^2; psi_(m+1) psi_(m-1) = P_(m+1) P_(m-1)
        denom = Y * psi(um).pow(2);
        numer = x * denom - psi(um + 1) * psi(um - 1);
    } else {
        denom = psi(um).pow(2);
        numer = x * denom - Y * (psi(um + 1) * psi(um - 1));
    }
    RatMap1 f = RatMap1::from_affine(numer, denom);
    if (f.degree() != static_cast<std::size_t>(um) * um)
        throw Error(ErrorKind::Internal, "LattesDegree",
                    "multiplication-by-m map has wrong degree after reduction");
    return {E, m, f};
}

}  // namespace pdyn
