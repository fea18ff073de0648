#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "pdyn/numeric.hpp"

namespace pdyn {

// A point (a : b) of P^1(Q) in canonical coordinates: a, b coprime
// integers, b >= 0, and (1 : 0) is the point at infinity.
class ProjPoint {
public:
    ProjPoint() : a_(0), b_(1) {}
    ProjPoint(const Int& a, const Int& b) : a_(a), b_(b) { normalize(); }
    static ProjPoint infinity() { return ProjPoint(Int(1), Int(0)); }
    static ProjPoint from_affine(const Rat& x) { return ProjPoint(num(x), den(x)); }

    const Int& x() const { return a_; }
    const Int& y() const { return b_; }
    bool is_infinity() const { return b_ == 0; }
    Rat affine() const {
        if (is_infinity()) throw Error(ErrorKind::Input, "InfinityPoint", "no affine value at infinity");
        return Rat(a_, b_);
    }

    Int height() const {
        Int n = int_abs(a_);
        return n > b_ ? n : b_;
    }

    bool operator==(const ProjPoint& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    // deterministic order: by height, then coordinates
    bool operator<(const ProjPoint& o) const {
        Int h1 = height(), h2 = o.height();
        if (h1 != h2) return h1 < h2;
        if (a_ != o.a_) return a_ < o.a_;
        return b_ < o.b_;
    }

    std::string str() const {
        if (is_infinity()) return "inf";
        if (b_ == 1) return a_.str();
        return a_.str() + "/" + b_.str();
    }

private:
    void normalize() {
        if (a_ == 0 && b_ == 0)
            throw Error(ErrorKind::Input, "BadPoint", "(0:0) is not a projective point");
        Int g = int_gcd(int_abs(a_), int_abs(b_));
        a_ /= g;
        b_ /= g;
        if (b_ < 0) {
            a_ = -a_;
            b_ = -b_;
        }
        if (b_ == 0) a_ = 1;
    }

    Int a_, b_;
};

// All points of P^1(Q) with height <= H (including infinity), in canonical
// order.
inline std::vector<ProjPoint> projective_points_up_to_height(const Int& H) {
    std::vector<ProjPoint> pts;
    pts.push_back(ProjPoint::infinity());
    for (Int b = 1; b <= H; ++b)
        for (Int a = -H; a <= H; ++a)
            if (int_gcd(int_abs(a), b) == 1) pts.emplace_back(a, b);
    std::sort(pts.begin(), pts.end());
    return pts;
}

// An element of PGL_2(Q) as an invertible 2x2 matrix acting by
// (x : y) -> (a x + b y : c x + d y).
class Mobius {
public:
    Mobius(const Rat& a, const Rat& b, const Rat& c, const Rat& d) : a_(a), b_(b), c_(c), d_(d) {
        if (det() == 0) throw Error(ErrorKind::Input, "SingularMobius", "determinant is zero");
    }
    static Mobius identity() { return Mobius(1, 0, 0, 1); }
    // x -> s*x + t
    static Mobius affine_map(const Rat& s, const Rat& t) { return Mobius(s, t, 0, 1); }
    // the map sending p -> 0 and q -> infinity (p != q)
    static Mobius sending_to_zero_infinity(const ProjPoint& p, const ProjPoint& q) {
        if (p == q) throw Error(ErrorKind::Input, "DegenerateMobius", "p == q");
        return Mobius(Rat(p.y()), Rat(-p.x()), Rat(q.y()), Rat(-q.x()));
    }

    Rat det() const { return a_ * d_ - b_ * c_; }
    Mobius inverse() const { return Mobius(d_, -b_, -c_, a_); }
    friend Mobius operator*(const Mobius& m, const Mobius& n) {
        return Mobius(m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                      m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_);
    }

    ProjPoint apply(const ProjPoint& p) const {
        Rat u = a_ * Rat(p.x()) + b_ * Rat(p.y());
        Rat v = c_ * Rat(p.x()) + d_ * Rat(p.y());
        Int l = int_lcm(den(u), den(v));
        return ProjPoint(num(u) * (l / den(u)), num(v) * (l / den(v)));
    }

    Rat a() const { return a_; }
    Rat b() const { return b_; }
    Rat c() const { return c_; }
    Rat d() const { return d_; }

    // equality in PGL_2: proportional matrices
    bool operator==(const Mobius& o) const {
        const Rat u[4] = {a_, b_, c_, d_};
        const Rat v[4] = {o.a_, o.b_, o.c_, o.d_};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (u[i] * v[j] != u[j] * v[i]) return false;
        return true;
    }

private:
    Rat a_, b_, c_, d_;
};

}  // namespace pdyn
