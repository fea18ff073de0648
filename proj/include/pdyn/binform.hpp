#pragma once

#include <utility>
#include <vector>

#include "pdyn/unipoly.hpp"

namespace pdyn {

// Homogeneous binary form of fixed degree d in (X : Y); coefficient i
// belongs to X^i Y^(d-i). Unlike UniPoly the length is part of the value:
// leading zeros encode divisibility by Y.
class BinForm {
public:
    BinForm() : c_(1, Rat(0)) {}
    explicit BinForm(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.assign(1, Rat(0));
    }
    static BinForm constant(const Rat& a) { return BinForm({a}); }
    // X^i Y^(d-i)
    static BinForm monomial(const Rat& a, std::size_t i, std::size_t d) {
        std::vector<Rat> v(d + 1, Rat(0));
        v.at(i) = a;
        return BinForm(std::move(v));
    }
    // Homogenization of p to degree d >= deg p.
    static BinForm homogenize(const UniPoly& p, std::size_t d) {
        if (static_cast<long>(d) < p.degree())
            throw Error(ErrorKind::Input, "DegreeTooSmall", "homogenization degree below deg p");
        std::vector<Rat> v(d + 1, Rat(0));
        for (std::size_t i = 0; i < p.coeffs().size(); ++i) v[i] = p.coeffs()[i];
        return BinForm(std::move(v));
    }

    std::size_t degree() const { return c_.size() - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

    bool is_zero() const {
        for (auto& a : c_)
            if (a != 0) return false;
        return true;
    }

    bool operator==(const BinForm& o) const { return c_ == o.c_; }
    bool operator!=(const BinForm& o) const { return !(*this == o); }

    // Multiplicity of the root (0:1), i.e. the power of X dividing the form.
    std::size_t x_valuation() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return i;
        return c_.size();  // zero form
    }
    // Multiplicity of the root at infinity (1:0) = the power of Y dividing.
    std::size_t y_valuation() const {
        for (std::size_t i = c_.size(); i-- > 0;)
            if (c_[i] != 0) return degree() - i;
        return c_.size();
    }

    UniPoly dehomogenize() const { return UniPoly(c_); }

    friend BinForm operator*(const BinForm& a, const BinForm& b) {
        std::vector<Rat> v(a.degree() + b.degree() + 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        }
        return BinForm(std::move(v));
    }
    friend BinForm operator*(const Rat& s, const BinForm& a) {
        std::vector<Rat> v = a.c_;
        for (auto& x : v) x *= s;
        return BinForm(std::move(v));
    }
    friend BinForm operator+(const BinForm& a, const BinForm& b) {
        if (a.degree() != b.degree())
            throw Error(ErrorKind::Input, "DegreeMismatch", "adding forms of different degree");
        std::vector<Rat> v(a.c_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.c_[i] + b.c_[i];
        return BinForm(std::move(v));
    }
    friend BinForm operator-(const BinForm& a, const BinForm& b) { return a + (Rat(-1) * b); }

    BinForm pow(unsigned long e) const {
        BinForm r = constant(Rat(1)), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // Substitutes (X, Y) <- (A, B); the result is homogeneous of degree
    // deg(this) * deg(A) when deg A == deg B.
    BinForm compose(const BinForm& A, const BinForm& B) const {
        if (A.degree() != B.degree())
            throw Error(ErrorKind::Input, "DegreeMismatch", "compose with unequal inner degrees");
        std::size_t d = degree();
        // Horner in X/B: result = sum c_i A^i B^(d-i)
        BinForm acc = constant(c_[d]);
        for (std::size_t i = d; i-- > 0;) {
            acc = acc * A;
            if (c_[i] != 0) acc = acc + BinForm::constant(c_[i]) * B.pow(d - i);
        }
        // acc now has degree d*degA but Horner with constant seed: fix up when d == 0
        return acc;
    }

    Rat eval(const Rat& x, const Rat& y) const {
        // straightforward homogeneous Horner: sum c_i x^i y^(d-i)
        Rat r(0);
        Rat xp(1);
        std::vector<Rat> ypow(c_.size());
        ypow[0] = Rat(1);
        for (std::size_t i = 1; i < c_.size(); ++i) ypow[i] = ypow[i - 1] * y;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] != 0) r += c_[i] * xp * ypow[degree() - i];
            xp *= x;
        }
        return r;
    }

    Int eval_int(const Int& x, const Int& y) const {
        // valid only for integer-coefficient forms
        Int r(0), xp(1);
        std::vector<Int> ypow(c_.size());
        ypow[0] = 1;
        for (std::size_t i = 1; i < c_.size(); ++i) ypow[i] = ypow[i - 1] * y;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] != 0) {
                if (den(c_[i]) != 1)
                    throw Error(ErrorKind::Internal, "NonIntegerForm", "eval_int on rational form");
                r += num(c_[i]) * xp * ypow[degree() - i];
            }
            xp *= x;
        }
        return r;
    }

    BinForm derivative_x() const {
        if (degree() == 0) return BinForm({Rat(0)});
        std::vector<Rat> v(degree(), Rat(0));
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = Rat(Int(i)) * c_[i];
        return BinForm(std::move(v));
    }
    BinForm derivative_y() const {
        if (degree() == 0) return BinForm({Rat(0)});
        std::vector<Rat> v(degree(), Rat(0));
        for (std::size_t i = 0; i + 1 < c_.size(); ++i) v[i] = Rat(Int(degree() - i)) * c_[i];
        return BinForm(std::move(v));
    }

private:
    std::vector<Rat> c_;
};

// GCD of two nonzero forms, primitive with positive leading coefficient;
// carries the common X- and Y-power explicitly.
inline BinForm gcd(const BinForm& a, const BinForm& b) {
    if (a.is_zero() || b.is_zero()) throw ZeroPolynomial("gcd of zero form");
    std::size_t vy = std::min(a.y_valuation(), b.y_valuation());
    // the dehomogenized gcd keeps the common x-power; only Y^vy is lost
    UniPoly g = gcd(a.dehomogenize(), b.dehomogenize());
    BinForm core = BinForm::homogenize(g, static_cast<std::size_t>(g.degree()));
    return core * BinForm::monomial(Rat(1), 0, vy);
}

}  // namespace pdyn
