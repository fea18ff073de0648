#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "pdyn/numeric.hpp"

namespace pdyn {

// Dense univariate polynomial over Q, coefficients low-to-high. The zero
// polynomial is the empty vector; otherwise the leading coefficient is
// nonzero.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const Rat& a) { return UniPoly(std::vector<Rat>{a}); }
    static UniPoly x() { return UniPoly({Rat(0), Rat(1)}); }
    static UniPoly monomial(const Rat& a, std::size_t e) {
        std::vector<Rat> v(e + 1, Rat(0));
        v[e] = a;
        return UniPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly operator-() const {
        std::vector<Rat> v = c_;
        for (auto& a : v) a = -a;
        return UniPoly(std::move(v));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return UniPoly(std::move(v));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(v));
    }
    friend UniPoly operator*(const Rat& s, const UniPoly& a) {
        std::vector<Rat> v = a.c_;
        for (auto& x : v) x *= s;
        return UniPoly(std::move(v));
    }

    UniPoly pow(unsigned long e) const {
        UniPoly r = constant(Rat(1)), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    Rat eval(const Rat& x) const {
        Rat r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    UniPoly compose(const UniPoly& inner) const {
        UniPoly r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = r * inner + constant(*it);
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rat> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = Rat(Int(i)) * c_[i];
        return UniPoly(std::move(v));
    }

    // Quotient and remainder over Q: a = q*b + r with deg r < deg b.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw Error(ErrorKind::Input, "DivisionByZero", "polynomial division by zero");
        std::vector<Rat> r = a.c_;
        long db = b.degree();
        if (a.degree() < db) return {{}, a};
        std::vector<Rat> q(a.c_.size() - b.c_.size() + 1, Rat(0));
        Rat lb = b.leading();
        for (long i = static_cast<long>(r.size()) - 1; i >= db; --i) {
            if (r[i] == 0) continue;
            Rat f = r[i] / lb;
            q[i - db] = f;
            for (long j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
        }
        return {UniPoly(std::move(q)), UniPoly(std::move(r))};
    }

    // Exact division; throws if the remainder is nonzero.
    static UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero())
            throw Error(ErrorKind::Internal, "InexactDivision", "univariate division left a remainder");
        return q;
    }

    // Scales to integer coefficients with content 1 and positive leading
    // coefficient.
    UniPoly primitive() const {
        if (is_zero()) return {};
        Int l = 1;
        for (auto& a : c_) l = int_lcm(l, den(a));
        Int g = 0;
        for (auto& a : c_) g = int_gcd(g, num(a) * (l / den(a)));
        Rat scale = Rat(l, g);
        if (c_.back() < 0) scale = -scale;
        return scale * *this;
    }

    // Content-free integer coefficient view (numerators of primitive()).
    std::vector<Int> primitive_int() const {
        UniPoly p = primitive();
        std::vector<Int> v;
        v.reserve(p.c_.size());
        for (auto& a : p.c_) v.push_back(num(a));
        return v;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

namespace detail {

inline long ideg(const std::vector<Int>& v) { return static_cast<long>(v.size()) - 1; }

inline void itrim(std::vector<Int>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// Pseudo-remainder of integer polynomials: lc(b)^(da-db+1) * a mod b.
// The full multiplier power matters: the subresultant divisors assume it.
inline std::vector<Int> iprem(std::vector<Int> a, const std::vector<Int>& b) {
    long db = ideg(b);
    Int lb = b.back();
    long needed = std::max<long>(ideg(a) - db + 1, 0);
    long done = 0;
    while (!a.empty() && ideg(a) >= db) {
        Int la = a.back();
        long shift = ideg(a) - db;
        for (auto& x : a) x *= lb;
        for (long j = 0; j <= db; ++j) a[shift + j] -= la * b[j];
        itrim(a);
        ++done;
    }
    for (; done < needed; ++done)
        for (auto& x : a) x *= lb;
    return a;
}

inline std::vector<Int> iprimitive(std::vector<Int> v) {
    Int g = 0;
    for (auto& x : v) g = int_gcd(g, x);
    if (g == 0) return v;
    if (v.back() < 0) g = -g;
    for (auto& x : v) x /= g;
    return v;
}

}  // namespace detail

// GCD over Q via the subresultant pseudo-remainder sequence on integer
// forms; the result is integer-primitive with positive leading coefficient.
inline UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    std::vector<Int> A = a.primitive_int(), B = b.primitive_int();
    if (detail::ideg(A) < detail::ideg(B)) std::swap(A, B);
    Int g = 1, h = 1;
    while (true) {
        long delta = detail::ideg(A) - detail::ideg(B);
        std::vector<Int> R = detail::iprem(A, B);
        if (R.empty()) break;
        if (detail::ideg(R) == 0) {
            B = {Int(1)};
            break;
        }
        Int divisor = g * int_pow(h, static_cast<unsigned long>(delta));
        A = std::move(B);
        B = std::move(R);
        for (auto& x : B) x /= divisor;
        g = A.back();
        if (delta > 0)
            h = int_pow(g, static_cast<unsigned long>(delta)) /
                int_pow(h, static_cast<unsigned long>(delta - 1));
    }
    B = detail::iprimitive(std::move(B));
    std::vector<Rat> out(B.size());
    for (std::size_t i = 0; i < B.size(); ++i) out[i] = Rat(B[i]);
    return UniPoly(std::move(out));
}

inline UniPoly squarefree_part(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    if (p.degree() == 0) return UniPoly::constant(Rat(1));
    UniPoly g = gcd(p, p.derivative());
    return UniPoly::exact_div(p, g).primitive();
}

}  // namespace pdyn
