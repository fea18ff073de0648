#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "pdyn/numeric.hpp"
#include "pdyn/unipoly.hpp"

namespace pdyn {

using ExpVec = std::vector<int>;

// Graded lexicographic order on exponent vectors of equal length.
struct GrlexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        long ta = std::accumulate(a.begin(), a.end(), 0L);
        long tb = std::accumulate(b.begin(), b.end(), 0L);
        if (ta != tb) return ta < tb;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// Sparse multivariate polynomial over Q with a fixed variable arity. No
// zero coefficients are stored; every exponent vector has length = arity.
class MultiPoly {
public:
    using TermMap = std::map<ExpVec, Rat, GrlexLess>;

    explicit MultiPoly(int arity = 1) : arity_(arity) {
        if (arity < 1) throw Error(ErrorKind::Input, "BadArity", "arity must be >= 1");
    }
    static MultiPoly constant(int arity, const Rat& a) {
        MultiPoly p(arity);
        if (a != 0) p.terms_[ExpVec(arity, 0)] = a;
        return p;
    }
    static MultiPoly variable(int arity, int v) {
        MultiPoly p(arity);
        ExpVec e(arity, 0);
        e.at(v) = 1;
        p.terms_[e] = Rat(1);
        return p;
    }
    static MultiPoly monomial(int arity, ExpVec e, const Rat& a) {
        MultiPoly p(arity);
        if (static_cast<int>(e.size()) != arity)
            throw Error(ErrorKind::Input, "BadExponent", "exponent vector length != arity");
        for (int x : e)
            if (x < 0) throw Error(ErrorKind::Input, "BadExponent", "negative exponent");
        if (a != 0) p.terms_[std::move(e)] = a;
        return p;
    }

    int arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && total_degree() == 0;
    }
    std::size_t term_count() const { return terms_.size(); }

    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        auto it = terms_.find(ExpVec(arity_, 0));
        return it == terms_.end() ? Rat(0) : it->second;
    }

    long degree(int v) const {
        long d = -1;
        for (auto& [e, c] : terms_) d = std::max<long>(d, e[v]);
        return terms_.empty() ? -1 : d;
    }
    long total_degree() const {
        long d = -1;
        for (auto& [e, c] : terms_)
            d = std::max<long>(d, std::accumulate(e.begin(), e.end(), 0L));
        return d;
    }

    bool involves(int v) const { return degree(v) > 0; }

    bool operator==(const MultiPoly& o) const {
        return arity_ == o.arity_ && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    void add_term(const ExpVec& e, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(arity_);
        for (auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        a.check_same(b);
        MultiPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_same(b);
        MultiPoly r(a.arity_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                ExpVec e(a.arity_);
                for (int i = 0; i < a.arity_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MultiPoly operator*(const Rat& s, const MultiPoly& a) {
        MultiPoly r(a.arity_);
        if (s == 0) return r;
        for (auto& [e, c] : a.terms_) r.terms_[e] = s * c;
        return r;
    }

    MultiPoly pow(unsigned long e) const {
        MultiPoly r = constant(arity_, Rat(1)), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // Leading term under grlex.
    std::pair<ExpVec, Rat> leading_term() const {
        if (terms_.empty()) throw ZeroPolynomial("leading term of zero polynomial");
        auto it = terms_.rbegin();
        return {it->first, it->second};
    }

    // Coefficients of this viewed as a univariate polynomial in v; entry k
    // is the coefficient of v^k (same arity, v-degree zero).
    std::vector<MultiPoly> coeffs_in(int v) const {
        long d = degree(v);
        std::vector<MultiPoly> out(static_cast<std::size_t>(std::max<long>(d, 0)) + 1,
                                   MultiPoly(arity_));
        if (terms_.empty()) return {};
        for (auto& [e, c] : terms_) {
            ExpVec e2 = e;
            int k = e2[v];
            e2[v] = 0;
            out[k].add_term(e2, c);
        }
        return out;
    }

    static MultiPoly from_coeffs_in(int v, int arity, const std::vector<MultiPoly>& coeffs) {
        MultiPoly r(arity);
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            for (auto& [e, c] : coeffs[k].terms_) {
                ExpVec e2 = e;
                e2[v] += static_cast<int>(k);
                r.add_term(e2, c);
            }
        return r;
    }

    MultiPoly derivative(int v) const {
        MultiPoly r(arity_);
        for (auto& [e, c] : terms_) {
            if (e[v] == 0) continue;
            ExpVec e2 = e;
            int k = e2[v]--;
            r.add_term(e2, Rat(k) * c);
        }
        return r;
    }

    // Substitute variable v by a value; the slot stays (degree 0 in v).
    MultiPoly specialize(int v, const Rat& val) const {
        MultiPoly r(arity_);
        for (auto& [e, c] : terms_) {
            ExpVec e2 = e;
            int k = e2[v];
            e2[v] = 0;
            r.add_term(e2, c * rat_pow(val, k));
        }
        return r;
    }

    // Remove a slot the polynomial does not involve.
    MultiPoly drop_variable(int v) const {
        if (involves(v))
            throw Error(ErrorKind::Internal, "DropLiveVariable", "dropping a live variable");
        if (arity_ == 1)
            throw Error(ErrorKind::Internal, "DropLastVariable", "cannot drop the only variable");
        MultiPoly r(arity_ - 1);
        for (auto& [e, c] : terms_) {
            ExpVec e2;
            e2.reserve(arity_ - 1);
            for (int i = 0; i < arity_; ++i)
                if (i != v) e2.push_back(e[i]);
            r.terms_[e2] = c;
        }
        return r;
    }

    // Widen arity by appending slots at a given position.
    MultiPoly insert_variables(int pos, int count) const {
        MultiPoly r(arity_ + count);
        for (auto& [e, c] : terms_) {
            ExpVec e2;
            e2.reserve(arity_ + count);
            e2.insert(e2.end(), e.begin(), e.begin() + pos);
            e2.insert(e2.end(), count, 0);
            e2.insert(e2.end(), e.begin() + pos, e.end());
            r.terms_[e2] = c;
        }
        return r;
    }

    Rat eval(const std::vector<Rat>& x) const {
        if (static_cast<int>(x.size()) != arity_)
            throw Error(ErrorKind::Input, "BadPoint", "evaluation point arity mismatch");
        Rat r(0);
        for (auto& [e, c] : terms_) {
            Rat t = c;
            for (int i = 0; i < arity_; ++i) t *= rat_pow(x[i], e[i]);
            r += t;
        }
        return r;
    }

    // Scale to integer coefficients, content 1, positive grlex-leading sign.
    MultiPoly normalized() const {
        if (terms_.empty()) return *this;
        Int l = 1;
        for (auto& [e, c] : terms_) l = int_lcm(l, den(c));
        Int g = 0;
        for (auto& [e, c] : terms_) g = int_gcd(g, num(c) * (l / den(c)));
        Rat scale(l, g);
        if (leading_term().second < 0) scale = -scale;
        return scale * *this;
    }

private:
    void check_same(const MultiPoly& o) const {
        if (arity_ != o.arity_)
            throw Error(ErrorKind::Input, "ArityMismatch", "mixed-arity polynomial arithmetic");
    }

    int arity_;
    TermMap terms_;
};

// View a polynomial supported on a single variable as a UniPoly.
inline UniPoly to_unipoly(const MultiPoly& p, int v) {
    if (p.is_zero()) return UniPoly();
    std::vector<Rat> c(static_cast<std::size_t>(std::max<long>(p.degree(v), 0)) + 1, Rat(0));
    for (auto& [e, coef] : p.terms()) {
        for (int i = 0; i < p.arity(); ++i)
            if (i != v && e[i] != 0)
                throw Error(ErrorKind::Internal, "NotUnivariate",
                            "polynomial involves another variable");
        c[e[v]] = coef;
    }
    return UniPoly(std::move(c));
}

inline MultiPoly from_unipoly(const UniPoly& p, int arity, int v) {
    MultiPoly r(arity);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (p.coeffs()[i] == 0) continue;
        ExpVec e(arity, 0);
        e[v] = static_cast<int>(i);
        r.add_term(e, p.coeffs()[i]);
    }
    return r;
}

// ---- exact division -------------------------------------------------------

// Quotient a/b when it is exact; throws InexactDivision otherwise.
inline MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::Input, "DivisionByZero", "division by zero polynomial");
    MultiPoly rem = a, quot(a.arity());
    auto [eb, cb] = b.leading_term();
    while (!rem.is_zero()) {
        auto [ea, ca] = rem.leading_term();
        ExpVec eq(a.arity());
        for (int i = 0; i < a.arity(); ++i) {
            eq[i] = ea[i] - eb[i];
            if (eq[i] < 0)
                throw Error(ErrorKind::Internal, "InexactDivision", "multivariate division failed");
        }
        MultiPoly t = MultiPoly::monomial(a.arity(), eq, ca / cb);
        quot = quot + t;
        rem = rem - t * b;
    }
    return quot;
}

inline bool divides(const MultiPoly& b, const MultiPoly& a) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    try {
        exact_div(a, b);
        return true;
    } catch (const Error&) {
        return false;
    }
}

// ---- gcd (subresultant PRS with content recursion) ------------------------

namespace detail {

inline MultiPoly lc_in(const MultiPoly& p, int v) {
    auto coeffs = p.coeffs_in(v);
    return coeffs.back();
}

// Pseudo-remainder in v: returns lc_v(b)^(da-db+1) * a mod b.
inline MultiPoly prem(const MultiPoly& a, const MultiPoly& b, int v) {
    long db = b.degree(v);
    MultiPoly lb = lc_in(b, v);
    MultiPoly r = a;
    long steps_needed = std::max<long>(a.degree(v) - db + 1, 0);
    long steps_done = 0;
    while (!r.is_zero() && r.degree(v) >= db) {
        long dr = r.degree(v);
        MultiPoly lr = lc_in(r, v);
        MultiPoly shift = MultiPoly::variable(a.arity(), v).pow(static_cast<unsigned long>(dr - db));
        r = lb * r - lr * shift * b;
        ++steps_done;
    }
    // pad the multiplier up to the exact subresultant power
    for (; steps_done < steps_needed; ++steps_done) r = lb * r;
    return r;
}

}  // namespace detail

inline MultiPoly content_in(const MultiPoly& p, int v);

// GCD over Q up to units; result is integer-primitive with positive
// grlex-leading coefficient.
inline MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    if (a.is_constant() || b.is_constant())
        return MultiPoly::constant(a.arity(), Rat(1));
    int v = -1;
    for (int i = 0; i < a.arity(); ++i)
        if (a.involves(i) && b.involves(i)) {
            v = i;
            break;
        }
    if (v < 0) {
        // no shared variable: over Q the gcd is the gcd of the contents = 1
        return MultiPoly::constant(a.arity(), Rat(1));
    }
    MultiPoly ca = content_in(a, v), cb = content_in(b, v);
    MultiPoly pa = exact_div(a, ca), pb = exact_div(b, cb);
    MultiPoly cg = gcd(ca, cb);

    MultiPoly A = pa, B = pb;
    if (A.degree(v) < B.degree(v)) std::swap(A, B);
    MultiPoly g = MultiPoly::constant(a.arity(), Rat(1));
    MultiPoly h = g;
    MultiPoly result(a.arity());
    while (true) {
        long delta = A.degree(v) - B.degree(v);
        MultiPoly R = detail::prem(A, B, v);
        if (R.is_zero()) {
            result = exact_div(B, content_in(B, v));
            break;
        }
        if (R.degree(v) == 0) {
            result = MultiPoly::constant(a.arity(), Rat(1));
            break;
        }
        MultiPoly divisor = g * h.pow(static_cast<unsigned long>(delta));
        A = B;
        B = exact_div(R, divisor);
        g = detail::lc_in(A, v);
        if (delta > 0)
            h = exact_div(g.pow(static_cast<unsigned long>(delta)),
                          h.pow(static_cast<unsigned long>(delta - 1)));
    }
    return (cg * result).normalized();
}

// Content of p with respect to v: gcd of the v-coefficients.
inline MultiPoly content_in(const MultiPoly& p, int v) {
    auto coeffs = p.coeffs_in(v);
    MultiPoly g(p.arity());
    for (auto& c : coeffs) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? MultiPoly::constant(p.arity(), Rat(1)) : g;
}

inline MultiPoly primitive_part_in(const MultiPoly& p, int v) {
    return exact_div(p, content_in(p, v));
}

// ---- squarefree -----------------------------------------------------------

// Squarefree reduction along one variable: the content in v is preserved,
// the primitive part loses repeated factors that involve v. Result is
// integer-primitive with positive grlex-leading coefficient.
inline MultiPoly squarefree_part(const MultiPoly& p, int v) {
    if (p.is_zero()) throw ZeroPolynomial("squarefree_part of zero polynomial");
    if (!p.involves(v)) return p.normalized();
    MultiPoly cont = content_in(p, v);
    MultiPoly prim = exact_div(p, cont);
    MultiPoly g = gcd(prim, prim.derivative(v));
    return (cont * exact_div(prim, g)).normalized();
}

// Full squarefree part: one pass of squarefree_part over each variable.
inline MultiPoly squarefree_part_all(const MultiPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("squarefree of zero polynomial");
    MultiPoly r = p;
    for (int v = 0; v < p.arity(); ++v)
        if (r.involves(v)) r = squarefree_part(r, v);
    return r.normalized();
}

// ---- resultant ------------------------------------------------------------

namespace detail {

// Bareiss determinant over an integral domain with exact division.
inline MultiPoly bareiss_det(std::vector<std::vector<MultiPoly>> m, int arity) {
    const std::size_t n = m.size();
    if (n == 0) return MultiPoly::constant(arity, Rat(1));
    int sign = 1;
    MultiPoly prev = MultiPoly::constant(arity, Rat(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return MultiPoly(arity);  // singular
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = MultiPoly(arity);
        }
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

}  // namespace detail

// Sylvester resultant eliminating variable v. Convention: coefficient rows
// are listed low-to-high degree, p's rows before q's. The returned
// polynomial has arity reduced by one (slot v removed); it vanishes on the
// projection of the common zero locus, possibly with extraneous factors.
inline MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, int v) {
    if (p.is_zero() || q.is_zero()) throw ZeroPolynomial("resultant of zero polynomial");
    if (v < 0 || v >= p.arity())
        throw Error(ErrorKind::Input, "BadVariable", "variable index out of range");
    long m = p.degree(v), n = q.degree(v);
    if (m <= 0 || n <= 0)
        throw VariableAbsent("resultant operand has degree 0 in the eliminated variable");
    auto pc = p.coeffs_in(v), qc = q.coeffs_in(v);
    std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<MultiPoly>> mat(size, std::vector<MultiPoly>(size, MultiPoly(p.arity())));
    for (long r = 0; r < n; ++r)
        for (long j = 0; j <= m; ++j) mat[r][r + j] = pc[j];
    for (long r = 0; r < m; ++r)
        for (long j = 0; j <= n; ++j) mat[n + r][r + j] = qc[j];
    MultiPoly det = detail::bareiss_det(std::move(mat), p.arity());
    // univariate operands leave nothing to project onto; keep the constant
    if (p.arity() == 1) return det;
    return det.drop_variable(v);
}

}  // namespace pdyn
