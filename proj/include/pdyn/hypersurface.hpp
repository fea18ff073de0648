#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pdyn/budget.hpp"
#include "pdyn/multipoly.hpp"
#include "pdyn/ratmap.hpp"

namespace pdyn {

// An n-tuple of self-maps of P^1 acting coordinatewise on (P^1)^n.
class SplitMap {
public:
    explicit SplitMap(std::vector<RatMap1> components) : comps_(std::move(components)) {
        if (comps_.empty()) throw Error(ErrorKind::Input, "EmptyMap", "split map needs n >= 1");
        for (auto& f : comps_) degrees_.push_back(static_cast<long>(f.degree()));
    }

    int n() const { return static_cast<int>(comps_.size()); }
    const RatMap1& component(int i) const { return comps_.at(i); }
    const std::vector<long>& degree_vector() const { return degrees_; }

    std::vector<ProjPoint> evaluate(const std::vector<ProjPoint>& x) const {
        if (static_cast<int>(x.size()) != n())
            throw Error(ErrorKind::Input, "BadPoint", "tuple arity mismatch");
        std::vector<ProjPoint> out;
        out.reserve(comps_.size());
        for (std::size_t i = 0; i < comps_.size(); ++i) out.push_back(comps_[i].evaluate(x[i]));
        return out;
    }

    SplitMap iterated(unsigned long m) const {
        std::vector<RatMap1> out;
        out.reserve(comps_.size());
        for (auto& f : comps_) out.push_back(iterate(f, m));
        return SplitMap(std::move(out));
    }

    bool operator==(const SplitMap& o) const { return comps_ == o.comps_; }

private:
    std::vector<RatMap1> comps_;
    std::vector<long> degrees_;
};

using PointTuple = std::vector<ProjPoint>;

// Order tuples by max coordinate height, then lexicographically.
struct PointTupleLess {
    bool operator()(const PointTuple& a, const PointTuple& b) const {
        Int ha(0), hb(0);
        for (auto& p : a) ha = std::max(ha, p.height());
        for (auto& p : b) hb = std::max(hb, p.height());
        if (ha != hb) return ha < hb;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

using PointSet = std::set<PointTuple, PointTupleLess>;

namespace detail {

// Squarefree reduction tuned for pullbacks: monomial factors are stripped
// up front and each variable is first probed by specialization; the exact
// gcd pipeline only runs when the probe cannot certify squarefreeness.
inline bool probe_squarefree_in(const MultiPoly& p, int v, unsigned salt) {
    std::vector<Rat> point(p.arity());
    // deterministic specialization points, varied by salt
    unsigned state = 2654435761u * (salt + 1);
    for (int i = 0; i < p.arity(); ++i) {
        state = state * 1664525u + 1013904223u;
        point[i] = Rat(2 + static_cast<int>(state % 97));
    }
    auto coeffs = p.coeffs_in(v);
    std::vector<Rat> uni(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        MultiPoly c = coeffs[k];
        Rat val(0);
        for (auto& [e, cf] : c.terms()) {
            Rat t = cf;
            for (int i = 0; i < p.arity(); ++i) t *= rat_pow(point[i], e[i]);
            val += t;
        }
        uni[k] = val;
    }
    UniPoly hat{std::move(uni)};
    if (hat.degree() != p.degree(v)) return false;  // leading coefficient vanished
    UniPoly g = gcd(hat, hat.derivative());
    return g.degree() == 0;
}

inline MultiPoly fast_squarefree(const MultiPoly& input) {
    if (input.is_zero()) throw ZeroPolynomial("squarefree of zero polynomial");
    MultiPoly p = input;
    // strip monomial factors to multiplicity one
    ExpVec mins(p.arity(), INT32_MAX);
    for (auto& [e, c] : p.terms())
        for (int i = 0; i < p.arity(); ++i) mins[i] = std::min(mins[i], e[i]);
    MultiPoly monomial = MultiPoly::constant(p.arity(), Rat(1));
    bool stripped = false;
    for (int i = 0; i < p.arity(); ++i)
        if (mins[i] > 0) stripped = true;
    if (stripped) {
        MultiPoly reduced(p.arity());
        for (auto& [e, c] : p.terms()) {
            ExpVec e2 = e;
            for (int i = 0; i < p.arity(); ++i) e2[i] -= mins[i];
            reduced.add_term(e2, c);
        }
        for (int i = 0; i < p.arity(); ++i)
            if (mins[i] > 0) monomial = monomial * MultiPoly::variable(p.arity(), i);
        p = std::move(reduced);
    }
    for (int v = 0; v < p.arity(); ++v) {
        if (!p.involves(v)) continue;
        bool certified = false;
        for (unsigned salt = 0; salt < 3 && !certified; ++salt)
            certified = probe_squarefree_in(p, v, salt);
        if (!certified) p = squarefree_part(p, v);
    }
    return (monomial * p).normalized();
}

}  // namespace detail

// A squarefree multihomogeneous hypersurface in (P^1)^n. Variables are
// interleaved: slot 2i is X_(i+1), slot 2i+1 is Y_(i+1).
class Hypersurface {
public:
    static Hypersurface make(int n, const MultiPoly& h) {
        if (n < 1) throw InvariantViolation("n must be >= 1");
        if (h.arity() != 2 * n) throw InvariantViolation("polynomial arity must be 2n");
        if (h.is_zero()) throw InvariantViolation("zero polynomial is not a hypersurface");
        std::vector<long> md = check_multihomogeneous(n, h);
        bool any = false;
        for (long a : md) any = any || a > 0;
        if (!any) throw InvariantViolation("multidegree must not be all zero");
        MultiPoly sf = detail::fast_squarefree(h);
        bool reduced = sf != h.normalized();
        Hypersurface out;
        out.n_ = n;
        out.h_ = sf;
        out.multidegree_ = check_multihomogeneous(n, sf);
        out.was_reduced_ = reduced;
        return out;
    }

    // Homogenizes an affine polynomial in x_1..x_n.
    static Hypersurface from_affine(int n, const MultiPoly& affine) {
        if (affine.arity() != n) throw InvariantViolation("affine polynomial arity must be n");
        if (affine.is_zero()) throw InvariantViolation("zero polynomial is not a hypersurface");
        std::vector<long> deg(n);
        for (int i = 0; i < n; ++i) deg[i] = std::max<long>(affine.degree(i), 0);
        MultiPoly h(2 * n);
        for (auto& [e, c] : affine.terms()) {
            ExpVec e2(2 * n);
            for (int i = 0; i < n; ++i) {
                e2[2 * i] = e[i];
                e2[2 * i + 1] = static_cast<int>(deg[i]) - e[i];
            }
            h.add_term(e2, c);
        }
        return make(n, h);
    }

    int n() const { return n_; }
    const MultiPoly& poly() const { return h_; }
    const std::vector<long>& multidegree() const { return multidegree_; }
    bool was_reduced_to_squarefree() const { return was_reduced_; }

    bool operator==(const Hypersurface& o) const { return n_ == o.n_ && h_ == o.h_; }
    bool operator!=(const Hypersurface& o) const { return !(*this == o); }

    Rat evaluate(const PointTuple& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw Error(ErrorKind::Input, "BadPoint", "tuple arity mismatch");
        std::vector<Rat> coords(2 * n_);
        for (int i = 0; i < n_; ++i) {
            coords[2 * i] = Rat(x[i].x());
            coords[2 * i + 1] = Rat(x[i].y());
        }
        return h_.eval(coords);
    }

    bool contains(const PointTuple& x) const { return evaluate(x) == 0; }

    // Affine chart: Y_i = 1 for every pair, variables renumbered to x_i.
    MultiPoly affine_chart() const {
        MultiPoly out(n_);
        for (auto& [e, c] : h_.terms()) {
            ExpVec e2(n_);
            for (int i = 0; i < n_; ++i) e2[i] = e[2 * i];
            out.add_term(e2, c);
        }
        return out;
    }

private:
    Hypersurface() : h_(1) {}

    static std::vector<long> check_multihomogeneous(int n, const MultiPoly& h) {
        std::vector<long> md(n, -1);
        for (auto& [e, c] : h.terms()) {
            for (int i = 0; i < n; ++i) {
                long s = e[2 * i] + e[2 * i + 1];
                if (md[i] < 0)
                    md[i] = s;
                else if (md[i] != s)
                    throw InvariantViolation("multihomogeneous: pair " + std::to_string(i + 1) +
                                             " has mixed degrees");
            }
        }
        return md;
    }

    int n_ = 0;
    MultiPoly h_ = MultiPoly(1);
    std::vector<long> multidegree_;
    bool was_reduced_ = false;
};

namespace detail {

// Substitutes (X_i : Y_i) <- (P_i : Q_i) into h without squarefree
// reduction; multidegree multiplies exactly by the component degrees.
inline MultiPoly raw_pullback(const Hypersurface& V, const SplitMap& f) {
    const int n = V.n();
    const MultiPoly& h = V.poly();
    // budget precheck
    long bound = 1;
    for (int i = 0; i < n; ++i) {
        long b = V.multidegree()[i] * f.degree_vector()[i] + 1;
        if (bound > monomial_budget() / std::max(b, 1L) + 1) {
            bound = monomial_budget() + 1;
            break;
        }
        bound *= std::max(b, 1L);
    }
    check_monomial_budget(bound == 1 ? 1 : bound, "pullback");

    // power tables per pair: P^j Q^(a_i - j)
    std::vector<std::vector<BinForm>> table(n);
    for (int i = 0; i < n; ++i) {
        long a = V.multidegree()[i];
        const BinForm& P = f.component(i).numerator_form();
        const BinForm& Q = f.component(i).denominator_form();
        table[i].reserve(a + 1);
        for (long j = 0; j <= a; ++j) table[i].push_back(P.pow(j) * Q.pow(a - j));
    }
    MultiPoly out(2 * n);
    for (auto& [e, c] : h.terms()) {
        // product of n binary forms living on disjoint pairs
        std::vector<std::pair<ExpVec, Rat>> acc{{ExpVec(2 * n, 0), c}};
        for (int i = 0; i < n; ++i) {
            const BinForm& form = table[i][e[2 * i]];
            std::vector<std::pair<ExpVec, Rat>> next;
            next.reserve(acc.size() * (form.degree() + 1));
            for (auto& [base, coef] : acc)
                for (std::size_t k = 0; k <= form.degree(); ++k) {
                    if (form.coeff(k) == 0) continue;
                    ExpVec e2 = base;
                    e2[2 * i] = static_cast<int>(k);
                    e2[2 * i + 1] = static_cast<int>(form.degree() - k);
                    next.emplace_back(std::move(e2), coef * form.coeff(k));
                }
            acc = std::move(next);
        }
        for (auto& [ev, coef] : acc) out.add_term(ev, coef);
    }
    return out;
}

}  // namespace detail

// Set-theoretic preimage f^-1(V) as a squarefree hypersurface.
inline Hypersurface pullback(const Hypersurface& V, const SplitMap& f) {
    if (V.n() != f.n())
        throw Error(ErrorKind::Input, "ArityMismatch", "variety and map have different n");
    return Hypersurface::make(V.n(), detail::raw_pullback(V, f));
}

// f(V) subset V, tested as exact divisibility h | h(f).
inline bool is_forward_invariant(const Hypersurface& V, const SplitMap& f) {
    if (V.n() != f.n())
        throw Error(ErrorKind::Input, "ArityMismatch", "variety and map have different n");
    return divides(V.poly(), detail::raw_pullback(V, f));
}

enum class InvarianceVerdict { Invariant, ForwardOnly, NotInvariant };

inline std::string to_string(InvarianceVerdict v) {
    switch (v) {
        case InvarianceVerdict::Invariant: return "Invariant";
        case InvarianceVerdict::ForwardOnly: return "ForwardOnly";
        default: return "NotInvariant";
    }
}

namespace detail {

// Conclusive irreducibility cases only; anything else is "don't know".
inline bool heuristically_irreducible(const Hypersurface& V) {
    const auto& md = V.multidegree();
    long total = 0;
    for (long a : md) total += a;
    if (total == 1) return true;  // a single linear pair
    // pencil test: linear in some pair with coprime coefficient polys
    for (int j = 0; j < V.n(); ++j) {
        if (md[j] != 1) continue;
        auto ax = V.poly().coeffs_in(2 * j);  // h = B + A X_j with A,B free of X_j
        MultiPoly A = ax.size() > 1 ? ax[1] : MultiPoly(V.poly().arity());
        MultiPoly B = ax.size() > 0 ? ax[0] : MultiPoly(V.poly().arity());
        // B still contains Y_j; normalize it away: match Y_j-degree 1 slot
        // Split instead on the pair: h = A * X_j + B' * Y_j exactly.
        auto by = B.coeffs_in(2 * j + 1);
        MultiPoly Bp = by.size() > 1 ? by[1] : MultiPoly(V.poly().arity());
        if (A.is_zero() || Bp.is_zero()) continue;
        MultiPoly g = gcd(A, Bp);
        if (g.is_constant()) return true;
    }
    return false;
}

}  // namespace detail

// Invariance verdict. Equality f(V) = V is inferred from forward
// invariance plus irreducibility (split maps are finite, so f(V) is closed
// of full dimension in V); irreducibility is either asserted by the caller
// or established by a conclusive special case.
inline InvarianceVerdict is_invariant(const Hypersurface& V, const SplitMap& f,
                                      bool irreducibility_asserted) {
    if (!is_forward_invariant(V, f)) return InvarianceVerdict::NotInvariant;
    if (irreducibility_asserted) return InvarianceVerdict::Invariant;
    if (detail::heuristically_irreducible(V)) return InvarianceVerdict::Invariant;
    return InvarianceVerdict::ForwardOnly;
}

// Entry j is true iff V projects dominantly onto the axes complementary to
// j, which for a hypersurface happens exactly when a_j > 0.
inline std::vector<bool> dominant_projection_profile(const Hypersurface& V) {
    std::vector<bool> out;
    out.reserve(V.n());
    for (long a : V.multidegree()) out.push_back(a > 0);
    return out;
}

struct ProjectionResult {
    bool full_space = false;
    std::optional<Hypersurface> image;  // engaged iff !full_space
};

// Image of V under dropping the coordinates outside `keep`. For a single
// hypersurface the image is the full space as soon as any dropped pair
// carries positive degree; otherwise h is read in the remaining pairs.
// |keep| = n-1 unless allow_deeper_drops is set.
inline ProjectionResult projection_image(const Hypersurface& V, const std::vector<int>& keep,
                                         bool allow_deeper_drops = false) {
    const int n = V.n();
    std::vector<bool> kept(n, false);
    for (int j : keep) {
        if (j < 0 || j >= n) throw Error(ErrorKind::Input, "BadIndex", "keep index out of range");
        kept[j] = true;
    }
    std::size_t kcount = 0;
    for (bool b : kept) kcount += b;
    if (kcount != keep.size())
        throw Error(ErrorKind::Input, "BadIndex", "duplicate keep indices");
    if (kcount == static_cast<std::size_t>(n))
        throw Error(ErrorKind::Input, "BadIndex", "nothing dropped");
    if (kcount != static_cast<std::size_t>(n) - 1 && !allow_deeper_drops)
        throw NotCodimOne("projection_image drops exactly one coordinate unless the "
                          "experimental flag is set");
    if (kcount == 0) throw Error(ErrorKind::Input, "BadIndex", "must keep at least one pair");
    for (int j = 0; j < n; ++j)
        if (!kept[j] && V.multidegree()[j] > 0) return {true, std::nullopt};
    // all dropped pairs are absent from h: read it in the kept pairs
    MultiPoly out(2 * static_cast<int>(kcount));
    for (auto& [e, c] : V.poly().terms()) {
        ExpVec e2;
        e2.reserve(2 * kcount);
        for (int j = 0; j < n; ++j)
            if (kept[j]) {
                e2.push_back(e[2 * j]);
                e2.push_back(e[2 * j + 1]);
            }
        out.add_term(e2, c);
    }
    return {false, Hypersurface::make(static_cast<int>(kcount), out)};
}

}  // namespace pdyn
