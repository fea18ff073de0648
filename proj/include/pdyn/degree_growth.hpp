#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pdyn/hypersurface.hpp"

namespace pdyn {

// deg(f|_V) for an invariant hypersurface, computed from the pushforward
// identity paired against each beta-monomial with a_j > 0: every such j
// yields prod_(i != j) c_i, and all of them must agree.
struct RestrictedDegree {
    bool consistent = false;
    Int degree = 0;                // valid when consistent
    std::vector<int> witnesses;    // the contributing indices j
    std::vector<Int> route_values; // D_j per witness, for reporting
};

// Pure arithmetic core: the per-route values D_j = prod_(i != j) c_i over
// the indices j with a_j > 0 (exposed separately so the consistency check
// can be property-tested on raw vectors).
inline RestrictedDegree pushforward_routes(const std::vector<long>& multidegree,
                                           const std::vector<long>& degrees) {
    if (multidegree.size() != degrees.size())
        throw Error(ErrorKind::Input, "ArityMismatch", "vector lengths differ");
    RestrictedDegree out;
    for (std::size_t j = 0; j < multidegree.size(); ++j) {
        if (multidegree[j] <= 0) continue;
        Int dj = 1;
        for (std::size_t i = 0; i < degrees.size(); ++i)
            if (i != j) dj *= degrees[i];
        out.witnesses.push_back(static_cast<int>(j));
        out.route_values.push_back(dj);
    }
    out.consistent = true;
    for (auto& v : out.route_values) out.consistent = out.consistent && v == out.route_values[0];
    if (out.consistent && !out.route_values.empty()) out.degree = out.route_values[0];
    return out;
}

inline RestrictedDegree restricted_degree(const Hypersurface& V, const SplitMap& f) {
    if (!is_forward_invariant(V, f))
        throw NotInvariant("restricted_degree requires a forward-invariant hypersurface");
    return pushforward_routes(V.multidegree(), f.degree_vector());
}

struct EqualDegreeVerdict {
    bool equal = false;
    long degree = 0;                    // when equal
    std::pair<int, int> witness{-1, -1};  // two indices of unequal degree
};

// Lemma: an invariant hypersurface that projects dominantly everywhere and
// has all component degrees >= 2 forces equal degrees; a violation witness
// certifies the input contradicts that.
inline EqualDegreeVerdict equal_degree_check(const Hypersurface& V, const SplitMap& f) {
    for (bool dom : dominant_projection_profile(V))
        if (!dom) throw PreconditionFailed("dominance: some multidegree entry is zero");
    for (long c : f.degree_vector())
        if (c < 2) throw PreconditionFailed("degrees: every component must have degree >= 2");
    if (!is_forward_invariant(V, f)) throw PreconditionFailed("forward invariance fails");
    EqualDegreeVerdict out;
    const auto& c = f.degree_vector();
    for (int i = 1; i < f.n(); ++i)
        if (c[i] != c[0]) {
            out.witness = {0, i};
            return out;
        }
    out.equal = true;
    out.degree = c[0];
    return out;
}

struct DegreeProfile {
    std::vector<std::pair<long, Int>> entries;  // (m, deg(f^m|_V))
};

inline DegreeProfile degree_growth_profile(const Hypersurface& V, const SplitMap& f, long m_max) {
    if (m_max < 0) throw Error(ErrorKind::Input, "BadRange", "m_max must be >= 0");
    RestrictedDegree base = restricted_degree(V, f);
    if (!base.consistent)
        throw PreconditionFailed("restricted_degree is inconsistent; input is suspect");
    DegreeProfile out;
    if (m_max == 0) {
        out.entries.emplace_back(0, Int(1));
        return out;
    }
    Int dm = 1;
    for (long m = 1; m <= m_max; ++m) {
        dm *= base.degree;
        out.entries.emplace_back(m, dm);
    }
    // direct cross-check on small iterates
    for (long m = 1; m <= std::min<long>(3, m_max); ++m) {
        RestrictedDegree direct = restricted_degree(V, f.iterated(m));
        if (!direct.consistent || direct.degree != out.entries[m - 1].second)
            throw Error(ErrorKind::Internal, "ProfileCrossCheck",
                        "iterate route disagrees with power route at m = " + std::to_string(m));
    }
    return out;
}

// ---- Lemma 2.1 style coefficient-comparison replay -------------------------

// User-supplied intersection data: the values V . prod_(i in S) beta_i over
// the d-subsets S of the coordinate axes, plus the block split and the
// auxiliary dimensions. The replay expands V . (u1 a1 + u2 a2)^d, extracts
// two coefficients, and reports whether the two degree formulas agree.
struct IntersectionTable {
    int n = 0;
    int k = 0;                    // blocks {0..k-1} and {k..n-1}
    std::vector<long> degrees;    // c_i
    int dim_v = 0;                // d
    int d2 = 0;                   // dim of the second projection
    int d1_prime = 0;             // dim of pi_1(V')
    std::map<std::vector<int>, Int> values;  // S (sorted) -> V . beta_S
};

struct ReplayRow {
    long m = 0;
    Rat route1;  // exponents (d + d1' - d2, d2 - d1')
    Rat route2;  // exponents (d - d2, d2)
    bool agree = false;
};

struct ReplayReport {
    std::vector<ReplayRow> rows;
    bool all_agree = false;
};

namespace detail {

inline void subsets_of_size(int lo, int hi, int size, std::vector<int>& cur,
                            const std::function<void(const std::vector<int>&)>& fn) {
    if (size == 0) {
        fn(cur);
        return;
    }
    for (int i = lo; i + size <= hi + 1; ++i) {
        cur.push_back(i);
        subsets_of_size(i + 1, hi, size - 1, cur, fn);
        cur.pop_back();
    }
}

inline Rat replay_route(const IntersectionTable& t, int p, int q, long m) {
    if (p < 0 || q < 0)
        throw PreconditionFailed("replay exponents must be non-negative (check d, d2, d1')");
    Rat num(0), den(0);
    std::vector<int> s1, s2;
    subsets_of_size(0, t.k - 1, p, s1, [&](const std::vector<int>& a) {
        subsets_of_size(t.k, t.n - 1, q, s2, [&](const std::vector<int>& b) {
            std::vector<int> key = a;
            key.insert(key.end(), b.begin(), b.end());
            auto it = t.values.find(key);
            Int v = it == t.values.end() ? Int(0) : it->second;
            if (v == 0) return;
            Int weight = 1;
            for (int i : a) weight *= int_pow(Int(t.degrees.at(i)), static_cast<unsigned long>(m));
            num += Rat(weight * v);
            den += Rat(v);
        });
    });
    if (den == 0) throw PreconditionFailed("replay denominator vanishes; table incompatible");
    return num / den;
}

}  // namespace detail

inline ReplayReport lemma21_replay(const IntersectionTable& t, long m_max = 3) {
    if (t.n < 2 || t.k < 1 || t.k >= t.n)
        throw Error(ErrorKind::Input, "BadBlocks", "need n >= 2 and 1 <= k < n");
    if (static_cast<int>(t.degrees.size()) != t.n)
        throw Error(ErrorKind::Input, "BadDegrees", "degree vector length != n");
    for (auto& [key, v] : t.values) {
        if (static_cast<int>(key.size()) != t.dim_v)
            throw Error(ErrorKind::Input, "BadTable", "table keys must be d-subsets");
        if (v < 0) throw Error(ErrorKind::Input, "BadTable", "intersection numbers are >= 0");
    }
    int p1 = t.dim_v + t.d1_prime - t.d2, q1 = t.d2 - t.d1_prime;
    int p2 = t.dim_v - t.d2, q2 = t.d2;
    ReplayReport out;
    out.all_agree = true;
    for (long m = 1; m <= m_max; ++m) {
        ReplayRow row;
        row.m = m;
        row.route1 = detail::replay_route(t, p1, q1, m);
        row.route2 = detail::replay_route(t, p2, q2, m);
        row.agree = row.route1 == row.route2;
        out.all_agree = out.all_agree && row.agree;
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace pdyn
