#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdyn/hypersurface.hpp"
#include "pdyn/matrix.hpp"
#include "pdyn/multipoly.hpp"

namespace pdyn {

// Witness that h is not a product across the block split: a 2x2 minor of
// the coefficient matrix with nonzero determinant.
struct MinorWitness {
    ExpVec row1, row2;  // block-1 exponent patterns
    ExpVec col1, col2;  // block-2 exponent patterns
    Rat entries[2][2];
};

struct SeparabilityResult {
    bool separable = false;
    std::optional<MultiPoly> h1, h2;      // engaged when separable
    std::optional<MinorWitness> witness;  // engaged when not
};

// Decides whether h = h1(block-1 vars) * h2(block-2 vars) by testing
// whether the coefficient matrix (rows: block-1 monomials, columns:
// block-2 monomials) has rank <= 1, and extracts the factors when it does.
inline SeparabilityResult separability_test(const MultiPoly& h, const std::vector<int>& block1,
                                            const std::vector<int>& block2) {
    if (h.is_zero()) throw ZeroPolynomial("separability_test of zero polynomial");
    std::vector<int> owner(h.arity(), -1);
    for (int v : block1) owner.at(v) = 0;
    for (int v : block2) {
        if (owner.at(v) == 0)
            throw Error(ErrorKind::Input, "BadBlocks", "blocks overlap");
        owner.at(v) = 1;
    }
    for (int v = 0; v < h.arity(); ++v)
        if (owner[v] < 0) throw Error(ErrorKind::Input, "BadBlocks", "blocks must cover all variables");

    auto restrict_to = [&](const ExpVec& e, int which) {
        ExpVec out(h.arity(), 0);
        for (int v = 0; v < h.arity(); ++v)
            if (owner[v] == which) out[v] = e[v];
        return out;
    };

    std::map<ExpVec, std::size_t> rows, cols;
    for (auto& [e, c] : h.terms()) {
        rows.try_emplace(restrict_to(e, 0), rows.size());
        cols.try_emplace(restrict_to(e, 1), cols.size());
    }
    RatMatrix M(rows.size(), cols.size());
    for (auto& [e, c] : h.terms()) M.at(rows[restrict_to(e, 0)], cols[restrict_to(e, 1)]) = c;

    std::vector<ExpVec> row_pat(rows.size()), col_pat(cols.size());
    for (auto& [e, i] : rows) row_pat[i] = e;
    for (auto& [e, i] : cols) col_pat[i] = e;

    if (rank(M) <= 1) {
        // rank-1 factorization through any nonzero pivot
        std::size_t r0 = 0, c0 = 0;
        bool found = false;
        for (std::size_t i = 0; i < rows.size() && !found; ++i)
            for (std::size_t j = 0; j < cols.size() && !found; ++j)
                if (M.at(i, j) != 0) {
                    r0 = i;
                    c0 = j;
                    found = true;
                }
        MultiPoly h1(h.arity()), h2(h.arity());
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (M.at(i, c0) != 0) h1.add_term(row_pat[i], M.at(i, c0));
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (M.at(r0, j) != 0) h2.add_term(col_pat[j], M.at(r0, j) / M.at(r0, c0));
        MultiPoly h1n = h1.normalized();
        MultiPoly h2n = exact_div(h, h1n);
        if (h1n * h2n != h)
            throw Error(ErrorKind::Internal, "SeparabilityFactor", "rank-1 factor check failed");
        SeparabilityResult out;
        out.separable = true;
        out.h1 = h1n;
        out.h2 = h2n;
        return out;
    }

    // rank >= 2: produce a concrete nonvanishing minor
    for (std::size_t i1 = 0; i1 < rows.size(); ++i1)
        for (std::size_t i2 = i1 + 1; i2 < rows.size(); ++i2)
            for (std::size_t j1 = 0; j1 < cols.size(); ++j1)
                for (std::size_t j2 = j1 + 1; j2 < cols.size(); ++j2) {
                    Rat det = M.at(i1, j1) * M.at(i2, j2) - M.at(i1, j2) * M.at(i2, j1);
                    if (det == 0) continue;
                    SeparabilityResult out;
                    MinorWitness w;
                    w.row1 = row_pat[i1];
                    w.row2 = row_pat[i2];
                    w.col1 = col_pat[j1];
                    w.col2 = col_pat[j2];
                    w.entries[0][0] = M.at(i1, j1);
                    w.entries[0][1] = M.at(i1, j2);
                    w.entries[1][0] = M.at(i2, j1);
                    w.entries[1][1] = M.at(i2, j2);
                    out.witness = w;
                    return out;
                }
    throw Error(ErrorKind::Internal, "SeparabilityRank", "rank >= 2 but no nonzero minor found");
}

// Splits a hypersurface across the first k pairs versus the rest, per the
// degree pattern deg(f_i) > 1 for i <= k and deg(f_i) = 1 for i > k.
struct ProductDecomposition {
    enum class Status {
        Decomposed,          // V = V1 x V2 with both factors forward-invariant
        FactorNotInvariant,  // separable, but a factor fails invariance
        InputSuspect,        // not separable: contradicts the product lemma
    };
    Status status = Status::InputSuspect;
    // factors (engaged when separable); nullopt with *_full set means the
    // factor is the full space
    std::optional<Hypersurface> v1, v2;
    bool v1_full = false, v2_full = false;
    std::string detail;
};

inline ProductDecomposition product_decomposition(const Hypersurface& V, const SplitMap& f,
                                                  int k) {
    const int n = V.n();
    if (V.n() != f.n())
        throw Error(ErrorKind::Input, "ArityMismatch", "variety and map have different n");
    if (k < 1 || k > n - 1)
        throw BadDegreePattern("k must satisfy 1 <= k <= n-1");
    for (int i = 0; i < n; ++i) {
        long d = f.degree_vector()[i];
        if (i < k && d <= 1)
            throw BadDegreePattern("component " + std::to_string(i + 1) + " must have degree > 1");
        if (i >= k && d != 1)
            throw BadDegreePattern("component " + std::to_string(i + 1) + " must have degree 1");
    }
    std::vector<int> block1, block2;
    for (int i = 0; i < k; ++i) {
        block1.push_back(2 * i);
        block1.push_back(2 * i + 1);
    }
    for (int i = k; i < n; ++i) {
        block2.push_back(2 * i);
        block2.push_back(2 * i + 1);
    }
    SeparabilityResult sep = separability_test(V.poly(), block1, block2);
    ProductDecomposition out;
    if (!sep.separable) {
        out.status = ProductDecomposition::Status::InputSuspect;
        out.detail = "coefficient matrix has rank >= 2; for an invariant irreducible V this "
                     "contradicts the product decomposition";
        return out;
    }

    auto build_factor = [](const MultiPoly& part, int first_pair, int pair_count,
                           int total_n) -> std::optional<Hypersurface> {
        if (part.is_constant()) return std::nullopt;  // full space marker
        MultiPoly narrowed(2 * pair_count);
        for (auto& [e, c] : part.terms()) {
            ExpVec e2;
            e2.reserve(2 * pair_count);
            for (int i = first_pair; i < first_pair + pair_count; ++i) {
                e2.push_back(e[2 * i]);
                e2.push_back(e[2 * i + 1]);
            }
            narrowed.add_term(e2, c);
        }
        (void)total_n;
        return Hypersurface::make(pair_count, narrowed);
    };
    out.v1 = build_factor(*sep.h1, 0, k, n);
    out.v1_full = !out.v1.has_value();
    out.v2 = build_factor(*sep.h2, k, n - k, n);
    out.v2_full = !out.v2.has_value();

    std::vector<RatMap1> f1, f2;
    for (int i = 0; i < k; ++i) f1.push_back(f.component(i));
    for (int i = k; i < n; ++i) f2.push_back(f.component(i));
    bool ok1 = out.v1_full || is_forward_invariant(*out.v1, SplitMap(f1));
    bool ok2 = out.v2_full || is_forward_invariant(*out.v2, SplitMap(f2));
    if (!ok1 || !ok2) {
        out.status = ProductDecomposition::Status::FactorNotInvariant;
        out.detail = std::string("factor ") + (!ok1 ? "V1" : "V2") +
                     " is not forward-invariant under its block map";
        return out;
    }
    out.status = ProductDecomposition::Status::Decomposed;
    return out;
}

}  // namespace pdyn
