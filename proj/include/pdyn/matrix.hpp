#pragma once

#include <vector>

#include "pdyn/numeric.hpp"

namespace pdyn {

// Rectangular matrix over Q.
class RatMatrix {
public:
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}
    static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows) {
        if (rows.empty()) return RatMatrix(0, 0);
        RatMatrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw Error(ErrorKind::Input, "RaggedMatrix", "rows of unequal length");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

// Exact rank over Q: rows are scaled to integers, then eliminated
// fraction-free (cross-multiplication with per-row content stripping).
inline std::size_t rank(const RatMatrix& m) {
    std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Int>> a(R, std::vector<Int>(C));
    for (std::size_t i = 0; i < R; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < C; ++j) l = int_lcm(l, den(m.at(i, j)));
        for (std::size_t j = 0; j < C; ++j)
            a[i][j] = num(m.at(i, j)) * (l / den(m.at(i, j)));
    }
    auto strip = [&](std::vector<Int>& row) {
        Int g = 0;
        for (auto& x : row) g = int_gcd(g, x);
        if (g > 1)
            for (auto& x : row) x /= g;
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = r;
        while (piv < R && a[piv][c] == 0) ++piv;
        if (piv == R) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < R; ++i) {
            if (a[i][c] == 0) continue;
            Int f = a[i][c];
            for (std::size_t j = c; j < C; ++j) a[i][j] = a[r][c] * a[i][j] - f * a[r][j];
            strip(a[i]);
        }
        ++r;
    }
    return r;
}

// Bareiss determinant of a square integer matrix (used as a test oracle and
// by small Sylvester computations).
inline Int int_determinant(std::vector<std::vector<Int>> m) {
    const std::size_t n = m.size();
    if (n == 0) return Int(1);
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && m[s][k] == 0) ++s;
            if (s == n) return Int(0);
            std::swap(m[k], m[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign < 0 ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace pdyn
