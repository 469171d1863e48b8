#pragma once

#include <algorithm>
#include <cstdlib>
#include <tuple>
#include <utility>
#include <vector>

#include "ring.hpp"

namespace quivinj {

// ---------------------------------------------------------------------------
// Smith normal form over the integers.

using IntMatrix = std::vector<std::vector<long long>>;

struct IntSmithForm {
    IntMatrix D, U, V;  // U * A * V == D
};

namespace detail {

inline IntMatrix int_identity(std::size_t n) {
    IntMatrix m(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::tuple<long long, long long, long long> xgcd(long long a, long long b) {
    long long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        long long q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

}  // namespace detail

inline IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b) {
    std::size_t n = a.size(), m = b.empty() ? 0 : b.front().size(), inner = b.size();
    IntMatrix c(n, std::vector<long long>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < inner; ++l)
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

inline long long int_determinant(IntMatrix a) {
    // Bareiss fraction-free elimination.
    std::size_t n = a.size();
    if (n == 0) return 1;
    long long sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Unimodular U, V with U*A*V diagonal, d1 | d2 | ..., all d_i >= 0.
inline IntSmithForm smith_normal_form(const IntMatrix& A) {
    std::size_t n = A.size();
    std::size_t m = n == 0 ? 0 : A.front().size();
    IntSmithForm f{A, detail::int_identity(n), detail::int_identity(m)};
    auto& D = f.D;
    auto& U = f.U;
    auto& V = f.V;

    auto row_combine = [&](std::size_t i, std::size_t j, long long a, long long b, long long c, long long d) {
        // rows (i, j) <- (a*ri + b*rj, c*ri + d*rj)
        for (auto* M : {&D, &U}) {
            auto& X = *M;
            for (std::size_t col = 0; col < X[i].size(); ++col) {
                long long x = X[i][col], y = X[j][col];
                X[i][col] = a * x + b * y;
                X[j][col] = c * x + d * y;
            }
        }
    };
    auto col_combine = [&](std::size_t i, std::size_t j, long long a, long long b, long long c, long long d) {
        // cols (i, j) <- (a*ci + b*cj, c*ci + d*cj)
        for (auto* M : {&D, &V}) {
            auto& X = *M;
            for (auto& row : X) {
                long long x = row[i], y = row[j];
                row[i] = a * x + b * y;
                row[j] = c * x + d * y;
            }
        }
    };

    std::size_t r = std::min(n, m);
    for (std::size_t t = 0; t < r; ++t) {
        // pivot: nonzero entry of least absolute value
        bool done = false;
        while (!done) {
            long long best = 0;
            std::size_t bi = t, bj = t;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < m; ++j)
                    if (D[i][j] != 0 && (best == 0 || std::llabs(D[i][j]) < best)) {
                        best = std::llabs(D[i][j]);
                        bi = i;
                        bj = j;
                    }
            if (best == 0) return f;
            if (bi != t) row_combine(t, bi, 0, 1, 1, 0);
            if (bj != t) col_combine(t, bj, 0, 1, 1, 0);

            done = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (D[i][t] == 0) continue;
                if (D[i][t] % D[t][t] == 0) {
                    row_combine(t, i, 1, 0, -(D[i][t] / D[t][t]), 1);
                    continue;
                }
                auto [g, s, u] = detail::xgcd(D[t][t], D[i][t]);
                long long a = D[t][t] / g, b = D[i][t] / g;
                row_combine(t, i, s, u, -b, a);
            }
            for (std::size_t j = t + 1; j < m; ++j) {
                if (D[t][j] == 0) continue;
                if (D[t][j] % D[t][t] == 0) {
                    col_combine(t, j, 1, 0, -(D[t][j] / D[t][t]), 1);
                    continue;
                }
                auto [g, s, u] = detail::xgcd(D[t][t], D[t][j]);
                long long a = D[t][t] / g, b = D[t][j] / g;
                col_combine(t, j, s, u, -b, a);
            }
            for (std::size_t i = t + 1; i < n; ++i)
                if (D[i][t] != 0) done = false;
            if (!done) continue;
            // divisibility: the pivot must divide every remaining entry
            for (std::size_t i = t + 1; i < n && done; ++i)
                for (std::size_t j = t + 1; j < m; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        row_combine(t, i, 1, 1, 0, 1);
                        done = false;
                        break;
                    }
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t]) x = -x;
            for (auto& x : U[t]) x = -x;
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Smith normal form over a finite chain ring.  Pivots are entries of least
// valuation, normalized to pure powers pi^v, so the diagonal is
// pi^{v_1}, pi^{v_2}, ... with v_1 <= v_2 <= ...

struct RingSmithForm {
    Matrix D, U, Uinv, V;  // U * A * V == D, U * Uinv == I
    std::size_t rank = 0;   // number of nonzero diagonal entries
};

inline RingSmithForm ring_smith_form(const BaseRing& R, const Matrix& A) {
    std::size_t n = A.rows, m = A.cols;
    RingSmithForm f{A, Matrix::identity(n), Matrix::identity(n), Matrix::identity(m), 0};
    Matrix& D = f.D;
    Matrix& U = f.U;
    Matrix& Ui = f.Uinv;
    Matrix& V = f.V;
    const int k = R.length();

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < m; ++c) std::swap(D(i, c), D(j, c));
        for (std::size_t c = 0; c < n; ++c) std::swap(U(i, c), U(j, c));
        for (std::size_t r = 0; r < n; ++r) std::swap(Ui(r, i), Ui(r, j));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n; ++r) std::swap(D(r, i), D(r, j));
        for (std::size_t r = 0; r < m; ++r) std::swap(V(r, i), V(r, j));
    };

    std::size_t r = std::min(n, m);
    for (std::size_t t = 0; t < r; ++t) {
        int best = k;
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = t; j < m; ++j) {
                int v = R.valuation(D(i, j));
                if (v < best) { best = v; bi = i; bj = j; }
            }
        if (best == k) break;
        if (bi != t) swap_rows(t, bi);
        if (bj != t) swap_cols(t, bj);

        Elem unit = R.divide(D(t, t), R.pi_pow(best));
        Elem uinv = R.unit_inverse(unit);
        for (std::size_t c = 0; c < m; ++c) D(t, c) = R.mul(uinv, D(t, c));
        for (std::size_t c = 0; c < n; ++c) U(t, c) = R.mul(uinv, U(t, c));
        for (std::size_t rr = 0; rr < n; ++rr) Ui(rr, t) = R.mul(Ui(rr, t), unit);

        for (std::size_t i = t + 1; i < n; ++i) {
            if (D(i, t) == 0) continue;
            Elem c = R.divide(D(i, t), D(t, t));
            Elem nc = R.neg(c);
            for (std::size_t cc = 0; cc < m; ++cc) D(i, cc) = R.axpy(D(i, cc), nc, D(t, cc));
            for (std::size_t cc = 0; cc < n; ++cc) U(i, cc) = R.axpy(U(i, cc), nc, U(t, cc));
            for (std::size_t rr = 0; rr < n; ++rr) Ui(rr, t) = R.axpy(Ui(rr, t), c, Ui(rr, i));
        }
        for (std::size_t j = t + 1; j < m; ++j) {
            if (D(t, j) == 0) continue;
            Elem c = R.divide(D(t, j), D(t, t));
            Elem nc = R.neg(c);
            for (std::size_t rr = 0; rr < n; ++rr) D(rr, j) = R.axpy(D(rr, j), nc, D(rr, t));
            for (std::size_t rr = 0; rr < m; ++rr) V(rr, j) = R.axpy(V(rr, j), nc, V(rr, t));
        }
        ++f.rank;
    }
    return f;
}

}  // namespace quivinj
