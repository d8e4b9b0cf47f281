#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace birkhoff {

using i64 = long long;
using i128 = __int128;
using IntVec = std::vector<i64>;
using IntMat = std::vector<IntVec>;

inline i64 checked_cast(i128 x) {
    if (x > i128(INT64_MAX) || x < i128(INT64_MIN))
        throw std::overflow_error("integer matrix entry exceeds 64 bits");
    return static_cast<i64>(x);
}

inline i128 gcd128(i128 u, i128 v) {
    if (u < 0) u = -u;
    if (v < 0) v = -v;
    while (v) {
        i128 t = u % v;
        u = v;
        v = t;
    }
    return u;
}

inline IntMat identity_mat(int n) {
    IntMat m(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    int n = static_cast<int>(a.size());
    int k = static_cast<int>(b.size());
    int m = k ? static_cast<int>(b[0].size()) : 0;
    IntMat c(n, IntVec(m, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            i128 s = 0;
            for (int t = 0; t < k; ++t) s += i128(a[i][t]) * b[t][j];
            c[i][j] = checked_cast(s);
        }
    return c;
}

inline IntVec mat_vec(const IntMat& a, const IntVec& x) {
    int n = static_cast<int>(a.size());
    IntVec y(n, 0);
    for (int i = 0; i < n; ++i) {
        i128 s = 0;
        for (size_t j = 0; j < x.size(); ++j) s += i128(a[i][j]) * x[j];
        y[i] = checked_cast(s);
    }
    return y;
}

inline IntMat transpose(const IntMat& a) {
    if (a.empty()) return a;
    IntMat t(a[0].size(), IntVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

// Rank over the rationals; gcd-reduced cross elimination in 128 bits.
inline int mat_rank(const IntMat& a) {
    int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(a[0].size());
    std::vector<std::vector<i128>> m(rows, std::vector<i128>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m[i][j] = a[i][j];
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            i128 g = gcd128(m[rank][col], m[r][col]);
            i128 fr = m[rank][col] / g, fx = m[r][col] / g;
            for (int j = 0; j < cols; ++j) m[r][j] = m[r][j] * fr - m[rank][j] * fx;
            i128 gg = 0;
            for (int j = 0; j < cols; ++j) gg = gcd128(gg, m[r][j]);
            if (gg > 1)
                for (int j = 0; j < cols; ++j) m[r][j] /= gg;
        }
        ++rank;
    }
    return rank;
}

// Characteristic polynomial coefficients [c_0, ..., c_n], p(x) = sum c_k x^k,
// monic, by Faddeev-LeVerrier in 128-bit arithmetic (throws on overflow).
inline std::vector<i64> charpoly(const IntMat& a) {
    int n = static_cast<int>(a.size());
    std::vector<std::vector<i128>> M(n, std::vector<i128>(n, 0));
    std::vector<std::vector<i128>> A(n, std::vector<i128>(n));
    std::vector<std::vector<i128>> AM(n, std::vector<i128>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = a[i][j];
    for (int i = 0; i < n; ++i) M[i][i] = 1;
    const i128 guard = i128(1) << 110;
    std::vector<i128> c(n + 1, 0);
    c[n] = 1;
    for (int k = 1; k <= n; ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                i128 s = 0;
                for (int t = 0; t < n; ++t) s += A[i][t] * M[t][j];
                if (s > guard || s < -guard) throw std::overflow_error("charpoly overflow");
                AM[i][j] = s;
            }
        i128 tr = 0;
        for (int i = 0; i < n; ++i) tr += AM[i][i];
        if ((-tr) % k != 0) throw std::logic_error("charpoly: non-integer trace division");
        i128 ck = -tr / k;
        c[n - k] = ck;
        M = AM;
        for (int i = 0; i < n; ++i) M[i][i] += ck;
    }
    std::vector<i64> out(n + 1);
    for (int i = 0; i <= n; ++i) out[i] = checked_cast(c[i]);
    return out;
}

inline i64 det(const IntMat& a) {
    auto c = charpoly(a);
    int n = static_cast<int>(a.size());
    return (n % 2 == 0) ? c[0] : -c[0];
}

// Largest |eigenvalue| by power iteration, tolerance 1e-9.
double spectral_radius(const IntMat& a);

} // namespace birkhoff
