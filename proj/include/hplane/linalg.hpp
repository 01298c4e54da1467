#pragma once

// dense linear algebra over Q and Z, small sizes only

#include "rational.hpp"

#include <optional>
#include <utility>

namespace hplane {

using QMat = std::vector<QVec>;
using ZVec = std::vector<Integer>;
using ZMat = std::vector<ZVec>;

// reduced row echelon form in place, returns pivot columns
inline std::vector<size_t> rref(QMat& m)
{
    std::vector<size_t> piv;
    if (m.empty())
        return piv;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r])
            x *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

inline size_t rank(QMat m)
{
    return rref(m).size();
}

inline Rational det(QMat m)
{
    size_t n = m.size();
    Rational d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0)
                continue;
            Rational f = m[i][c] / m[c][c];
            for (size_t j = c; j < n; ++j)
                m[i][j] -= f * m[c][j];
        }
    }
    return d;
}

// solve sum_i x_i rows[i] = target; nullopt when target is outside the span
inline std::optional<QVec> solve_combination(const QMat& rows, const QVec& target)
{
    size_t k = rows.size(), n = target.size();
    // columns = rows, augmented with target
    QMat a(n, QVec(k + 1));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < n; ++j)
            a[j][i] = rows[i][j];
    for (size_t j = 0; j < n; ++j)
        a[j][k] = target[j];
    auto piv = rref(a);
    QVec x(k, Rational(0));
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == k)
            return std::nullopt;
        x[piv[r]] = a[r][k];
    }
    return x;
}

// basis of the row space
inline QMat row_basis(QMat m)
{
    auto piv = rref(m);
    m.resize(piv.size());
    return m;
}

// basis of {x : x * m = 0}, m given as list of rows
inline QMat left_kernel(const QMat& m)
{
    size_t k = m.size();
    if (k == 0)
        return {};
    size_t n = m[0].size();
    QMat t(n, QVec(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < n; ++j)
            t[j][i] = m[i][j];
    auto piv = rref(t);
    std::vector<bool> isp(k, false);
    for (auto p : piv)
        isp[p] = true;
    QMat out;
    for (size_t f = 0; f < k; ++f) {
        if (isp[f])
            continue;
        QVec v(k, Rational(0));
        v[f] = 1;
        for (size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = -t[r][f];
        out.push_back(v);
    }
    return out;
}

inline QMat inverse(const QMat& m)
{
    size_t n = m.size();
    QMat a(n, QVec(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            a[i][j] = m[i][j];
        a[i][n + i] = 1;
    }
    auto piv = rref(a);
    if (piv.size() < n || piv[n - 1] != n - 1)
        throw DivisionByZero("singular rational matrix");
    QMat out(n, QVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            out[i][j] = a[i][n + j];
    return out;
}

inline QVec vec_mat(const QVec& v, const QMat& m)
{
    QVec out(m.empty() ? 0 : m[0].size(), Rational(0));
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        for (size_t j = 0; j < out.size(); ++j)
            out[j] += v[i] * m[i][j];
    }
    return out;
}

// ---- integer lattices ----

// row-style Hermite normal form; u*m == h, returns (h, u). zero rows dropped from h
struct HnfResult {
    ZMat h;
    ZMat u;
    size_t rank;
};

inline HnfResult hnf(const ZMat& m)
{
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    ZMat a = m;
    ZMat u(rows, ZVec(rows, Integer(0)));
    for (size_t i = 0; i < rows; ++i)
        u[i][i] = 1;
    auto rowop = [&](size_t i, size_t j, const Integer& f) { // row_i -= f row_j
        for (size_t c = 0; c < cols; ++c)
            a[i][c] -= f * a[j][c];
        for (size_t c = 0; c < rows; ++c)
            u[i][c] -= f * u[j][c];
    };
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // euclid down column c over rows r..
        for (;;) {
            size_t best = rows;
            for (size_t i = r; i < rows; ++i)
                if (a[i][c] != 0 && (best == rows || abs(a[i][c]) < abs(a[best][c])))
                    best = i;
            if (best == rows)
                break;
            std::swap(a[best], a[r]);
            std::swap(u[best], u[r]);
            bool done = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                rowop(i, r, q);
                if (a[i][c] != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (a[r][c] == 0)
            continue;
        if (a[r][c] < 0) {
            for (auto& x : a[r])
                x = -x;
            for (auto& x : u[r])
                x = -x;
        }
        for (size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
            if (q != 0)
                rowop(i, r, q);
        }
        ++r;
    }
    HnfResult res;
    res.rank = r;
    res.h.assign(a.begin(), a.begin() + r);
    res.u = u;
    return res;
}

// integer x with x*rows == target, if any
inline std::optional<ZVec> solve_integer_combination(const ZMat& rows, const ZVec& target)
{
    auto res = hnf(rows);
    size_t cols = target.size();
    ZVec rem = target;
    ZVec coef(res.rank, Integer(0));
    size_t r = 0;
    for (size_t c = 0; c < cols && r < res.rank; ++c) {
        if (res.h[r][c] == 0) {
            if (rem[c] != 0)
                return std::nullopt;
            continue;
        }
        if (rem[c] % res.h[r][c] != 0)
            return std::nullopt;
        Integer q = rem[c] / res.h[r][c];
        coef[r] = q;
        for (size_t j = 0; j < cols; ++j)
            rem[j] -= q * res.h[r][j];
        ++r;
    }
    for (auto& x : rem)
        if (x != 0)
            return std::nullopt;
    ZVec out(rows.size(), Integer(0));
    for (size_t i = 0; i < res.rank; ++i)
        for (size_t j = 0; j < rows.size(); ++j)
            out[j] += coef[i] * res.u[i][j];
    return out;
}

// elementary divisors of an integer matrix (nonzero ones, ascending)
inline ZVec smith_diagonal(ZMat a)
{
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    ZVec diag;
    size_t t = 0;
    while (t < rows && t < cols) {
        // pick smallest nonzero pivot in the remaining block
        size_t pi = rows, pj = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows)
            break;
        std::swap(a[pi], a[t]);
        for (auto& row : a)
            std::swap(row[pj], row[t]);
        bool clean = true;
        for (size_t i = t + 1; i < rows; ++i) {
            Integer q = a[i][t] / a[t][t];
            if (q != 0)
                for (size_t j = t; j < cols; ++j)
                    a[i][j] -= q * a[t][j];
            if (a[i][t] != 0)
                clean = false;
        }
        for (size_t j = t + 1; j < cols; ++j) {
            Integer q = a[t][j] / a[t][t];
            if (q != 0)
                for (size_t i = t; i < rows; ++i)
                    a[i][j] -= q * a[i][t];
            if (a[t][j] != 0)
                clean = false;
        }
        if (!clean)
            continue;
        // divisibility condition
        size_t bad_i = rows;
        for (size_t i = t + 1; i < rows && bad_i == rows; ++i)
            for (size_t j = t + 1; j < cols; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    bad_i = i;
                    break;
                }
        if (bad_i != rows) {
            for (size_t j = t; j < cols; ++j)
                a[t][j] += a[bad_i][j];
            continue;
        }
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    return diag;
}

} // namespace hplane
