#pragma once

// polynomials over Q (dense, low degree first) and over F_p

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace hplane {

struct QPoly {
    QVec c; // c[i] * x^i, trimmed

    QPoly() = default;
    explicit QPoly(QVec v) : c(std::move(v)) { trim(); }

    void trim()
    {
        while (!c.empty() && c.back() == 0)
            c.pop_back();
    }
    int degree() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Rational lead() const { return c.empty() ? Rational(0) : c.back(); }
    Rational operator[](size_t i) const { return i < c.size() ? c[i] : Rational(0); }

    friend QPoly operator+(const QPoly& a, const QPoly& b)
    {
        QVec r(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = a[i] + b[i];
        return QPoly(r);
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b)
    {
        QVec r(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = a[i] - b[i];
        return QPoly(r);
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        QVec r(a.c.size() + b.c.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j)
                r[i + j] += a.c[i] * b.c[j];
        return QPoly(r);
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }

    // (quotient, remainder)
    static std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b)
    {
        if (b.is_zero())
            throw DivisionByZero("polynomial division by zero");
        QVec q(std::max(0, a.degree() - b.degree() + 1), Rational(0));
        while (!a.is_zero() && a.degree() >= b.degree()) {
            int s = a.degree() - b.degree();
            Rational f = a.lead() / b.lead();
            q[s] = f;
            for (size_t i = 0; i < b.c.size(); ++i)
                a.c[i + s] -= f * b.c[i];
            a.trim();
        }
        return {QPoly(q), a};
    }

    Rational eval(const Rational& x) const
    {
        Rational r = 0;
        for (size_t i = c.size(); i-- > 0;)
            r = r * x + c[i];
        return r;
    }
};

// ---------------- F_p[x] ----------------

using FpPoly = std::vector<int64_t>; // low degree first, trimmed

inline void fp_trim(FpPoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline int64_t fp_inv(int64_t a, int64_t p)
{
    int64_t r = 1, e = p - 2, b = ((a % p) + p) % p;
    if (b == 0)
        throw DivisionByZero("inverse of 0 mod p");
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// remainder of a mod b (b nonzero); quotient optional
inline FpPoly fp_divmod(FpPoly a, const FpPoly& b, int64_t p, FpPoly* quot = nullptr)
{
    int db = int(b.size()) - 1;
    int64_t il = fp_inv(b.back(), p);
    FpPoly q;
    if (int(a.size()) - 1 >= db)
        q.assign(a.size() - db, 0);
    while (!a.empty() && int(a.size()) - 1 >= db) {
        int s = int(a.size()) - 1 - db;
        int64_t f = a.back() * il % p;
        q[s] = f;
        for (int i = 0; i <= db; ++i)
            a[i + s] = ((a[i + s] - f * b[i]) % p + p) % p;
        fp_trim(a);
    }
    if (quot) {
        fp_trim(q);
        *quot = q;
    }
    return a;
}

inline FpPoly reduce_mod_p(const QPoly& f, int64_t p)
{
    FpPoly r;
    for (auto const& x : f.c) {
        Integer num = x.get_num() % p, den = x.get_den() % p;
        if (den == 0)
            throw PreconditionError("p divides a denominator");
        int64_t n = (num.get_si() % p + p) % p;
        r.push_back(n * fp_inv(den.get_si(), p) % p);
    }
    fp_trim(r);
    return r;
}

struct FpFactor {
    FpPoly factor; // monic, irreducible
    int multiplicity;
};

inline bool fp_is_monic_irreducible_bruteforce(const FpPoly& f, int64_t p, long budget);

// brute force: trial division by all monic polynomials of degree 1..deg/2
// budget bounds the number of candidates examined
inline std::vector<FpFactor> factor_poly_mod_p(const QPoly& f, int64_t p, long budget = 2000000)
{
    if (p < 2 || p >= 1000)
        throw PreconditionError("prime too large for brute-force strategy");
    for (int64_t t = 2; t * t <= p; ++t)
        if (p % t == 0)
            throw PreconditionError("modulus is not prime");
    FpPoly g = reduce_mod_p(f, p);
    if (g.size() < 2)
        throw PreconditionError("polynomial degenerates mod p");
    if (int(g.size()) != f.degree() + 1)
        throw PreconditionError("leading coefficient vanishes mod p");
    // make monic
    int64_t il = fp_inv(g.back(), p);
    for (auto& x : g)
        x = x * il % p;

    std::map<FpPoly, int> found;
    long spent = 0;
    for (int d = 1; 2 * d <= int(g.size()) - 1; ++d) {
        // enumerate monic degree-d candidates in lexicographic order
        FpPoly cand(d + 1, 0);
        cand[d] = 1;
        for (;;) {
            if (++spent > budget)
                throw PreconditionError("prime too large for brute-force strategy");
            for (;;) {
                FpPoly q;
                FpPoly r = fp_divmod(g, cand, p, &q);
                if (!r.empty())
                    break;
                found[cand]++;
                g = q;
            }
            // next candidate
            int i = 0;
            while (i < d && ++cand[i] == p)
                cand[i++] = 0;
            if (i == d)
                break;
            if (2 * d > int(g.size()) - 1)
                break;
        }
    }
    if (g.size() > 1)
        found[g]++;
    std::vector<FpFactor> out;
    for (auto& [k, m] : found)
        out.push_back({k, m});
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
        if (a.factor.size() != b.factor.size())
            return a.factor.size() < b.factor.size();
        return a.factor < b.factor;
    });
    return out;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, int64_t p)
{
    if (a.empty() || b.empty())
        return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    fp_trim(r);
    return r;
}

inline bool fp_is_monic_irreducible_bruteforce(const FpPoly& f, int64_t p, long budget)
{
    int n = int(f.size()) - 1;
    long spent = 0;
    for (int d = 1; 2 * d <= n; ++d) {
        FpPoly cand(d + 1, 0);
        cand[d] = 1;
        for (;;) {
            if (++spent > budget)
                throw PreconditionError("prime too large for brute-force strategy");
            if (fp_divmod(f, cand, p).empty())
                return false;
            int i = 0;
            while (i < d && ++cand[i] == p)
                cand[i++] = 0;
            if (i == d)
                break;
        }
    }
    return true;
}

} // namespace hplane
