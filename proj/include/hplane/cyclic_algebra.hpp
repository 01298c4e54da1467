#pragma once

// cyclic algebras (L/K, sigma, gamma), elements sum e^i z_i with e z = z^sigma e, e^d = gamma

#include "field.hpp"

namespace hplane {

using LMat = std::vector<std::vector<FieldElement>>;

struct ZeroDivisor : Error {
    QVec witness; // flattened coordinates of y != 0 with x y = 0
    ZeroDivisor(const std::string& m, QVec w) : Error(m), witness(std::move(w)) {}
};

inline LMat lmat_mul(const LMat& a, const LMat& b)
{
    size_t n = a.size(), m = b[0].size(), k = b.size();
    LMat r(n, std::vector<FieldElement>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            FieldElement s = FieldElement::scalar(a[0][0].F, 0);
            for (size_t t = 0; t < k; ++t)
                if (!a[i][t].is_zero() && !b[t][j].is_zero())
                    s = s + a[i][t] * b[t][j];
            r[i][j] = s;
        }
    return r;
}

inline FieldElement lmat_det(LMat m)
{
    size_t n = m.size();
    FieldPtr F = m[0][0].F;
    FieldElement d = FieldElement::scalar(F, 1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero())
            ++p;
        if (p == n)
            return FieldElement::scalar(F, 0);
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d = d * m[c][c];
        FieldElement inv = m[c][c].inverse();
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero())
                continue;
            FieldElement f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j)
                m[i][j] = m[i][j] - f * m[c][j];
        }
    }
    return d;
}

inline std::optional<LMat> lmat_inverse(const LMat& m)
{
    size_t n = m.size();
    FieldPtr F = m[0][0].F;
    LMat a(n, std::vector<FieldElement>(2 * n, FieldElement::scalar(F, 0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            a[i][j] = m[i][j];
        a[i][n + i] = FieldElement::scalar(F, 1);
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c].is_zero())
            ++p;
        if (p == n)
            return std::nullopt;
        std::swap(a[p], a[c]);
        FieldElement inv = a[c][c].inverse();
        for (auto& x : a[c])
            x = x * inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero())
                continue;
            FieldElement f = a[i][c];
            for (size_t j = 0; j < 2 * n; ++j)
                a[i][j] = a[i][j] - f * a[c][j];
        }
    }
    LMat out(n, std::vector<FieldElement>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            out[i][j] = a[i][n + j];
    return out;
}

class CyclicAlgebra;
using AlgebraPtr = std::shared_ptr<const CyclicAlgebra>;

class AlgebraElement;

class CyclicAlgebra : public std::enable_shared_from_this<CyclicAlgebra> {
  public:
    std::string label;
    FieldPtr L, K;
    TowerMap Kmap;
    Automorphism sigma;
    FieldElement gamma; // in K
    FieldElement gammaL;
    int d;
    std::vector<Automorphism> spow; // sigma^i, i = 0..d-1

    static AlgebraPtr make(std::string label, TowerMap Kmap, Automorphism sigma, FieldElement gamma, int d)
    {
        return std::make_shared<const CyclicAlgebra>(std::move(label), std::move(Kmap), std::move(sigma), std::move(gamma), d);
    }

    CyclicAlgebra(std::string lab, TowerMap km, Automorphism s, FieldElement g, int dd)
        : label(std::move(lab)), L(km.target), K(km.source), Kmap(std::move(km)), sigma(std::move(s)), gamma(std::move(g)), d(dd)
    {
        if (sigma.source != L)
            throw FieldMismatch("sigma is not an automorphism of " + L->label);
        if (gamma.F != K)
            throw FieldMismatch("gamma must lie in the center " + K->label);
        if (gamma.is_zero())
            throw PreconditionError("gamma must be nonzero");
        if (sigma.order() != d)
            throw PreconditionError("order of sigma differs from d");
        if (d * K->n != L->n)
            throw PreconditionError("[L:K] differs from d");
        if (!sigma.fixes(Kmap.image))
            throw PreconditionError("sigma does not fix K");
        gammaL = Kmap.apply(gamma);
        for (int i = 0; i < d; ++i)
            spow.push_back(sigma.power(i));
    }

    size_t qdim() const { return size_t(d) * L->n; }

    FieldElement sig(const FieldElement& z, long k) const
    {
        k %= d;
        if (k < 0)
            k += d;
        return spow[k].apply(z);
    }
};

class AlgebraElement {
  public:
    AlgebraPtr A;
    std::vector<FieldElement> z; // z[i] is the coefficient of e^i (e on the left)

    AlgebraElement() = default;
    AlgebraElement(AlgebraPtr a, std::vector<FieldElement> c) : A(std::move(a)), z(std::move(c))
    {
        if (int(z.size()) != A->d)
            throw PreconditionError("wrong number of algebra coordinates");
        for (auto& x : z)
            if (x.F != A->L)
                throw FieldMismatch("algebra coordinate outside " + A->L->label);
    }
    static AlgebraElement zero(AlgebraPtr a)
    {
        return AlgebraElement(a, std::vector<FieldElement>(a->d, FieldElement::scalar(a->L, 0)));
    }
    static AlgebraElement from_L(AlgebraPtr a, const FieldElement& x)
    {
        auto r = zero(a);
        r.z[0] = x;
        return r;
    }
    static AlgebraElement scalar(AlgebraPtr a, const Rational& q) { return from_L(a, FieldElement::scalar(a->L, q)); }
    static AlgebraElement from_K(AlgebraPtr a, const FieldElement& x) { return from_L(a, a->Kmap.apply(x)); }
    static AlgebraElement e(AlgebraPtr a)
    {
        if (a->d == 1)
            return from_L(a, a->gammaL);
        auto r = zero(a);
        r.z[1] = FieldElement::scalar(a->L, 1);
        return r;
    }
    static AlgebraElement e_pow_times(AlgebraPtr a, int i, const FieldElement& x)
    {
        auto r = zero(a);
        r.z[i] = x;
        return r;
    }

    void same(const AlgebraElement& o) const
    {
        if (A != o.A)
            throw FieldMismatch("algebra mismatch: " + A->label + " vs " + o.A->label);
    }
    bool is_zero() const
    {
        for (auto& x : z)
            if (!x.is_zero())
                return false;
        return true;
    }
    bool in_L() const
    {
        for (int i = 1; i < A->d; ++i)
            if (!z[i].is_zero())
                return false;
        return true;
    }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b)
    {
        a.same(b);
        auto r = a;
        for (int i = 0; i < a.A->d; ++i)
            r.z[i] = a.z[i] + b.z[i];
        return r;
    }
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b)
    {
        a.same(b);
        auto r = a;
        for (int i = 0; i < a.A->d; ++i)
            r.z[i] = a.z[i] - b.z[i];
        return r;
    }
    AlgebraElement operator-() const
    {
        auto r = *this;
        for (auto& x : r.z)
            x = -x;
        return r;
    }
    friend AlgebraElement operator*(const Rational& q, const AlgebraElement& b)
    {
        auto r = b;
        for (auto& x : r.z)
            x = q * x;
        return r;
    }
    // (e^i a)(e^j b) = e^(i+j) a^(sigma^-j) b, and e^d = gamma
    friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y)
    {
        x.same(y);
        const auto& A = *x.A;
        int d = A.d;
        auto r = zero(x.A);
        for (int i = 0; i < d; ++i) {
            if (x.z[i].is_zero())
                continue;
            for (int j = 0; j < d; ++j) {
                if (y.z[j].is_zero())
                    continue;
                FieldElement t = A.sig(x.z[i], -j) * y.z[j];
                int k = i + j;
                if (k >= d) {
                    k -= d;
                    t = A.gammaL * t;
                }
                r.z[k] = r.z[k] + t;
            }
        }
        return r;
    }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b)
    {
        a.same(b);
        for (int i = 0; i < a.A->d; ++i)
            if (a.z[i] != b.z[i])
                return false;
        return true;
    }
    friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

    QVec flat() const
    {
        QVec v;
        for (auto& x : z)
            v.insert(v.end(), x.c.begin(), x.c.end());
        return v;
    }
    static AlgebraElement unflat(AlgebraPtr a, const QVec& v)
    {
        int n = a->L->n;
        std::vector<FieldElement> c;
        for (int i = 0; i < a->d; ++i)
            c.emplace_back(a->L, QVec(v.begin() + i * n, v.begin() + (i + 1) * n));
        return AlgebraElement(a, c);
    }
    static AlgebraElement basis(AlgebraPtr a, size_t k)
    {
        QVec v(a->qdim(), Rational(0));
        v[k] = 1;
        return unflat(a, v);
    }

    // e -> shift with gamma in the corner, z -> diag(z, z^sigma, ..., z^(sigma^(d-1)))
    LMat matrix_rep() const
    {
        const auto& A = *this->A;
        int d = A.d;
        LMat m(d, std::vector<FieldElement>(d, FieldElement::scalar(A.L, 0)));
        for (int i = 0; i < d; ++i) {
            if (z[i].is_zero())
                continue;
            // (E^i Z)[r][c] nonzero for c = r + i mod d, value z^(sigma^c), times gamma if wrapped
            for (int r = 0; r < d; ++r) {
                int c = r + i;
                bool wrap = c >= d;
                if (wrap)
                    c -= d;
                FieldElement v = A.sig(z[i], c);
                if (wrap)
                    v = A.gammaL * v;
                m[r][c] = m[r][c] + v;
            }
        }
        return m;
    }

    // coordinates recovered by solving against the images of a Q-basis
    static std::optional<AlgebraElement> from_matrix(AlgebraPtr a, const LMat& m)
    {
        QMat rows;
        for (size_t k = 0; k < a->qdim(); ++k) {
            auto rep = basis(a, k).matrix_rep();
            QVec f;
            for (auto& row : rep)
                for (auto& x : row)
                    f.insert(f.end(), x.c.begin(), x.c.end());
            rows.push_back(f);
        }
        QVec tgt;
        for (auto& row : m)
            for (auto& x : row)
                tgt.insert(tgt.end(), x.c.begin(), x.c.end());
        auto s = solve_combination(rows, tgt);
        if (!s)
            return std::nullopt;
        return unflat(a, *s);
    }

    QMat left_mult_matrix() const // rows: self * b_k
    {
        QMat m;
        for (size_t k = 0; k < A->qdim(); ++k)
            m.push_back((*this * basis(A, k)).flat());
        return m;
    }

    AlgebraElement inverse() const
    {
        if (A->d == 1) {
            if (z[0].is_zero())
                throw ZeroDivisor("zero is not invertible", flat());
            return from_L(A, z[0].inverse());
        }
        auto inv = lmat_inverse(matrix_rep());
        if (!inv) {
            auto ker = left_kernel(left_mult_matrix());
            // x * (sum v_k b_k) = 0 for v in the kernel; b_k are unit vectors
            QVec w = ker.empty() ? QVec(A->qdim(), Rational(0)) : ker[0];
            throw ZeroDivisor("element of " + A->label + " is a zero divisor", w);
        }
        auto r = from_matrix(A, *inv);
        if (!r)
            throw Error("inverse matrix outside the representation image");
        return *r;
    }

    AlgebraElement pow(long k) const
    {
        if (k < 0)
            return inverse().pow(-k);
        auto r = scalar(A, 1), b = *this;
        while (k) {
            if (k & 1)
                r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    FieldElement reduced_norm() const { return A->Kmap.descend(lmat_det(matrix_rep())); }
    FieldElement reduced_trace() const
    {
        auto m = matrix_rep();
        FieldElement t = FieldElement::scalar(A->L, 0);
        for (int i = 0; i < A->d; ++i)
            t = t + m[i][i];
        return A->Kmap.descend(t);
    }
};

// ---------------- involutions ----------------

enum class InvolutionKind { First, Second };

struct InvolutionSpec {
    InvolutionKind kind = InvolutionKind::Second;
    FieldElement omega;         // in L, fixed by conj (second kind)
    Automorphism conjugation;   // complex conjugation of L (second kind)
};

class Involution {
  public:
    AlgebraPtr A;
    InvolutionSpec spec;
    std::vector<AlgebraElement> Jepow; // J(e)^i

    Involution(AlgebraPtr a, InvolutionSpec s) : A(std::move(a)), spec(std::move(s))
    {
        if (spec.kind == InvolutionKind::First) {
            if (A->d != 2)
                throw PreconditionError("first-kind involution only for quaternion algebras");
            return;
        }
        const auto& conj = spec.conjugation;
        if (conj.source != A->L)
            throw FieldMismatch("conjugation is not an automorphism of " + A->L->label);
        if (conj.order() != 2)
            throw PreconditionError("conjugation must have order 2");
        if (conj.fixes(A->Kmap.image))
            throw PreconditionError("conjugation must be nontrivial on K");
        auto g = FieldElement::generator(A->L);
        if (conj.apply(A->sigma.apply(g)) != A->sigma.apply(conj.apply(g)))
            throw PreconditionError("conjugation does not commute with sigma");
        if (spec.omega.F != A->L)
            throw FieldMismatch("omega must be given in " + A->L->label);
        if (!conj.fixes(spec.omega))
            throw PreconditionError("omega is not fixed by conjugation");
        // gamma gamma-bar = N_{l|k}(omega)
        FieldElement lhs = A->gammaL * conj.apply(A->gammaL);
        FieldElement rhs = FieldElement::scalar(A->L, 1);
        for (int i = 0; i < A->d; ++i)
            rhs = rhs * A->sig(spec.omega, i);
        if (lhs != rhs)
            throw PreconditionError("norm condition gamma*conj(gamma) = N(omega) fails");
        AlgebraElement Je = AlgebraElement::from_L(A, spec.omega) * AlgebraElement::e(A).inverse();
        Jepow.push_back(AlgebraElement::scalar(A, 1));
        for (int i = 1; i < A->d; ++i)
            Jepow.push_back(Jepow.back() * Je);
    }

    FieldElement conj(const FieldElement& x) const
    {
        if (spec.kind == InvolutionKind::First)
            return x;
        return spec.conjugation.apply(x);
    }
    FieldElement conj_K(const FieldElement& x) const
    {
        if (spec.kind == InvolutionKind::First)
            return x;
        return A->Kmap.descend(conj(A->Kmap.apply(x)));
    }

    AlgebraElement operator()(const AlgebraElement& x) const
    {
        if (spec.kind == InvolutionKind::First)
            return AlgebraElement::from_K(A, x.reduced_trace()) - x;
        auto r = AlgebraElement::zero(A);
        for (int i = 0; i < A->d; ++i) {
            if (x.z[i].is_zero())
                continue;
            r = r + AlgebraElement::from_L(A, conj(x.z[i])) * Jepow[i];
        }
        return r;
    }
};

// Q-linear span helpers on flattened coordinates
struct PlusMinusSplit {
    QMat plus, minus; // Q-bases
    size_t dim_plus_k, dim_minus_k;
};

inline PlusMinusSplit plus_minus_split(const Involution& J, int f)
{
    auto A = J.A;
    QMat p, m;
    for (size_t k = 0; k < A->qdim(); ++k) {
        auto b = AlgebraElement::basis(A, k);
        auto jb = J(b);
        p.push_back((b + jb).flat());
        m.push_back((b - jb).flat());
    }
    PlusMinusSplit s;
    s.plus = row_basis(p);
    s.minus = row_basis(m);
    s.dim_plus_k = s.plus.size() / f;
    s.dim_minus_k = s.minus.size() / f;
    return s;
}

} // namespace hplane
