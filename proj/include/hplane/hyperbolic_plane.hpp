#pragma once

// the hermitian plane D^2 with h(x,y) = x1 J(y2) + x2 J(y1); vectors are rows, g acts on the right

#include "cyclic_algebra.hpp"

#include <array>

namespace hplane {

enum class PlaneCase { D1, D2, D3plus };

inline const char* case_name(PlaneCase c)
{
    switch (c) {
    case PlaneCase::D1: return "d1";
    case PlaneCase::D2: return "d2";
    default: return "d3";
    }
}

struct PlaneVector {
    AlgebraElement x1, x2;
};

struct GroupMatrix {
    AlgebraElement a, b, c, d;
};

// Z-span of algebra elements, membership by exact coordinates
class ZLattice {
  public:
    std::vector<AlgebraElement> basis;
    QMat rows;

    ZLattice() = default;
    explicit ZLattice(std::vector<AlgebraElement> b) : basis(std::move(b))
    {
        for (auto& x : basis)
            rows.push_back(x.flat());
        if (rank(rows) != rows.size())
            throw PreconditionError("lattice basis is not independent");
    }
    std::optional<QVec> coords(const AlgebraElement& x) const { return solve_combination(rows, x.flat()); }
    bool contains(const AlgebraElement& x) const
    {
        auto c = coords(x);
        if (!c)
            return false;
        for (auto& q : *c)
            if (!is_integer(q))
                return false;
        return true;
    }
    bool spans(const AlgebraElement& x) const { return coords(x).has_value(); }
};

class HyperbolicPlane {
  public:
    std::string label;
    PlaneCase kase;
    AlgebraPtr A;
    std::shared_ptr<const Involution> J;
    TowerMap kmap;         // totally real base field k -> L
    TowerMap ellmap;       // field of the SL2 entries in Prop-type embeddings -> L
    AlgebraElement skew;   // J(s) = -s, s^2 = -eta in k
    FieldElement eta;      // in k
    ZLattice order;        // the order Delta
    ZLattice subfield;     // O_L for the commutative subfield used by the embedding
    FieldElement qa, qb;   // quaternion parameters (d = 2 only), in k

    int d() const { return A->d; }
    int f() const { return kmap.source->n; }

    AlgebraElement one() const { return AlgebraElement::scalar(A, 1); }
    AlgebraElement zero() const { return AlgebraElement::zero(A); }
    AlgebraElement inv(const AlgebraElement& x) const { return (*J)(x); }

    AlgebraElement herm(const PlaneVector& x, const PlaneVector& y) const
    {
        return x.x1 * inv(y.x2) + x.x2 * inv(y.x1);
    }
    PlaneVector act(const PlaneVector& v, const GroupMatrix& g) const
    {
        return {v.x1 * g.a + v.x2 * g.c, v.x1 * g.b + v.x2 * g.d};
    }
    GroupMatrix mul(const GroupMatrix& g, const GroupMatrix& h) const
    {
        return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
    }
    GroupMatrix identity() const { return {one(), zero(), zero(), one()}; }
    GroupMatrix star(const GroupMatrix& g) const { return {inv(g.a), inv(g.c), inv(g.b), inv(g.d)}; }
    // inverse of a unitary matrix: H g* H
    GroupMatrix unitary_inverse(const GroupMatrix& g) const { return {inv(g.d), inv(g.b), inv(g.c), inv(g.a)}; }
    static bool equal(const GroupMatrix& g, const GroupMatrix& h)
    {
        return g.a == h.a && g.b == h.b && g.c == h.c && g.d == h.d;
    }

    bool is_unitary(const GroupMatrix& g) const
    {
        // g H g* with H = [[0,1],[1,0]]
        auto gs = star(g);
        GroupMatrix gh{g.b, g.a, g.d, g.c};
        auto p = mul(gh, gs);
        return p.a.is_zero() && p.d.is_zero() && p.b == one() && p.c == one();
    }
    // a J(d) + b J(c) = 1, a J(b) + b J(a) = 0, c J(d) + d J(c) = 0
    bool unitary_relations(const GroupMatrix& g) const
    {
        return g.a * inv(g.d) + g.b * inv(g.c) == one() && (g.a * inv(g.b) + g.b * inv(g.a)).is_zero() &&
               (g.c * inv(g.d) + g.d * inv(g.c)).is_zero();
    }

    LMat block_rep(const GroupMatrix& g) const
    {
        int n = d();
        LMat m(2 * n, std::vector<FieldElement>(2 * n));
        const AlgebraElement* ent[2][2] = {{&g.a, &g.b}, {&g.c, &g.d}};
        for (int I = 0; I < 2; ++I)
            for (int Jx = 0; Jx < 2; ++Jx) {
                auto r = ent[I][Jx]->matrix_rep();
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        m[I * n + i][Jx * n + j] = r[i][j];
            }
        return m;
    }
    FieldElement block_det(const GroupMatrix& g) const { return lmat_det(block_rep(g)); }
    bool is_special(const GroupMatrix& g) const { return block_det(g) == FieldElement::scalar(A->L, 1); }
    // N(a) N(d - c a^-1 b) in K, a invertible
    FieldElement dieudonne_norm(const GroupMatrix& g) const
    {
        auto ai = g.a.inverse();
        return g.a.reduced_norm() * (g.d - g.c * ai * g.b).reduced_norm();
    }

    // ---- stabilizers ----
    // stabilizer of the line (0,1)D: unitary with c = 0
    bool in_parabolic(const GroupMatrix& g) const
    {
        if (!g.c.is_zero())
            return false;
        return g.a * inv(g.d) == one() && (g.a * inv(g.b) + g.b * inv(g.a)).is_zero();
    }
    bool in_unipotent_radical(const GroupMatrix& g) const
    {
        return g.a == one() && g.d == one() && g.c.is_zero() && (g.b + inv(g.b)).is_zero();
    }
    // [[a,c],[c,a]] with a J(a) + c J(c) = 1, a J(c) + c J(a) = 0
    bool in_compact(const GroupMatrix& g) const
    {
        if (g.a != g.d || g.b != g.c)
            return false;
        return g.a * inv(g.a) + g.b * inv(g.b) == one() && (g.a * inv(g.b) + g.b * inv(g.a)).is_zero();
    }
    // k-dimension of {b : b + J(b) = 0}
    size_t unipotent_dimension() const
    {
        QMat m;
        for (size_t k = 0; k < A->qdim(); ++k) {
            auto b = AlgebraElement::basis(A, k);
            m.push_back((b + inv(b)).flat());
        }
        return left_kernel(m).size() / f();
    }

    // ---- completions ----
    // h(xi,xi) = 0, xi != 0: rows (xi', xi) unitary with h(xi',xi) = 1
    GroupMatrix complete_isotropic(const PlaneVector& xi) const
    {
        if (!herm(xi, xi).is_zero())
            throw PreconditionError("vector is not isotropic");
        if (!xi.x1.is_zero())
            return {zero(), inv(xi.x1).inverse(), xi.x1, xi.x2};
        if (xi.x2.is_zero())
            throw PreconditionError("zero vector");
        return {inv(xi.x2).inverse(), zero(), xi.x1, xi.x2};
    }

    std::optional<std::pair<AlgebraElement, AlgebraElement>> bezout(const PlaneVector& xi) const
    {
        // integer combination of xi1 b_j and xi2 b_j equal to 1, in Delta-coordinates
        ZMat rows;
        auto to_z = [&](const AlgebraElement& x) -> std::optional<ZVec> {
            auto c = order.coords(x);
            if (!c)
                return std::nullopt;
            ZVec z;
            for (auto& q : *c) {
                if (!is_integer(q))
                    return std::nullopt;
                z.push_back(q.get_num());
            }
            return z;
        };
        for (auto* x : {&xi.x1, &xi.x2})
            for (auto& b : order.basis) {
                auto z = to_z(*x * b);
                if (!z)
                    throw PreconditionError("vector is not integral");
                rows.push_back(*z);
            }
        auto tgt = to_z(one());
        auto sol = solve_integer_combination(rows, *tgt);
        if (!sol)
            return std::nullopt;
        size_t n = order.basis.size();
        auto x = zero(), y = zero();
        for (size_t j = 0; j < n; ++j) {
            x = x + Rational((*sol)[j]) * order.basis[j];
            y = y + Rational((*sol)[n + j]) * order.basis[j];
        }
        return std::make_pair(x, y);
    }

    // xi1 x + xi2 y = 1; returns M with (0,1) M = xi
    GroupMatrix integral_complete(const PlaneVector& xi, const AlgebraElement& x, const AlgebraElement& y) const
    {
        if (!herm(xi, xi).is_zero())
            throw PreconditionError("vector is not isotropic");
        if (xi.x1 * x + xi.x2 * y != one())
            throw PreconditionError("Bezout relation does not hold");
        PlaneVector p{inv(y), inv(x)};
        auto delta = p.x1 * inv(p.x2);
        auto lam = inv(delta);
        PlaneVector q{p.x1 - lam * xi.x1, p.x2 - lam * xi.x2};
        return {q.x1, q.x2, xi.x1, xi.x2};
    }
    GroupMatrix integral_complete(const PlaneVector& xi) const
    {
        auto bz = bezout(xi);
        if (!bz)
            throw PreconditionError("entries do not generate the unit ideal");
        return integral_complete(xi, bz->first, bz->second);
    }

    // ---- subgroups ----
    FieldElement sub_to_L(const FieldElement& x) const
    {
        if (kase == PlaneCase::D3plus)
            return ellmap.apply(x);
        return kmap.apply(x);
    }
    FieldPtr sub_field() const { return kase == PlaneCase::D3plus ? ellmap.source : kmap.source; }

    // [[al, be],[ga, de]] -> [[al, 2 be / s],[ga s / 2, de]]
    GroupMatrix embed_subgroup(const std::array<FieldElement, 4>& m) const
    {
        auto F = sub_field();
        for (auto& x : m)
            if (x.F != F)
                throw FieldMismatch("SL2 entries must lie in " + F->label);
        if (m[0] * m[3] - m[1] * m[2] != FieldElement::scalar(F, 1))
            throw PreconditionError("matrix is not in SL2");
        auto lift = [&](const FieldElement& x) { return AlgebraElement::from_L(A, sub_to_L(x)); };
        auto sinv = skew.inverse();
        return {lift(m[0]), Rational(2) * lift(m[1]) * sinv, Rational(1, 2) * lift(m[2]) * skew, lift(m[3])};
    }
    bool lies_in_subfield(const AlgebraElement& x) const { return subfield.spans(x); }

    enum class Membership { GammaOL, GammaDelta, Neither };
    Membership gamma_membership(const GroupMatrix& g) const
    {
        if (!is_unitary(g))
            return Membership::Neither;
        for (auto* x : {&g.a, &g.b, &g.c, &g.d})
            if (!order.contains(*x))
                return Membership::Neither;
        for (auto* x : {&g.a, &g.b, &g.c, &g.d})
            if (!subfield.contains(*x))
                return Membership::GammaDelta;
        return Membership::GammaOL;
    }

    // ---- d = 1: SU(K^2, h) = SL2(k) ----
    AlgebraElement q() const { return skew; }
    GroupMatrix from_sl2(const std::array<FieldElement, 4>& m) const
    {
        if (kase != PlaneCase::D1)
            throw PreconditionError("SL2 isomorphism needs d = 1");
        // [[al,be],[ga,de]] -> [[de, 2 ga / q],[be q / 2, al]]
        auto lift = [&](const FieldElement& x) { return AlgebraElement::from_L(A, kmap.apply(x)); };
        if (m[0] * m[3] - m[1] * m[2] != FieldElement::scalar(kmap.source, 1))
            throw PreconditionError("matrix is not in SL2");
        return {lift(m[3]), Rational(2) * lift(m[2]) * skew.inverse(), Rational(1, 2) * lift(m[1]) * skew, lift(m[0])};
    }
    std::array<FieldElement, 4> to_sl2(const GroupMatrix& g) const
    {
        if (kase != PlaneCase::D1)
            throw PreconditionError("SL2 isomorphism needs d = 1");
        if (!is_unitary(g) || !is_special(g))
            throw PreconditionError("matrix is not in SU(K^2,h)");
        auto down = [&](const AlgebraElement& x) { return kmap.descend(x.z[0]); };
        return {down(g.d), down(Rational(2) * g.c * skew.inverse()), down(Rational(1, 2) * g.b * skew), down(g.a)};
    }
    // second route: A g A^-1 = [[al, be],[conj be, conj al]], then real and imaginary parts
    std::array<FieldElement, 4> to_sl2_via_unitary_form(const GroupMatrix& g) const
    {
        if (kase != PlaneCase::D1)
            throw PreconditionError("SL2 isomorphism needs d = 1");
        // A = [[-1/2, -1],[-1/2, 1]], A^-1 = [[-1, -1],[-1/2, 1/2]]
        auto r = [&](const Rational& v) { return AlgebraElement::scalar(A, v); };
        GroupMatrix Am{r(Rational(-1, 2)), r(-1), r(Rational(-1, 2)), r(1)};
        GroupMatrix Ai{r(-1), r(-1), r(Rational(-1, 2)), r(Rational(1, 2))};
        auto u = mul(mul(Am, g), Ai);
        if (inv(u.b) != u.c || inv(u.a) != u.d)
            throw Error("conjugated matrix is not of the form [[a,b],[b',a']]");
        auto sinv = skew.inverse();
        auto re = [&](const AlgebraElement& x) { return kmap.descend((Rational(1, 2) * (x + inv(x))).z[0]); };
        auto im = [&](const AlgebraElement& x) { return kmap.descend((Rational(1, 2) * (x - inv(x)) * sinv).z[0]); };
        auto et = eta;
        return {re(u.a) - re(u.b), im(u.a) + im(u.b), et * (im(u.b) - im(u.a)), re(u.a) + re(u.b)};
    }
};

// fractional ideal of a number field given by generators, membership tests against O = Z[basis]
struct FieldLattice {
    std::vector<FieldElement> basis;
    bool contains(const FieldElement& x) const
    {
        QMat rows;
        for (auto& b : basis)
            rows.push_back(b.c);
        auto s = solve_combination(rows, x.c);
        if (!s)
            return false;
        for (auto& q : *s)
            if (!is_integer(q))
                return false;
        return true;
    }
};

// Gamma_0-type congruence membership in SL2(O_l): a,d in O, b in c^-1, c in c
inline bool congruence_sl2_membership(const std::array<FieldElement, 4>& m, const FieldLattice& O,
                                      const std::vector<FieldElement>& ideal_gens)
{
    auto F = m[0].F;
    if (m[0] * m[3] - m[1] * m[2] != FieldElement::scalar(F, 1))
        return false;
    if (!O.contains(m[0]) || !O.contains(m[3]))
        return false;
    for (auto& g : ideal_gens)
        if (!O.contains(m[1] * g))
            return false;
    // c-ideal as Z-lattice spanned by gens * O basis
    QMat rows;
    for (auto& g : ideal_gens)
        for (auto& b : O.basis)
            rows.push_back((g * b).c);
    // lattice membership: integer combination of the spanning rows
    Integer den = 1;
    for (auto& r : rows)
        den = den * lcm_of_denominators(r) / gcd(den, lcm_of_denominators(r));
    den = den * lcm_of_denominators(m[2].c) / gcd(den, lcm_of_denominators(m[2].c));
    ZMat zr;
    for (auto& r : rows) {
        ZVec z;
        for (auto& q : r)
            z.push_back(Rational(q * Rational(den)).get_num());
        zr.push_back(z);
    }
    ZVec tz;
    for (auto& q : m[2].c)
        tz.push_back(Rational(q * Rational(den)).get_num());
    return solve_integer_combination(zr, tz).has_value();
}

} // namespace hplane
