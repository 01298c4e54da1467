#pragma once

// concrete fields, algebras and planes used throughout

#include "hyperbolic_plane.hpp"

namespace hplane {

inline QVec qv(std::initializer_list<long> xs)
{
    QVec v;
    for (long x : xs)
        v.push_back(Rational(x));
    return v;
}

inline bool is_squarefree(long m)
{
    m = m < 0 ? -m : m;
    for (long p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0)
            return false;
    return true;
}

inline bool is_fundamental_discriminant(long D)
{
    if (D == 0 || D == 1)
        return false;
    long r = ((D % 4) + 4) % 4;
    if (r == 1)
        return is_squarefree(D);
    if (r == 0) {
        long m = D / 4;
        long mr = ((m % 4) + 4) % 4;
        return (mr == 2 || mr == 3) && is_squarefree(m);
    }
    return false;
}

// K = Q(sqrt D), generator w with O_K = Z[w]
struct QuadField {
    long D;
    FieldPtr K;
    FieldElement w, sqrtD;
    Automorphism conj;
};

inline QuadField quadratic_field(long D, std::string label = "")
{
    if (!is_fundamental_discriminant(D))
        throw PreconditionError("not a fundamental discriminant: " + std::to_string(D));
    if (label.empty())
        label = "Q(sqrt(" + std::to_string(D) + "))";
    QuadField q;
    q.D = D;
    if (((D % 4) + 4) % 4 == 1) {
        q.K = NumberField::make(label, {rat(1 - D, 4), Rational(-1), Rational(1)});
        q.w = FieldElement::generator(q.K);
        q.sqrtD = Rational(2) * q.w - FieldElement::scalar(q.K, 1);
        q.conj = Automorphism(FieldElement::scalar(q.K, 1) - q.w);
    } else {
        q.K = NumberField::make(label, {Rational(-D / 4), Rational(0), Rational(1)});
        q.w = FieldElement::generator(q.K);
        q.sqrtD = Rational(2) * q.w;
        q.conj = Automorphism(-q.w);
    }
    return q;
}

// d = 1: K imaginary quadratic over Q, Delta = O_K
inline HyperbolicPlane plane_d1(const QuadField& Q)
{
    long D = Q.D;
    if (D >= 0)
        throw PreconditionError("d = 1 plane needs an imaginary quadratic field");
    auto K = Q.K;
    auto A = CyclicAlgebra::make("K", TowerMap(K, FieldElement::generator(K)), Automorphism::identity(K),
                                 FieldElement::scalar(K, 1), 1);
    HyperbolicPlane P;
    P.label = "d1:" + std::to_string(D);
    P.kase = PlaneCase::D1;
    P.A = A;
    P.J = std::make_shared<Involution>(A, InvolutionSpec{InvolutionKind::Second, FieldElement::scalar(K, 1), Q.conj});
    P.kmap = rational_inclusion(K);
    P.ellmap = P.kmap;
    P.skew = AlgebraElement::from_L(A, Q.sqrtD);
    P.eta = FieldElement::scalar(rationals(), -D);
    std::vector<AlgebraElement> ob{P.one(), AlgebraElement::from_L(A, Q.w)};
    P.order = ZLattice(ob);
    P.subfield = P.order;
    return P;
}

inline HyperbolicPlane plane_d1(long D)
{
    return plane_d1(quadratic_field(D));
}

// d = 1 over K = Q(zeta_8), k = Q(sqrt 2): two real places
inline HyperbolicPlane plane_d1_zeta8()
{
    auto K = NumberField::make("Q(zeta8)", qv({1, 0, 0, 0, 1}));
    auto z = FieldElement::generator(K);
    auto k = NumberField::make("Q(sqrt2)", qv({-2, 0, 1}));
    auto A = CyclicAlgebra::make("K8", TowerMap(K, z), Automorphism::identity(K), FieldElement::scalar(K, 1), 1);
    HyperbolicPlane P;
    P.label = "d1:zeta8";
    P.kase = PlaneCase::D1;
    P.A = A;
    auto conj = Automorphism(-z.pow(3));
    P.J = std::make_shared<Involution>(A, InvolutionSpec{InvolutionKind::Second, FieldElement::scalar(K, 1), conj});
    P.kmap = TowerMap(k, z - z.pow(3));
    P.ellmap = P.kmap;
    P.skew = AlgebraElement::from_L(A, z * z); // i, eta = 1
    P.eta = FieldElement::scalar(k, 1);
    std::vector<AlgebraElement> ob;
    for (int i = 0; i < 4; ++i)
        ob.push_back(AlgebraElement::from_L(A, z.pow(i)));
    P.order = ZLattice(ob);
    P.subfield = P.order;
    return P;
}

// d = 2: quaternion algebra (a, b) over Q with canonical involution
inline HyperbolicPlane plane_quaternion(long a, long b)
{
    auto ell = NumberField::make("Q(sqrt(" + std::to_string(a) + "))", qv({-a, 0, 1}));
    auto t = FieldElement::generator(ell);
    auto A = CyclicAlgebra::make("(" + std::to_string(a) + "," + std::to_string(b) + ")", rational_inclusion(ell),
                                 Automorphism(-t), FieldElement::scalar(rationals(), b), 2);
    HyperbolicPlane P;
    P.label = "d2:" + std::to_string(a) + "," + std::to_string(b);
    P.kase = PlaneCase::D2;
    P.A = A;
    P.J = std::make_shared<Involution>(A, InvolutionSpec{InvolutionKind::First, {}, {}});
    P.kmap = rational_inclusion(ell);
    P.ellmap = TowerMap(ell, t);
    auto c = AlgebraElement::from_L(A, t);
    auto e = AlgebraElement::e(A);
    P.skew = e * c; // (ec)^2 = -ab
    P.eta = FieldElement::scalar(rationals(), a * b);
    P.qa = FieldElement::scalar(rationals(), a);
    P.qb = FieldElement::scalar(rationals(), b);
    P.order = ZLattice({P.one(), c, e, e * c});
    P.subfield = ZLattice({P.one(), P.skew});
    return P;
}

// the degree-3 cyclic example over Q(sqrt -7) inside Q(zeta_7)
struct Example7Fields {
    FieldPtr L, K, ell;
    FieldElement zeta;
    TowerMap Kmap, ellmap;
    Automorphism sigma, conj;
    FieldElement gamma; // (-1 + sqrt -7)/2 in K
};

inline const Example7Fields& example7_fields()
{
    static const Example7Fields F = [] {
        Example7Fields f;
        f.L = NumberField::make("Q(zeta7)", qv({1, 1, 1, 1, 1, 1, 1}));
        f.zeta = FieldElement::generator(f.L);
        f.K = NumberField::make("Q(sqrt-7)", qv({2, 1, 1}));
        auto z = f.zeta;
        f.Kmap = TowerMap(f.K, z + z.pow(2) + z.pow(4));
        f.ell = NumberField::make("Q(zeta7)+", qv({-1, -2, 1, 1}));
        f.ellmap = TowerMap(f.ell, z + z.pow(6));
        f.sigma = Automorphism(z.pow(2));
        f.conj = Automorphism(z.pow(6));
        f.gamma = FieldElement::generator(f.K);
        return f;
    }();
    return F;
}

inline AlgebraPtr example7_algebra()
{
    auto& f = example7_fields();
    return CyclicAlgebra::make("D7", f.Kmap, f.sigma, f.gamma, 3);
}

// (L/K, sigma, 2 conj(gamma)) with omega = 2: same ramification at p, an involution of the second kind exists
inline HyperbolicPlane example7_variant_plane()
{
    auto& f = example7_fields();
    auto gbar = FieldElement::scalar(f.K, -1) - f.gamma;
    auto A = CyclicAlgebra::make("D7'", f.Kmap, f.sigma, Rational(2) * gbar, 3);
    HyperbolicPlane P;
    P.label = "d3:zeta7";
    P.kase = PlaneCase::D3plus;
    P.A = A;
    P.J = std::make_shared<Involution>(A, InvolutionSpec{InvolutionKind::Second, FieldElement::scalar(f.L, 2), f.conj});
    P.kmap = rational_inclusion(f.L);
    P.ellmap = f.ellmap;
    auto s7 = Rational(2) * f.gamma + FieldElement::scalar(f.K, 1); // sqrt -7
    P.skew = AlgebraElement::from_K(A, s7);
    P.eta = FieldElement::scalar(rationals(), 7);
    std::vector<AlgebraElement> ob, sb;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) {
            auto x = AlgebraElement::e_pow_times(A, i, f.zeta.pow(j));
            ob.push_back(x);
            if (i == 0)
                sb.push_back(x);
        }
    P.order = ZLattice(ob);
    P.subfield = ZLattice(sb);
    return P;
}

} // namespace hplane
