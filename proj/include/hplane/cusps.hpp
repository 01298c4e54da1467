#pragma once

// cusps: ideal classes of isotropic vectors, witnesses in U(O_K^2, h) for d = 1

#include "quadratic.hpp"

#include <map>

namespace hplane {

// d = 1 plane together with its quadratic field data
struct QuadPlane {
    QuadFieldPtr Q;
    HyperbolicPlane P;
};

inline QuadPlane quad_plane(long D)
{
    QuadPlane qp;
    qp.Q = std::make_shared<const QuadField>(quadratic_field(D));
    qp.P = plane_d1(*qp.Q);
    return qp;
}

inline PlaneVector vec(const HyperbolicPlane& P, const FieldElement& x1, const FieldElement& x2)
{
    return {AlgebraElement::from_L(P.A, x1), AlgebraElement::from_L(P.A, x2)};
}

inline QuadIdeal cusp_ideal(const QuadPlane& qp, const PlaneVector& xi)
{
    std::vector<FieldElement> g;
    for (auto* x : {&xi.x1, &xi.x2})
        if (!x->is_zero())
            g.push_back(x->z[0]);
    if (g.empty())
        throw PreconditionError("zero vector");
    return ideal_from_generators(qp.Q, g);
}

// rows (xi'', xi) with xi'' in (conj a)^-1, h(xi'',xi) = 1, h(xi'',xi'') = 0, a the ideal of xi
inline std::optional<GroupMatrix> adapted_completion(const QuadPlane& qp, const PlaneVector& xi)
{
    const auto& P = qp.P;
    const auto& Q = *qp.Q;
    auto a = cusp_ideal(qp, xi);
    Rational N = a.norm();
    auto cj = [&](const FieldElement& x) { return Q.conj.apply(x); };
    FieldElement x1 = xi.x1.z[0], x2 = xi.x2.z[0];
    // v1 conj(x2) + v2 conj(x1) = N(a), v_i in a
    std::vector<FieldElement> terms{a.alpha * cj(x2), a.beta * cj(x2), a.alpha * cj(x1), a.beta * cj(x1)};
    ZMat rows;
    for (auto& t : terms) {
        ZVec z;
        for (auto& q : t.c) {
            Rational v = q / N;
            if (!is_integer(v))
                throw Error("unexpected non-integral product in the completion");
            z.push_back(v.get_num());
        }
        rows.push_back(z);
    }
    auto sol = solve_integer_combination(rows, {Integer(1), Integer(0)});
    if (!sol)
        return std::nullopt;
    auto v1 = Rational((*sol)[0]) * a.alpha + Rational((*sol)[1]) * a.beta;
    auto v2 = Rational((*sol)[2]) * a.alpha + Rational((*sol)[3]) * a.beta;
    PlaneVector p{AlgebraElement::from_L(P.A, (1 / N) * v1), AlgebraElement::from_L(P.A, (1 / N) * v2)};
    auto lam = P.inv(p.x1 * P.inv(p.x2));
    PlaneVector q{p.x1 - lam * xi.x1, p.x2 - lam * xi.x2};
    return GroupMatrix{q.x1, q.x2, xi.x1, xi.x2};
}

enum class CuspStatus { Equivalent, Inequivalent, WitnessSearchExhausted };

struct CuspResult {
    CuspStatus status;
    Form class_xi, class_eta;
    std::optional<GroupMatrix> witness; // eta * g = mu * xi
    FieldElement mu;
    bool witness_special = false;
};

inline CuspResult cusp_equivalent(const QuadPlane& qp, const PlaneVector& xi, const PlaneVector& eta)
{
    const auto& P = qp.P;
    for (auto* v : {&xi, &eta}) {
        if (!P.herm(*v, *v).is_zero())
            throw PreconditionError("vector is not isotropic");
        if (!P.order.contains(v->x1) || !P.order.contains(v->x2))
            throw PreconditionError("vector is not integral");
    }
    CuspResult r;
    auto a = cusp_ideal(qp, xi), b = cusp_ideal(qp, eta);
    r.class_xi = ideal_class(a);
    r.class_eta = ideal_class(b);
    if (!(r.class_xi == r.class_eta)) {
        r.status = CuspStatus::Inequivalent;
        return r;
    }
    // lambda b = a
    FieldElement lam = FieldElement::scalar(qp.Q->K, 1);
    if (!(a == b)) {
        auto g = principal_generator(ideal_mul(a, ideal_conj(b)));
        if (!g) {
            r.status = CuspStatus::WitnessSearchExhausted;
            return r;
        }
        lam = (1 / b.norm()) * *g;
    }
    auto L = AlgebraElement::from_L(P.A, lam);
    PlaneVector eta2{L * eta.x1, L * eta.x2};
    auto Mx = adapted_completion(qp, xi), Me = adapted_completion(qp, eta2);
    if (!Mx || !Me) {
        r.status = CuspStatus::WitnessSearchExhausted;
        return r;
    }
    auto g = P.mul(P.unitary_inverse(*Me), *Mx);
    r.status = CuspStatus::Equivalent;
    r.witness = g;
    r.mu = lam.inverse();
    r.witness_special = P.is_special(g);
    return r;
}

// Gamma-classes of nonzero integral isotropic vectors with coordinates in [-H, H] (basis 1, w)
struct CuspCensus {
    long vectors = 0;
    std::map<Form, long> per_class;
    long witness_failures = 0;
};

inline CuspCensus isotropic_cusp_census(const QuadPlane& qp, long H)
{
    const auto& P = qp.P;
    const auto& Q = *qp.Q;
    CuspCensus c;
    std::map<Form, PlaneVector> reps;
    auto el = [&](long x, long y) { return Rational(x) * FieldElement::scalar(Q.K, 1) + Rational(y) * Q.w; };
    for (long a0 = -H; a0 <= H; ++a0)
        for (long a1 = -H; a1 <= H; ++a1)
            for (long b0 = -H; b0 <= H; ++b0)
                for (long b1 = -H; b1 <= H; ++b1) {
                    if (!a0 && !a1 && !b0 && !b1)
                        continue;
                    auto v = vec(P, el(a0, a1), el(b0, b1));
                    if (!P.herm(v, v).is_zero())
                        continue;
                    ++c.vectors;
                    Form f = ideal_class(cusp_ideal(qp, v));
                    c.per_class[f]++;
                    auto it = reps.find(f);
                    if (it == reps.end()) {
                        reps.emplace(f, v);
                        continue;
                    }
                    auto r = cusp_equivalent(qp, v, it->second);
                    bool ok = r.status == CuspStatus::Equivalent && P.is_unitary(*r.witness) &&
                              P.gamma_membership(*r.witness) != HyperbolicPlane::Membership::Neither;
                    if (ok) {
                        auto img = P.act(it->second, *r.witness);
                        auto mu = AlgebraElement::from_L(P.A, r.mu);
                        ok = img.x1 == mu * v.x1 && img.x2 == mu * v.x2;
                    }
                    if (!ok)
                        ++c.witness_failures;
                }
    return c;
}

// number of cusps of Gamma_Delta as given by the class number of k (d = 1, 2) or of K (d >= 3)
inline long cusp_count(const HyperbolicPlane& P)
{
    if (P.kase == PlaneCase::D3plus)
        return class_number(quadratic_discriminant(P.A->K));
    if (P.kmap.source->n == 1)
        return 1;
    if (P.kmap.source->n == 2)
        return class_number(quadratic_discriminant(P.kmap.source));
    throw PreconditionError("cusp count needs k of degree at most 2");
}

// (N(xi1), N(xi2)) in K^2, isotropic for odd d
inline std::pair<FieldElement, FieldElement> norm_isotropy_transfer(const HyperbolicPlane& P, const PlaneVector& xi)
{
    if (!P.herm(xi, xi).is_zero())
        throw PreconditionError("vector is not isotropic");
    if (P.d() % 2 == 0)
        throw PreconditionError("norm transfer preserves isotropy only for odd d");
    return {xi.x1.reduced_norm(), xi.x2.reduced_norm()};
}

inline bool k_isotropic(const HyperbolicPlane& P, const FieldElement& a, const FieldElement& b)
{
    return (a * P.J->conj_K(b) + b * P.J->conj_K(a)).is_zero();
}

} // namespace hplane
