#pragma once

// numeric realization at the real places of k and the Moebius action on the symmetric domain

#include "hyperbolic_plane.hpp"

#include <Eigen/Dense>

namespace hplane {

using CMat = Eigen::MatrixXcd;

struct Place {
    size_t emb;       // embedding index of L
    double k_value;   // image of the generator of k
};

inline std::vector<Place> real_places(const HyperbolicPlane& P)
{
    std::vector<Place> out;
    auto k = P.kmap.source;
    for (auto root : k->roots) {
        if (std::fabs(root.imag()) > 1e-9)
            throw PreconditionError("k is not totally real");
        bool found = false;
        for (size_t i = 0; i < P.A->L->roots.size() && !found; ++i) {
            cplx kv = P.kmap.image.embed(i);
            if (std::abs(kv - root) > 1e-8)
                continue;
            if (P.kase == PlaneCase::D2) {
                // sqrt a > 0
                if (FieldElement::generator(P.A->L).embed(i).real() > 0)
                    found = true;
            } else if (P.skew.z[0].embed(i).imag() > 0) {
                found = true;
            }
            if (found)
                out.push_back({i, root.real()});
        }
        if (!found)
            throw Error("no embedding above a real place");
    }
    return out;
}

inline CMat realize(const AlgebraElement& x, const Place& v)
{
    auto m = x.matrix_rep();
    int d = x.A->d;
    CMat r(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            r(i, j) = m[i][j].embed(v.emb);
    return r;
}

inline CMat realize(const HyperbolicPlane& P, const GroupMatrix& g, const Place& v)
{
    int d = P.d();
    CMat r(2 * d, 2 * d);
    r.block(0, 0, d, d) = realize(g.a, v);
    r.block(0, d, d, d) = realize(g.b, v);
    r.block(d, 0, d, d) = realize(g.c, v);
    r.block(d, d, d, d) = realize(g.d, v);
    return r;
}

// diagonal phi with J(X) = Phi^-1 X^* Phi at this place (second kind)
inline Eigen::VectorXd phi_diagonal(const HyperbolicPlane& P, const Place& v)
{
    int d = P.d();
    Eigen::VectorXd phi(d);
    phi(0) = 1;
    for (int j = 1; j < d; ++j) {
        cplx w = P.A->sig(P.J->spec.omega, j).embed(v.emb);
        phi(j) = phi(j - 1) / w.real();
    }
    return phi;
}

inline CMat jhat(int blocks)
{
    CMat J = CMat::Zero(2 * blocks, 2 * blocks);
    for (int b = 0; b < blocks; ++b) {
        J(2 * b, 2 * b + 1) = 1;
        J(2 * b + 1, 2 * b) = -1;
    }
    return J;
}

// hermitian matrix F with G F G^* = F for realized unitary G
inline CMat realized_form(const HyperbolicPlane& P, const Place& v)
{
    int d = P.d();
    CMat F = CMat::Zero(2 * d, 2 * d);
    if (P.kase == PlaneCase::D2) {
        CMat Jh = jhat(1);
        F.block(0, 2, 2, 2) = cplx(0, 1) * Jh;
        F.block(2, 0, 2, 2) = cplx(0, 1) * Jh;
        return F;
    }
    auto phi = phi_diagonal(P, v);
    for (int i = 0; i < d; ++i) {
        F(i, d + i) = 1.0 / phi(i);
        F(d + i, i) = 1.0 / phi(i);
    }
    return F;
}

// max over generators of |Phi^-1 M(x)^* Phi - M(J x)|
inline double involution_residual(const HyperbolicPlane& P, const Place& v)
{
    if (P.kase == PlaneCase::D2) {
        CMat Jh = jhat(1);
        double r = 0;
        for (size_t k = 0; k < P.A->qdim(); ++k) {
            auto x = AlgebraElement::basis(P.A, k);
            CMat lhs = Jh * realize(x, v).transpose() * Jh.inverse();
            r = std::max(r, (lhs - realize(P.inv(x), v)).norm());
        }
        return r;
    }
    auto phi = phi_diagonal(P, v);
    CMat Ph = phi.cast<cplx>().asDiagonal();
    double r = 0;
    for (size_t k = 0; k < P.A->qdim(); ++k) {
        auto x = AlgebraElement::basis(P.A, k);
        CMat lhs = Ph.inverse() * realize(x, v).adjoint() * Ph;
        r = std::max(r, (lhs - realize(P.inv(x), v)).norm());
    }
    return r;
}

struct Signature {
    int p = 0, q = 0;
    bool degenerate = false;
};

inline Signature signature_of_hermitian(const CMat& F, double tol = 1e-9)
{
    Eigen::SelfAdjointEigenSolver<CMat> es(F);
    Signature s;
    for (int i = 0; i < F.rows(); ++i) {
        double l = es.eigenvalues()(i);
        if (std::fabs(l) < tol)
            s.degenerate = true;
        else if (l > 0)
            s.p++;
        else
            s.q++;
    }
    return s;
}

inline std::vector<Signature> signature_of_form(const HyperbolicPlane& P)
{
    std::vector<Signature> out;
    for (auto& v : real_places(P))
        out.push_back(signature_of_hermitian(realized_form(P, v)));
    return out;
}

// matrix M acting by tau -> (A tau + B)(C tau + D)^-1 on the standard domain
inline CMat to_standard(const HyperbolicPlane& P, const GroupMatrix& g, const Place& v)
{
    int d = P.d();
    CMat G = realize(P, g, v);
    if (P.kase == PlaneCase::D2) {
        CMat q = CMat::Identity(4, 4);
        q.block(2, 2, 2, 2) = jhat(1);
        return q * G * q.inverse();
    }
    auto phi = phi_diagonal(P, v);
    for (int i = 0; i < d; ++i)
        if (phi(i) <= 0)
            throw PreconditionError("involution is not positive at this place");
    CMat F = realized_form(P, v);
    CMat N = F.inverse() * G * F;
    CMat T = CMat::Zero(2 * d, 2 * d), S = CMat::Zero(2 * d, 2 * d);
    for (int i = 0; i < d; ++i) {
        T(i, d + i) = cplx(0, 1.0 / phi(i));
        T(d + i, i) = 1;
        S(i, i) = std::sqrt(phi(i));
        S(d + i, d + i) = 1 / std::sqrt(phi(i));
    }
    CMat ST = S * T;
    return ST * N * ST.inverse();
}

inline CMat standard_form(int d) // F_std = [[0, iI],[-iI, 0]]
{
    CMat F = CMat::Zero(2 * d, 2 * d);
    F.block(0, d, d, d) = cplx(0, 1) * CMat::Identity(d, d);
    F.block(d, 0, d, d) = cplx(0, -1) * CMat::Identity(d, d);
    return F;
}

inline CMat moebius(const CMat& M, const CMat& tau)
{
    int d = int(tau.rows());
    CMat A = M.block(0, 0, d, d), B = M.block(0, d, d, d), C = M.block(d, 0, d, d), D = M.block(d, d, d, d);
    return (A * tau + B) * (C * tau + D).inverse();
}

// Im(tau) = (tau - tau^*)/2i positive definite; symmetric as well in the d = 2 case
inline bool in_domain(const CMat& tau, bool symmetric, double tol = 1e-9)
{
    CMat Y = (tau - tau.adjoint()) / cplx(0, 2);
    Eigen::SelfAdjointEigenSolver<CMat> es(Y);
    if (es.eigenvalues().minCoeff() <= tol)
        return false;
    if (symmetric && (tau - tau.transpose()).norm() > tol * (1 + tau.norm()))
        return false;
    return true;
}

inline CMat base_point(int d) { return cplx(0, 1) * CMat::Identity(d, d); }

// diagonal action of an embedded SL2 element, written out entrywise
inline CMat diagonal_action_formula(const HyperbolicPlane& P, const std::array<FieldElement, 4>& m, const CMat& tau,
                                    const Place& v)
{
    int d = P.d();
    CMat out = CMat::Zero(d, d);
    if (P.kase == PlaneCase::D2) {
        double al = m[0].embed(0).real(), be = m[1].embed(0).real(), ga = m[2].embed(0).real(),
               de = m[3].embed(0).real();
        double sa = FieldElement::generator(P.A->L).embed(v.emb).real();
        double b = P.kmap.apply(P.qb).embed(v.emb).real();
        cplx t1 = tau(0, 0), t2 = tau(1, 1);
        out(0, 0) = (al * t1 + 2 * be / (b * sa)) / ((b * ga * sa / 2) * t1 + de);
        out(1, 1) = (al * t2 + 2 * be / sa) / ((ga * sa / 2) * t2 + de);
        return out;
    }
    double r = (cplx(0, -1) * P.skew.z[0].embed(v.emb)).real();
    for (int j = 0; j < d; ++j) {
        auto ent = [&](int k) { return P.A->sig(P.sub_to_L(m[k]), j).embed(v.emb).real(); };
        double al = ent(0), be = ent(1), ga = ent(2), de = ent(3);
        out(j, j) = (al * tau(j, j) + 2 * be / r) / ((ga * r / 2) * tau(j, j) + de);
    }
    return out;
}

// |m^T J m - J| for m = q g q^-1, d = 2
inline double symplectic_residual(const HyperbolicPlane& P, const GroupMatrix& g, const Place& v)
{
    if (P.kase != PlaneCase::D2)
        throw PreconditionError("symplectic conjugation is a d = 2 statement");
    CMat m = to_standard(P, g, v);
    CMat J = CMat::Zero(4, 4);
    J.block(0, 2, 2, 2) = CMat::Identity(2, 2);
    J.block(2, 0, 2, 2) = -CMat::Identity(2, 2);
    double imag = m.imag().norm();
    return std::max(imag, (m.transpose() * J * m - J).norm());
}

} // namespace hplane
