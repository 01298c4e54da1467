#include "hplane/sampling.hpp"
#include "hplane/standard_planes.hpp"
#include "hplane/tube_domain.hpp"

#include <gtest/gtest.h>

using namespace hplane;

namespace {

constexpr double kTol = 1e-9;

CMat random_point(int d, bool symmetric, std::mt19937_64& g)
{
    std::uniform_real_distribution<double> u(-1, 1);
    CMat X(d, d), B(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            X(i, j) = symmetric ? cplx(u(g), 0) : cplx(u(g), u(g));
            B(i, j) = symmetric ? cplx(u(g), 0) : cplx(u(g), u(g));
        }
    X = symmetric ? CMat((X + X.transpose()) / 2.0) : CMat((X + X.adjoint()) / 2.0);
    return X + cplx(0, 1) * CMat(B * B.adjoint() + 0.5 * CMat::Identity(d, d));
}

// eigenvalue signs via the general complex eigensolver
std::pair<int, int> count_signs(const CMat& F)
{
    Eigen::ComplexEigenSolver<CMat> es(F);
    int p = 0, q = 0;
    for (int i = 0; i < F.rows(); ++i) {
        double ev = es.eigenvalues()(i).real();
        if (ev > kTol)
            ++p;
        else if (ev < -kTol)
            ++q;
    }
    return {p, q};
}

std::vector<HyperbolicPlane> planes()
{
    return {plane_d1(-7), plane_d1_zeta8(), plane_quaternion(2, 3), example7_variant_plane()};
}

} // namespace

TEST(Domain, FormHasSignatureDD)
{
    for (auto& P : planes()) {
        auto places = real_places(P);
        ASSERT_EQ(int(places.size()), P.f()) << P.label;
        for (auto& v : places) {
            CMat F = realized_form(P, v);
            EXPECT_LT((F - F.adjoint()).norm(), kTol);
            auto [p, q] = count_signs(F);
            EXPECT_EQ(p, P.d()) << P.label;
            EXPECT_EQ(q, P.d()) << P.label;
            auto s = signature_of_hermitian(F);
            EXPECT_EQ(s.p, p);
            EXPECT_EQ(s.q, q);
            EXPECT_LT(involution_residual(P, v), kTol);
        }
    }
}

TEST(Domain, RealizationIsAHomomorphism)
{
    Sampler S(30);
    for (auto& P : planes())
        for (auto& v : real_places(P))
            for (int t = 0; t < 5; ++t) {
                auto x = S.sparse_algebra(P.A, 3), y = S.sparse_algebra(P.A, 3);
                CMat lhs = realize(x * y, v), rhs = realize(x, v) * realize(y, v);
                EXPECT_LT((lhs - rhs).norm(), kTol * (1 + lhs.norm()));
            }
}

TEST(Domain, StandardCoordinatesPreserveTheStandardForm)
{
    Sampler S(31);
    std::mt19937_64 g(31);
    for (auto& P : planes()) {
        bool sym = P.kase == PlaneCase::D2;
        int d = P.d();
        CMat Fs = standard_form(d);
        for (auto& v : real_places(P))
            for (int t = 0; t < 10; ++t) {
                auto x = S.unitary(P, 3), y = S.unitary(P, 3);
                CMat M = to_standard(P, x, v);
                if (sym) {
                    EXPECT_LT(symplectic_residual(P, x, v), kTol) << P.label;
                } else {
                    EXPECT_LT((M.adjoint() * Fs * M - Fs).norm(), kTol * (1 + M.squaredNorm())) << P.label;
                }
                CMat tau = random_point(d, sym, g);
                CMat img = moebius(M, tau);
                EXPECT_TRUE(in_domain(img, sym)) << P.label;
                CMat lhs = moebius(to_standard(P, P.mul(x, y), v), tau);
                CMat rhs = moebius(M, moebius(to_standard(P, y, v), tau));
                EXPECT_LT((lhs - rhs).norm(), kTol * (1 + lhs.norm())) << P.label;
            }
    }
}

TEST(Domain, MoebiusAgreesWithScalarFormulaForDegreeOne)
{
    std::mt19937_64 g(32);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int t = 0; t < 20; ++t) {
        double a = u(g), b = u(g), c = u(g);
        double d = (1 + b * c) / a;
        CMat M(2, 2);
        M << a, b, c, d;
        cplx tau(u(g), std::abs(u(g)) + 0.1);
        CMat T(1, 1);
        T(0, 0) = tau;
        EXPECT_LT(std::abs(moebius(M, T)(0, 0) - (a * tau + b) / (c * tau + d)), kTol);
    }
}

TEST(Domain, EmbeddedSL2ActsByTheClosedFormulaOverMinus7)
{
    // r = sqrt 7 for s = sqrt -7
    auto P = plane_d1(-7);
    auto v = real_places(P).at(0);
    auto Q = rationals();
    auto q = [&](long n) { return FieldElement::scalar(Q, n); };
    std::vector<std::array<long, 4>> mats{{1, 2, 0, 1}, {1, 0, 3, 1}, {2, 3, 1, 2}, {0, -1, 1, 0}};
    double r = std::sqrt(7.0);
    for (auto& m : mats) {
        auto e = P.embed_subgroup({q(m[0]), q(m[1]), q(m[2]), q(m[3])});
        CMat T(1, 1);
        T(0, 0) = cplx(0.3, 1.7);
        cplx got = moebius(to_standard(P, e, v), T)(0, 0);
        cplx want = (double(m[0]) * T(0, 0) + 2.0 * m[1] / r) / ((m[2] * r / 2) * T(0, 0) + double(m[3]));
        EXPECT_LT(std::abs(got - want), kTol);
        EXPECT_LT(std::abs(diagonal_action_formula(P, {q(m[0]), q(m[1]), q(m[2]), q(m[3])}, T, v)(0, 0) - want), kTol);
    }
}

TEST(Domain, DiagonalSubdomainIsPreservedByTheEmbeddedSubgroup)
{
    Sampler S(33);
    std::mt19937_64 g(33);
    for (auto& P : planes()) {
        int d = P.d();
        bool sym = P.kase == PlaneCase::D2;
        for (auto& v : real_places(P))
            for (int t = 0; t < 5; ++t) {
                auto one = FieldElement::scalar(P.sub_field(), 1), zero = FieldElement::scalar(P.sub_field(), 0);
                auto b = S.field(P.sub_field(), 2), c = S.field(P.sub_field(), 2);
                std::array<FieldElement, 4> m{one + b * c, b, c, one}; // det 1
                CMat tau = CMat::Zero(d, d);
                for (int j = 0; j < d; ++j)
                    tau(j, j) = random_point(1, true, g)(0, 0);
                if (sym)
                    tau(1, 1) = P.kmap.apply(P.qb).embed(v.emb).real() * tau(0, 0);
                CMat img = moebius(to_standard(P, P.embed_subgroup(m), v), tau);
                CMat off = img;
                off.diagonal().setZero();
                EXPECT_LT(off.norm(), kTol * (1 + img.norm())) << P.label;
                EXPECT_LT((img - diagonal_action_formula(P, m, tau, v)).norm(), kTol * (1 + img.norm())) << P.label;
                (void)zero;
            }
    }
}

TEST(Domain, WeylElementFixesTheBasePoint)
{
    for (auto& P : planes()) {
        GroupMatrix w{P.zero(), P.one(), P.one(), P.zero()};
        EXPECT_TRUE(P.in_compact(w));
        for (auto& v : real_places(P)) {
            CMat img = moebius(to_standard(P, w, v), base_point(P.d()));
            EXPECT_LT((img - base_point(P.d())).norm(), kTol) << P.label;
        }
    }
}

TEST(Domain, QuaternionUnitOfNormOneIsNotInTheStabilizer)
{
    // u = 3 + 2 sqrt 2 has u J(u) = 1, so diag(u, u) meets the algebraic compactness test, yet it moves iI
    auto P = plane_quaternion(2, 3);
    auto t = FieldElement::generator(P.A->L);
    auto u = AlgebraElement::from_L(P.A, FieldElement::scalar(P.A->L, 3) + Rational(2) * t);
    ASSERT_EQ(u * P.inv(u), P.one());
    GroupMatrix g{u, P.zero(), P.zero(), u};
    EXPECT_TRUE(P.in_compact(g));
    auto v = real_places(P).at(0);
    CMat img = moebius(to_standard(P, g, v), base_point(2));
    EXPECT_GT((img - base_point(2)).norm(), 1.0);
}

TEST(Domain, BasePointStabilizedBySecondKindUnits)
{
    for (auto P : {plane_d1(-7), example7_variant_plane()}) {
        auto z = AlgebraElement::from_L(P.A, FieldElement::generator(P.A->L));
        // a root of unity times its conjugate is 1 in both fields
        if (z * P.inv(z) != P.one())
            continue;
        GroupMatrix g{z, P.zero(), P.zero(), z};
        for (auto& v : real_places(P)) {
            CMat img = moebius(to_standard(P, g, v), base_point(P.d()));
            EXPECT_LT((img - base_point(P.d())).norm(), kTol) << P.label;
        }
    }
}

TEST(Domain, MembershipTest)
{
    EXPECT_TRUE(in_domain(base_point(3), false));
    EXPECT_FALSE(in_domain(-base_point(3), false));
    CMat t(2, 2);
    t << cplx(0, 1), 0.5, -0.5, cplx(0, 1);
    EXPECT_TRUE(in_domain(t, false));
    EXPECT_FALSE(in_domain(t, true));
}
