#include "hplane/cusps.hpp"
#include "hplane/sampling.hpp"
#include "hplane/standard_planes.hpp"

#include <gtest/gtest.h>

using namespace hplane;

namespace {

std::vector<HyperbolicPlane> planes()
{
    return {plane_d1(-7), plane_d1_zeta8(), plane_quaternion(2, 3), example7_variant_plane()};
}

PlaneVector random_vector(const HyperbolicPlane& P, Sampler& S)
{
    return {S.sparse_algebra(P.A, 2), S.sparse_algebra(P.A, 2)};
}

std::array<FieldElement, 4> mul2(const std::array<FieldElement, 4>& m, const std::array<FieldElement, 4>& n)
{
    return {m[0] * n[0] + m[1] * n[2], m[0] * n[1] + m[1] * n[3], m[2] * n[0] + m[3] * n[2], m[2] * n[1] + m[3] * n[3]};
}

// products of elementary matrices; determinant one by construction
std::array<FieldElement, 4> elementary_product(FieldPtr F, Sampler& S, int len)
{
    auto one = FieldElement::scalar(F, 1), zero = FieldElement::scalar(F, 0);
    std::array<FieldElement, 4> m{one, zero, zero, one};
    for (int i = 0; i < len; ++i) {
        auto t = S.field(F, 2);
        m = mul2(m, i % 2 ? std::array<FieldElement, 4>{one, t, zero, one} : std::array<FieldElement, 4>{one, zero, t, one});
    }
    return m;
}

} // namespace

TEST(Unitary, GeneratedElementsPreserveTheForm)
{
    Sampler S(10);
    for (auto& P : planes()) {
        for (int t = 0; t < 8; ++t) {
            auto g = S.unitary(P, 3);
            EXPECT_TRUE(P.is_unitary(g)) << P.label;
            EXPECT_TRUE(P.unitary_relations(g)) << P.label;
            auto x = random_vector(P, S), y = random_vector(P, S);
            EXPECT_EQ(P.herm(P.act(x, g), P.act(y, g)), P.herm(x, y)) << P.label;
            EXPECT_TRUE(HyperbolicPlane::equal(P.mul(g, P.unitary_inverse(g)), P.identity()));
        }
    }
}

TEST(Unitary, NonUnitaryRejectedByBothTests)
{
    Sampler S(11);
    for (auto& P : planes()) {
        GroupMatrix diag2{Rational(2) * P.one(), P.zero(), P.zero(), P.one()};
        EXPECT_FALSE(P.is_unitary(diag2));
        EXPECT_FALSE(P.unitary_relations(diag2));
        for (int t = 0; t < 5; ++t) {
            GroupMatrix g{S.sparse_algebra(P.A), S.sparse_algebra(P.A), S.sparse_algebra(P.A), S.sparse_algebra(P.A)};
            EXPECT_EQ(P.is_unitary(g), P.unitary_relations(g));
        }
    }
}

TEST(Unitary, DieudonneMatchesBlockDeterminant)
{
    Sampler S(12);
    for (auto& P : planes()) {
        for (int t = 0; t < 6; ++t) {
            auto g = S.unitary(P, 3);
            if (g.a.reduced_norm().is_zero())
                continue;
            EXPECT_EQ(P.A->Kmap.apply(P.dieudonne_norm(g)), P.block_det(g)) << P.label;
        }
    }
}

TEST(Unitary, ParabolicAndUnipotent)
{
    Sampler S(13);
    for (auto& P : planes()) {
        auto b = S.skew(P);
        GroupMatrix n{P.one(), b, P.zero(), P.one()};
        EXPECT_TRUE(P.in_unipotent_radical(n));
        EXPECT_TRUE(P.in_parabolic(n));
        auto a = S.invertible(P.A);
        GroupMatrix m{a, P.zero(), P.zero(), P.inv(a).inverse()};
        EXPECT_TRUE(P.is_unitary(m));
        EXPECT_TRUE(P.in_parabolic(P.mul(m, n)));
        EXPECT_FALSE(P.in_parabolic({P.zero(), P.one(), P.one(), P.zero()}));
    }
}

TEST(Unitary, UnipotentDimensionSecondKindIsDSquared)
{
    EXPECT_EQ(plane_d1(-7).unipotent_dimension(), 1u);
    EXPECT_EQ(plane_d1_zeta8().unipotent_dimension(), 1u);
    EXPECT_EQ(example7_variant_plane().unipotent_dimension(), 9u);
    // canonical involution on a quaternion algebra: J(b) = -b means reduced trace zero
    EXPECT_EQ(plane_quaternion(2, 3).unipotent_dimension(), 3u);
}

TEST(SL2, IsomorphismForDegreeOne)
{
    Sampler S(14);
    for (auto P : {plane_d1(-7), plane_d1(-4), plane_d1_zeta8()}) {
        auto k = P.kmap.source;
        for (int t = 0; t < 15; ++t) {
            auto m = elementary_product(k, S, 3), q = elementary_product(k, S, 3);
            auto gm = P.from_sl2(m), gq = P.from_sl2(q);
            EXPECT_TRUE(HyperbolicPlane::equal(P.mul(gm, gq), P.from_sl2(mul2(m, q))));
            EXPECT_TRUE(P.is_unitary(gm));
            EXPECT_TRUE(P.is_special(gm));
            EXPECT_EQ(P.to_sl2(gm), m);
            EXPECT_EQ(P.to_sl2_via_unitary_form(gm), m);
        }
        auto one = FieldElement::scalar(k, 1), two = FieldElement::scalar(k, 2), zero = FieldElement::scalar(k, 0);
        EXPECT_THROW(P.from_sl2({two, zero, zero, one}), PreconditionError);
    }
    EXPECT_THROW(plane_quaternion(2, 3).from_sl2({}), PreconditionError);
}

TEST(SubgroupEmbedding, LandsInTheUnitaryGroup)
{
    Sampler S(15);
    for (auto& P : planes()) {
        auto F = P.sub_field();
        for (int t = 0; t < 6; ++t) {
            auto m = elementary_product(F, S, 3), q = elementary_product(F, S, 3);
            auto gm = P.embed_subgroup(m);
            EXPECT_TRUE(P.is_unitary(gm)) << P.label;
            EXPECT_TRUE(HyperbolicPlane::equal(P.mul(gm, P.embed_subgroup(q)), P.embed_subgroup(mul2(m, q))));
        }
    }
}

TEST(Completion, RationalCompletionOfIsotropicVectors)
{
    Sampler S(16);
    for (auto& P : planes()) {
        for (int t = 0; t < 5; ++t) {
            PlaneVector xi = P.act({P.zero(), P.one()}, S.unitary(P, 3));
            auto M = P.complete_isotropic(xi);
            EXPECT_TRUE(P.is_unitary(M));
            EXPECT_TRUE(M.c == xi.x1 && M.d == xi.x2);
        }
        EXPECT_THROW(P.complete_isotropic({P.one(), P.one()}), PreconditionError);
    }
}

TEST(Completion, IntegralCompletionUnitaryIntegralWithBottomRow)
{
    Sampler S(17);
    auto P = plane_d1(-7);
    int plus = 0, minus = 0;
    for (int t = 0; t < 40; ++t) {
        PlaneVector xi = P.act({P.zero(), P.one()}, S.unitary(P, 4, true));
        auto bz = P.bezout(xi);
        ASSERT_TRUE(bz.has_value());
        EXPECT_EQ(xi.x1 * bz->first + xi.x2 * bz->second, P.one());
        auto M = P.integral_complete(xi);
        EXPECT_TRUE(P.is_unitary(M));
        for (auto* x : {&M.a, &M.b, &M.c, &M.d})
            EXPECT_TRUE(P.order.contains(*x));
        EXPECT_TRUE(M.c == xi.x1 && M.d == xi.x2);
        auto det = P.block_det(M);
        if (det == FieldElement::scalar(P.A->L, 1))
            ++plus;
        else if (det == FieldElement::scalar(P.A->L, -1))
            ++minus;
        else
            ADD_FAILURE() << "determinant outside {1, -1}";
    }
    EXPECT_EQ(plus + minus, 40);
}

TEST(Completion, DeterminantForcedByTheVector)
{
    // xi = (1, sqrt -7): every completion is [[1, b],[0, 1]] M, so the determinant is that of M, namely -1
    auto qp = quad_plane(-7);
    auto& P = qp.P;
    auto s = AlgebraElement::from_L(P.A, qp.Q->sqrtD);
    PlaneVector xi{P.one(), s};
    auto M = P.integral_complete(xi);
    EXPECT_TRUE(P.is_unitary(M));
    EXPECT_EQ(P.block_det(M), FieldElement::scalar(P.A->L, -1));
    Sampler S(18);
    for (int t = 0; t < 5; ++t) {
        GroupMatrix u{P.one(), S.skew(P), P.zero(), P.one()};
        auto M2 = P.mul(u, M);
        EXPECT_TRUE(P.is_unitary(M2));
        EXPECT_EQ(P.block_det(M2), FieldElement::scalar(P.A->L, -1));
    }
}

TEST(Completion, NonUnimodularVectorHasNoBezout)
{
    auto P = plane_d1(-7);
    auto two = Rational(2) * P.one();
    PlaneVector xi{P.zero(), two};
    EXPECT_FALSE(P.bezout(xi).has_value());
    EXPECT_THROW(P.integral_complete(xi), PreconditionError);
}

TEST(Membership, GammaClasses)
{
    auto P = example7_variant_plane();
    EXPECT_EQ(P.gamma_membership(P.identity()), HyperbolicPlane::Membership::GammaOL);
    auto e = AlgebraElement::e(P.A);
    GroupMatrix m{e, P.zero(), P.zero(), P.inv(e).inverse()};
    ASSERT_TRUE(P.is_unitary(m));
    auto got = P.gamma_membership(m);
    // e is in the order but not in O_L; its unitary partner decides whether m is integral
    bool integral = P.order.contains(P.inv(e).inverse());
    EXPECT_EQ(got, integral ? HyperbolicPlane::Membership::GammaDelta : HyperbolicPlane::Membership::Neither);
    GroupMatrix bad{Rational(2) * P.one(), P.zero(), P.zero(), P.one()};
    EXPECT_EQ(P.gamma_membership(bad), HyperbolicPlane::Membership::Neither);
}
