#include "hplane/cusps.hpp"
#include "hplane/moduli.hpp"
#include "hplane/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hplane;

namespace {

// Tr_{K/Q} trd(x) from the complex realization at the real places
double numeric_trace(const HyperbolicPlane& P, const AlgebraElement& x)
{
    double t = 0;
    for (auto& v : real_places(P)) {
        cplx tr = realize(x, v).trace();
        t += P.kase == PlaneCase::D2 ? tr.real() : 2 * tr.real();
    }
    return t;
}

double numeric_E(const HyperbolicPlane& P, const PlaneVector& a, const PlaneVector& b, const SkewHermitianT& T)
{
    std::array<const AlgebraElement*, 2> x{&a.x1, &a.x2}, y{&b.x1, &b.x2};
    auto s = P.zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            s = s + *x[i] * T.t[i][j] * P.inv(*y[j]);
    return numeric_trace(P, s);
}

// log|det| of the raw Gram matrix by numeric LU; the oracle for the elementary divisors
double log_abs_det_numeric(const HyperbolicPlane& P, const std::vector<AlgebraElement>& basis, const SkewHermitianT& T)
{
    auto vs = order_pairs(P, basis);
    int n = int(vs.size());
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            G(i, j) = numeric_E(P, vs[i], vs[j], T);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(G);
    double s = 0;
    for (int i = 0; i < n; ++i)
        s += std::log(std::abs(lu.matrixLU()(i, i)));
    return s;
}

double log_abs_det_from_report(const GramReport& g)
{
    double s = 0;
    for (auto& x : g.elementary_divisors)
        s += std::log(std::abs(x.get_d()));
    // raw = gram / scale
    return s - double(g.elementary_divisors.size()) * std::log(g.scale.get_d());
}

std::map<long, int> divisor_counts(const GramReport& g)
{
    std::map<long, int> m;
    for (auto& x : g.elementary_divisors)
        m[std::labs(x.get_si())]++;
    return m;
}

} // namespace

TEST(Moduli, SkewHermitianChoices)
{
    auto P1 = plane_d1(-7);
    EXPECT_TRUE(is_skew(P1, make_T(P1, TCase::D1)));
    auto P2 = plane_quaternion(2, 3);
    EXPECT_TRUE(is_skew(P2, make_T(P2, TCase::D2a)));
    EXPECT_TRUE(is_skew(P2, make_T(P2, TCase::D2b)));
    auto P3 = example7_variant_plane();
    EXPECT_TRUE(is_skew(P3, make_T(P3, TCase::DGe3)));
    EXPECT_THROW(scaled_H(P1, P1.one(), TCase::D1), PreconditionError);
    EXPECT_THROW(make_T(P1, TCase::D2a), PreconditionError);
    EXPECT_THROW(make_T(P3, TCase::D1), PreconditionError);
}

TEST(Moduli, RiemannFormMatchesNumericTraceAndAlternates)
{
    Sampler S(40);
    std::vector<std::pair<HyperbolicPlane, TCase>> cases{{plane_d1(-7), TCase::D1},
                                                         {plane_quaternion(2, 3), TCase::D2a},
                                                         {plane_quaternion(2, 3), TCase::D2b},
                                                         {example7_variant_plane(), TCase::DGe3}};
    for (auto& [P, k] : cases) {
        auto T = make_T(P, k);
        for (int t = 0; t < 8; ++t) {
            PlaneVector x{S.sparse_algebra(P.A), S.sparse_algebra(P.A)}, y{S.sparse_algebra(P.A), S.sparse_algebra(P.A)};
            Rational e = riemann_form(P, x, y, T);
            EXPECT_NEAR(e.get_d(), numeric_E(P, x, y, T), 1e-7 * (1 + std::abs(e.get_d()))) << P.label;
            EXPECT_EQ(riemann_form(P, x, x, T), 0);
            EXPECT_EQ(e, -riemann_form(P, y, x, T));
        }
    }
}

TEST(Moduli, HandValueOverMinus7)
{
    // s = i sqrt 7, w = (1 + s)/2: E((1,0),(0,w)) = Tr(s conj(w)) = 2 Re(i sqrt7 (1 - i sqrt7)/2) = 7
    cplx s(0, std::sqrt(7.0)), w = (1.0 + s) / 2.0;
    double oracle = 2 * (s * std::conj(w)).real();
    EXPECT_NEAR(oracle, 7.0, 1e-12);
    auto qp = quad_plane(-7);
    auto& P = qp.P;
    auto E = riemann_form(P, {P.one(), P.zero()}, {P.zero(), AlgebraElement::from_L(P.A, qp.Q->w)}, make_T(P, TCase::D1));
    EXPECT_EQ(E, Rational(7));
}

TEST(Moduli, DegreeOneIsPrincipal)
{
    for (long D : {-3, -4, -7, -8, -15, -20, -23}) {
        auto P = plane_d1(D);
        auto T = make_T(P, TCase::D1);
        auto g = polarization_type(P, P.order.basis, T);
        EXPECT_TRUE(g.antisymmetric);
        EXPECT_TRUE(g.principal) << D;
        EXPECT_NEAR(log_abs_det_numeric(P, P.order.basis, T), log_abs_det_from_report(g), 1e-8) << D;
    }
    auto P = plane_d1(-7);
    auto g = polarization_type(P, P.order.basis, make_T(P, TCase::D1));
    EXPECT_EQ(g.scale, Rational(1, 7));
}

TEST(Moduli, QuaternionPolarizations)
{
    auto P = plane_quaternion(2, 3);
    auto ga = polarization_type(P, P.order.basis, make_T(P, TCase::D2a));
    auto gb = polarization_type(P, P.order.basis, make_T(P, TCase::D2b));
    EXPECT_EQ(ga.scale, Rational(1, 4));
    EXPECT_EQ(gb.scale, Rational(1, 6));
    EXPECT_EQ(divisor_counts(ga), (std::map<long, int>{{1, 4}, {3, 4}}));
    EXPECT_EQ(divisor_counts(gb), (std::map<long, int>{{1, 4}, {2, 4}}));
    EXPECT_NEAR(log_abs_det_numeric(P, P.order.basis, make_T(P, TCase::D2a)), log_abs_det_from_report(ga), 1e-8);
    EXPECT_NEAR(log_abs_det_numeric(P, P.order.basis, make_T(P, TCase::D2b)), log_abs_det_from_report(gb), 1e-8);
}

TEST(Moduli, DegreeThreePolarization)
{
    auto P = example7_variant_plane();
    auto T = make_T(P, TCase::DGe3);
    auto g = polarization_type(P, P.order.basis, T);
    EXPECT_TRUE(g.antisymmetric);
    EXPECT_EQ(g.scale, Rational(1, 7));
    EXPECT_EQ(divisor_counts(g), (std::map<long, int>{{1, 12}, {2, 12}, {28, 12}}));
    EXPECT_NEAR(log_abs_det_numeric(P, P.order.basis, T), log_abs_det_from_report(g), 1e-6);
}

TEST(Moduli, PhiIsAMultiplicativeRepresentation)
{
    Sampler S(41);
    std::vector<std::pair<HyperbolicPlane, int>> cases{
        {plane_d1(-7), 2}, {plane_d1_zeta8(), 4}, {plane_quaternion(2, 3), 4}, {example7_variant_plane(), 18}};
    for (auto& [P, N] : cases) {
        EXPECT_EQ(phi_dimension(P), N) << P.label;
        EXPECT_LT((phi_numeric(P, P.one()) - CMat::Identity(N, N)).norm(), 1e-12);
        for (int t = 0; t < 5; ++t) {
            auto a = S.sparse_algebra(P.A), b = S.sparse_algebra(P.A);
            CMat pab = phi_numeric(P, a * b), pa = phi_numeric(P, a);
            EXPECT_LT((pab - pa * phi_numeric(P, b)).norm(), 1e-8 * (1 + pab.norm())) << P.label;
            PlaneVector v{S.sparse_algebra(P.A), S.sparse_algebra(P.A)};
            Eigen::VectorXcd lhs = numeric_embed(P, left_mul(a, v));
            EXPECT_LT((lhs - pa * numeric_embed(P, v)).norm(), 1e-8 * (1 + lhs.norm())) << P.label;
        }
    }
}

TEST(Moduli, QuaternionSplittingHasIndexTwo)
{
    auto P = plane_quaternion(2, 3);
    auto q = split_quaternion_basis(P);
    EXPECT_EQ(q.ec * q.ec, AlgebraElement::scalar(P.A, -6));
    EXPECT_TRUE(q.c_relation);
    EXPECT_TRUE(q.direct_sum);
    auto r = lattice_splitting_d2(P, {P.one(), P.zero()}, {P.zero(), P.one()});
    EXPECT_TRUE(r.ok()) << r.failure;
    EXPECT_EQ(r.summands.size(), 2u);
    ASSERT_TRUE(r.index.has_value());
    // Z[sqrt -6] + c Z[sqrt -6] inside <1, c, e, ec>: 1, ec, c, c ec = -2e, so index 2
    EXPECT_EQ(*r.index, 2);
}

TEST(Moduli, DegreeThreeSplittingIsTheWholeOrder)
{
    auto P = example7_variant_plane();
    auto& f = example7_fields();
    std::vector<FieldElement> OL;
    for (int j = 0; j < 6; ++j)
        OL.push_back(f.zeta.pow(j));
    auto r = lattice_splitting_dge3(P, OL, {P.one(), P.zero()}, {P.zero(), P.one()});
    EXPECT_TRUE(r.ok()) << r.failure;
    EXPECT_EQ(r.summands.size(), 3u);
    EXPECT_EQ(r.rank, 36u);
    ASSERT_TRUE(r.index.has_value());
    EXPECT_EQ(*r.index, 1);
    auto e = AlgebraElement::e(P.A);
    EXPECT_THROW(lattice_splitting_dge3(P, OL, {e, P.zero()}, {P.zero(), P.one()}), PreconditionError);
}
