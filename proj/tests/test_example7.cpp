#include "hplane/example7.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace hplane;

namespace {

const Example7& example()
{
    static const Example7 ex = run_example7();
    return ex;
}

// reduce sum of x^k (k in ks) modulo a monic cubic over F_2, coefficients low degree first
std::vector<int> reduce_f2(const std::vector<int>& ks, const std::vector<int>& cubic)
{
    std::vector<int> a(8, 0);
    for (int k : ks)
        a[k] ^= 1;
    for (int d = 7; d >= 3; --d)
        if (a[d]) {
            for (int i = 0; i <= 3; ++i)
                a[d - 3 + i] ^= cubic[i];
        }
    return {a[0], a[1], a[2]};
}

} // namespace

TEST(Example7, TowerIdentitiesHold)
{
    auto& ex = example();
    for (auto& a : ex.cert.tower_checks)
        if (a.anchored && a.name.find("inv") == std::string::npos && a.name.find("Landherr") == std::string::npos)
            EXPECT_TRUE(a.holds) << a.name;
    EXPECT_TRUE(ex.cert.reverify());
}

TEST(Example7, NormsOfEtaFromTheMinimalPolynomial)
{
    // m(x) = x^3 + x^2 - 2x - 1, prod (eta_i - c) = -m(c)
    auto m = [](long c) { return c * c * c + c * c - 2 * c - 1; };
    auto& f = example7_fields();
    auto eta = FieldElement::generator(f.ell);
    auto one = FieldElement::scalar(f.ell, 1);
    EXPECT_EQ(eta.norm(), Rational(-m(0)));
    EXPECT_EQ((one + eta).norm(), Rational(-m(-1)));
    EXPECT_EQ(eta.norm(), Rational(1));
    EXPECT_EQ((one + eta).norm(), Rational(-1));
    // and the embedded images are zeta^j + zeta^-j
    EXPECT_EQ(f.ellmap.image, example().eta1);
}

TEST(Example7, GammaLiesInExactlyOnePrimeOverTwo)
{
    // gamma = zeta + zeta^2 + zeta^4
    std::vector<int> c1{1, 1, 0, 1}, c2{1, 0, 1, 1};
    auto r1 = reduce_f2({1, 2, 4}, c1), r2 = reduce_f2({1, 2, 4}, c2);
    EXPECT_EQ(r1, (std::vector<int>{0, 0, 0}));
    EXPECT_NE(r2, (std::vector<int>{0, 0, 0}));
    EXPECT_EQ(example().cube_p, (FpPoly{1, 1, 0, 1}));
    EXPECT_EQ(example().cube_pbar, (FpPoly{1, 0, 1, 1}));
}

TEST(Example7, LocalInvariantsAsComputed)
{
    auto& c = example().cert;
    auto* p = c.datum("p=(2,gamma)");
    auto* pb = c.datum("pbar=(2,gammabar)");
    auto* q = c.datum("q=(sqrt-7)");
    ASSERT_TRUE(p && pb && q);
    EXPECT_EQ(p->valuation, 1);
    EXPECT_EQ(pb->valuation, 0);
    EXPECT_EQ(p->invariant, Rational(1, 3));
    // gamma is a unit at pbar, and pbar is unramified, so the invariant there vanishes
    EXPECT_EQ(pb->invariant, Rational(0));
    // reciprocity puts the remaining -1/3 at the ramified prime over 7
    EXPECT_EQ(q->invariant, Rational(2, 3));
    EXPECT_EQ(mod1(p->invariant + pb->invariant + q->invariant), Rational(0));
}

TEST(Example7, TameCubeTestAtSeven)
{
    // gamma = (-1 + sqrt -7)/2 = -1/2 = 3 mod (sqrt -7); cubes in F_7^* are {1, 6}
    long g7 = ((-1 * 4) % 7 + 7) % 7; // 1/2 = 4 mod 7
    EXPECT_EQ(g7, 3);
    std::set<long> cubes;
    for (long x = 1; x < 7; ++x)
        cubes.insert(x * x * x % 7);
    EXPECT_EQ(cubes, (std::set<long>{1, 6}));
    EXPECT_FALSE(cubes.count(g7));
    auto& c = example().cert;
    for (auto& a : c.tower_checks) {
        if (a.name == "tame norm test agrees with reciprocity" || a.name == "gamma mod (sqrt -7) = 3")
            EXPECT_TRUE(a.holds) << a.name;
        if (a.name == "gamma mod (sqrt -7) is a cube in F_7")
            EXPECT_FALSE(a.holds);
    }
}

TEST(Example7, ConclusionsAsComputed)
{
    auto& ex = example();
    EXPECT_TRUE(ex.cert.conclusions.is_division_algebra);
    EXPECT_FALSE(ex.cert.conclusions.landherr_involution_exists);
    EXPECT_EQ(ex.cert.conclusions.cusp_count, 1);
    auto failed = ex.cert.failed_anchored();
    std::set<std::string> got(failed.begin(), failed.end());
    std::set<std::string> want{"inv_pbar = -1/3", "inv_p + inv_pbar = 0 mod 1", "inv_q = 0 (gamma a unit at q)",
                               "Landherr involution exists"};
    EXPECT_EQ(got, want);
}

TEST(Example7, NormEquationHasNoSmallSolution)
{
    auto r = norm_equation_probe(2);
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_TRUE(r.two_inert_in_l);
    EXPECT_EQ(r.searched, 2 * (5 * 5 * 5 - 1));
}

TEST(Example7, Deterministic)
{
    auto a = run_example7(), b = run_example7();
    ASSERT_EQ(a.cert.tower_checks.size(), b.cert.tower_checks.size());
    for (size_t i = 0; i < a.cert.tower_checks.size(); ++i) {
        EXPECT_EQ(a.cert.tower_checks[i].name, b.cert.tower_checks[i].name);
        EXPECT_EQ(a.cert.tower_checks[i].holds, b.cert.tower_checks[i].holds);
    }
    for (size_t i = 0; i < a.cert.local_data.size(); ++i)
        EXPECT_EQ(a.cert.local_data[i].invariant, b.cert.local_data[i].invariant);
}

TEST(Example7, VariantAlgebraCarriesAnInvolution)
{
    auto P = example7_variant_plane();
    ASSERT_TRUE(P.J);
    EXPECT_EQ((*P.J)(P.skew), -P.skew);
    EXPECT_EQ(P.skew * P.skew, AlgebraElement::scalar(P.A, -7));
}
