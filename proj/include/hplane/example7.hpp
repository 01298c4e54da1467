#pragma once

// the degree-3 example over Q(sqrt -7) inside Q(zeta_7): tower identities, local invariants,
// the involution criterion and the cusp count

#include "cusps.hpp"
#include "poly.hpp"
#include "standard_planes.hpp"

#include <functional>
#include <numeric>

namespace hplane {

struct Assertion {
    std::string name;
    std::function<bool()> check;
    bool anchored = false; // claimed by the construction, not just bookkeeping
    bool holds = false;
    std::string detail;
};

struct LocalDatum {
    std::string prime;
    int residue_degree = 0;
    int valuation = 0;
    Rational invariant; // mod 1
    std::string method;
};

struct ExampleConclusions {
    bool is_division_algebra = false;
    bool landherr_involution_exists = false;
    long cusp_count = 0;
};

struct ExampleCertificate {
    std::vector<Assertion> tower_checks;
    std::vector<LocalDatum> local_data;
    ExampleConclusions conclusions;

    Assertion& add(std::string name, std::function<bool()> f, bool anchored = true, std::string detail = "")
    {
        Assertion a{std::move(name), std::move(f), anchored, false, std::move(detail)};
        a.holds = a.check();
        tower_checks.push_back(std::move(a));
        return tower_checks.back();
    }
    bool reverify() const
    {
        for (auto& a : tower_checks)
            if (a.check() != a.holds)
                return false;
        return true;
    }
    std::vector<std::string> failed_anchored() const
    {
        std::vector<std::string> out;
        for (auto& a : tower_checks)
            if (a.anchored && !a.holds)
                out.push_back(a.name);
        return out;
    }
    const LocalDatum* datum(const std::string& p) const
    {
        for (auto& d : local_data)
            if (d.prime == p)
                return &d;
        return nullptr;
    }
};

inline Rational mod1(Rational q)
{
    q.canonicalize();
    Integer f = floor_div(q.get_num(), q.get_den());
    return Rational(q - Rational(f));
}

inline int64_t mod_p(const Rational& q, int64_t p)
{
    if (!is_integer(q))
        throw Error("residue of a non-integral coordinate");
    Integer r = q.get_num() % Integer(p);
    long v = r.get_si();
    return v < 0 ? v + p : v;
}

inline int64_t pow_mod(int64_t b, int64_t e, int64_t m)
{
    int64_t r = 1 % m;
    b %= m;
    for (; e > 0; e >>= 1) {
        if (e & 1)
            r = r * b % m;
        b = b * b % m;
    }
    return r;
}

inline long multiplicative_order(long a, long m)
{
    if (std::gcd(a, m) != 1)
        throw PreconditionError("not a unit");
    long k = 1;
    for (long x = a % m; x != 1 % m; x = x * a % m)
        ++k;
    return k;
}

// x in Z[zeta] reduced modulo (p, c(zeta)) with c an irreducible factor of the minimal polynomial mod p
inline FpPoly residue(const FieldElement& x, const FpPoly& c, int64_t p)
{
    FpPoly v;
    for (auto& q : x.c)
        v.push_back(mod_p(q, p));
    fp_trim(v);
    return fp_divmod(v, c, p);
}

struct Example7 {
    const Example7Fields* F = nullptr;
    AlgebraPtr D;
    FieldElement gammaL, gammabarL, eta1, eta2, eta3;
    ExampleCertificate cert;
    FpPoly cube_p, cube_pbar; // factors of Phi_7 mod 2 for the primes over (2, gamma) and (2, gamma bar)
};

inline Example7 build_example()
{
    Example7 ex;
    ex.F = &example7_fields();
    auto& f = *ex.F;
    ex.D = example7_algebra();
    auto z = f.zeta;
    auto L1 = FieldElement::scalar(f.L, 1);
    ex.gammaL = f.Kmap.image;
    ex.gammabarL = z.pow(3) + z.pow(5) + z.pow(6);
    ex.eta1 = z + z.pow(6);
    ex.eta2 = z.pow(2) + z.pow(5);
    ex.eta3 = z.pow(3) + z.pow(4);
    auto& c = ex.cert;
    auto e = AlgebraElement::e(ex.D);
    c.add("Phi7 irreducible over Q", [&f] { return f.L->cert.degrees.size() == 1 || f.L->n == 1; }, true,
          "mod " + std::to_string(f.L->cert.prime));
    c.add("sigma(zeta) = zeta^2", [z, &f] { return f.sigma.apply(z) == z.pow(2); });
    c.add("sigma has order 3", [&f] { return f.sigma.order() == 3; });
    c.add("gamma = zeta + zeta^2 + zeta^4", [&f, z] { return f.Kmap.image == z + z.pow(2) + z.pow(4); });
    c.add("gamma^2 + gamma + 2 = 0", [g = ex.gammaL, L1] { return (g * g + g + Rational(2) * L1).is_zero(); });
    c.add("sigma(gamma) = gamma", [&f, g = ex.gammaL] { return f.sigma.apply(g) == g; });
    c.add("conj(zeta) = zeta^6", [&f, z] { return f.conj.apply(z) == z.pow(6); });
    c.add("conj(gamma) = zeta^3 + zeta^5 + zeta^6",
          [&f, g = ex.gammaL, gb = ex.gammabarL] { return f.conj.apply(g) == gb; });
    c.add("gamma gammabar = 2", [g = ex.gammaL, gb = ex.gammabarL, L1] { return g * gb == Rational(2) * L1; });
    c.add("eta3 = -eta1 - eta2 - 1",
          [a = ex.eta1, b = ex.eta2, d = ex.eta3, L1] { return d == -a - b - L1; });
    c.add("eta1 = zeta + zeta^6 generates l", [&f, a = ex.eta1] { return f.ellmap.image == a; });
    c.add("conj fixes l", [&f, a = ex.eta1, b = ex.eta2] { return f.conj.apply(a) == a && f.conj.apply(b) == b; });
    c.add("sigma permutes eta1 -> eta2 -> eta3",
          [&f, a = ex.eta1, b = ex.eta2, d = ex.eta3] { return f.sigma.apply(a) == b && f.sigma.apply(b) == d; });
    c.add("e^3 = gamma in D", [e, D = ex.D] { return e.pow(3) == AlgebraElement::from_K(D, D->gamma); });
    c.add("e z = sigma(z) e in D", [e, D = ex.D, z, &f] {
        auto x = AlgebraElement::from_L(D, z);
        return e * x == AlgebraElement::from_L(D, f.sigma.apply(z)) * e;
    });
    return ex;
}

// unramified recipe at the primes over 2, residue data at (sqrt -7)
inline void division_certificate(Example7& ex)
{
    auto& f = *ex.F;
    auto& c = ex.cert;
    auto gK = f.gamma;
    c.add("N(gamma) = 2", [gK] { return gK.norm() == Rational(2); });
    c.add("ord_7(2) = 3", [] { return multiplicative_order(2, 7) == 3; });
    auto fac = factor_poly_mod_p(f.L->minpoly, 2);
    bool two_cubics = fac.size() == 2;
    for (auto& x : fac)
        two_cubics = two_cubics && x.factor.size() == 4 && x.multiplicity == 1;
    c.add("Phi7 mod 2 = two irreducible cubics", [two_cubics] { return two_cubics; });
    if (!two_cubics)
        throw Error("Phi7 mod 2 does not split into two cubics");
    FpPoly prod = fp_mul(fac[0].factor, fac[1].factor, 2);
    c.add("product of the cubics re-expands to Phi7 mod 2",
          [prod, mp = f.L->minpoly] { return prod == reduce_mod_p(mp, 2); });

    // P contains gamma, Pbar contains gamma bar
    auto gL = ex.gammaL, gbL = ex.gammabarL;
    for (auto& x : fac) {
        if (residue(gL, x.factor, 2).empty())
            ex.cube_p = x.factor;
        if (residue(gbL, x.factor, 2).empty())
            ex.cube_pbar = x.factor;
    }
    c.add("gamma lies in exactly one prime over 2", [a = ex.cube_p, b = ex.cube_pbar] {
        return !a.empty() && !b.empty() && a != b;
    });
    if (ex.cube_p.empty() || ex.cube_pbar.empty() || ex.cube_p == ex.cube_pbar)
        throw Error("could not separate the primes over 2");

    // Frobenius at P and Pbar: sigma(x) = x^2 mod P on the generators zeta^j
    for (auto* cub : {&ex.cube_p, &ex.cube_pbar}) {
        FpPoly cb = *cub;
        c.add(std::string("sigma is Frobenius mod ") + (cub == &ex.cube_p ? "P" : "Pbar"), [cb, &f] {
            for (int j = 0; j < 6; ++j) {
                auto x = f.zeta.pow(j);
                auto lhs = residue(f.sigma.apply(x), cb, 2);
                auto sq = residue(x * x, cb, 2);
                if (lhs != sq)
                    return false;
            }
            return true;
        });
    }
    // sum over p | 2 of v_p(gamma) f_p = v_2(N gamma) = 1, f_p = 1, gamma in p, so v_p = 1 and v_pbar = 0
    int v2 = 0;
    for (Integer n = gK.norm().get_num(); n % 2 == 0; n /= 2)
        ++v2;
    int vp = residue(gL, ex.cube_p, 2).empty() ? v2 : 0;
    int vpb = v2 - vp;
    c.add("v_p(gamma) = 1 and v_pbar(gamma) = 0", [vp, vpb] { return vp == 1 && vpb == 0; });
    // Frobenius is sigma^1 at both primes: inv = v(gamma) / 3
    ex.cert.local_data.push_back({"p=(2,gamma)", 3, vp, mod1(Rational(vp, 3)), "v(gamma) * 1/3 with Frob = sigma"});
    ex.cert.local_data.push_back(
        {"pbar=(2,gammabar)", 3, vpb, mod1(Rational(vpb, 3)), "v(gamma) * 1/3 with Frob = sigma"});
    auto ip = ex.cert.local_data[0].invariant, ipb = ex.cert.local_data[1].invariant;
    c.add("inv_p = 1/3", [ip] { return ip == Rational(1, 3); });
    c.add("inv_pbar = -1/3", [ipb] { return mod1(ipb + Rational(1, 3)) == 0; });
    bool division = ip != 0 || ipb != 0;
    ex.cert.conclusions.is_division_algebra = division;
    c.add("D is a division algebra (nonzero invariant, prime degree)", [division] { return division; });
}

inline void landherr_certificate(Example7& ex)
{
    auto& f = *ex.F;
    auto& c = ex.cert;
    if (ex.cert.local_data.size() < 2)
        throw PreconditionError("division certificate missing");
    auto ip = ex.cert.local_data[0].invariant, ipb = ex.cert.local_data[1].invariant;
    c.add("inv_p + inv_pbar = 0 mod 1", [ip, ipb] { return mod1(ip + ipb) == 0; });
    auto gK = f.gamma;
    c.add("gcd(N(gamma), 7) = 1", [gK] { return gcd(gK.norm().get_num(), Integer(7)) == 1; });

    // q = (sqrt -7): ramified in K/Q and totally ramified in L/K
    auto kf = factor_poly_mod_p(f.K->minpoly, 7);
    bool q_ram_K = kf.size() == 1 && kf[0].multiplicity == 2;
    auto lf = factor_poly_mod_p(f.L->minpoly, 7);
    bool q_ram_L = lf.size() == 1 && lf[0].multiplicity == 6;
    c.add("(sqrt -7) is the only prime of K over 7", [q_ram_K] { return q_ram_K; }, false);
    c.add("(sqrt -7) is totally ramified in L/K", [q_ram_L] { return q_ram_L; }, false,
          "Phi7 = (x-1)^6 mod 7, so the unramified recipe does not apply at q");
    if (!q_ram_K)
        throw Error("residue computation at 7 failed");
    // gamma mod q is the double root of x^2 + x + 2 mod 7
    int64_t root = (7 - kf[0].factor[0]) % 7;
    int64_t g7 = (mod_p(gK.c[0], 7) + mod_p(gK.c[1], 7) * root) % 7;
    // tame, totally ramified of degree 3: a unit is a local norm iff its residue is a cube
    bool cube = pow_mod(g7, 6 / 3, 7) == 1;
    c.add("gamma mod (sqrt -7) = 3", [g7] { return g7 == 3; }, false);
    c.add("gamma mod (sqrt -7) is a cube in F_7", [cube] { return cube; }, false,
          "cubes in F_7^* are {1, 6}");
    // reciprocity: the invariants of D sum to 0, so inv_q = -(inv_p + inv_pbar)
    Rational iq = mod1(-(ip + ipb));
    c.add("tame norm test agrees with reciprocity", [iq, cube] { return (iq == 0) == cube; }, false);
    ex.cert.local_data.push_back({"q=(sqrt-7)", 1, 0, iq, "reciprocity; tame cube test at a ramified prime"});
    c.add("inv_q = 0 (gamma a unit at q)", [iq] { return iq == 0; }, true,
          "unit does not imply invariant 0 at a ramified prime");
    // each place of Q: the invariants above it sum to 0
    bool landherr = mod1(ip + ipb) == 0 && iq == 0;
    ex.cert.conclusions.landherr_involution_exists = landherr;
    c.add("Landherr involution exists", [landherr] { return landherr; });
}

inline long example_cusp_report(Example7& ex)
{
    auto& c = ex.cert;
    long h = cusp_count(example7_variant_plane());
    auto forms = reduced_definite_forms(-7);
    c.add("reduced forms of disc -7 = {(1,1,2)}",
          [forms] { return forms.size() == 1 && forms[0] == Form{1, 1, 2}; }, false);
    c.add("one cusp", [h] { return h == 1; });
    ex.cert.conclusions.cusp_count = h;
    return h;
}

struct NormProbe {
    long bound = 0;
    long searched = 0;
    std::optional<FieldElement> witness; // omega in l with N(omega) = target
    bool two_inert_in_l = false;
    std::string obstruction;
};

// search omega = (a + b eta1 + c eta2)/den, |a|,|b|,|c| <= bound, den | 2, for N_{l/Q}(omega) = 2
inline NormProbe norm_equation_probe(long bound)
{
    auto& f = example7_fields();
    NormProbe r;
    r.bound = bound;
    auto one = FieldElement::scalar(f.ell, 1);
    auto h1 = FieldElement::generator(f.ell);
    auto h2 = f.ellmap.preimage(f.zeta.pow(2) + f.zeta.pow(5)).value();
    for (long den = 1; den <= 2 && !r.witness; ++den)
        for (long a = -bound; a <= bound && !r.witness; ++a)
            for (long b = -bound; b <= bound && !r.witness; ++b)
                for (long cc = -bound; cc <= bound && !r.witness; ++cc) {
                    if (!a && !b && !cc)
                        continue;
                    ++r.searched;
                    auto w = Rational(1, den) * (Rational(a) * one + Rational(b) * h1 + Rational(cc) * h2);
                    if (w.norm() == Rational(2))
                        r.witness = w;
                }
    auto fac = factor_poly_mod_p(f.ell->minpoly, 2);
    r.two_inert_in_l = fac.size() == 1 && fac[0].factor.size() == 4;
    if (r.two_inert_in_l)
        r.obstruction = "2 is inert in l: v_2(N(omega)) = 3 v_2(omega) is divisible by 3, but v_2(2) = 1";
    return r;
}

inline Example7 run_example7()
{
    auto ex = build_example();
    division_certificate(ex);
    landherr_certificate(ex);
    example_cusp_report(ex);
    return ex;
}

} // namespace hplane
