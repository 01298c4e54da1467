#pragma once

// binary quadratic forms, class numbers, ideals of quadratic fields

#include "standard_planes.hpp"

#include <cmath>
#include <set>

namespace hplane {

struct Form {
    Integer a, b, c;
    Integer disc() const { return b * b - 4 * a * c; }
    friend bool operator==(const Form& x, const Form& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
    friend bool operator<(const Form& x, const Form& y)
    {
        if (x.a != y.a)
            return x.a < y.a;
        if (x.b != y.b)
            return x.b < y.b;
        return x.c < y.c;
    }
    std::string str() const { return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")"; }
    Integer eval(const Integer& x, const Integer& y) const { return a * x * x + b * x * y + c * y * y; }
};

// 2x2 integer matrix acting on (x,y) columns; f o M
struct Mat2 {
    Integer m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    Mat2 operator*(const Mat2& o) const
    {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11, m10 * o.m00 + m11 * o.m10,
                m10 * o.m01 + m11 * o.m11};
    }
};

inline Form transform(const Form& f, const Mat2& m)
{
    // f(m00 x + m01 y, m10 x + m11 y)
    Integer a = f.eval(m.m00, m.m10);
    Integer c = f.eval(m.m01, m.m11);
    Integer b = 2 * f.a * m.m00 * m.m01 + f.b * (m.m00 * m.m11 + m.m01 * m.m10) + 2 * f.c * m.m10 * m.m11;
    return {a, b, c};
}

inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// positive definite reduction with transform: returns (g, M) with g = f o M reduced
inline std::pair<Form, Mat2> reduce_definite(Form f)
{
    if (f.disc() >= 0 || f.a <= 0)
        throw PreconditionError("form is not positive definite");
    Mat2 M;
    for (;;) {
        // b into (-a, a]
        Integer k = floor_div(f.a - f.b, 2 * f.a);
        if (k != 0) {
            Mat2 T{1, k, 0, 1};
            f = transform(f, T);
            M = M * T;
        }
        if (f.a > f.c || (f.a == f.c && f.b < 0)) {
            Mat2 S{0, -1, 1, 0};
            f = transform(f, S);
            M = M * S;
            continue;
        }
        return {f, M};
    }
}

inline bool is_primitive(const Form& f)
{
    return gcd(gcd(f.a, f.b), f.c) == 1;
}

inline void check_discriminant(long D)
{
    if (std::labs(D) > 1000000)
        throw PreconditionError("discriminant outside the supported range");
    if (!is_fundamental_discriminant(D))
        throw PreconditionError("not a fundamental discriminant: " + std::to_string(D));
}

inline std::vector<Form> reduced_definite_forms(long D)
{
    std::vector<Form> out;
    long A = long(std::sqrt(double(-D) / 3.0)) + 1;
    for (long a = 1; a <= A; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            if (((b - D) % 2 + 2) % 2 != 0)
                continue;
            long num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            long c = num / (4 * a);
            if (c < a)
                continue;
            if ((a == c || std::labs(b) == a) && b < 0)
                continue;
            Form f{a, b, c};
            if (is_primitive(f))
                out.push_back(f);
        }
    return out;
}

// ---- indefinite ----

inline bool is_reduced_indefinite(const Form& f, double sq)
{
    double b = f.b.get_d(), a2 = 2 * std::fabs(f.a.get_d());
    return b > 0 && b < sq && sq - b < a2 && a2 < sq + b;
}

// one step of the reduction operator
inline Form rho(const Form& f, long D)
{
    double sq = std::sqrt(double(D));
    Integer c = f.c, ac = abs(c), b = -f.b;
    Integer two_c = 2 * ac;
    // b' = -b mod 2|c|
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), b.get_mpz_t(), two_c.get_mpz_t());
    Integer bp = r;
    if (ac.get_d() > sq) {
        if (bp > ac)
            bp -= two_c;
    } else {
        // sqrt(D) - 2|c| < b' < sqrt(D)
        while (bp.get_d() >= sq)
            bp -= two_c;
        while (bp.get_d() <= sq - two_c.get_d())
            bp += two_c;
    }
    Integer cp = (bp * bp - D) / (4 * c);
    return {c, bp, cp};
}

inline Form reduce_indefinite(Form f, long D)
{
    double sq = std::sqrt(double(D));
    for (int i = 0; i < 10000 && !is_reduced_indefinite(f, sq); ++i)
        f = rho(f, D);
    if (!is_reduced_indefinite(f, sq))
        throw Error("indefinite reduction did not terminate");
    return f;
}

inline std::vector<Form> reduced_indefinite_forms(long D)
{
    std::vector<Form> out;
    double sq = std::sqrt(double(D));
    for (long b = 1; b < sq; ++b) {
        if (((b - D) % 2 + 2) % 2 != 0)
            continue;
        long num = D - b * b; // = -4ac > 0
        if (num % 4 != 0)
            continue;
        long ac = num / 4;
        for (long a = 1; a <= ac; ++a) {
            if (ac % a != 0)
                continue;
            for (long s : {1L, -1L}) {
                Form f{s * a, b, -s * (ac / a)};
                if (is_reduced_indefinite(f, sq) && is_primitive(f))
                    out.push_back(f);
            }
        }
    }
    return out;
}

inline std::vector<std::vector<Form>> indefinite_cycles(long D)
{
    auto forms = reduced_indefinite_forms(D);
    std::set<Form> seen;
    std::vector<std::vector<Form>> cycles;
    for (auto& f : forms) {
        if (seen.count(f))
            continue;
        std::vector<Form> cyc;
        Form g = f;
        do {
            cyc.push_back(g);
            seen.insert(g);
            g = rho(g, D);
        } while (!(g == f));
        cycles.push_back(cyc);
    }
    return cycles;
}

inline Form principal_form(long D)
{
    long b = (((D % 2) + 2) % 2 == 0) ? 0 : 1;
    return {1, b, (b * b - D) / 4};
}

struct ClassNumberResult {
    long h;        // ideal class number
    long h_plus;   // number of proper equivalence classes of forms
    std::vector<Form> representatives;
};

inline ClassNumberResult class_number_full(long D)
{
    check_discriminant(D);
    ClassNumberResult r;
    if (D < 0) {
        r.representatives = reduced_definite_forms(D);
        r.h = r.h_plus = long(r.representatives.size());
        return r;
    }
    auto cycles = indefinite_cycles(D);
    r.h_plus = long(cycles.size());
    for (auto& c : cycles)
        r.representatives.push_back(c.front());
    // norm -1 unit iff -principal is properly equivalent to principal
    Form p = reduce_indefinite(principal_form(D), D);
    Form m = principal_form(D);
    m.a = -m.a;
    m.c = -m.c;
    m = reduce_indefinite(m, D);
    bool neg_unit = false;
    for (auto& c : cycles) {
        bool hp = false, hm = false;
        for (auto& f : c) {
            hp = hp || f == p;
            hm = hm || f == m;
        }
        if (hp && hm)
            neg_unit = true;
    }
    r.h = neg_unit ? r.h_plus : r.h_plus / 2;
    return r;
}

inline long class_number(long D) { return class_number_full(D).h; }

// ---- ideals of a quadratic field, as Z-lattices in the basis (1, w) ----

using QuadFieldPtr = std::shared_ptr<const QuadField>;

struct QuadIdeal {
    QuadFieldPtr Q;
    FieldElement alpha, beta; // Z-basis

    Rational norm() const // index-type norm, positive
    {
        Rational d = alpha.c[0] * beta.c[1] - alpha.c[1] * beta.c[0];
        return d < 0 ? Rational(-d) : d;
    }
    bool contains(const FieldElement& x) const
    {
        auto s = solve_combination({alpha.c, beta.c}, x.c);
        return s && is_integer((*s)[0]) && is_integer((*s)[1]);
    }
    friend bool operator==(const QuadIdeal& I, const QuadIdeal& J)
    {
        return I.contains(J.alpha) && I.contains(J.beta) && J.contains(I.alpha) && J.contains(I.beta);
    }
};

inline QuadIdeal ideal_from_generators(QuadFieldPtr Qp, const std::vector<FieldElement>& gens)
{
    const QuadField& Q = *Qp;
    std::vector<QVec> rows;
    Integer den = 1;
    for (auto& g : gens)
        for (auto& x : {g, g * Q.w}) {
            rows.push_back(x.c);
            Integer l = lcm_of_denominators(x.c);
            den = den * l / gcd(den, l);
        }
    ZMat z;
    for (auto& r : rows) {
        ZVec v;
        for (auto& q : r)
            v.push_back(Rational(q * Rational(den)).get_num());
        z.push_back(v);
    }
    auto h = hnf(z);
    if (h.rank != 2)
        throw PreconditionError("generators span a degenerate lattice");
    QuadIdeal I;
    I.Q = Qp;
    I.alpha = FieldElement(Q.K, {Rational(h.h[0][0]) / Rational(den), Rational(h.h[0][1]) / Rational(den)});
    I.beta = FieldElement(Q.K, {Rational(h.h[1][0]) / Rational(den), Rational(h.h[1][1]) / Rational(den)});
    return I;
}

inline QuadIdeal ideal_mul(const QuadIdeal& I, const QuadIdeal& J)
{
    return ideal_from_generators(I.Q, {I.alpha * J.alpha, I.alpha * J.beta, I.beta * J.alpha, I.beta * J.beta});
}

inline QuadIdeal ideal_conj(const QuadIdeal& I)
{
    return ideal_from_generators(I.Q, {I.Q->conj.apply(I.alpha), I.Q->conj.apply(I.beta)});
}

struct IdealForm {
    Form form;
    FieldElement alpha, beta; // oriented basis giving the form
};

// N(x alpha + y beta) / N(I) with (conj(alpha) beta - alpha conj(beta)) / sqrt D > 0
inline IdealForm ideal_form(const QuadIdeal& I)
{
    const auto& Q = *I.Q;
    auto al = I.alpha, be = I.beta;
    auto orient = [&](const FieldElement& a, const FieldElement& b) {
        auto t = (Q.conj.apply(a) * b - a * Q.conj.apply(b)) / Q.sqrtD;
        return t.c[0];
    };
    if (orient(al, be) < 0)
        std::swap(al, be);
    Rational N = I.norm();
    auto nrm = [&](const FieldElement& x) { return (x * Q.conj.apply(x)).c[0]; };
    auto tr = [&](const FieldElement& x) { return (x + Q.conj.apply(x)).c[0]; };
    Rational a = nrm(al) / N, b = tr(al * Q.conj.apply(be)) / N, c = nrm(be) / N;
    if (!is_integer(a) || !is_integer(b) || !is_integer(c))
        throw Error("ideal form is not integral");
    return {{a.get_num(), b.get_num(), c.get_num()}, al, be};
}

inline Form ideal_class(const QuadIdeal& I)
{
    auto f = ideal_form(I).form;
    if (I.Q->D < 0)
        return reduce_definite(f).first;
    return reduce_indefinite(f, I.Q->D);
}

// generator of a principal ideal in an imaginary quadratic field, by reduction
inline std::optional<FieldElement> principal_generator(const QuadIdeal& I)
{
    if (I.Q->D >= 0)
        throw PreconditionError("principal generator search implemented for imaginary fields");
    auto F = ideal_form(I);
    auto [g, M] = reduce_definite(F.form);
    if (g.a != 1)
        return std::nullopt;
    // f(M00, M10) = 1
    return Rational(M.m00) * F.alpha + Rational(M.m10) * F.beta;
}

inline long quadratic_discriminant(FieldPtr K)
{
    if (K->n != 2)
        throw PreconditionError("field is not quadratic");
    Rational p = K->minpoly.c[1], q = K->minpoly.c[0];
    Rational disc = p * p - 4 * q;
    // clear square denominators, then remove square factors
    Integer num = disc.get_num() * disc.get_den();
    long m = num.get_si();
    long sign = m < 0 ? -1 : 1;
    m = std::labs(m);
    for (long t = 2; t * t <= m; ++t)
        while (m % (t * t) == 0)
            m /= t * t;
    m *= sign;
    return (((m % 4) + 4) % 4 == 1) ? m : 4 * m;
}

} // namespace hplane
