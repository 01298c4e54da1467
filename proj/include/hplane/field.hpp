#pragma once

// absolute number fields in a power basis, tower maps, automorphisms

#include "linalg.hpp"
#include "poly.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <memory>

namespace hplane {

using cplx = std::complex<double>;

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

struct IrreducibilityCertificate {
    int64_t prime = 0;          // 0 for degree one
    std::vector<int> degrees;   // factor degrees mod prime
    Rational coefficient_bound; // bound on coefficients of any integral factor
};

class NumberField {
  public:
    std::string label;
    QPoly minpoly;
    int n;
    QMat high_powers; // theta^(n+k) in the power basis, k = 0..n-2
    std::vector<cplx> roots;
    IrreducibilityCertificate cert;

    static FieldPtr make(std::string label, const QVec& minpoly_coeffs)
    {
        return std::make_shared<const NumberField>(std::move(label), QPoly(minpoly_coeffs));
    }

    NumberField(std::string lab, QPoly f) : label(std::move(lab)), minpoly(std::move(f))
    {
        n = minpoly.degree();
        if (n < 1)
            throw PreconditionError("minimal polynomial of degree < 1");
        if (minpoly.lead() != 1)
            throw PreconditionError("minimal polynomial is not monic");
        cert = certify_irreducible();
        // theta^n = -sum c_i theta^i
        QVec cur(n);
        for (int i = 0; i < n; ++i)
            cur[i] = -minpoly.c[i];
        for (int k = 0; k + 1 < n; ++k) {
            high_powers.push_back(cur);
            QVec nxt(n, Rational(0));
            for (int i = 0; i + 1 < n; ++i)
                nxt[i + 1] = cur[i];
            for (int i = 0; i < n; ++i)
                nxt[i] -= cur[n - 1] * minpoly.c[i];
            cur = nxt;
        }
        compute_roots();
    }

    QVec reduce(const QVec& prod) const
    {
        QVec r(n, Rational(0));
        for (size_t i = 0; i < prod.size(); ++i) {
            if (prod[i] == 0)
                continue;
            if (int(i) < n)
                r[i] += prod[i];
            else
                for (int j = 0; j < n; ++j)
                    r[j] += prod[i] * high_powers[i - n][j];
        }
        return r;
    }

    QVec mul(const QVec& a, const QVec& b) const
    {
        QVec p(2 * n - 1, Rational(0));
        for (int i = 0; i < n; ++i) {
            if (a[i] == 0)
                continue;
            for (int j = 0; j < n; ++j)
                p[i + j] += a[i] * b[j];
        }
        return reduce(p);
    }

  private:
    IrreducibilityCertificate certify_irreducible() const
    {
        IrreducibilityCertificate c;
        if (n == 1)
            return c;
        // integral monic model g(x) = s^n f(x/s)
        Integer s = lcm_of_denominators(minpoly.c);
        // find s with s^(n-i) c_i integral for all i
        Integer sc = 1;
        for (;;) {
            bool ok = true;
            Integer pw = 1;
            for (int i = n; i-- > 0;) {
                pw *= sc;
                Rational v = minpoly.c[i] * Rational(pw);
                if (!is_integer(v)) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                break;
            sc *= s;
        }
        QVec gi(n + 1);
        {
            Integer pw = 1;
            gi[n] = 1;
            for (int i = n; i-- > 0;) {
                pw *= sc;
                gi[i] = minpoly.c[i] * Rational(pw);
            }
        }
        QPoly g(gi);
        // a reducible g has a monic integral factor of degree m <= n/2 whose
        // coefficients are bounded by binom(m, m/2) * ||g||_2
        Rational norm2 = 0;
        for (auto& x : g.c)
            norm2 += x * x;
        int m2 = n / 2;
        double binom = 1;
        for (int i = 1; i <= m2 / 2; ++i)
            binom = binom * (m2 - m2 / 2 + i) / i;
        double nb = std::sqrt(norm2.get_d()) * binom;
        Integer bound = Integer(std::ceil(nb)) + 1;
        c.coefficient_bound = bound;
        for (int64_t p = 2 * bound.get_si() + 1; p < 1000; ++p) {
            bool prime = true;
            for (int64_t t = 2; t * t <= p; ++t)
                if (p % t == 0)
                    prime = false;
            if (!prime)
                continue;
            std::vector<FpFactor> fac;
            try {
                fac = factor_poly_mod_p(g, p);
            } catch (const PreconditionError&) {
                continue;
            }
            bool sqfree = true;
            for (auto& f : fac)
                if (f.multiplicity > 1)
                    sqfree = false;
            if (!sqfree)
                continue;
            // recombination: every proper subset lifted symmetrically must fail to divide
            size_t m = fac.size();
            for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
                FpPoly prod{1};
                for (size_t i = 0; i < m; ++i)
                    if (mask >> i & 1)
                        prod = fp_mul(prod, fac[i].factor, p);
                QVec lift;
                for (auto x : prod)
                    lift.push_back(Rational(x > p / 2 ? x - p : x));
                auto [q, r] = QPoly::divmod(g, QPoly(lift));
                if (r.is_zero())
                    throw PreconditionError("minimal polynomial of " + label + " is reducible");
            }
            c.prime = p;
            for (auto& f : fac)
                c.degrees.push_back(int(f.factor.size()) - 1);
            return c;
        }
        throw PreconditionError("could not certify irreducibility of " + label);
    }

    void compute_roots()
    {
        using ld = long double;
        if (n == 1) {
            roots = {cplx(-minpoly.c[0].get_d(), 0)};
            return;
        }
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
        for (int i = 1; i < n; ++i)
            comp(i, i - 1) = 1;
        for (int i = 0; i < n; ++i)
            comp(i, n - 1) = -minpoly.c[i].get_d();
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        std::vector<std::complex<ld>> cf;
        for (auto& x : minpoly.c)
            cf.push_back(std::complex<ld>(x.get_d(), 0));
        for (int i = 0; i < n; ++i) {
            std::complex<ld> z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
            for (int it = 0; it < 50; ++it) {
                std::complex<ld> v = 0, dv = 0;
                for (size_t k = cf.size(); k-- > 0;) {
                    dv = dv * z + v;
                    v = v * z + cf[k];
                }
                if (std::abs(dv) == 0)
                    break;
                auto step = v / dv;
                z -= step;
                if (std::abs(step) < 1e-30L)
                    break;
            }
            if (std::fabs(z.imag()) < 1e-14L * (1 + std::abs(z)))
                z = std::complex<ld>(z.real(), 0);
            roots.push_back(cplx(double(z.real()), double(z.imag())));
        }
        auto arg = [](cplx z) {
            if (z.imag() == 0)
                return z.real() >= 0 ? 0.0 : M_PI;
            double a = std::arg(z);
            return a < 0 ? a + 2 * M_PI : a;
        };
        std::sort(roots.begin(), roots.end(), [&](cplx a, cplx b) {
            double da = arg(a), db = arg(b);
            if (std::fabs(da - db) > 1e-9)
                return da < db;
            return std::abs(a) < std::abs(b);
        });
    }
};

inline QVec unit_vec(int n, int i)
{
    QVec v(n, Rational(0));
    v[i] = 1;
    return v;
}

class FieldElement {
  public:
    FieldPtr F;
    QVec c;

    FieldElement() = default;
    FieldElement(FieldPtr f, QVec coords) : F(std::move(f)), c(std::move(coords))
    {
        if (int(c.size()) > F->n)
            throw PreconditionError("too many coordinates for field " + F->label);
        c.resize(F->n, Rational(0));
    }
    static FieldElement scalar(FieldPtr f, const Rational& q)
    {
        QVec v(f->n, Rational(0));
        v[0] = q;
        return FieldElement(f, v);
    }
    static FieldElement generator(FieldPtr f)
    {
        if (f->n == 1)
            return scalar(f, -f->minpoly.c[0]);
        return FieldElement(f, unit_vec(f->n, 1));
    }
    // power basis polynomial evaluated at the generator
    static FieldElement from_poly(FieldPtr f, const QVec& poly)
    {
        QVec p = poly;
        if (int(p.size()) < f->n)
            p.resize(f->n, Rational(0));
        if (int(p.size()) > 2 * f->n - 1) {
            auto [q, r] = QPoly::divmod(QPoly(p), f->minpoly);
            QVec v = r.c;
            v.resize(f->n, Rational(0));
            return FieldElement(f, v);
        }
        return FieldElement(f, f->reduce(p));
    }

    bool is_zero() const { return hplane::is_zero(c); }

    void same_field(const FieldElement& o) const
    {
        if (F != o.F)
            throw FieldMismatch("field mismatch: " + (F ? F->label : "?") + " vs " + (o.F ? o.F->label : "?"));
    }
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b)
    {
        a.same_field(b);
        QVec r(a.c);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] += b.c[i];
        return FieldElement(a.F, r);
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b)
    {
        a.same_field(b);
        QVec r(a.c);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] -= b.c[i];
        return FieldElement(a.F, r);
    }
    FieldElement operator-() const
    {
        QVec r(c);
        for (auto& x : r)
            x = -x;
        return FieldElement(F, r);
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b)
    {
        a.same_field(b);
        return FieldElement(a.F, a.F->mul(a.c, b.c));
    }
    friend FieldElement operator*(const Rational& q, const FieldElement& b)
    {
        QVec r(b.c);
        for (auto& x : r)
            x *= q;
        return FieldElement(b.F, r);
    }
    friend bool operator==(const FieldElement& a, const FieldElement& b)
    {
        a.same_field(b);
        return a.c == b.c;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    QMat mult_matrix() const // rows: theta^i * self
    {
        QMat m;
        for (int i = 0; i < F->n; ++i)
            m.push_back(F->mul(unit_vec(F->n, i), c));
        return m;
    }
    FieldElement inverse() const
    {
        if (is_zero())
            throw DivisionByZero("inverse of zero in " + F->label);
        auto sol = solve_combination(mult_matrix(), unit_vec(F->n, 0));
        return FieldElement(F, *sol);
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b)
    {
        a.same_field(b);
        return a * b.inverse();
    }
    FieldElement pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        FieldElement r = scalar(F, 1), b = *this;
        while (e) {
            if (e & 1)
                r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    // absolute norm and trace via the multiplication matrix
    Rational norm() const { return det(mult_matrix()); }
    Rational trace() const
    {
        auto m = mult_matrix();
        Rational t = 0;
        for (int i = 0; i < F->n; ++i)
            t += m[i][i];
        return t;
    }
    bool is_rational() const
    {
        for (int i = 1; i < F->n; ++i)
            if (c[i] != 0)
                return false;
        return true;
    }

    cplx embed(size_t i) const
    {
        using ld = long double;
        std::complex<ld> r = F->roots.at(i);
        std::complex<ld> acc = 0;
        for (size_t k = c.size(); k-- > 0;)
            acc = acc * r + std::complex<ld>(c[k].get_d(), 0);
        return cplx(double(acc.real()), double(acc.imag()));
    }
    std::vector<cplx> embed_all() const
    {
        std::vector<cplx> v;
        for (size_t i = 0; i < F->roots.size(); ++i)
            v.push_back(embed(i));
        return v;
    }
};

// field homomorphism source -> target given by the image of the generator
class TowerMap {
  public:
    FieldPtr source, target;
    FieldElement image;
    QMat matrix; // row i = image^i

    TowerMap() = default;
    TowerMap(FieldPtr s, FieldElement img) : source(std::move(s)), target(img.F), image(std::move(img))
    {
        if (target->n % source->n != 0)
            throw PreconditionError("degree of " + source->label + " does not divide degree of " + target->label);
        FieldElement p = FieldElement::scalar(target, 1);
        for (int i = 0; i < source->n; ++i) {
            matrix.push_back(p.c);
            p = p * image;
        }
        // minpoly(image) == 0
        FieldElement acc = FieldElement::scalar(target, 0);
        FieldElement pw = FieldElement::scalar(target, 1);
        for (int i = 0; i <= source->n; ++i) {
            acc = acc + source->minpoly[i] * pw;
            pw = pw * image;
        }
        if (!acc.is_zero())
            throw PreconditionError("generator image is not a root of the minimal polynomial of " + source->label);
    }
    FieldElement apply(const FieldElement& x) const
    {
        if (x.F != source)
            throw FieldMismatch("tower map applied outside its source " + source->label);
        return FieldElement(target, vec_mat(x.c, matrix));
    }
    std::optional<FieldElement> preimage(const FieldElement& y) const
    {
        if (y.F != target)
            throw FieldMismatch("preimage outside target " + target->label);
        auto s = solve_combination(matrix, y.c);
        if (!s)
            return std::nullopt;
        return FieldElement(source, *s);
    }
    bool contains(const FieldElement& y) const { return preimage(y).has_value(); }
    FieldElement descend(const FieldElement& y) const
    {
        auto p = preimage(y);
        if (!p)
            throw PreconditionError("element does not lie in the image of " + source->label);
        return *p;
    }
    TowerMap then(const TowerMap& next) const // x -> next(this(x))
    {
        return TowerMap(source, next.apply(image));
    }
};

class Automorphism : public TowerMap {
  public:
    Automorphism() = default;
    Automorphism(FieldElement img) : TowerMap(img.F, img) {}
    static Automorphism identity(FieldPtr f) { return Automorphism(FieldElement::generator(f)); }

    Automorphism compose(const Automorphism& o) const // this o o
    {
        return Automorphism(apply(o.image));
    }
    Automorphism power(long k) const
    {
        long ord = order();
        k %= ord;
        if (k < 0)
            k += ord;
        Automorphism r = identity(source);
        for (long i = 0; i < k; ++i)
            r = compose(r);
        return r;
    }
    FieldElement apply_power(const FieldElement& x, long k) const
    {
        long ord = order();
        k %= ord;
        if (k < 0)
            k += ord;
        FieldElement r = x;
        for (long i = 0; i < k; ++i)
            r = apply(r);
        return r;
    }
    long order() const
    {
        if (order_ > 0)
            return order_;
        FieldElement g = FieldElement::generator(source), x = image;
        long k = 1;
        while (x != g) {
            x = apply(x);
            if (++k > 4 * source->n)
                throw PreconditionError("automorphism of infinite order");
        }
        order_ = k;
        return k;
    }
    bool fixes(const FieldElement& x) const { return apply(x) == x; }

  private:
    mutable long order_ = 0;
};

// big / sub cyclic with generator sigma
class RelativeExtension {
  public:
    TowerMap inclusion;
    Automorphism sigma;
    long degree;

    RelativeExtension(TowerMap inc, Automorphism s) : inclusion(std::move(inc)), sigma(std::move(s))
    {
        if (sigma.source != inclusion.target)
            throw FieldMismatch("automorphism not on the top field");
        degree = sigma.order();
        if (degree * inclusion.source->n != inclusion.target->n)
            throw PreconditionError("automorphism orbit does not generate the extension");
        if (!sigma.fixes(inclusion.image))
            throw PreconditionError("automorphism does not fix the subfield");
    }
    FieldElement trace_top(const FieldElement& x) const
    {
        FieldElement s = x, y = x;
        for (long i = 1; i < degree; ++i) {
            y = sigma.apply(y);
            s = s + y;
        }
        return s;
    }
    FieldElement norm_top(const FieldElement& x) const
    {
        FieldElement s = x, y = x;
        for (long i = 1; i < degree; ++i) {
            y = sigma.apply(y);
            s = s * y;
        }
        return s;
    }
    FieldElement trace(const FieldElement& x) const { return inclusion.descend(trace_top(x)); }
    FieldElement norm(const FieldElement& x) const { return inclusion.descend(norm_top(x)); }
};

inline FieldPtr rationals()
{
    static FieldPtr q = NumberField::make("Q", {Rational(0), Rational(1)});
    return q;
}

inline TowerMap rational_inclusion(FieldPtr target)
{
    return TowerMap(rationals(), FieldElement::scalar(target, 0));
}

} // namespace hplane
