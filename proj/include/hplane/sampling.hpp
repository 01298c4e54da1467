#pragma once

// seeded random elements for property checks

#include "hyperbolic_plane.hpp"

#include <random>

namespace hplane {

class Sampler {
  public:
    std::mt19937_64 rng;
    explicit Sampler(uint64_t seed) : rng(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    Rational rational(long h = 3)
    {
        return rat(integer(-h, h), integer(1, 2));
    }
    FieldElement field(FieldPtr F, long h = 3, bool integral = true)
    {
        QVec v;
        for (int i = 0; i < F->n; ++i)
            v.push_back(integral ? Rational(integer(-h, h)) : rational(h));
        return FieldElement(F, v);
    }
    FieldElement nonzero_field(FieldPtr F, long h = 3)
    {
        for (;;) {
            auto x = field(F, h);
            if (!x.is_zero())
                return x;
        }
    }
    AlgebraElement algebra(AlgebraPtr A, long h = 2, bool integral = true)
    {
        std::vector<FieldElement> z;
        for (int i = 0; i < A->d; ++i)
            z.push_back(field(A->L, h, integral));
        return AlgebraElement(A, z);
    }
    // sparse element: few nonzero Q-coordinates, keeps numbers small
    AlgebraElement sparse_algebra(AlgebraPtr A, int terms = 2, long h = 2)
    {
        QVec v(A->qdim(), Rational(0));
        for (int t = 0; t < terms; ++t)
            v[integer(0, long(A->qdim()) - 1)] += Rational(integer(-h, h));
        return AlgebraElement::unflat(A, v);
    }
    AlgebraElement invertible(AlgebraPtr A, int terms = 2)
    {
        for (;;) {
            auto x = sparse_algebra(A, terms);
            if (x.is_zero())
                continue;
            try {
                x.inverse();
                return x;
            } catch (const ZeroDivisor&) {
            }
        }
    }

    // skew element b = x - J(x)
    AlgebraElement skew(const HyperbolicPlane& P, int terms = 2)
    {
        auto x = sparse_algebra(P.A, terms);
        return x - P.inv(x);
    }

    // product of unipotent, Levi and Weyl generators
    GroupMatrix unitary(const HyperbolicPlane& P, int len = 3, bool integral = false)
    {
        GroupMatrix g = P.identity();
        GroupMatrix w{P.zero(), P.one(), P.one(), P.zero()};
        for (int i = 0; i < len; ++i) {
            int kind = integer(0, integral ? 1 : 2);
            if (kind == 0) {
                auto b = skew(P, 1);
                if (integral && !P.order.contains(b))
                    b = P.zero();
                g = P.mul(g, {P.one(), b, P.zero(), P.one()});
            } else if (kind == 1) {
                g = P.mul(g, w);
            } else {
                auto a = invertible(P.A, 1);
                g = P.mul(g, {a, P.zero(), P.zero(), P.inv(a).inverse()});
            }
        }
        return g;
    }
};

} // namespace hplane
