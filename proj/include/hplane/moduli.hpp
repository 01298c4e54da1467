#pragma once

// Riemann forms on D^2, polarization type on order lattices, the numeric representation phi,
// and splittings of the lattice into O_L-stable summands

#include "standard_planes.hpp"
#include "tube_domain.hpp"

namespace hplane {

enum class TCase { D1, D2a, D2b, DGe3 };

inline const char* tcase_name(TCase c)
{
    switch (c) {
    case TCase::D1: return "d1";
    case TCase::D2a: return "d2a";
    case TCase::D2b: return "d2b";
    case TCase::DGe3: return "d_ge3";
    }
    return "?";
}

struct SkewHermitianT {
    std::array<std::array<AlgebraElement, 2>, 2> t;
    TCase kase;
};

inline bool is_skew(const HyperbolicPlane& P, const SkewHermitianT& T)
{
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!(T.t[i][j] + P.inv(T.t[j][i])).is_zero())
                return false;
    return true;
}

// c H with H = [[0,1],[1,0]]
inline SkewHermitianT scaled_H(const HyperbolicPlane& P, const AlgebraElement& c, TCase k)
{
    SkewHermitianT T{{{{P.zero(), c}, {c, P.zero()}}}, k};
    if (!is_skew(P, T))
        throw PreconditionError("T is not skew-hermitian");
    return T;
}

inline SkewHermitianT make_T(const HyperbolicPlane& P, TCase k)
{
    switch (k) {
    case TCase::D1:
    case TCase::DGe3:
        if ((k == TCase::D1) != (P.kase == PlaneCase::D1))
            throw PreconditionError("case does not match the plane");
        return scaled_H(P, P.skew, k);
    case TCase::D2a:
    case TCase::D2b:
        if (P.kase != PlaneCase::D2)
            throw PreconditionError("case does not match the plane");
        return scaled_H(P, k == TCase::D2a ? AlgebraElement::from_L(P.A, FieldElement::generator(P.A->L))
                                           : AlgebraElement::e(P.A),
                        k);
    }
    throw PreconditionError("unknown case");
}

// E(al, be) = Tr_{K/Q} trd(sum al_i t_ij J(be_j))
inline Rational riemann_form(const HyperbolicPlane& P, const PlaneVector& al, const PlaneVector& be,
                             const SkewHermitianT& T)
{
    std::array<const AlgebraElement*, 2> a{&al.x1, &al.x2}, b{&be.x1, &be.x2};
    AlgebraElement s = P.zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            s = s + *a[i] * T.t[i][j] * P.inv(*b[j]);
    return s.reduced_trace().trace();
}

inline std::vector<PlaneVector> order_pairs(const HyperbolicPlane& P, const std::vector<AlgebraElement>& basis)
{
    std::vector<PlaneVector> out;
    for (auto& b : basis)
        out.push_back({b, P.zero()});
    for (auto& b : basis)
        out.push_back({P.zero(), b});
    return out;
}

struct GramReport {
    std::vector<std::vector<Rational>> raw;
    ZMat gram; // scaled
    Rational scale;
    ZVec elementary_divisors;
    bool antisymmetric = false;
    bool degenerate = false;
    bool principal = false;
};

inline GramReport polarization_type(const HyperbolicPlane& P, const std::vector<AlgebraElement>& order_basis,
                                    const SkewHermitianT& T)
{
    QMat rows;
    for (auto& b : order_basis)
        rows.push_back(b.flat());
    if (rank(rows) != order_basis.size())
        throw PreconditionError("order basis is not linearly independent");
    ZLattice lat(order_basis);
    for (auto& x : order_basis)
        for (auto& y : order_basis)
            if (!lat.contains(x * y))
                throw PreconditionError("order basis is not closed under multiplication");

    auto vs = order_pairs(P, order_basis);
    size_t n = vs.size();
    GramReport r;
    r.raw.assign(n, std::vector<Rational>(n));
    Integer g = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            r.raw[i][j] = riemann_form(P, vs[i], vs[j], T);
            if (!is_integer(r.raw[i][j]))
                throw Error("Riemann form is not integral on the order lattice");
            g = gcd(g, r.raw[i][j].get_num());
        }
    r.antisymmetric = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            r.antisymmetric = r.antisymmetric && r.raw[i][j] == -r.raw[j][i];
    if (g == 0) {
        r.degenerate = true;
        r.scale = 0;
        return r;
    }
    r.scale = Rational(1, 1) / Rational(g);
    r.gram.assign(n, ZVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            r.gram[i][j] = r.raw[i][j].get_num() / g;
    r.elementary_divisors = smith_diagonal(r.gram);
    r.degenerate = r.elementary_divisors.size() < n;
    for (auto& x : r.elementary_divisors)
        if (x == 0)
            r.degenerate = true;
    r.principal = !r.degenerate;
    for (auto& x : r.elementary_divisors)
        r.principal = r.principal && abs(x) == 1;
    return r;
}

// ---- numeric representation on D^2 tensored up to the real places ----

// d = 2: eigenvector of the complex structure X -> X J, J = M(ec)/sqrt(ab)
inline Eigen::VectorXcd complex_structure_vector(const HyperbolicPlane& P, const Place& v)
{
    CMat J = realize(P.skew, v);
    double ab = (P.qa * P.qb).embed(0).real();
    J /= std::sqrt(ab);
    Eigen::ComplexEigenSolver<CMat> es(J);
    for (int i = 0; i < 2; ++i)
        if (std::abs(es.eigenvalues()(i) - cplx(0, 1)) < 1e-8)
            return es.eigenvectors().col(i);
    throw Error("complex structure has no eigenvalue i");
}

inline int phi_dimension(const HyperbolicPlane& P)
{
    int d = P.d(), f = P.f();
    if (P.kase == PlaneCase::D1)
        return 2 * f;
    if (P.kase == PlaneCase::D2)
        return 4 * f;
    return 2 * d * d * f;
}

inline CMat phi_numeric(const HyperbolicPlane& P, const AlgebraElement& a)
{
    auto places = real_places(P);
    int N = phi_dimension(P), blk = N / int(places.size());
    CMat out = CMat::Zero(N, N);
    for (size_t k = 0; k < places.size(); ++k) {
        CMat M = realize(a, places[k]);
        // I kron M: one copy of M per column of each coordinate
        int copies = blk / int(M.rows());
        for (int c = 0; c < copies; ++c)
            out.block(k * blk + c * M.rows(), k * blk + c * M.rows(), M.rows(), M.rows()) = M;
    }
    return out;
}

// coordinates of v in C^N compatible with phi_numeric
inline Eigen::VectorXcd numeric_embed(const HyperbolicPlane& P, const PlaneVector& v)
{
    auto places = real_places(P);
    int N = phi_dimension(P), blk = N / int(places.size());
    Eigen::VectorXcd out(N);
    for (size_t k = 0; k < places.size(); ++k) {
        int pos = int(k) * blk;
        for (auto* x : {&v.x1, &v.x2}) {
            CMat M = realize(*x, places[k]);
            if (P.kase == PlaneCase::D2) {
                Eigen::VectorXcd u = M * complex_structure_vector(P, places[k]);
                out.segment(pos, 2) = u;
                pos += 2;
            } else {
                // column-major vec, so vec(A X) = (I kron A) vec(X)
                Eigen::Map<Eigen::VectorXcd> flat(M.data(), M.size());
                out.segment(pos, M.size()) = flat;
                pos += int(M.size());
            }
        }
    }
    return out;
}

// ---- lattice splittings ----

inline QVec flat(const PlaneVector& v)
{
    QVec a = v.x1.flat(), b = v.x2.flat();
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline PlaneVector left_mul(const AlgebraElement& a, const PlaneVector& v) { return {a * v.x1, a * v.x2}; }

inline bool integral_span_contains(const QMat& rows, const QVec& x)
{
    auto s = solve_combination(rows, x);
    if (!s)
        return false;
    for (auto& q : *s)
        if (!is_integer(q))
            return false;
    return true;
}

struct SplitReport {
    std::string kase;
    std::vector<std::vector<PlaneVector>> summands;
    size_t rank = 0;
    size_t generators = 0;
    bool independent = false;
    bool spans = false;
    std::vector<bool> ol_stable;
    std::optional<Integer> index; // [Delta : Delta']
    std::string failure;
    bool ok() const
    {
        bool s = independent && spans && failure.empty();
        for (bool b : ol_stable)
            s = s && b;
        return s;
    }
};

// Lambda' = Delta' x1 + Delta' x2 with Delta' = sum_j t^j O_L; summands t^j (O_L x1 + O_L x2)
inline SplitReport split_lattice(const std::vector<AlgebraElement>& OL, const AlgebraElement& t, int d,
                                 const PlaneVector& x1, const PlaneVector& x2)
{
    SplitReport r;
    std::vector<AlgebraElement> delta;
    AlgebraElement tj = AlgebraElement::scalar(t.A, 1);
    for (int j = 0; j < d; ++j) {
        std::vector<PlaneVector> s;
        for (auto* x : {&x1, &x2})
            for (auto& o : OL)
                s.push_back(left_mul(tj, left_mul(o, *x)));
        r.summands.push_back(s);
        for (auto& o : OL)
            delta.push_back(tj * o);
        tj = tj * t;
    }
    QMat all;
    for (auto& s : r.summands)
        for (auto& v : s)
            all.push_back(flat(v));
    r.generators = all.size();
    r.rank = rank(all);
    r.independent = r.rank == all.size();
    // Lambda' from the order generators directly
    r.spans = true;
    QMat gens;
    for (auto& b : delta)
        for (auto* x : {&x1, &x2}) {
            auto v = flat(left_mul(b, *x));
            gens.push_back(v);
            if (!integral_span_contains(all, v)) {
                r.spans = false;
                r.failure = "generator of Lambda' outside the sum of summands";
            }
        }
    for (auto& row : all)
        if (!integral_span_contains(gens, row)) {
            r.spans = false;
            r.failure = "summand vector outside Lambda'";
        }
    for (auto& s : r.summands) {
        QMat rows;
        for (auto& v : s)
            rows.push_back(flat(v));
        bool stable = true;
        for (auto& o : OL)
            for (auto& v : s)
                if (!integral_span_contains(rows, flat(left_mul(o, v))))
                    stable = false;
        r.ol_stable.push_back(stable);
    }
    return r;
}

inline std::optional<Integer> order_index(const std::vector<AlgebraElement>& big, const std::vector<AlgebraElement>& small)
{
    QMat B, S;
    for (auto& b : big)
        B.push_back(b.flat());
    for (auto& s : small)
        S.push_back(s.flat());
    QMat C;
    for (auto& s : S) {
        auto c = solve_combination(B, s);
        if (!c)
            return std::nullopt;
        for (auto& q : *c)
            if (!is_integer(q))
                return std::nullopt;
        C.push_back(*c);
    }
    if (C.size() != B.size())
        return std::nullopt;
    Rational dt = det(C);
    return abs(dt.get_num());
}

struct QuaternionSplit {
    AlgebraElement ec, c;
    std::vector<AlgebraElement> OL; // Z-basis of the ring of integers of k(ec)
    bool ec_square = false;         // (ec)^2 = -ab
    bool c_relation = false;        // c (ec) = -a e
    bool direct_sum = false;        // L + cL = D, rank 4
};

inline QuaternionSplit split_quaternion_basis(const HyperbolicPlane& P)
{
    if (P.kase != PlaneCase::D2)
        throw PreconditionError("quaternion splitting needs d = 2");
    QuaternionSplit q;
    auto A = P.A;
    q.c = AlgebraElement::from_L(A, FieldElement::generator(A->L));
    auto e = AlgebraElement::e(A);
    q.ec = e * q.c;
    auto one = P.one();
    auto ab = P.kmap.apply(P.qa * P.qb);
    q.ec_square = q.ec * q.ec == -AlgebraElement::from_L(A, ab);
    q.c_relation = q.c * q.ec == -AlgebraElement::from_L(A, P.kmap.apply(P.qa)) * e;
    QMat r{one.flat(), q.ec.flat(), q.c.flat(), (q.c * q.ec).flat()};
    q.direct_sum = rank(r) == 4;
    if (P.kmap.source->n != 1)
        throw PreconditionError("only k = Q is supported");
    long m = -(P.qa * P.qb).c[0].get_num().get_si();
    if (!is_squarefree(m))
        throw PreconditionError("-ab is not squarefree");
    long r4 = ((m % 4) + 4) % 4;
    q.OL = {one, r4 == 1 ? Rational(1, 2) * (one + q.ec) : q.ec};
    return q;
}

inline SplitReport lattice_splitting_d2(const HyperbolicPlane& P, const PlaneVector& x1, const PlaneVector& x2)
{
    auto q = split_quaternion_basis(P);
    auto r = split_lattice(q.OL, q.c, 2, x1, x2);
    r.kase = "d2";
    std::vector<AlgebraElement> dp{q.OL[0], q.OL[1], q.c * q.OL[0], q.c * q.OL[1]};
    r.index = order_index(P.order.basis, dp);
    return r;
}

inline SplitReport lattice_splitting_dge3(const HyperbolicPlane& P, const std::vector<FieldElement>& OL,
                                          const PlaneVector& x1, const PlaneVector& x2)
{
    if (P.kase != PlaneCase::D3plus)
        throw PreconditionError("case d >= 3 needs such a plane");
    for (auto* x : {&x1, &x2})
        if (!x->x1.in_L() || !x->x2.in_L())
            throw PreconditionError("x must lie in L^2");
    std::vector<AlgebraElement> ol;
    for (auto& o : OL)
        ol.push_back(AlgebraElement::from_L(P.A, o));
    auto r = split_lattice(ol, AlgebraElement::e(P.A), P.d(), x1, x2);
    r.kase = "d_ge3";
    std::vector<AlgebraElement> dp;
    auto tj = P.one();
    for (int j = 0; j < P.d(); ++j, tj = tj * AlgebraElement::e(P.A))
        for (auto& o : ol)
            dp.push_back(tj * o);
    r.index = order_index(P.order.basis, dp);
    return r;
}

} // namespace hplane
