#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace hplane {

using Integer = mpz_class;
using Rational = mpq_class;
using QVec = std::vector<Rational>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FieldMismatch : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

inline Rational rat(long n, long d = 1)
{
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline Rational parse_rational(const std::string& s)
{
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw ParseError("bad rational literal '" + s + "'");
    if (q.get_den() == 0)
        throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

inline bool is_integer(const Rational& q)
{
    return q.get_den() == 1;
}

inline Integer lcm_of_denominators(const QVec& v)
{
    Integer l = 1;
    for (auto const& x : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline bool is_zero(const QVec& v)
{
    for (auto const& x : v)
        if (x != 0)
            return false;
    return true;
}

} // namespace hplane
