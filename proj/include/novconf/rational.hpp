#ifndef NOVCONF_RATIONAL_HPP
#define NOVCONF_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace novconf {

// Exact arithmetic over a field of characteristic zero. Values are always
// normalized: gcd(|num|, den) = 1, den > 0, zero is 0/1.
using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rat: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(Integer(num), Integer(den));
}

// Standard binomial coefficient; 0 outside 0 <= k <= n. n must be >= 0.
inline Integer binomial(long long n, long long k)
{
    if (n < 0)
        throw std::invalid_argument("binomial: negative n");
    if (k < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    Integer r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= Integer(n - k + i);
        r /= Integer(i);
    }
    return r;
}

// Falling factorial n(n-1)...(n-j+1); empty product for j = 0.
inline Integer falling(long long n, long long j)
{
    if (j < 0)
        throw std::invalid_argument("falling: negative j");
    Integer r = 1;
    for (long long i = 0; i < j; ++i)
        r *= Integer(n - i);
    return r;
}

inline Integer factorial(long long n)
{
    return falling(n, n);
}

// Generalized binomial C(n, s) = n(n-1)...(n-s+1)/s!, defined for all
// integer n (needed for coefficient products indexed over Z).
inline Rational binomial_general(long long n, long long s)
{
    if (s < 0)
        return Rational(0);
    return Rational(falling(n, s), factorial(s));
}

inline std::string to_string(const Rational& r)
{
    return r.str();
}

} // namespace novconf

#endif
