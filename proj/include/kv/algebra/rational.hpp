#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kv {

// Exact rationals. mpq_class keeps values canonical (lowest terms, positive
// denominator) after every arithmetic operation, but the two-argument
// constructor does not canonicalise; use ratio() for p/q.
using Rational = mpq_class;

inline Rational ratio(long num, long den)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Builds a canonical rational from decimal numerator/denominator strings.
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational make_rational(std::string_view num, std::string_view den = "1");

std::string numerator_string(const Rational& q);
std::string denominator_string(const Rational& q);

// "p/q" or "p" when q = 1.
std::string to_string(const Rational& q);

inline Rational factorial(int k)
{
    mpz_class f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return Rational(f);
}

}  // namespace kv
