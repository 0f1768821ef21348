#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

#include "exphull/errors.hpp"

namespace exphull {

/// Exact rational scalar. mpq_class keeps values in lowest terms with a
/// positive denominator once canonicalised; every constructor path below
/// canonicalises.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "-3", "5/2", "0". Throws DomainError on malformed input.
Rational parse_rational(const std::string& text);

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// q^e for integer e (negative allowed when q != 0).
Rational rational_pow(const Rational& q, long e);

/// lcm of the denominators of a list of rationals; always >= 1.
Integer common_denominator(const std::vector<Rational>& qs);

} // namespace exphull
