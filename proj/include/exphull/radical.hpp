#pragma once

#include <map>
#include <string>

#include "exphull/rational.hpp"

namespace exphull {

/// Exact positive-real radical of a rational: sign * prod p^{e_p} with prime
/// bases and rational exponents (principal branch for fractional powers, so a
/// negative sign admits integer exponent arithmetic only). Radicals with
/// distinct fractional exponent classes are linearly independent over Q,
/// which makes exact zero tests of radical sums possible.
class RadicalValue {
public:
    RadicalValue() : sign_(1) {} ///< the value 1

    /// Factors a nonzero rational into the prime-exponent form.
    static RadicalValue from_rational(const Rational& q);

    RadicalValue mul(const RadicalValue& o) const;
    /// this^e; fractional e on a negative value is rejected.
    RadicalValue pow(const Rational& e) const;

    bool is_one() const { return sign_ > 0 && exps_.empty(); }
    bool is_rational() const;
    Rational rational_value() const; ///< requires is_rational()

    /// Splits off the rational part: value = rational_part * radical_part
    /// where radical_part has exponents in [0,1).
    Rational rational_part() const;
    /// Key identifying the fractional exponent class (the radical part).
    std::string fractional_key() const;

    bool operator==(const RadicalValue& o) const = default;
    bool operator<(const RadicalValue& o) const;
    std::string to_string() const;

private:
    int sign_;
    std::map<Integer, Rational> exps_; ///< prime -> nonzero exponent
};

} // namespace exphull
