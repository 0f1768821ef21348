#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exphull/rational.hpp"

namespace exphull {

using ExpVec = std::vector<long>;

/// Exact multivariate Laurent polynomial over Q: a finite map from integer
/// exponent vectors (possibly negative entries) to nonzero rational
/// coefficients. The variable list is ordered and owned by the polynomial;
/// arithmetic requires identical variable lists.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static LaurentPoly zero(std::vector<std::string> vars) { return LaurentPoly(std::move(vars)); }
    static LaurentPoly constant(std::vector<std::string> vars, const Rational& c);
    static LaurentPoly variable(std::vector<std::string> vars, int index, long exponent = 1);
    static LaurentPoly monomial(std::vector<std::string> vars, const ExpVec& e, const Rational& c);

    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    const std::map<ExpVec, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Exactly one stored term (any coefficient); false for zero.
    bool is_single_term() const { return terms_.size() == 1; }
    Rational constant_value() const; ///< requires is_constant()

    void add_term(const ExpVec& e, const Rational& c); ///< merges, drops zeros

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly scale(const Rational& c) const;
    LaurentPoly pow(long e) const; ///< e >= 0, or single-term base for e < 0
    bool operator==(const LaurentPoly& o) const = default;

    long min_exponent(int var) const; ///< 0 for zero polynomial
    long max_exponent(int var) const;
    long total_degree() const; ///< max term degree, 0 for zero
    bool depends_on(int var) const;

    /// Multiplies by a monomial (unit shift).
    LaurentPoly shift(const ExpVec& e) const;

    /// All exponents nonnegative?
    bool is_polynomial() const;

    /// Substitutes values[i] for variable i (identity when values[i] is
    /// nullopt). The result lives in `target_vars`. A variable occurring with
    /// a negative exponent must be sent to a single-term value.
    LaurentPoly substitute(const std::vector<std::optional<LaurentPoly>>& values,
                           const std::vector<std::string>& target_vars) const;

    /// Reinterprets this polynomial in a superset variable list (match by
    /// name; every current variable must occur in target).
    LaurentPoly align_to(const std::vector<std::string>& target_vars) const;

    /// Multiplies every exponent of variable `var` by m (the Y -> Z^m
    /// rescaling; the variable keeps its slot).
    LaurentPoly stretch_var(int var, long m) const;

    /// Divides all coefficients by the leading one under plain lex so the
    /// result is canonical up to scaling.
    LaurentPoly normalized() const;

    /// Formal partial derivative with respect to variable `var`.
    LaurentPoly derivative(int var) const;

    /// Exact division check: returns q with *this == d * q, if it exists.
    std::optional<LaurentPoly> divide_exact(const LaurentPoly& d) const;

    std::string to_string() const;

private:
    std::vector<std::string> vars_;
    std::map<ExpVec, Rational> terms_;
};

/// True iff p has exactly one term (a unit of the Laurent ring).
inline bool laurent_is_unit(const LaurentPoly& p) { return p.is_single_term(); }

} // namespace exphull
