#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "exphull/laurent.hpp"
#include "exphull/qmatrix.hpp"

namespace exphull {

/// Coefficient slot of the functional equation: an exact rational or a named
/// fresh transcendental.
using Scalar = std::variant<Rational, std::string>;

/// The Laurent functional equation p(X + beta, Y^M gamma) = xi Y^u p(X, Y)
/// with N the transpose of M acting on supports. p lives in X and the torus
/// variables Y2..Yn.
struct FunctionalEquation {
    LaurentPoly p;      ///< vars: X1 first, then Y2..Yn
    QMatrix n_matrix;   ///< N, rational (n-1) x (n-1)
    std::vector<Scalar> gamma;
    Scalar beta;
    Scalar xi;
    std::vector<Rational> u;
};

/// Validates the shape invariants: p depends on X1 with nonnegative X1
/// exponents and the scalar/matrix arities match.
FunctionalEquation make_equation(LaurentPoly p, QMatrix n_matrix, std::vector<Scalar> gamma,
                                 Scalar beta, Scalar xi, std::vector<Rational> u);

/// Support of p in the torus variables with the X1-coefficient of each
/// exponent vector.
struct SupportData {
    std::vector<ExpVec> exponents;    ///< sorted lexicographically
    std::vector<LaurentPoly> coeffs;  ///< univariate in X1
    int h() const { return static_cast<int>(exponents.size()); }
};

SupportData support(const LaurentPoly& p);

/// Solution of N s = mu(s) + u over the support: mu as the index permutation
/// and the forced translation u = N c - c for the centroid c.
struct PermutationSolution {
    std::vector<int> perm; ///< perm[i]: index of mu(s_i) in the support list
    std::vector<Rational> u;
};

/// The translation is forced by the centroid, so the solver is complete: it
/// returns a solution iff one exists.
std::optional<PermutationSolution> solve_permutation(const SupportData& s, const QMatrix& n_matrix);

struct IterationResult {
    QMatrix n_power;            ///< N^r
    std::vector<Rational> u_sum; ///< (I + N + ... + N^{r-1}) u
};

IterationResult iterate_relation(const QMatrix& n_matrix, const std::vector<Rational>& u,
                                 const Integer& r);

/// Exact expansion check of the functional equation; symbolic scalars are
/// treated as fresh variables and rational exponents are cleared by the
/// Y -> Z^m rescaling.
bool verify_equation(const FunctionalEquation& eq);

/// Admissible beta values forced by the h!-iterated equation. {0} when some
/// support coefficient is non-constant (a non-constant univariate polynomial
/// cannot be periodic); nullopt when the permutation equation has no solution
/// ("no constraint derivable").
std::optional<std::vector<Rational>> derive_beta_constraint(const LaurentPoly& p,
                                                            const QMatrix& n_matrix);

/// Case 1 translation generator: componentwise gcds of colinear integer
/// pairs, with each input pair an integer multiple of the generator.
struct TranslationGenerator {
    Integer d1, d2;          ///< d1 >= 0; d2 >= 0 with the sign split off
    int sign;                ///< actual second component is sign * d2
    std::vector<Integer> exponents; ///< pair_i == exponents[i] * (d1, sign*d2)
};

TranslationGenerator translation_generator(const std::vector<std::pair<Integer, Integer>>& pairs);

} // namespace exphull
