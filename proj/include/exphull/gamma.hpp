#pragma once

#include <memory>
#include <string>
#include <vector>

#include "exphull/ideal.hpp"
#include "exphull/qmatrix.hpp"
#include "exphull/verdict.hpp"

namespace exphull {

/// Finite symbolic presentation of a partial exponential field: ordered
/// coordinate pairs (x_i, y_i) read as (a_i, e^{a_i}), the kernel pair first
/// (its relation y = 1 lies in the locus), a base prefix, the locus ideal
/// over all coordinates with the y-side inverted, and the declared Q-linear
/// relations among the x-coordinates.
///
/// Transcendence degrees are computed as Krull dimensions of contracted loci,
/// which is correct when the locus is prime. Primality is not decided here;
/// configurations carry the user assertion `irreducible_asserted` and all
/// reports are conditional on it.
struct GammaConfig {
    std::vector<std::string> pair_names; ///< kernel pair first
    int base_len = 1;                    ///< base prefix length (>= 1, includes kernel)
    Ideal locus;                         ///< vars x_<name>.., y_<name>.., y's inverted
    QMatrix qlinear;                     ///< rows over the pair space
    bool irreducible_asserted = false;
    /// Skips the declared-relations completeness check, admitting degenerate
    /// test configurations whose locus hides an x-linear relation.
    bool permissive_qlinear = false;

    int npairs() const { return static_cast<int>(pair_names.size()); }
    std::string x_name(int i) const { return "x_" + pair_names[i]; }
    std::string y_name(int i) const { return "y_" + pair_names[i]; }

    struct Cache;
    std::shared_ptr<Cache> cache; ///< td memo; created by make/validate
};

/// Builds and validates a configuration. Checked invariants: the kernel
/// relation, properness of the locus, membership of every qlinear row, and
/// (unless permissive) that every x-linear member of the locus is declared.
GammaConfig make_config(std::vector<std::string> pair_names, int base_len,
                        std::vector<LaurentPoly> locus_gens, QMatrix qlinear,
                        bool irreducible_asserted = false, bool permissive_qlinear = false);

void validate_config(const GammaConfig& cfg);

/// Q-subspace of the pair space, given by spanning rows.
struct SubspaceSpec {
    QMatrix rows;
};

/// Validates full row rank modulo the qlinear relations.
SubspaceSpec make_subspace(const GammaConfig& cfg, QMatrix rows);
SubspaceSpec kernel_subspace(const GammaConfig& cfg);
SubspaceSpec full_subspace(const GammaConfig& cfg);
SubspaceSpec base_subspace(const GammaConfig& cfg); ///< base prefix + kernel
SubspaceSpec span_of_pairs(const GammaConfig& cfg, const std::vector<std::string>& names);
SubspaceSpec empty_subspace(const GammaConfig& cfg);

/// Transcendence degree of the contraction of the locus to the coordinates
/// generated by the given rows (x-combinations and their exponential
/// monomials); rational rows are cleared to primitive integer rows, which
/// spans the same subspace and has the same contraction dimension. Memoized
/// per configuration.
int td_of(const GammaConfig& cfg, const QMatrix& rows);

/// td of sub+over relative to over.
int relative_td(const GammaConfig& cfg, const SubspaceSpec& sub, const SubspaceSpec& over);

/// Predimension: relative td minus the linear dimension sub adds over `over`
/// modulo the declared qlinear relations. May be negative.
long delta_value(const GammaConfig& cfg, const SubspaceSpec& sub, const SubspaceSpec& over);

/// Exhaustive bounded Schanuel check: delta(L/kernel) >= 0 for every subspace
/// L spanned by primitive integer vectors of height <= height.
Verdict schanuel_check(const GammaConfig& cfg, long height);

/// Bounded strongness of `sub`: no bounded subspace has negative delta over
/// sub and no bounded kernel element of the configuration lies outside sub.
Verdict is_strong_bounded(const GammaConfig& cfg, const SubspaceSpec& sub, long height);

/// Bounded hull certificate: `candidate` is strong at the bound and no proper
/// subspace between base+kernel and candidate (generated at the bound)
/// certifies as strong at the same bound. Fails carries the offending
/// subspace.
Verdict hull_certify(const GammaConfig& cfg, const SubspaceSpec& base,
                     const SubspaceSpec& candidate, long height);

/// Adjoins fresh pairs (x', y') with m x' = x and y'^m = y for every
/// non-base pair; the original pairs become the base.
GammaConfig divide_basis(const GammaConfig& cfg, long m);

enum class WitnessFlag { XAlgebraic, YAlgebraic };

/// Checks a witnessing sequence: at step i the flagged coordinate of pair i
/// must be algebraic over the base coordinates and pairs 1..i-1 (no dimension
/// growth of the contracted locus). Errors with "flag contradiction" when
/// both coordinates of a step are algebraic.
Verdict witnessing_check(const GammaConfig& cfg, const std::vector<std::string>& sequence,
                         const std::vector<WitnessFlag>& flags);

/// The x-linear combination `row` as a locus polynomial.
LaurentPoly x_combination_poly(const GammaConfig& cfg, const std::vector<Rational>& row);

/// y^row - 1 as a locus polynomial (integer row).
LaurentPoly kernel_test_poly(const GammaConfig& cfg, const std::vector<Integer>& row);

} // namespace exphull
